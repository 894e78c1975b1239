"""Tiny character scanner shared by the ordinal and sequence parsers."""

import re


class ParseError(ValueError):
    """Malformed expression text. ``pos`` is the 0-based character offset."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


_NATURAL = re.compile(r"[0-9]+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, literal):
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.accept(literal):
            self.error(f"expected {literal!r}")

    def natural(self):
        self.skip_ws()
        m = _NATURAL.match(self.text, self.pos)
        if m is None:
            self.error("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def ident(self):
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if m is None:
            self.error("expected an identifier")
        self.pos = m.end()
        return m.group()

    def at_ident(self):
        self.skip_ws()
        return _IDENT.match(self.text, self.pos) is not None

    def end(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")

    def error(self, message):
        raise ParseError(message, self.text, self.pos)
