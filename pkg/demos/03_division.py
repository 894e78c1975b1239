"""Block division: replace every block of a given length by its mean."""

from transmean import divide, seq_parse, seq_print
from transmean.mean import NotDivisible
from transmean.ordinal import ord_parse

s = seq_parse("repw(cat(const(0;w), const(1;w)))")
for b in ["1", "w", "w*2"]:
    print(f"s / {b:4} =", seq_print(divide(s, ord_parse(b))))

# dividing twice is dividing once by the product
t = seq_parse("repw(repw(cat(const(0;1), const(1;2), osc(2,4))))")
w = ord_parse("w")
print("(t/w)/w  =", seq_print(divide(divide(t, w), w)))
print("t/(w*w)  =", seq_print(divide(t, w * w)))

try:
    divide(seq_parse("const(1; w+1)"), w)
except NotDivisible as exc:
    print("const(1; w+1) / w:", type(exc).__name__, "-", exc)
