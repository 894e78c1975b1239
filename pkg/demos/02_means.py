"""Upper, lower and true means of a few symbolic sequences.

The oscillating sequence (runs of 0 and 1 whose lengths double) has no mean:
its running averages swing between 1/3 and 2/3 forever.  The truncation
oracle approximates the same limits numerically.
"""

from transmean import mean_pair, seq_parse, truncation_oracle

EXAMPLES = [
    "cat(const(1;3), const(0;w))",
    "repw(cat(const(0;1), const(1;2)))",
    "osc(0,1)",
    "cat(osc(0,1), const(5;w^2))",
    "repw(cat(osc(0,1), const(1;w)))",
    "const(3/2; w^w)",
]

for text in EXAMPLES:
    s = seq_parse(text)
    pair = mean_pair(s)
    line = f"{text:40} upper={pair.upper} lower={pair.lower} mean={pair.mean}"
    try:
        lo, hi = truncation_oracle(s, (3000, 300, 60, 20))
        line += f"   oracle~[{float(lo):.3f}, {float(hi):.3f}]"
    except Exception as exc:  # e.g. lengths beyond the oracle's reach
        line += f"   oracle: {type(exc).__name__}"
    print(line)
