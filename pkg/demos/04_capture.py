"""A sequence that captures a finite probability space.

Each outcome occurs in the repeated pattern in proportion to its mass, so every
event's indicator sequence has mean equal to the event's probability, in every
block of length w.  A finite random sample only gets close.
"""

from pathlib import Path

from transmean.capture import build_capture, read_space, slln_trial, verify_capture
from transmean.ordinal import omega_pow
from transmean.seqalg import seq_print

space = read_space(Path(__file__).parent / "spaces" / "three.space")
for depth in (1, 2):
    x = build_capture(space, depth)
    print(f"depth {depth}:", seq_print(x))
    report = verify_capture(space, x, omega_pow(depth), all_events=True)
    for line in report.lines():
        print("  ", line)

print()
rep = slln_trial(space, samples=10000, trials=10, seed=7)
for line in rep.lines():
    print(line)
