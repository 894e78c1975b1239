"""Ordinal arithmetic below epsilon-zero, in Cantor normal form."""

from transmean.ordinal import (
    OMEGA, ONE, left_divide, left_subtract, ord_parse, standard_decomposition,
)

a = ord_parse("w^2*3 + w*2 + 5")
print("a              =", a)
print("1 + w          =", ONE + OMEGA, "   (the finite part is absorbed)")
print("w + 1          =", OMEGA + ONE)
print("a * w          =", a * OMEGA)
print("w * a          =", OMEGA * a)

sigma, n, rho = standard_decomposition(a)
print(f"a = w^{sigma} * {n} + {rho}")

b = ord_parse("w^2")
print("a - w^2        =", left_subtract(b, a), "   (b + (a - b) = a)")
q, r = left_divide(OMEGA, a)
print(f"a = w * ({q}) + {r}")
print("w^w > w^5*100  :", ord_parse("w^w") > ord_parse("w^5*100"))
