"""Resultants, discriminants and the principal A-determinant of Lawrence prisms."""

from latdeg.adet import (MultiPoly, UniPolySym, discriminant, principal_adet_prism, resultant,
                         worked_example_report)

a0, b0, c0, a1, b1 = (MultiPoly.var(n) for n in ("a0", "b0", "c0", "a1", "b1"))
quadratic = UniPolySym([a0, c0, b0])
linear = UniPolySym([a1, b1])
print("Disc(a0 + c0 x + b0 x^2) =", discriminant(quadratic))
print("Res(quadratic, linear)   =", resultant(quadratic, linear))

e = principal_adet_prism((1, 1))
print("heights (1,1):", e.expand())
for h in [(1, 2), (2, 2, 1), (3, 1, 1, 1)]:
    e = principal_adet_prism(h)
    print(f"heights {h}: {len(e.factors)} factors, total degree {e.total_degree()}")

report = worked_example_report()
print("worked example matches:", report.match, "sign", report.sign)
print("variable assignment:", report.assignment)
