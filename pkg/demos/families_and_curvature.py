"""Families of connections over a two-variable window, and their curvature.

The family in data/geometric_family.json deforms the log connection in a
fiber direction x.  Its curvature vanishes identically, so restricting
to any section gives a path-independent line integral; pulling back
along x := -u recovers the p-adic logarithm of 1 - u, staircase
valuations included.  A planted non-flat entry shows what curvature
looks like when integrability fails.
"""

import json
import pathlib

from lineint import (
    BiForm,
    FramedFamily,
    RingLabel,
    Signature,
    biseries_from_map,
    curvature,
    line_integral,
    load_family,
    padic_log_dagger,
    parse_series,
    print_series,
    valuation_profile,
    zero_biseries,
)

here = pathlib.Path(__file__).parent
doc = json.loads((here / "data" / "geometric_family.json").read_text())
family, trunc, trunc_x, fiber = load_family(doc)

print("== the geometric family is flat ==")
forms = curvature(family)
print("  curvature entries all zero:",
      all(b.is_zero for row in forms for b in row))
print()

print("== line integral along the section v = 1 - u ==")
section = parse_series("1 - u + O(u^9)", RingLabel.GAMMA_PLUS,
                       prime=2, abs_prec=12)
rep = line_integral(family, section)
v12 = rep.matrix.entries[0][1]
log = padic_log_dagger(section)
print("  V_12          =", print_series(v12))
print("  dagger log    =", print_series(log))
print("  windows and coefficients agree:",
      all(v12.coefficient(k) == log.coefficient(k) for k in range(1, 9)))
print("  valuation staircase:", valuation_profile(v12))
print()

print("== planting x du breaks flatness ==")
F = RingLabel.FORMAL
zero = zero_biseries(F, 6, 6)
planted = FramedFamily(
    Signature((1, 1)), F,
    ((BiForm(zero, zero),
      BiForm(biseries_from_map(F, {(0, 1): 1}, 6, 6), zero)),
     (BiForm(zero, zero), BiForm(zero, zero))))
f12 = curvature(planted)[0][1]
print("  curvature of C_12 = x du is zero:", f12.is_zero)
print("  du^dx coefficient at (0, 0):", f12.coefficient(0, 0))
