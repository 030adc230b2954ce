"""p-adic logarithms: where convergence goes to die, and what survives.

Over the p-adic integers dividing by n costs v_p(n) digits of precision,
so the naive log series has unbounded denominators.  The dagger variant
tracks exactly how unbounded: the coefficient at u^(p^i) has valuation
-i, a staircase that never flattens.  The twisted form log(1 - p*y)
stays integral because the extra p beats every denominator.
"""

import random
from fractions import Fraction

from lineint import (
    RingLabel,
    padic_log_dagger,
    padic_log_one_minus_py,
    parse_series,
    print_series,
    series_from_coeffs,
    unboundedness_witness,
    valuation_profile,
)

p = 2
print(f"== the dagger logarithm at p = {p} ==")
one_minus_u = parse_series("1 - u + O(u^9)", RingLabel.GAMMA_PLUS,
                           prime=p, abs_prec=12)
log = padic_log_dagger(one_minus_u)
print(" ", print_series(log))
print("  valuation profile (degree, v_p):", valuation_profile(log))
print("  negative valuations on every power of p:",
      [(p ** i, log.coefficient(p ** i).valuation) for i in (1, 2, 3)])
print("  witness that v_p drops below -1 somewhere:",
      unboundedness_witness(log, 1))
print()

print(f"== log(1 - {p}*y) keeps its feet dry ==")
rng = random.Random(7)
vals = [Fraction(rng.randint(-9, 9)) for _ in range(10)]
y = series_from_coeffs(RingLabel.GAMMA_PLUS, 0, vals, prime=p, abs_prec=10)
z = padic_log_one_minus_py(y)
print("  y  =", print_series(y))
print("  z  =", print_series(z))
print("  every coefficient has v_p >= 0:",
      all(c.valuation_floor >= 0 for c in z.coeffs))
