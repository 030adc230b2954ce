"""Framed connections and the iterated integrals inside their gauge.

A framed module is a block upper triangular connection matrix; the
unique unipotent gauge V with V(0) = I that flattens it packages every
iterated line integral of the entries.  One step above the diagonal you
get antiderivatives, two steps up you get genuinely iterated integrals:
with C_12 = C_23 = du the corner entry of V is u^2/2, and bumping C_23
to u du turns it into u^3/3.
"""

from lineint import (
    ConnectionMatrix,
    DifferentialForm,
    FramedNablaModule,
    RingLabel,
    Signature,
    formal_log,
    horizontal_basis,
    invariant,
    is_identity_series_matrix,
    parse_series,
    print_series,
    series_matrix_product,
    trivialize,
    zero_series,
)

F = RingLabel.FORMAL
T = 10


def form(text):
    return DifferentialForm(parse_series(text))


print("== a rank-2 module that computes log(1 - t) ==")
# C_12 = d log(1-t) as a connection entry: -(1 + t + t^2 + ...) dt
geom = form("-1 - " + " - ".join(f"t^{k}" for k in range(1, T - 1))
            + f" + O(t^{T - 1})")
z = DifferentialForm(zero_series(F, 0, T))
module = FramedNablaModule(
    Signature((1, 1)), ConnectionMatrix(F, ((z, geom), (z, z))))
v = trivialize(module, T)
print("  V_12 =", print_series(v.entries[0][1]))
log = formal_log(parse_series(f"1 - t + O(t^{T})"))
print("  equals formal_log(1 - t):", v.entries[0][1].agrees_with(log))

s = horizontal_basis(module, T)
print("  V * (horizontal basis) = identity:",
      is_identity_series_matrix(series_matrix_product(v.entries, s)))
print()

print("== the length-3 chain: integrals of integrals ==")
one = form(f"1 + O(t^{T})")
t_form = form(f"t + O(t^{T})")


def corner(c12, c23):
    conn = ConnectionMatrix(F, ((z, c12, z), (z, z, c23), (z, z, z)))
    rep = invariant(FramedNablaModule(Signature((1, 1, 1)), conn), T)
    return rep.matrix.entries[0][2]


print("  C_12 = C_23 = dt      V_13 =", print_series(corner(one, one)))
print("  C_12 = dt, C_23 = t dt V_13 =", print_series(corner(one, t_form)))
