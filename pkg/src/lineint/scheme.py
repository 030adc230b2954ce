"""Two-variable series windows and framed families over them.

A :class:`BiSeries` stores coefficients of monomials u^i x^j for
0 <= i < trunc_u and 0 <= j < trunc_x, over the same coefficient rings as
the univariate windows.  One-forms gain a second component ``dx``; the
total differential, curvature of a framed family, pullback along a section
x := v - 1, and the resulting line integral live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import PAdic
from .errors import (
    InsufficientWindowError,
    InvalidInputError,
    NonUnitError,
    NotFramedError,
)
from .nabla import (
    ConnectionMatrix,
    FramedNablaModule,
    InvariantRepresentative,
    Signature,
    invariant,
)
from .series import (
    DEFAULT_ABS_PREC,
    DifferentialForm,
    RingLabel,
    TruncatedSeries,
    _check_coeff,
    derive,
    one_series,
    zero_series,
)


@dataclass(frozen=True, eq=False)
class BiSeries:
    """Coefficients of u^i x^j for 0 <= i < trunc_u, 0 <= j < trunc_x."""

    ring: RingLabel
    coeffs: tuple            # coeffs[i][j], row index i is the u-degree
    trunc_u: int
    trunc_x: int
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(tuple(row) for row in self.coeffs))
        if self.ring.laurent:
            raise InvalidInputError(
                f"two-variable windows are power series; ring "
                f"{self.ring.value} allows poles"
            )
        if self.trunc_u < 0 or self.trunc_x < 0:
            raise InvalidInputError(
                f"negative window ({self.trunc_u}, {self.trunc_x})"
            )
        if self.ring.padic:
            if self.prime is None:
                raise InvalidInputError(f"ring {self.ring.value} needs a prime")
        elif self.prime is not None:
            raise InvalidInputError("rational ring takes no prime")
        if len(self.coeffs) != self.trunc_u:
            raise InvalidInputError(
                f"{len(self.coeffs)} rows do not fill u-window {self.trunc_u}"
            )
        for i, row in enumerate(self.coeffs):
            if len(row) != self.trunc_x:
                raise InvalidInputError(
                    f"row {i} has {len(row)} entries, x-window is "
                    f"{self.trunc_x}"
                )
            for j, c in enumerate(row):
                _check_coeff(self.ring, self.prime, c, i)

    def _zero_coeff(self):
        if self.ring.padic:
            return PAdic.zero(self.prime, self._working_prec())
        return Fraction(0)

    def _working_prec(self) -> int:
        precs = [c.abs_prec for row in self.coeffs for c in row
                 if isinstance(c, PAdic)]
        return max(precs) if precs else DEFAULT_ABS_PREC

    def coefficient(self, i: int, j: int):
        """The coefficient of u^i x^j; exact zero at negative degrees."""
        if i < 0 or j < 0:
            return self._zero_coeff()
        if i >= self.trunc_u or j >= self.trunc_x:
            raise InsufficientWindowError(
                f"degree ({i}, {j}) is beyond the known window "
                f"({self.trunc_u}, {self.trunc_x})"
            )
        return self.coeffs[i][j]

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(c) for row in self.coeffs for c in row)

    def clipped(self, trunc_u=None, trunc_x=None) -> "BiSeries":
        tu = self.trunc_u if trunc_u is None else min(trunc_u, self.trunc_u)
        tx = self.trunc_x if trunc_x is None else min(trunc_x, self.trunc_x)
        tu, tx = max(tu, 0), max(tx, 0)
        return BiSeries(self.ring,
                        tuple(row[:tx] for row in self.coeffs[:tu]),
                        tu, tx, self.prime)

    def _binary_check(self, other: "BiSeries"):
        if not isinstance(other, BiSeries):
            raise InvalidInputError(f"expected a two-variable series, "
                                    f"got {other!r}")
        if other.ring is not self.ring or other.prime != self.prime:
            raise InvalidInputError(
                f"cannot combine windows over {self.ring.value} "
                f"(p={self.prime}) and {other.ring.value} (p={other.prime})"
            )

    def __add__(self, other) -> "BiSeries":
        self._binary_check(other)
        tu = min(self.trunc_u, other.trunc_u)
        tx = min(self.trunc_x, other.trunc_x)
        return BiSeries(
            self.ring,
            tuple(tuple(self.coeffs[i][j] + other.coeffs[i][j]
                        for j in range(tx)) for i in range(tu)),
            tu, tx, self.prime,
        )

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.ring,
                        tuple(tuple(-c for c in row) for row in self.coeffs),
                        self.trunc_u, self.trunc_x, self.prime)

    def __sub__(self, other) -> "BiSeries":
        return self + (-other)

    def __mul__(self, other) -> "BiSeries":
        self._binary_check(other)
        tu = min(self.trunc_u, other.trunc_u)
        tx = min(self.trunc_x, other.trunc_x)
        rational = not self.ring.padic
        rows = []
        for i in range(tu):
            row = []
            for j in range(tx):
                acc = None
                for a in range(i + 1):
                    for b in range(j + 1):
                        x, y = self.coeffs[a][b], other.coeffs[i - a][j - b]
                        if rational and (x == 0 or y == 0):
                            continue
                        prod = x * y
                        acc = prod if acc is None else acc + prod
                row.append(self._zero_coeff() if acc is None else acc)
            rows.append(tuple(row))
        return BiSeries(self.ring, tuple(rows), tu, tx, self.prime)

    def scale(self, c) -> "BiSeries":
        return BiSeries(self.ring,
                        tuple(tuple(x * c for x in row)
                              for row in self.coeffs),
                        self.trunc_u, self.trunc_x, self.prime)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.ring is other.ring and self.prime == other.prime
                and self.trunc_u == other.trunc_u
                and self.trunc_x == other.trunc_x
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __repr__(self):
        return (f"BiSeries({self.ring.value}, "
                f"({self.trunc_u}, {self.trunc_x}), {self.coeffs!r})")


def _is_zero(c) -> bool:
    return c.is_zero if isinstance(c, PAdic) else c == 0


def biseries_from_map(ring: RingLabel, mapping, trunc_u: int, trunc_x: int,
                      prime: int | None = None,
                      abs_prec: int = DEFAULT_ABS_PREC) -> BiSeries:
    """Build a window from a sparse {(i, j): value} map; absent means zero."""
    if ring.padic:
        zero = PAdic.zero(prime, abs_prec)

        def coerce(v):
            return v if isinstance(v, PAdic) else PAdic.from_rational(
                Fraction(v), prime, abs_prec)
    else:
        zero = Fraction(0)
        coerce = Fraction
    rows = [[zero] * trunc_x for _ in range(trunc_u)]
    for (i, j), v in mapping.items():
        if not (0 <= i < trunc_u and 0 <= j < trunc_x):
            raise InvalidInputError(
                f"degree ({i}, {j}) outside window ({trunc_u}, {trunc_x})"
            )
        rows[i][j] = coerce(v)
    return BiSeries(ring, tuple(tuple(r) for r in rows), trunc_u, trunc_x,
                    prime)


def zero_biseries(ring: RingLabel, trunc_u: int, trunc_x: int,
                  prime: int | None = None,
                  abs_prec: int = DEFAULT_ABS_PREC) -> BiSeries:
    return biseries_from_map(ring, {}, trunc_u, trunc_x, prime, abs_prec)


def partial_u(s: BiSeries) -> BiSeries:
    """Termwise derivative in u; the u-window shrinks by one."""
    tu = max(s.trunc_u - 1, 0)
    return BiSeries(
        s.ring,
        tuple(tuple(s.coeffs[i + 1][j] * (i + 1) for j in range(s.trunc_x))
              for i in range(tu)),
        tu, s.trunc_x, s.prime,
    )


def partial_x(s: BiSeries) -> BiSeries:
    """Termwise derivative in x; the x-window shrinks by one."""
    tx = max(s.trunc_x - 1, 0)
    return BiSeries(
        s.ring,
        tuple(tuple(s.coeffs[i][j + 1] * (j + 1) for j in range(tx))
              for i in range(s.trunc_u)),
        s.trunc_u, tx, s.prime,
    )


@dataclass(frozen=True, eq=False)
class BiForm:
    """A one-form A du + B dx; both components on one shared window."""

    du_part: BiSeries
    dx_part: BiSeries

    def __post_init__(self):
        a, b = self.du_part, self.dx_part
        a._binary_check(b)
        tu = min(a.trunc_u, b.trunc_u)
        tx = min(a.trunc_x, b.trunc_x)
        object.__setattr__(self, "du_part", a.clipped(tu, tx))
        object.__setattr__(self, "dx_part", b.clipped(tu, tx))

    @property
    def ring(self) -> RingLabel:
        return self.du_part.ring

    @property
    def is_zero(self) -> bool:
        return self.du_part.is_zero and self.dx_part.is_zero

    def __add__(self, other: "BiForm") -> "BiForm":
        return BiForm(self.du_part + other.du_part,
                      self.dx_part + other.dx_part)

    def __neg__(self) -> "BiForm":
        return BiForm(-self.du_part, -self.dx_part)

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self.du_part == other.du_part and self.dx_part == other.dx_part

    __hash__ = None


def total_d(s: BiSeries) -> BiForm:
    """The differential (d/du) du + (d/dx) dx of a two-variable window."""
    return BiForm(partial_u(s), partial_x(s))


@dataclass(frozen=True, eq=False)
class FramedFamily:
    """A family of framed connections over the two-variable window."""

    signature: Signature
    ring: RingLabel
    entries: tuple           # r x r matrix of BiForm
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple(tuple(row) for row in self.entries))
        sig = self.signature
        r = sig.total
        if len(self.entries) != r or any(len(row) != r
                                         for row in self.entries):
            raise InvalidInputError(
                f"matrix shape does not match signature total {r}"
            )
        for a in range(r):
            for b in range(r):
                f = self.entries[a][b]
                if not isinstance(f, BiForm):
                    raise InvalidInputError(f"expected a two-variable "
                                            f"one-form, got {f!r}")
                if f.ring is not self.ring or f.du_part.prime != self.prime:
                    raise InvalidInputError(
                        "family entries must share the ring and prime"
                    )
                if sig.block_of(a) < sig.block_of(b):
                    continue
                if not f.is_zero:
                    raise NotFramedError(
                        f"block ({sig.block_of(a) + 1}, "
                        f"{sig.block_of(b) + 1}) of the family connection "
                        "is not zero"
                    )

    @property
    def size(self) -> int:
        return len(self.entries)


def curvature(family: FramedFamily) -> tuple:
    """The du^dx coefficient of d(C) + C^C, entrywise; zero iff integrable.

    With C = C_u du + C_x dx this is
    partial_u(C_x) - partial_x(C_u) + C_u C_x - C_x C_u."""
    r = family.size
    cu = [[family.entries[a][b].du_part for b in range(r)] for a in range(r)]
    cx = [[family.entries[a][b].dx_part for b in range(r)] for a in range(r)]
    out = []
    for a in range(r):
        row = []
        for b in range(r):
            acc = partial_u(cx[a][b]) - partial_x(cu[a][b])
            for c in range(r):
                acc = acc + cu[a][c] * cx[c][b] - cx[a][c] * cu[c][b]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def substitute_fiber(b: BiSeries, w: TruncatedSeries) -> TruncatedSeries:
    """Evaluate a two-variable window at x := w, a one-variable series.

    Powers of w are tracked with full window bookkeeping.  When w has a
    zero constant term of order e, the stored x-degrees must satisfy
    trunc_x * e >= trunc_u, otherwise unknown x-coefficients could reach
    visible u-degrees.  A w that is a unit is substituted on the stored
    x-support only (the window is exact when the x-dependence is
    polynomial of degree < trunc_x)."""
    if not isinstance(w, TruncatedSeries):
        raise InvalidInputError(f"expected a series, got {w!r}")
    if w.ring is not b.ring or w.prime != b.prime:
        raise InvalidInputError(
            f"cannot substitute a series over {w.ring.value} into a window "
            f"over {b.ring.value}"
        )
    tu, tx = b.trunc_u, b.trunc_x
    if tx == 0:
        return zero_series(b.ring, 0, 0, b.prime, b._working_prec())
    cols = [
        TruncatedSeries(b.ring, 0,
                        tuple(b.coeffs[i][j] for i in range(tu)), tu, b.prime)
        for j in range(tx)
    ]
    if w.is_zero:
        return cols[0]
    e = w.order()
    if e >= 1:
        if tx * e < tu:
            raise InsufficientWindowError(
                f"x-window {tx} with a section of order {e} only fills "
                f"u-degrees below {tx * e}, u-window needs {tu}"
            )
        acc = cols[0]
        power = w.clipped(trunc_order=tu)
        for j in range(1, tx):
            if j * e >= tu:
                break
            acc = acc + cols[j] * power
            if j + 1 < tx and (j + 1) * e < tu:
                power = (power * w).clipped(trunc_order=tu)
        return acc.clipped(trunc_order=tu)
    acc = cols[tx - 1]
    for j in range(tx - 2, -1, -1):
        acc = (acc * w).clipped(trunc_order=tu) + cols[j]
    return acc.clipped(trunc_order=tu)


def section_pullback(family: FramedFamily,
                     v: TruncatedSeries) -> FramedNablaModule:
    """Restrict the family to the section sending 1 + x to the unit v.

    Substitutes x := v - 1 everywhere; the dx components pick up the
    chain-rule factor dv.  Returns the one-variable framed module."""
    if not isinstance(v, TruncatedSeries):
        raise InvalidInputError(f"expected a series, got {v!r}")
    if v.ring is not family.ring or v.prime != family.prime:
        raise InvalidInputError(
            f"section over {v.ring.value} does not match family over "
            f"{family.ring.value}"
        )
    if v.trunc_order <= 0:
        raise InsufficientWindowError(
            "section window does not show the constant term"
        )
    c0 = v.coefficient(0)
    if _is_zero(c0):
        raise NonUnitError("section must be a unit: constant term vanishes")
    if v.ring.integral and c0.valuation != 0:
        raise NonUnitError(
            f"section must be a unit: constant term {c0} is divisible by "
            f"{v.prime}"
        )
    prec = v._working_prec()
    w = v - one_series(v.ring, v.trunc_order, v.prime, prec)
    dv = derive(v).series
    r = family.size
    rows = []
    for a in range(r):
        row = []
        for b in range(r):
            f = family.entries[a][b]
            s = (substitute_fiber(f.du_part, w)
                 + substitute_fiber(f.dx_part, w) * dv)
            row.append(DifferentialForm(s))
        rows.append(tuple(row))
    conn = ConnectionMatrix(family.ring, tuple(rows), family.prime)
    return FramedNablaModule(family.signature, conn)


def line_integral(family: FramedFamily,
                  v: TruncatedSeries) -> InvariantRepresentative:
    """The invariant of the family restricted to the section of v.

    The truncation is everything the pullback window can prove."""
    module = section_pullback(family, v)
    t = 1 + min(f.series.trunc_order
                for row in module.connection.entries for f in row)
    return invariant(module, max(t, 1))
