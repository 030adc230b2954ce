"""Truncated series windows over a family of coefficient rings.

A :class:`TruncatedSeries` stores the coefficients of degrees
``min_degree <= d < trunc_order``.  Below ``min_degree`` the series is
exactly zero (finitely supported Laurent window); from ``trunc_order``
upward nothing is known.  Operations propagate the window so that every
stored coefficient is provably correct:

    add:    [min(m_a, m_b), min(T_a, T_b))
    mul:    [m_a + m_b,     min(T_a + m_b, T_b + m_a))
    derive: trunc drops by one

Ring labels say which coefficient ring applies (exact rationals in
characteristic zero, p-adics otherwise), whether negative degrees are
allowed, and whether coefficients must stay in the integer ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .coeff import PAdic, check_prime, vp_int
from .errors import (
    CannotDetermineDegreeError,
    DisjointWindowsError,
    InsufficientWindowError,
    IntegralityError,
    IntegralObstructionError,
    InvalidInputError,
    NonUnitError,
    NotIntegralError,
)

DEFAULT_ABS_PREC = 20


class RingLabel(Enum):
    """Which series ring a window of coefficients lives in."""

    FORMAL = "formal"          # power series, exact rational coefficients
    GAMMA_PLUS = "gamma+"      # integral p-adic power series
    E_PLUS = "e+"              # p-adic power series, bounded denominators
    GAMMA = "gamma"            # integral p-adic Laurent series
    E = "e"                    # p-adic Laurent series, bounded denominators
    DAGGER = "dagger"          # overconvergent p-adic Laurent series
    ROBBA_PLUS = "robba+"      # p-adic power series, unbounded denominators
    ROBBA = "robba"            # p-adic Laurent series, Robba growth

    @property
    def laurent(self) -> bool:
        return self in (RingLabel.GAMMA, RingLabel.E, RingLabel.DAGGER,
                        RingLabel.ROBBA)

    @property
    def integral(self) -> bool:
        return self in (RingLabel.GAMMA_PLUS, RingLabel.GAMMA)

    @property
    def padic(self) -> bool:
        return self is not RingLabel.FORMAL

    @property
    def variable(self) -> str:
        return "t" if self is RingLabel.FORMAL else "u"


def _check_coeff(ring: RingLabel, prime, c, degree: int):
    if ring.padic:
        if not isinstance(c, PAdic):
            raise InvalidInputError(
                f"ring {ring.value} needs p-adic coefficients, got {c!r}"
            )
        if c.prime != prime:
            raise InvalidInputError(
                f"coefficient at degree {degree} has prime {c.prime}, "
                f"series has prime {prime}"
            )
        if ring.integral and c.valuation_floor < 0:
            raise IntegralityError(
                f"coefficient {c} at degree {degree} is not integral, "
                f"required by ring {ring.value}"
            )
    else:
        if not isinstance(c, Fraction):
            raise InvalidInputError(
                f"ring {ring.value} needs rational coefficients, got {c!r}"
            )


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients of degrees [min_degree, trunc_order) over a labeled ring."""

    ring: RingLabel
    min_degree: int
    coeffs: tuple
    trunc_order: int
    prime: int | None = None

    def __post_init__(self):
        if self.trunc_order < self.min_degree:
            raise InvalidInputError(
                f"window [{self.min_degree}, {self.trunc_order}) is reversed"
            )
        if len(self.coeffs) != self.trunc_order - self.min_degree:
            raise InvalidInputError(
                f"{len(self.coeffs)} coefficients do not fill window "
                f"[{self.min_degree}, {self.trunc_order})"
            )
        if self.ring.padic:
            if self.prime is None:
                raise InvalidInputError(f"ring {self.ring.value} needs a prime")
            check_prime(self.prime)
        elif self.prime is not None:
            raise InvalidInputError("rational ring takes no prime")
        if not self.ring.laurent and self.min_degree < 0:
            raise InvalidInputError(
                f"ring {self.ring.value} does not allow degree {self.min_degree}"
            )
        for i, c in enumerate(self.coeffs):
            _check_coeff(self.ring, self.prime, c, self.min_degree + i)

    # -- basic views -------------------------------------------------------

    def _at(self, d: int):
        """Stored coefficient, or None for the exact zero below the window."""
        if d < self.min_degree:
            return None
        if d >= self.trunc_order:
            raise InsufficientWindowError(
                f"degree {d} is beyond the known window "
                f"[{self.min_degree}, {self.trunc_order})"
            )
        return self.coeffs[d - self.min_degree]

    def coefficient(self, d: int):
        """The coefficient of degree d; exact zero below the window."""
        c = self._at(d)
        return self._zero_coeff() if c is None else c

    def constant_term(self):
        return self.coefficient(0)

    def _zero_coeff(self):
        if self.ring.padic:
            return PAdic.zero(self.prime, self._working_prec())
        return Fraction(0)

    def _working_prec(self) -> int:
        precs = [c.abs_prec for c in self.coeffs if isinstance(c, PAdic)]
        return max(precs) if precs else DEFAULT_ABS_PREC

    @property
    def is_zero(self) -> bool:
        """All stored coefficients vanish (at their precision, for p-adics)."""
        return all(_coeff_is_zero(c) for c in self.coeffs)

    def order(self) -> int | None:
        """Lowest degree with a nonvanishing stored coefficient."""
        for i, c in enumerate(self.coeffs):
            if not _coeff_is_zero(c):
                return self.min_degree + i
        return None

    # -- shape adjustments ---------------------------------------------------

    def clipped(self, min_degree=None, trunc_order=None) -> "TruncatedSeries":
        """Restrict to a narrower window (never widens)."""
        lo = self.min_degree if min_degree is None else max(min_degree,
                                                            self.min_degree)
        hi = self.trunc_order if trunc_order is None else min(trunc_order,
                                                              self.trunc_order)
        hi = max(hi, lo)
        return TruncatedSeries(
            self.ring, lo,
            self.coeffs[lo - self.min_degree:hi - self.min_degree],
            hi, self.prime,
        )

    def stripped(self) -> "TruncatedSeries":
        """Raise min_degree past leading exact zeros (rational rings only)."""
        if self.ring.padic:
            return self
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return TruncatedSeries(self.ring, self.min_degree + k,
                               self.coeffs[k:], self.trunc_order, self.prime)

    def relabeled(self, ring: RingLabel) -> "TruncatedSeries":
        """The same window of coefficients viewed in another ring."""
        return TruncatedSeries(ring, self.min_degree, self.coeffs,
                               self.trunc_order, self.prime)

    def without_constant_term(self) -> "TruncatedSeries":
        if 0 < self.min_degree or 0 >= self.trunc_order:
            return self
        coeffs = list(self.coeffs)
        coeffs[-self.min_degree] = self._zero_coeff()
        return TruncatedSeries(self.ring, self.min_degree, tuple(coeffs),
                               self.trunc_order, self.prime)

    # -- ring operations -----------------------------------------------------

    def _binary_check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise InvalidInputError(f"expected a series, got {other!r}")
        if other.ring is not self.ring or other.prime != self.prime:
            raise InvalidInputError(
                f"cannot combine series over {self.ring.value} (p={self.prime}) "
                f"and {other.ring.value} (p={other.prime})"
            )

    def __add__(self, other) -> "TruncatedSeries":
        self._binary_check(other)
        lo = min(self.min_degree, other.min_degree)
        hi = max(min(self.trunc_order, other.trunc_order), lo)
        coeffs = tuple(
            _add_opt(self._at(d), other._at(d)) for d in range(lo, hi)
        )
        return TruncatedSeries(self.ring, lo, coeffs, hi, self.prime)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.min_degree,
                               tuple(-c for c in self.coeffs),
                               self.trunc_order, self.prime)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            return DifferentialForm(self * other.series)
        self._binary_check(other)
        lo = self.min_degree + other.min_degree
        hi = max(min(self.trunc_order + other.min_degree,
                     other.trunc_order + self.min_degree), lo)
        rational = not self.ring.padic
        out = []
        for d in range(lo, hi):
            acc = None
            i_lo = max(self.min_degree, d - other.trunc_order + 1)
            i_hi = min(self.trunc_order - 1, d - other.min_degree)
            for i in range(i_lo, i_hi + 1):
                a, b = self._at(i), other._at(d - i)
                if rational and (a == 0 or b == 0):
                    continue
                acc = _add_opt(acc, a * b)
            if acc is None:
                acc = Fraction(0) if rational else PAdic.zero(
                    self.prime, self._working_prec())
            out.append(acc)
        return TruncatedSeries(self.ring, lo, tuple(out), hi, self.prime)

    def scale(self, c) -> "TruncatedSeries":
        """Multiply every coefficient by the same scalar."""
        return TruncatedSeries(self.ring, self.min_degree,
                               tuple(x * c for x in self.coeffs),
                               self.trunc_order, self.prime)

    # -- comparison ----------------------------------------------------------

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise agreement on the overlap of the known windows.

        Ring labels may differ; coefficient kind and prime must match.
        Raises when the windows have no common degree.
        """
        if self.ring.padic != other.ring.padic or self.prime != other.prime:
            raise InvalidInputError("cannot compare across coefficient rings")
        lo = max(self.min_degree, other.min_degree)
        hi = min(self.trunc_order, other.trunc_order)
        if hi <= lo:
            raise DisjointWindowsError(
                f"windows [{self.min_degree}, {self.trunc_order}) and "
                f"[{other.min_degree}, {other.trunc_order}) share no degree"
            )
        return all(self._at(d) == other._at(d) for d in range(lo, hi))

    def __eq__(self, other) -> bool:
        """Structural equality: same label, same window, same coefficients."""
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ring is other.ring and self.prime == other.prime
                and self.min_degree == other.min_degree
                and self.trunc_order == other.trunc_order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs)
        return (f"TruncatedSeries({self.ring.value}, "
                f"[{self.min_degree}, {self.trunc_order}), [{inner}])")


def _coeff_is_zero(c) -> bool:
    return c.is_zero if isinstance(c, PAdic) else c == 0


def _add_opt(a, b):
    # None stands for the exact zero below a window: it is absorbing for
    # precision, so the other operand passes through untouched.
    if a is None:
        return b
    if b is None:
        return a
    return a + b


@dataclass(frozen=True, eq=False)
class DifferentialForm:
    """A one-form (series) * d(variable) on the punctured formal disk."""

    series: TruncatedSeries

    @property
    def ring(self) -> RingLabel:
        return self.series.ring

    @property
    def is_zero(self) -> bool:
        return self.series.is_zero

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.series + other.series)

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.series - other.series)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(-self.series)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.series == other.series

    __hash__ = None

    def agrees_with(self, other: "DifferentialForm") -> bool:
        return self.series.agrees_with(other.series)

    def __repr__(self):
        return f"DifferentialForm({self.series!r} d{self.ring.variable})"


# -- constructors -----------------------------------------------------------


def _materialize_zero(ring: RingLabel, prime, abs_prec):
    if ring.padic:
        return PAdic.zero(prime, abs_prec)
    return Fraction(0)


def zero_series(ring: RingLabel, min_degree: int, trunc_order: int,
                prime: int | None = None,
                abs_prec: int = DEFAULT_ABS_PREC) -> TruncatedSeries:
    n = trunc_order - min_degree
    z = _materialize_zero(ring, prime, abs_prec)
    return TruncatedSeries(ring, min_degree, (z,) * n, trunc_order, prime)


def one_series(ring: RingLabel, trunc_order: int, prime: int | None = None,
               abs_prec: int = DEFAULT_ABS_PREC) -> TruncatedSeries:
    return monomial(ring, Fraction(1), 0, trunc_order, prime, abs_prec)


def monomial(ring: RingLabel, value, degree: int, trunc_order: int,
             prime: int | None = None,
             abs_prec: int = DEFAULT_ABS_PREC) -> TruncatedSeries:
    """value * x^degree + O(x^trunc_order)."""
    if degree >= trunc_order:
        raise InvalidInputError(
            f"monomial degree {degree} not inside window ending {trunc_order}"
        )
    if ring.padic:
        value = PAdic.from_rational(Fraction(value), prime, abs_prec)
        zero = PAdic.zero(prime, abs_prec)
    else:
        value = Fraction(value)
        zero = Fraction(0)
    coeffs = [zero] * (trunc_order - degree)
    coeffs[0] = value
    return TruncatedSeries(ring, degree, tuple(coeffs), trunc_order, prime)


def series_from_coeffs(ring: RingLabel, min_degree: int, values,
                       prime: int | None = None,
                       abs_prec: int = DEFAULT_ABS_PREC) -> TruncatedSeries:
    """Build a series from rational (or already p-adic) coefficient values."""
    out = []
    for v in values:
        if ring.padic and not isinstance(v, PAdic):
            v = PAdic.from_rational(Fraction(v), prime, abs_prec)
        elif not ring.padic:
            v = Fraction(v)
        out.append(v)
    return TruncatedSeries(ring, min_degree, tuple(out),
                           min_degree + len(out), prime)


# -- calculus -----------------------------------------------------------------


def derive(s: TruncatedSeries) -> DifferentialForm:
    """Termwise derivative d(sum x_j u^j) = (sum j x_j u^(j-1)) du."""
    lo = s.min_degree - 1
    if not s.ring.laurent:
        lo = max(lo, 0)
    hi = max(s.trunc_order - 1, lo)
    coeffs = tuple(s._at(d + 1) * (d + 1) for d in range(lo, hi))
    return DifferentialForm(
        TruncatedSeries(s.ring, lo, coeffs, hi, s.prime))


_ANTIDERIVE_TARGETS = {
    RingLabel.FORMAL: (RingLabel.FORMAL,),
    RingLabel.GAMMA_PLUS: (RingLabel.ROBBA_PLUS, RingLabel.GAMMA_PLUS),
    RingLabel.E_PLUS: (RingLabel.ROBBA_PLUS, RingLabel.GAMMA_PLUS),
    RingLabel.ROBBA_PLUS: (RingLabel.ROBBA_PLUS, RingLabel.GAMMA_PLUS),
    RingLabel.GAMMA: (RingLabel.ROBBA, RingLabel.GAMMA),
    RingLabel.E: (RingLabel.ROBBA, RingLabel.GAMMA),
    RingLabel.DAGGER: (RingLabel.ROBBA, RingLabel.GAMMA),
    RingLabel.ROBBA: (RingLabel.ROBBA, RingLabel.GAMMA),
}


def antiderive(f: DifferentialForm, target: RingLabel) -> TruncatedSeries:
    """The antiderivative with zero constant term, in the target ring.

    A coefficient in degree -1 that is not (provably) zero has no series
    antiderivative; the error carries that residue.
    """
    s = f.series
    allowed = _ANTIDERIVE_TARGETS[s.ring]
    if target not in allowed:
        raise InvalidInputError(
            f"cannot integrate a form over {s.ring.value} into {target.value}; "
            f"allowed targets: {', '.join(r.value for r in allowed)}"
        )
    if s.min_degree <= -1 < s.trunc_order:
        res = s._at(-1)
        if not _coeff_is_zero(res):
            raise IntegralObstructionError(
                "form has nonzero residue, no series antiderivative exists",
                res,
            )
    lo = s.min_degree + 1
    hi = s.trunc_order + 1
    coeffs = []
    for d in range(lo, hi):
        if d == 0:
            coeffs.append(_materialize_zero(target, s.prime, s._working_prec()))
        else:
            coeffs.append(s._at(d - 1) / d)
    try:
        return TruncatedSeries(target, lo, tuple(coeffs), hi, s.prime)
    except IntegralityError as exc:
        raise IntegralityError(
            f"antiderivative leaves the integer ring: {exc}"
        ) from None


def residue(f: DifferentialForm):
    """The coefficient of degree -1 of a one-form."""
    s = f.series
    if not s.ring.laurent:
        return s._zero_coeff()
    if s.trunc_order <= -1:
        raise InsufficientWindowError(
            f"window [{s.min_degree}, {s.trunc_order}) does not determine "
            "the degree -1 coefficient"
        )
    return s.coefficient(-1)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a unit, by long division.

    Power-series rings need an invertible constant term; Laurent rings need
    the lowest known coefficient to be a unit of the integer ring, otherwise
    the inverse is not a finitely supported Laurent window at all.
    """
    s = a.stripped() if not a.ring.padic else a
    if len(s.coeffs) == 0:
        raise InsufficientWindowError("cannot invert: empty window")
    if not s.ring.laurent:
        if s.min_degree > 0 or _coeff_is_zero(s.coeffs[0]):
            raise NonUnitError(
                f"not a unit of {s.ring.value}: constant term vanishes"
            )
        if s.min_degree < 0:
            raise InvalidInputError("negative degree in a power-series ring")
    else:
        pivot = s.coeffs[0]
        if _coeff_is_zero(pivot) or pivot.valuation != 0:
            raise NonUnitError(
                f"lowest known coefficient (degree {s.min_degree}) must be a "
                f"unit of the integer ring, got {pivot}"
            )
    if s.ring.integral and s.coeffs[0].valuation != 0:
        raise NonUnitError(
            f"not a unit of {s.ring.value}: constant term has valuation "
            f"{s.coeffs[0].valuation}"
        )
    m = s.min_degree
    n = len(s.coeffs)
    inv0 = s.coeffs[0].inverse() if s.ring.padic else 1 / s.coeffs[0]
    out = [inv0]
    rational = not s.ring.padic
    for k in range(1, n):
        acc = None
        for j in range(1, k + 1):
            aj, bk = s.coeffs[j], out[k - j]
            if rational and (aj == 0 or bk == 0):
                continue
            acc = _add_opt(acc, aj * bk)
        if acc is None:
            term = Fraction(0) if rational else PAdic.zero(s.prime,
                                                           s._working_prec())
        else:
            term = -(acc * inv0)
        out.append(term)
    return TruncatedSeries(s.ring, -m, tuple(out), -m + n, s.prime)


def dlog(a: TruncatedSeries) -> DifferentialForm:
    """The logarithmic derivative da/a as a one-form."""
    return DifferentialForm(derive(a).series * inverse(a))


def degree_of_unit(x: TruncatedSeries) -> int:
    """Lowest degree whose coefficient is a unit of the integer ring."""
    if not x.ring.padic:
        raise InvalidInputError("degree_of_unit needs p-adic coefficients")
    for i, c in enumerate(x.coeffs):
        if c.is_zero:
            continue
        if c.valuation < 0:
            raise NotIntegralError(
                f"coefficient {c} at degree {x.min_degree + i} is not integral"
            )
        if c.valuation == 0:
            return x.min_degree + i
    raise CannotDetermineDegreeError(
        "reduction mod p vanishes on the whole known window "
        f"[{x.min_degree}, {x.trunc_order})"
    )


def unit_decompose(a: TruncatedSeries):
    """Split a power-series unit as c * (1 - w) with w of positive order.

    Returns the pair (c, w)."""
    if a.ring not in (RingLabel.FORMAL, RingLabel.GAMMA_PLUS):
        raise InvalidInputError(
            f"unit_decompose is defined over {RingLabel.FORMAL.value} and "
            f"{RingLabel.GAMMA_PLUS.value}, not {a.ring.value}"
        )
    if a.trunc_order <= 0:
        raise InsufficientWindowError("window does not show the constant term")
    if a.min_degree > 0:
        raise NonUnitError("constant term vanishes")
    c = a.coeffs[0]
    if _coeff_is_zero(c):
        raise NonUnitError("constant term vanishes")
    if a.ring.integral and c.valuation != 0:
        raise NonUnitError(
            f"constant term {c} is not a unit of the integer ring"
        )
    scaled = a.scale(c.inverse() if a.ring.padic else 1 / c)
    w = -scaled
    coeffs = list(w.coeffs)
    one = PAdic.one(a.prime, c.rel_prec) if a.ring.padic else Fraction(1)
    coeffs[0] = coeffs[0] + one
    w = TruncatedSeries(w.ring, w.min_degree, tuple(coeffs), w.trunc_order,
                        w.prime)
    return c, w


def formal_log(a: TruncatedSeries) -> TruncatedSeries:
    """Logarithm of a power-series unit, up to the kernel of constants.

    With a = c * (1 - w), the result is -sum(w^n / n), truncated to the
    window of a."""
    if a.ring is not RingLabel.FORMAL:
        raise InvalidInputError(
            f"formal_log works over {RingLabel.FORMAL.value}; "
            "use the p-adic logarithms for p-adic rings"
        )
    _, w = unit_decompose(a)
    t = a.trunc_order
    acc = zero_series(RingLabel.FORMAL, 0, t)
    w = w.stripped()
    power = w
    for n in range(1, t):
        if power.order() is None:
            break
        acc = acc + power.clipped(trunc_order=t).scale(Fraction(-1, n))
        if n + 1 < t:
            power = (power * w).stripped().clipped(trunc_order=t)
            if power.min_degree >= t:
                break
    return acc.clipped(trunc_order=t)


def padic_log_one_minus_py(y: TruncatedSeries) -> TruncatedSeries:
    """The p-adic logarithm of 1 - p*y for integral y, as -sum((p*y)^n / n).

    The sum is truncated at the first n with n - floor(log_p(n)) at or above
    the working precision; beyond it every term vanishes modulo p^prec.  The
    output is integral."""
    if y.ring not in (RingLabel.GAMMA, RingLabel.GAMMA_PLUS):
        raise InvalidInputError(
            f"padic_log_one_minus_py needs an integral ring, got {y.ring.value}"
        )
    p = y.prime
    if len(y.coeffs) == 0:
        return y
    n_work = max(c.abs_prec for c in y.coeffs)
    n_max = 1
    while n_max - _floor_log(n_max, p) < n_work:
        n_max += 1
    n_terms = n_max - 1
    m, t = y.min_degree, y.trunc_order
    lo = min(m, n_terms * m)
    acc = {d: PAdic.zero(p, n_work) for d in range(lo, t)}
    if n_terms >= 1:
        py = y.scale(p)
        power = py
        for n in range(1, n_terms + 1):
            term = power.scale(Fraction(-1, n))
            bound = n - (vp_int(n, p) if n % p == 0 else 0)
            for d in range(lo, t):
                if d < term.min_degree:
                    continue
                if d >= term.trunc_order:
                    acc[d] = acc[d].truncated(bound)
                else:
                    acc[d] = acc[d] + term._at(d)
            if n < n_terms:
                power = power * py
    return TruncatedSeries(y.ring, lo, tuple(acc[d] for d in range(lo, t)),
                           t, p)


def _floor_log(n: int, p: int) -> int:
    k, q = 0, p
    while q <= n:
        k += 1
        q *= p
    return k


def padic_log_dagger(v: TruncatedSeries) -> TruncatedSeries:
    """The overconvergent logarithm: the zero-constant antiderivative of dv/v."""
    if v.ring is not RingLabel.GAMMA_PLUS:
        raise InvalidInputError(
            f"padic_log_dagger takes a unit over {RingLabel.GAMMA_PLUS.value}, "
            f"got {v.ring.value}"
        )
    return antiderive(dlog(v), RingLabel.ROBBA_PLUS)


def valuation_profile(s: TruncatedSeries) -> list[tuple[int, int]]:
    """(degree, valuation) for every nonvanishing stored coefficient."""
    if not s.ring.padic:
        raise InvalidInputError("valuation profile needs p-adic coefficients")
    return [
        (s.min_degree + i, c.valuation)
        for i, c in enumerate(s.coeffs)
        if not c.is_zero
    ]


def unboundedness_witness(s: TruncatedSeries, m: int) -> bool:
    """Check the valuation pattern v_p(coefficient at m*p^i) = -i.

    True when the pattern holds for every i >= 1 with m*p^i inside the
    window; at least two such degrees must be visible."""
    if not s.ring.padic:
        raise InvalidInputError("unboundedness witness needs p-adic coefficients")
    if m < 1:
        raise InvalidInputError(f"base degree must be positive, got {m}")
    p = s.prime
    checks = []
    i, deg = 1, m * p
    while deg < s.trunc_order:
        checks.append((i, deg))
        i += 1
        deg *= p
    if len(checks) < 2:
        raise InsufficientWindowError(
            f"window ends at {s.trunc_order}, needs to reach degree "
            f"{m * p * p} to see two probe degrees"
        )
    for i, deg in checks:
        c = s._at(deg)
        if c is None or c.is_zero or c.valuation != -i:
            return False
    return True
