"""Coefficient arithmetic: exact rationals and precision-tracked p-adics.

Rational coefficients are plain :class:`fractions.Fraction` values; the
stdlib type already keeps them reduced with a positive denominator, which is
exactly the normal form required here.

A :class:`PAdic` stores an element of Q_p known modulo p^abs_prec, in the
shape p^valuation * unit.  Arithmetic follows interval semantics: every
result's absolute precision is the largest exponent N such that the result
is provably correct modulo p^N given what was known about the operands.

    add:  abs_prec = min of the operands' absolute precisions
    mul:  abs_prec = min(N_a + v_b, N_b + v_a)

A value that cannot be told apart from zero at its precision is stored with
``valuation = None`` and ``unit = 0``; it stands for "some element of
valuation >= abs_prec".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, NotIntegralError

Rational = Fraction

_PRIMES_SEEN: set[int] = set()


def check_prime(p: int) -> int:
    """Validate that p is a small positive prime; return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidInputError(f"prime must be an integer, got {p!r}")
    if p in _PRIMES_SEEN:
        return p
    if p < 2:
        raise InvalidInputError(f"prime must be >= 2, got {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise InvalidInputError(f"{p} is not prime")
        d += 1
    _PRIMES_SEEN.add(p)
    return p


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise InvalidInputError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class ResidueElement:
    """An element of the prime field F_p, stored as its representative in [0, p)."""

    prime: int
    value: int

    def __post_init__(self):
        check_prime(self.prime)
        if not 0 <= self.value < self.prime:
            raise InvalidInputError(
                f"residue value {self.value} outside [0, {self.prime})"
            )

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "ResidueElement") -> "ResidueElement":
        self._check(other)
        return ResidueElement(self.prime, (self.value + other.value) % self.prime)

    def __neg__(self) -> "ResidueElement":
        return ResidueElement(self.prime, -self.value % self.prime)

    def __sub__(self, other: "ResidueElement") -> "ResidueElement":
        return self + (-other)

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        self._check(other)
        return ResidueElement(self.prime, (self.value * other.value) % self.prime)

    def inverse(self) -> "ResidueElement":
        if self.value == 0:
            raise InvalidInputError("0 has no inverse in F_p")
        return ResidueElement(self.prime, pow(self.value, -1, self.prime))

    def _check(self, other):
        if not isinstance(other, ResidueElement) or other.prime != self.prime:
            raise InvalidInputError("residue arithmetic needs matching primes")

    def __str__(self):
        return f"{self.value} (mod {self.prime})"


@dataclass(frozen=True, eq=False)
class PAdic:
    """An element of Q_p known modulo p^abs_prec.

    Fields
    ------
    prime:     the prime p.
    valuation: v_p of the value, or None when the value is indistinguishable
               from zero at this precision (valuation >= abs_prec).
    unit:      integer in [1, p^(abs_prec - valuation)) coprime to p; 0 for
               the zero case.
    abs_prec:  the value is known modulo p^abs_prec.
    """

    prime: int
    valuation: int | None
    unit: int
    abs_prec: int

    def __post_init__(self):
        check_prime(self.prime)
        if self.valuation is None:
            if self.unit != 0:
                raise InvalidInputError("zero p-adic must have unit 0")
        else:
            rel = self.abs_prec - self.valuation
            if rel < 1:
                raise InvalidInputError(
                    "nonzero p-adic needs abs_prec > valuation "
                    f"(got valuation {self.valuation}, abs_prec {self.abs_prec})"
                )
            if not 1 <= self.unit < self.prime**rel or self.unit % self.prime == 0:
                raise InvalidInputError(
                    f"unit {self.unit} invalid for relative precision {rel}"
                )

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, prime: int, abs_prec: int) -> "PAdic":
        return cls(prime, None, 0, abs_prec)

    @classmethod
    def one(cls, prime: int, abs_prec: int) -> "PAdic":
        return padic_normalize(1, 1, prime, abs_prec)

    @classmethod
    def from_rational(cls, value, prime: int, abs_prec: int) -> "PAdic":
        q = Fraction(value)
        return padic_normalize(q.numerator, q.denominator, prime, abs_prec)

    # -- views -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when the value cannot be told apart from zero at this precision."""
        return self.valuation is None

    @property
    def rel_prec(self) -> int | None:
        return None if self.valuation is None else self.abs_prec - self.valuation

    @property
    def valuation_floor(self) -> int:
        """A proven lower bound for the valuation."""
        return self.abs_prec if self.valuation is None else self.valuation

    def to_fraction(self) -> Fraction:
        """The exact rational representative p^v * unit (0 for the zero case)."""
        if self.valuation is None:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(self.unit * self.prime**self.valuation)
        return Fraction(self.unit, self.prime ** (-self.valuation))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PAdic):
            if other.prime != self.prime:
                raise InvalidInputError("p-adic arithmetic needs matching primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdic.from_rational(other, self.prime, self.abs_prec)
        return None

    def __add__(self, other) -> "PAdic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.abs_prec, o.abs_prec)
        s = self.to_fraction() + o.to_fraction()
        return padic_normalize(s.numerator, s.denominator, self.prime, n)

    __radd__ = __add__

    def __neg__(self) -> "PAdic":
        if self.valuation is None:
            return self
        rel = self.abs_prec - self.valuation
        return PAdic(self.prime, self.valuation, -self.unit % self.prime**rel,
                     self.abs_prec)

    def __sub__(self, other) -> "PAdic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "PAdic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "PAdic":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            # Exact scalar: relative precision is preserved.
            if other == 0:
                return PAdic.zero(self.prime, self.abs_prec)
            q = Fraction(other)
            k = vp_int(q.numerator, self.prime) - vp_int(q.denominator, self.prime)
            s = self.to_fraction() * q
            return padic_normalize(s.numerator, s.denominator, self.prime,
                                   self.abs_prec + k)
        if not isinstance(other, PAdic):
            return NotImplemented
        o = self._coerce(other)
        n = min(self.abs_prec + o.valuation_floor, o.abs_prec + self.valuation_floor)
        s = self.to_fraction() * o.to_fraction()
        return padic_normalize(s.numerator, s.denominator, self.prime, n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PAdic":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise InvalidInputError("division by zero")
            q = Fraction(other)
            k = vp_int(q.numerator, self.prime) - vp_int(q.denominator, self.prime)
            s = self.to_fraction() / q
            return padic_normalize(s.numerator, s.denominator, self.prime,
                                   self.abs_prec - k)
        if not isinstance(other, PAdic):
            return NotImplemented
        if other.prime != self.prime:
            raise InvalidInputError("p-adic arithmetic needs matching primes")
        if other.is_zero:
            raise InvalidInputError(
                "division by a value indistinguishable from zero "
                f"(0 mod {other.prime}^{other.abs_prec})"
            )
        if self.is_zero:
            return PAdic.zero(self.prime, self.abs_prec - other.valuation)
        rel = min(self.rel_prec, other.rel_prec)
        n = self.valuation - other.valuation + rel
        s = self.to_fraction() / other.to_fraction()
        return padic_normalize(s.numerator, s.denominator, self.prime, n)

    def inverse(self) -> "PAdic":
        if self.is_zero:
            raise InvalidInputError(
                "no inverse: value indistinguishable from zero at this precision"
            )
        return PAdic.one(self.prime, self.rel_prec) / self

    def truncated(self, abs_prec: int) -> "PAdic":
        """The same value known only modulo p^abs_prec (never gains precision)."""
        n = min(self.abs_prec, abs_prec)
        s = self.to_fraction()
        return padic_normalize(s.numerator, s.denominator, self.prime, n)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        """Agreement at the minimum of the two absolute precisions."""
        if isinstance(other, PAdic) and other.prime != self.prime:
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero

    __hash__ = None

    # -- text --------------------------------------------------------------

    def __str__(self):
        p, n = self.prime, self.abs_prec
        if self.valuation is None:
            return f"0 (mod {p}^{n})"
        return f"{p}^{self.valuation}*{self.unit} (mod {p}^{n})"

    def __repr__(self):
        return f"PAdic({self})"


def padic_normalize(numerator: int, denominator: int, prime: int,
                    abs_prec: int) -> PAdic:
    """Normalize a rational a/b into p^v * unit form at the given precision.

    The denominator must be nonzero.  Values of valuation >= abs_prec
    collapse to the zero element at that precision.
    """
    check_prime(prime)
    if denominator == 0:
        raise InvalidInputError("denominator must be nonzero")
    if numerator == 0:
        return PAdic.zero(prime, abs_prec)
    vn = vp_int(numerator, prime)
    vd = vp_int(denominator, prime)
    v = vn - vd
    rel = abs_prec - v
    if rel < 1:
        return PAdic.zero(prime, abs_prec)
    modulus = prime**rel
    num_unit = numerator // prime**vn
    den_unit = denominator // prime**vd
    unit = num_unit * pow(den_unit, -1, modulus) % modulus
    return PAdic(prime, v, unit, abs_prec)


def reduce_mod_p(x: PAdic) -> ResidueElement:
    """Image of an integral p-adic in the residue field F_p."""
    if x.is_zero:
        if x.abs_prec < 1:
            raise InvalidInputError(
                "cannot reduce mod p: value only known modulo "
                f"{x.prime}^{x.abs_prec}"
            )
        return ResidueElement(x.prime, 0)
    if x.valuation < 0:
        raise NotIntegralError(
            f"value has valuation {x.valuation} < 0, not in the integer ring"
        )
    if x.valuation >= 1:
        return ResidueElement(x.prime, 0)
    return ResidueElement(x.prime, x.unit % x.prime)


def lift_from_residue(x: ResidueElement, abs_prec: int) -> PAdic:
    """The representative in [0, p) viewed as a p-adic at the given precision."""
    if abs_prec < 1:
        raise InvalidInputError("lift needs abs_prec >= 1")
    if x.value == 0:
        return PAdic.zero(x.prime, abs_prec)
    return PAdic(x.prime, 0, x.value, abs_prec)
