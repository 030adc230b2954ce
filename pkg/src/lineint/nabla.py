"""Connections in a fixed frame over one variable.

A framed module is a connection matrix C that is strictly upper triangular
with respect to a block structure (the signature).  Horizontal sections come
from the power-series recurrence (i+1) U_(i+1) = sum_j N_j U_(i-j), which
only makes sense when division by every integer is harmless; the unipotent
trivialization integrates blockwise instead and works over any ring where
one-forms have antiderivatives.  The normalized trivialization, constant
term pinned to the identity, is the representative collecting the iterated
line integrals of the connection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import PAdic
from .errors import InvalidInputError, NotFramedError
from .series import (
    DEFAULT_ABS_PREC,
    DifferentialForm,
    RingLabel,
    TruncatedSeries,
    antiderive,
    derive,
    one_series,
    zero_series,
)


@dataclass(frozen=True)
class Signature:
    """Block sizes (r_1, ..., r_n) of a framed filtration."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if not self.parts:
            raise InvalidInputError("signature needs at least one part")
        if any(p < 1 for p in self.parts):
            raise InvalidInputError(
                f"signature parts must be positive, got {self.parts}"
            )

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p
        return tuple(out)

    def block_of(self, index: int) -> int:
        """Block containing the given row (or column) index."""
        if not 0 <= index < self.total:
            raise InvalidInputError(f"index {index} out of range")
        for i, off in enumerate(self.offsets):
            if index < off + self.parts[i]:
                return i
        raise AssertionError("unreachable")

    def block_rows(self, i: int) -> range:
        off = self.offsets[i]
        return range(off, off + self.parts[i])


@dataclass(frozen=True, eq=False)
class ConnectionMatrix:
    """Square matrix of one-forms: a connection written in a frame."""

    ring: RingLabel
    entries: tuple
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple(tuple(row) for row in self.entries))
        r = len(self.entries)
        if r == 0:
            raise InvalidInputError("connection matrix must be nonempty")
        for row in self.entries:
            if len(row) != r:
                raise InvalidInputError("connection matrix must be square")
            for f in row:
                if not isinstance(f, DifferentialForm):
                    raise InvalidInputError(f"expected a one-form, got {f!r}")
                if f.ring is not self.ring or f.series.prime != self.prime:
                    raise InvalidInputError(
                        "connection entries must share the matrix ring "
                        "and prime"
                    )

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, a: int, b: int) -> DifferentialForm:
        return self.entries[a][b]

    def negated(self) -> "ConnectionMatrix":
        return ConnectionMatrix(
            self.ring,
            tuple(tuple(-f for f in row) for row in self.entries),
            self.prime,
        )

    def relabeled(self, ring: RingLabel) -> "ConnectionMatrix":
        return ConnectionMatrix(
            ring,
            tuple(tuple(DifferentialForm(f.series.relabeled(ring))
                        for f in row) for row in self.entries),
            self.prime,
        )

    def working_precision(self) -> int:
        precs = [c.abs_prec for row in self.entries for f in row
                 for c in f.series.coeffs if isinstance(c, PAdic)]
        return max(precs) if precs else DEFAULT_ABS_PREC


@dataclass(frozen=True, eq=False)
class FramedNablaModule:
    """A connection that is strictly upper triangular in its block frame."""

    signature: Signature
    connection: ConnectionMatrix

    def __post_init__(self):
        sig, conn = self.signature, self.connection
        if conn.size != sig.total:
            raise InvalidInputError(
                f"connection size {conn.size} does not match signature "
                f"total {sig.total}"
            )
        for a in range(conn.size):
            for b in range(conn.size):
                if sig.block_of(a) < sig.block_of(b):
                    continue
                if not conn.entries[a][b].is_zero:
                    raise NotFramedError(
                        f"block ({sig.block_of(a) + 1}, {sig.block_of(b) + 1}) "
                        "of the connection is not zero; the frame requires "
                        "strict block upper triangularity"
                    )

    @property
    def ring(self) -> RingLabel:
        return self.connection.ring


def validate_framed(signature: Signature,
                    connection: ConnectionMatrix) -> FramedNablaModule:
    """Build a framed module, checking the block-triangularity the frame forces."""
    return FramedNablaModule(signature, connection)


def _entry_is_identity(s: TruncatedSeries) -> bool:
    if s.min_degree > 0 or s.trunc_order <= 0:
        return False
    c = s.constant_term()
    if s.ring.padic:
        if c != PAdic.one(s.prime, c.abs_prec):
            return False
    elif c != 1:
        return False
    return s.without_constant_term().is_zero


@dataclass(frozen=True, eq=False)
class UnipotentMatrix:
    """Block upper unitriangular matrix of series: identity diagonal blocks."""

    signature: Signature
    ring: RingLabel
    entries: tuple
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple(tuple(row) for row in self.entries))
        sig = self.signature
        r = sig.total
        if len(self.entries) != r or any(len(row) != r for row in self.entries):
            raise InvalidInputError(
                f"matrix shape does not match signature total {r}"
            )
        for a in range(r):
            for b in range(r):
                s = self.entries[a][b]
                if not isinstance(s, TruncatedSeries):
                    raise InvalidInputError(f"expected a series, got {s!r}")
                if s.ring is not self.ring or s.prime != self.prime:
                    raise InvalidInputError(
                        "matrix entries must share the matrix ring and prime"
                    )
                if sig.block_of(a) < sig.block_of(b):
                    continue
                if a == b:
                    if not _entry_is_identity(s):
                        raise InvalidInputError(
                            f"diagonal entry ({a + 1}, {a + 1}) is not the "
                            "constant 1"
                        )
                elif not s.is_zero:
                    raise InvalidInputError(
                        f"entry ({a + 1}, {b + 1}) must vanish: diagonal "
                        "blocks are identity and lower blocks are zero"
                    )

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, a: int, b: int) -> TruncatedSeries:
        return self.entries[a][b]

    def constant_matrix(self) -> tuple:
        """The matrix of constant terms (the value at the origin)."""
        return tuple(tuple(s.constant_term() for s in row)
                     for row in self.entries)


@dataclass(frozen=True, eq=False)
class InvariantRepresentative:
    """Trivializing matrix normalized to the identity at the origin."""

    matrix: UnipotentMatrix
    normalization: bool = True

    def __post_init__(self):
        if not self.normalization:
            return
        for a, row in enumerate(self.matrix.entries):
            for b, s in enumerate(row):
                c = s.constant_term()
                want_one = a == b
                is_one = (c == PAdic.one(s.prime, c.abs_prec)
                          if s.ring.padic else c == 1)
                vanishes = c.is_zero if s.ring.padic else c == 0
                if (want_one and not is_one) or (not want_one and not vanishes):
                    raise InvalidInputError(
                        "representative is not normalized: constant term at "
                        f"({a + 1}, {b + 1}) is {c}"
                    )


def fundamental_solution(n_matrix: ConnectionMatrix, trunc_order: int) -> tuple:
    """Solve S' = N*S with S(0) = I by the layer recurrence.

    Writing N = sum N_j t^j and S = sum U_i t^i, the layers satisfy
    (i+1) U_(i+1) = sum_(j<=i) N_j U_(i-j).  The division by i+1 restricts
    this to rational coefficients; p-adic connections must go through the
    unipotent integrator instead.  Returns the r x r matrix of series,
    truncated to what the window of N can prove (at most trunc_order)."""
    if n_matrix.ring is not RingLabel.FORMAL:
        raise InvalidInputError(
            "the layer recurrence divides by every integer and needs "
            f"rational coefficients, got ring {n_matrix.ring.value}"
        )
    if trunc_order < 1:
        raise InvalidInputError("truncation must keep the constant layer")
    r = n_matrix.size
    t_known = 1 + min(f.series.trunc_order
                      for row in n_matrix.entries for f in row)
    t = min(trunc_order, t_known)
    n_coeff = [
        [[n_matrix.entries[a][b].series.coefficient(j) for b in range(r)]
         for a in range(r)]
        for j in range(max(t - 1, 0))
    ]
    layers = [[[Fraction(int(a == b)) for b in range(r)] for a in range(r)]]
    for i in range(t - 1):
        nxt = [[Fraction(0)] * r for _ in range(r)]
        for j in range(i + 1):
            nj, u = n_coeff[j], layers[i - j]
            for a in range(r):
                for c in range(r):
                    if nj[a][c] == 0:
                        continue
                    for b in range(r):
                        if u[c][b] != 0:
                            nxt[a][b] += nj[a][c] * u[c][b]
        inv = Fraction(1, i + 1)
        layers.append([[x * inv for x in row] for row in nxt])
    return tuple(
        tuple(
            TruncatedSeries(RingLabel.FORMAL, 0,
                            tuple(layers[i][a][b] for i in range(t)), t)
            for b in range(r)
        )
        for a in range(r)
    )


def horizontal_basis(module: FramedNablaModule, trunc_order: int) -> tuple:
    """Basis of sections killed by the connection, as matrix columns.

    A coordinate vector s is horizontal when ds + C s dt = 0, so the layer
    recurrence runs on N = -C."""
    return fundamental_solution(module.connection.negated(), trunc_order)


_TRIVIALIZE_RINGS = (RingLabel.FORMAL, RingLabel.ROBBA_PLUS, RingLabel.ROBBA)


def trivialize(module: FramedNablaModule, trunc_order: int) -> UnipotentMatrix:
    """The unipotent V with dV = V*C and V(0) = I, built by superdiagonals.

    Each block at offset d is one antiderivative:

        V[i, i+d] = antiderive( C[i, i+d] + sum_(0<e<d) V[i, i+e] C[i+e, i+d] )

    so the entries are the iterated line integrals of the connection, each
    normalized to vanish at the origin."""
    conn = module.connection
    ring = conn.ring
    if ring not in _TRIVIALIZE_RINGS:
        raise InvalidInputError(
            f"cannot integrate one-forms over {ring.value}; "
            "use invariant() to view an integral connection in a ring "
            "with antiderivatives"
        )
    if trunc_order < 1:
        raise InvalidInputError("truncation must show the constant term")
    sig = module.signature
    prime = conn.prime
    prec = conn.working_precision()
    one = one_series(ring, trunc_order, prime, prec)
    zero = zero_series(ring, 0, trunc_order, prime, prec)
    r = sig.total
    ents = [[one if a == b else zero for b in range(r)] for a in range(r)]
    n = len(sig.parts)
    for d in range(1, n):
        for i_block in range(n - d):
            j_block = i_block + d
            for a in sig.block_rows(i_block):
                for b in sig.block_rows(j_block):
                    w = conn.entries[a][b]
                    for e in range(1, d):
                        for c in sig.block_rows(i_block + e):
                            w = w + ents[a][c] * conn.entries[c][b]
                    ents[a][b] = antiderive(w, ring).clipped(
                        trunc_order=trunc_order)
    return UnipotentMatrix(sig, ring,
                           tuple(tuple(row) for row in ents), prime)


def matrix_residual(module: FramedNablaModule, v_matrix: UnipotentMatrix,
                    trunc_order: int | None = None) -> bool:
    """Whether dV - V*C vanishes on the window both sides can prove."""
    conn = module.connection
    if v_matrix.size != conn.size:
        raise InvalidInputError(
            f"matrix size {v_matrix.size} does not match connection "
            f"size {conn.size}"
        )
    if conn.ring is not v_matrix.ring:
        conn = conn.relabeled(v_matrix.ring)
    r = conn.size
    for a in range(r):
        for b in range(r):
            res = derive(v_matrix.entries[a][b])
            for c in range(r):
                res = res - v_matrix.entries[a][c] * conn.entries[c][b]
            s = res.series
            if trunc_order is not None:
                s = s.clipped(trunc_order=trunc_order)
            if not s.is_zero:
                return False
    return True


_INVARIANT_SOURCES = (RingLabel.FORMAL, RingLabel.GAMMA_PLUS,
                      RingLabel.E_PLUS, RingLabel.ROBBA_PLUS)


def invariant(module: FramedNablaModule,
              trunc_order: int) -> InvariantRepresentative:
    """The normalized line-integral representative of a framed module.

    The connection is re-read in the big power-series ring, where every
    one-form has an antiderivative, and trivialized there.  Pinning the
    constant term to the identity makes the representative deterministic
    for the given frame and truncation."""
    conn = module.connection
    if conn.ring not in _INVARIANT_SOURCES:
        raise InvalidInputError(
            f"connections over {conn.ring.value} have no origin to "
            "normalize at; expected a power-series ring"
        )
    if conn.ring.padic and conn.ring is not RingLabel.ROBBA_PLUS:
        module = FramedNablaModule(
            module.signature, conn.relabeled(RingLabel.ROBBA_PLUS))
    v = trivialize(module, trunc_order)
    return InvariantRepresentative(v, normalization=True)


def series_matrix_product(a_entries, b_entries) -> tuple:
    """Matrix product of two square series matrices of the same size."""
    r = len(a_entries)
    if len(b_entries) != r:
        raise InvalidInputError("matrix sizes differ")
    out = []
    for a in range(r):
        row = []
        for b in range(r):
            acc = None
            for c in range(r):
                term = a_entries[a][c] * b_entries[c][b]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def is_identity_series_matrix(entries) -> bool:
    """Diagonal entries constantly 1, everything else provably zero."""
    for a, row in enumerate(entries):
        for b, s in enumerate(row):
            if a == b:
                if not _entry_is_identity(s):
                    return False
            elif not s.is_zero:
                return False
    return True
