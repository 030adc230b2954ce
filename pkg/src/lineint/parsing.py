"""Text grammar for series windows, and the JSON document formats.

The one-variable grammar:

    series ::= ['-'] term (('+' | '-') term)* '+' marker
    term   ::= coeff | [coeff '*'] factor ('*' factor)*
    factor ::= var ['^' ['-'] int]
    coeff  ::= int ['/' int]
    marker ::= 'O(' var '^' ['-'] int [',' var '^' int] ')'
    var    ::= 't' | 'u' | 'x'

The marker is mandatory: text with no stated window end does not describe a
value of this library.  A bare marker is the all-zero window.  Like terms
merge, so "t + t + O(t^3)" reads as 2t.  Negative exponents need a ring with
poles.  Two-variable windows use the two-exponent marker O(u^A, x^B).

Printing is canonical: terms in increasing degree, vanishing coefficients
skipped, unit coefficients elided next to a variable, rationals as "a/b".
Coefficients known modulo a prime power print as their exact rational
representative, so printed text always re-parses; the precision-qualified
form appears in the structured documents only.
"""

from fractions import Fraction
import re

from .coeff import PAdic, check_prime
from .errors import (
    InsufficientWindowError,
    InvalidInputError,
    ParseError,
)
from .nabla import ConnectionMatrix, FramedNablaModule, Signature
from .scheme import BiForm, BiSeries, FramedFamily, biseries_from_map, \
    zero_biseries
from .series import (
    DEFAULT_ABS_PREC,
    DifferentialForm,
    RingLabel,
    TruncatedSeries,
    _coeff_is_zero,
    series_from_coeffs,
    valuation_profile,
    zero_series,
)

_VARS = ("t", "u", "x")

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<op>[-+*/^(),])"
)


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), m.start()))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.end = len(text)

    def peek(self, ahead: int = 0):
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok[2] if tok is not None else self.end

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def at_op(self, op: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok[0] == "op" and tok[1] == op

    def at_name(self, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok[0] == "name"

    def at_int(self) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "int"

    def expect_op(self, op: str):
        if not self.at_op(op):
            raise ParseError(f"expected {op!r}", self.pos())
        return self.take()

    def done(self) -> bool:
        return self.i >= len(self.tokens)


def _parse_int(c: _Cursor, what: str) -> int:
    sign = 1
    if c.at_op("-"):
        c.take()
        sign = -1
    if not c.at_int():
        raise ParseError(f"expected an integer {what}", c.pos())
    return sign * int(c.take()[1])


def _parse_coeff(c: _Cursor) -> Fraction:
    num = int(c.take()[1])
    if c.at_op("/"):
        c.take()
        if not c.at_int():
            raise ParseError("expected a denominator", c.pos())
        pos = c.pos()
        den = int(c.take()[1])
        if den == 0:
            raise ParseError("zero denominator", pos)
        return Fraction(num, den)
    return Fraction(num)


def _parse_factor(c: _Cursor, powers: dict):
    kind, name, pos = c.take()
    if name not in _VARS:
        raise ParseError(f"unknown symbol {name!r}", pos)
    exp = 1
    if c.at_op("^"):
        c.take()
        exp = _parse_int(c, "exponent")
    powers[name] = powers.get(name, 0) + exp


def _at_marker(c: _Cursor, ahead: int = 0) -> bool:
    tok = c.peek(ahead)
    return tok is not None and tok[0] == "name" and tok[1] == "O"


def _parse_term(c: _Cursor, sign: int):
    pos = c.pos()
    coeff = None
    powers: dict = {}
    if c.at_int():
        coeff = _parse_coeff(c)
    elif not c.at_name():
        raise ParseError("expected a term", pos)
    while True:
        if c.at_name() and not _at_marker(c):
            _parse_factor(c, powers)
        elif c.at_op("*"):
            if not c.at_name(1) or _at_marker(c, 1):
                raise ParseError("expected a variable after '*'", c.pos())
            c.take()
            _parse_factor(c, powers)
        else:
            break
    if coeff is None and not powers:
        raise ParseError("expected a term", pos)
    if coeff is None:
        coeff = Fraction(1)
    return sign * coeff, powers, pos


def _parse_marker(c: _Cursor):
    _, _, mpos = c.take()
    c.expect_op("(")
    entries = []
    while True:
        if not c.at_name():
            raise ParseError("expected a variable in the O(...) marker",
                             c.pos())
        kind, name, pos = c.take()
        if name not in _VARS:
            raise ParseError(f"unknown symbol {name!r}", pos)
        c.expect_op("^")
        entries.append((name, _parse_int(c, "window end"), pos))
        if c.at_op(","):
            c.take()
            continue
        break
    c.expect_op(")")
    if len(entries) > 2:
        raise ParseError("the O(...) marker takes at most two variables",
                         mpos)
    return entries


def _parse_text(text: str):
    """Lex and parse; return (terms, marker).

    terms is a list of (coefficient, {var: exponent}, position); marker is a
    list of one or two (var, window end, position) entries.
    """
    c = _Cursor(text)
    if c.done():
        raise ParseError("empty input", 0)
    terms = []
    negate = False
    if c.at_op("-"):
        c.take()
        negate = True
    while True:
        if _at_marker(c):
            if negate:
                raise ParseError("the O(...) marker follows '+', not '-'",
                                 c.pos())
            marker = _parse_marker(c)
            break
        terms.append(_parse_term(c, -1 if negate else 1))
        if c.done():
            raise ParseError("missing O(...) marker", c.end)
        if c.at_op("+"):
            c.take()
            negate = False
        elif c.at_op("-"):
            c.take()
            negate = True
        else:
            raise ParseError("expected '+', '-' or the O(...) marker",
                             c.pos())
    if not c.done():
        raise ParseError("unexpected input after the O(...) marker", c.pos())
    return terms, marker


# -- one-variable series -------------------------------------------------------


def parse_rational_terms(text: str):
    """Parse one-variable text to ({degree: coefficient}, var, window end).

    Like terms are merged.  No ring semantics are applied: any degree below
    the window end is legal here.
    """
    terms, marker = _parse_text(text)
    if len(marker) != 1:
        raise ParseError("a one-variable series takes a one-variable marker",
                         marker[0][2])
    var, trunc, _ = marker[0]
    acc: dict = {}
    for coeff, powers, pos in terms:
        for v in powers:
            if v != var:
                raise ParseError(
                    f"variable {v!r} does not belong in a series in {var!r}",
                    pos)
        d = powers.get(var, 0)
        if d >= trunc:
            raise ParseError(
                f"term degree {d} is not below the window end {trunc}", pos)
        acc[d] = acc.get(d, Fraction(0)) + coeff
    return acc, var, trunc


def rational_residue(text: str) -> Fraction:
    """Read the degree -1 coefficient straight off one-variable text."""
    acc, _, trunc = parse_rational_terms(text)
    if trunc <= -1:
        raise InsufficientWindowError(
            f"the window ends at {trunc}, so the degree -1 coefficient "
            "is not visible")
    return acc.get(-1, Fraction(0))


def parse_series(text: str, ring: RingLabel = RingLabel.FORMAL,
                 prime: int | None = None,
                 abs_prec: int = DEFAULT_ABS_PREC) -> TruncatedSeries:
    """Parse text into a series window over the given ring.

    Unwritten degrees below the window end are zero, so the window floor is
    min(0, lowest written degree).
    """
    acc, var, trunc = parse_rational_terms(text)
    if var != ring.variable:
        raise ParseError(
            f"ring {ring.value} uses the variable {ring.variable!r}, "
            f"not {var!r}")
    if ring.padic and prime is None:
        raise InvalidInputError(f"ring {ring.value} needs a prime")
    if not ring.padic and prime is not None:
        raise InvalidInputError("rational series take no prime")
    lo = min([0] + list(acc))
    if lo < 0 and not ring.laurent:
        raise ParseError(
            f"degree {lo} is below the window floor of ring {ring.value}")
    if trunc <= lo:
        if not ring.laurent and trunc < 0:
            raise ParseError(
                f"window end {trunc} is below the floor of ring {ring.value}")
        return zero_series(ring, trunc, trunc, prime, abs_prec)
    coeffs = [acc.get(d, Fraction(0)) for d in range(lo, trunc)]
    return series_from_coeffs(ring, lo, coeffs, prime, abs_prec)


def _frac_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coeff_fraction(c) -> Fraction:
    return c.to_fraction() if isinstance(c, PAdic) else c


def _term_chunk(mag: Fraction, factors) -> str:
    names = [v if e == 1 else f"{v}^{e}" for v, e in factors]
    if not names:
        return _frac_text(mag)
    if mag == 1:
        return "*".join(names)
    return "*".join([_frac_text(mag)] + names)


def _join_terms(items) -> str:
    if not items:
        return "0"
    chunks = []
    for k, (q, factors) in enumerate(items):
        body = _term_chunk(abs(q), factors)
        if k == 0:
            chunks.append(f"-{body}" if q < 0 else body)
        else:
            chunks.append(f" - {body}" if q < 0 else f" + {body}")
    return "".join(chunks)


def print_series(s: TruncatedSeries) -> str:
    """Canonical text for a series window; print-parse-print is stable."""
    var = s.ring.variable
    items = []
    for idx, c in enumerate(s.coeffs):
        if _coeff_is_zero(c):
            continue
        d = s.min_degree + idx
        items.append((_coeff_fraction(c), [(var, d)] if d != 0 else []))
    if not items and s.trunc_order <= 0:
        return f"O({var}^{s.trunc_order})"
    return f"{_join_terms(items)} + O({var}^{s.trunc_order})"


def print_form(f: DifferentialForm) -> str:
    return print_series(f.series)


def structured_series(s: TruncatedSeries) -> dict:
    """The machine-readable document for one series window."""
    doc = {
        "window": [s.min_degree, s.trunc_order],
        "coeffs": [str(c) for c in s.coeffs],
        "ring": s.ring.value,
        "p": s.prime,
    }
    if s.ring.padic:
        doc["profile"] = [[d, v] for d, v in valuation_profile(s)]
    return doc


# -- two-variable series -------------------------------------------------------


def parse_biseries(text: str, ring: RingLabel, prime: int | None = None,
                   abs_prec: int = DEFAULT_ABS_PREC,
                   fiber_var: str = "x") -> BiSeries:
    """Parse two-variable text; the marker is O(base^A, fiber^B)."""
    base = ring.variable
    if fiber_var not in _VARS or fiber_var == base:
        raise InvalidInputError(
            f"fiber variable must be one of {_VARS} and differ from "
            f"{base!r}, got {fiber_var!r}")
    if ring.padic and prime is None:
        raise InvalidInputError(f"ring {ring.value} needs a prime")
    if not ring.padic and prime is not None:
        raise InvalidInputError("rational series take no prime")
    terms, marker = _parse_text(text)
    if len(marker) != 2:
        raise ParseError(
            f"a two-variable window takes O({base}^A, {fiber_var}^B)",
            marker[0][2])
    (bv, tu, p1), (fv, tx, p2) = marker
    if bv != base:
        raise ParseError(
            f"ring {ring.value} uses the base variable {base!r}, not {bv!r}",
            p1)
    if fv != fiber_var:
        raise ParseError(
            f"expected the fiber variable {fiber_var!r}, not {fv!r}", p2)
    if tu < 0 or tx < 0:
        raise ParseError("two-variable window ends must not be negative", p1)
    mapping: dict = {}
    for coeff, powers, pos in terms:
        for v in powers:
            if v not in (base, fiber_var):
                raise ParseError(
                    f"variable {v!r} does not belong in a window in "
                    f"{base!r} and {fiber_var!r}", pos)
        i = powers.get(base, 0)
        j = powers.get(fiber_var, 0)
        if i < 0 or j < 0:
            raise ParseError(
                "two-variable windows take no negative degrees", pos)
        if i >= tu or j >= tx:
            raise ParseError(
                f"term degree ({i}, {j}) is not inside the window "
                f"({tu}, {tx})", pos)
        mapping[(i, j)] = mapping.get((i, j), Fraction(0)) + coeff
    return biseries_from_map(ring, mapping, tu, tx, prime, abs_prec)


def print_biseries(b: BiSeries, fiber_var: str = "x") -> str:
    """Canonical text, terms ordered by base then fiber degree."""
    base = b.ring.variable
    items = []
    for i, row in enumerate(b.coeffs):
        for j, c in enumerate(row):
            if _coeff_is_zero(c):
                continue
            factors = [(v, e) for v, e in ((base, i), (fiber_var, j))
                       if e != 0]
            items.append((_coeff_fraction(c), factors))
    return (f"{_join_terms(items)} + "
            f"O({base}^{b.trunc_u}, {fiber_var}^{b.trunc_x})")


def structured_biseries(b: BiSeries, fiber_var: str = "x") -> dict:
    """The machine-readable document for one two-variable window."""
    return {
        "trunc": [b.trunc_u, b.trunc_x],
        "coeffs": [[str(c) for c in row] for row in b.coeffs],
        "ring": b.ring.value,
        "p": b.prime,
        "fiber_var": fiber_var,
    }


# -- document formats ----------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def _field(doc: dict, key: str, kinds, what: str, required: bool = True,
           default=None):
    val = doc.get(key)
    if val is None:
        _require(not required, f"the {what} is missing the field {key!r}")
        return default
    if kinds is int:
        _require(isinstance(val, int) and not isinstance(val, bool),
                 f"field {key!r} must be an integer")
    else:
        _require(isinstance(val, kinds), f"field {key!r} has the wrong type")
    return val


def _ring_from_label(label) -> RingLabel:
    _require(isinstance(label, str), "field 'ring' must be a ring label")
    try:
        return RingLabel(label)
    except ValueError:
        raise ParseError(f"unknown ring label {label!r}") from None


def document_precision(doc: dict) -> int:
    """The working precision a document asks for (its abs_prec field)."""
    _require(isinstance(doc, dict), "a document is a JSON object")
    prec = _field(doc, "abs_prec", int, "document", required=False,
                  default=DEFAULT_ABS_PREC)
    _require(prec >= 1, "field 'abs_prec' must be at least 1")
    return prec


def _doc_mode(doc: dict, what: str):
    """Read the shared header fields: ring, prime, working precision."""
    ring = _ring_from_label(_field(doc, "ring", str, what))
    if ring.padic:
        prime = check_prime(_field(doc, "p", int, what))
        prec = document_precision(doc)
    else:
        _require(doc.get("p") is None, f"ring {ring.value} takes no prime")
        prime = None
        prec = DEFAULT_ABS_PREC
    return ring, prime, prec


def _signature_from(val) -> Signature:
    _require(isinstance(val, list) and val
             and all(isinstance(n, int) and not isinstance(n, bool)
                     for n in val),
             "field 'signature' must be a list of integers")
    return Signature(tuple(val))


def _string_rows(doc: dict, key: str, what: str, size: int | None = None):
    rows = _field(doc, key, list, what)
    _require(bool(rows) and all(isinstance(r, list) for r in rows),
             f"field {key!r} must be a matrix")
    r = size if size is not None else len(rows)
    _require(len(rows) == r and all(len(row) == r for row in rows),
             f"field {key!r} must be a {r} by {r} matrix")
    return rows


def load_connection_matrix(doc: dict):
    """Read a connection document; return (matrix, signature, window end).

    Fields: ring, connection (square matrix of series text, "0" allowed),
    trunc, p plus optional abs_prec when the ring needs them, and an
    optional signature.  No framing is checked here.
    """
    _require(isinstance(doc, dict), "a connection document is a JSON object")
    what = "connection document"
    sig_val = doc.get("signature")
    sig = _signature_from(sig_val) if sig_val is not None else None
    ring, prime, prec = _doc_mode(doc, what)
    trunc = _field(doc, "trunc", int, what)
    _require(trunc >= 1, "field 'trunc' must be at least 1")
    rows = _string_rows(doc, "connection", what,
                        sig.total if sig is not None else None)
    entries = []
    for row in rows:
        out = []
        for cell in row:
            _require(isinstance(cell, str),
                     "connection entries are series text")
            if cell.strip() == "0":
                s = zero_series(ring, 0, trunc, prime, prec)
            else:
                s = parse_series(cell, ring, prime, prec)
            out.append(DifferentialForm(s))
        entries.append(tuple(out))
    matrix = ConnectionMatrix(ring, tuple(entries), prime)
    return matrix, sig, trunc


def load_connection(doc: dict):
    """Read a connection document into a framed module; return it and trunc."""
    matrix, sig, trunc = load_connection_matrix(doc)
    _require(sig is not None,
             "the connection document is missing the field 'signature'")
    return FramedNablaModule(sig, matrix), trunc


def load_family(doc: dict):
    """Read a family document; return (family, trunc, trunc_x, fiber_var).

    Entries are {"du": text, "dx": text} objects in the two-variable
    grammar; "0" stands for a zero part, and a bare "0" cell for a zero
    entry.  trunc_x falls back to trunc, fiber_var to "x".
    """
    _require(isinstance(doc, dict), "a family document is a JSON object")
    what = "family document"
    sig = _signature_from(_field(doc, "signature", list, what))
    ring, prime, prec = _doc_mode(doc, what)
    trunc = _field(doc, "trunc", int, what)
    _require(trunc >= 1, "field 'trunc' must be at least 1")
    trunc_x = _field(doc, "trunc_x", int, what, required=False,
                     default=trunc)
    _require(trunc_x >= 1, "field 'trunc_x' must be at least 1")
    fiber_var = _field(doc, "fiber_var", str, what, required=False,
                       default="x")
    _require(fiber_var in _VARS and fiber_var != ring.variable,
             f"field 'fiber_var' must name a variable other than "
             f"{ring.variable!r}")
    rows = _string_rows(doc, "connection", what, sig.total)

    def part(text) -> BiSeries:
        if text is None or (isinstance(text, str) and text.strip() == "0"):
            return zero_biseries(ring, trunc, trunc_x, prime, prec)
        _require(isinstance(text, str), "family entry parts are series text")
        return parse_biseries(text, ring, prime, prec, fiber_var)

    entries = []
    for row in rows:
        out = []
        for cell in row:
            if isinstance(cell, str) and cell.strip() == "0":
                cell = {}
            _require(isinstance(cell, dict),
                     'family entries are {"du": ..., "dx": ...} objects '
                     'or "0"')
            extra = set(cell) - {"du", "dx"}
            _require(not extra, f"unknown entry field {sorted(extra)!r}")
            out.append(BiForm(part(cell.get("du")), part(cell.get("dx"))))
        entries.append(tuple(out))
    family = FramedFamily(sig, ring, tuple(entries), prime)
    return family, trunc, trunc_x, fiber_var


def _matrix_precision(rows, ring: RingLabel) -> int | None:
    if not ring.padic:
        return None
    prec = None
    for row in rows:
        for s in row:
            for c in s.coeffs:
                if prec is None or c.abs_prec > prec:
                    prec = c.abs_prec
    return DEFAULT_ABS_PREC if prec is None else prec


def dump_series_matrix(entries, signature: Signature | None = None) -> dict:
    """The document for a square matrix of series windows.

    Re-reading with parse_series_matrix and dumping again is stable: the
    stored working precision is the largest in the matrix, so no printed
    coefficient loses digits on the round trip.
    """
    rows = [list(row) for row in entries]
    first = rows[0][0]
    ring = first.ring
    return {
        "signature": list(signature.parts) if signature is not None
        else None,
        "ring": ring.value,
        "p": first.prime,
        "abs_prec": _matrix_precision(rows, ring),
        "entries": [[print_series(s) for s in row] for row in rows],
    }


def dump_unipotent(v) -> dict:
    return dump_series_matrix(v.entries, v.signature)


def parse_series_matrix(doc: dict):
    """Read a matrix document back: (entries, ring, prime, signature)."""
    _require(isinstance(doc, dict), "a matrix document is a JSON object")
    what = "matrix document"
    ring = _ring_from_label(_field(doc, "ring", str, what))
    if ring.padic:
        prime = check_prime(_field(doc, "p", int, what))
        prec = _field(doc, "abs_prec", int, what, required=False,
                      default=DEFAULT_ABS_PREC)
    else:
        _require(doc.get("p") is None, f"ring {ring.value} takes no prime")
        prime = None
        prec = DEFAULT_ABS_PREC
    rows = _string_rows(doc, "entries", what)
    entries = []
    for row in rows:
        out = []
        for cell in row:
            _require(isinstance(cell, str), "matrix entries are series text")
            out.append(parse_series(cell, ring, prime, prec))
        entries.append(tuple(out))
    sig_val = doc.get("signature")
    sig = _signature_from(sig_val) if sig_val is not None else None
    return tuple(entries), ring, prime, sig


def dump_biseries_matrix(entries, signature: Signature | None = None,
                         fiber_var: str = "x") -> dict:
    """The document for a square matrix of two-variable windows."""
    rows = [list(row) for row in entries]
    first = rows[0][0]
    ring = first.ring
    prec = None
    if ring.padic:
        for row in rows:
            for b in row:
                for brow in b.coeffs:
                    for c in brow:
                        if prec is None or c.abs_prec > prec:
                            prec = c.abs_prec
        if prec is None:
            prec = DEFAULT_ABS_PREC
    return {
        "signature": list(signature.parts) if signature is not None
        else None,
        "ring": ring.value,
        "p": first.prime,
        "abs_prec": prec,
        "fiber_var": fiber_var,
        "entries": [[print_biseries(b, fiber_var) for b in row]
                    for row in rows],
    }
