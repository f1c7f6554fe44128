"""Exact arithmetic in truncated Novikov series.

A Novikov element is a finite formal sum  c_1*T^(e_1) + c_2*T^(e_2) + ...
with strictly increasing rational exponents e_k and nonzero coefficients
c_k in a base field (F2 or Q).  Exponents are exact ``Fraction`` values, so
equality of energies is decidable.  Series are always finite; only
inversion consults a truncation level T^E, below which the geometric
series for 1/(1+u) is expanded.

Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class NovikovError(ValueError):
    pass


@dataclass(frozen=True)
class BaseField:
    """The coefficient field: GF(2) or the rationals."""

    tag: str  # "F2" or "Q"

    def __post_init__(self):
        if self.tag not in ("F2", "Q"):
            raise NovikovError(f"unknown base field tag {self.tag!r}")

    def normalize(self, c):
        if self.tag == "F2":
            return int(c) % 2
        return Fraction(c)

    def add(self, a, b):
        if self.tag == "F2":
            return (a + b) % 2
        return a + b

    def mul(self, a, b):
        if self.tag == "F2":
            return (a * b) % 2
        return a * b

    def neg(self, a):
        if self.tag == "F2":
            return a % 2
        return -a

    def inv(self, a):
        if self.tag == "F2":
            if a % 2 == 0:
                raise NovikovError("division by zero in F2")
            return 1
        if a == 0:
            raise NovikovError("division by zero in Q")
        return Fraction(1) / a

    @property
    def one(self):
        return 1 if self.tag == "F2" else Fraction(1)

    def coeff_str(self, c) -> str:
        if self.tag == "F2":
            return str(int(c) % 2)
        return str(Fraction(c))


F2 = BaseField("F2")
QQ = BaseField("Q")


@dataclass(frozen=True)
class TruncationLevel:
    """Positive rational energy cutoff E; arithmetic is exact below T^E."""

    energy: Fraction

    def __post_init__(self):
        object.__setattr__(self, "energy", Fraction(self.energy))
        if self.energy <= 0:
            raise NovikovError("truncation level must be positive")


def _as_energy(E) -> Fraction:
    if isinstance(E, TruncationLevel):
        return E.energy
    return Fraction(E)


@dataclass(frozen=True)
class NovikovElement:
    """Finite sum of c*T^e terms, normalized (sorted exponents, no zeros)."""

    field: BaseField
    terms: tuple  # tuple of (Fraction exponent, coefficient)

    @staticmethod
    def make(field: BaseField, terms: Iterable) -> "NovikovElement":
        acc = {}
        for e, c in terms:
            e = Fraction(e)
            c = field.normalize(c)
            if e in acc:
                acc[e] = field.add(acc[e], c)
            else:
                acc[e] = c
        norm = tuple((e, acc[e]) for e in sorted(acc) if acc[e] != 0)
        return NovikovElement(field, norm)

    @staticmethod
    def zero(field: BaseField) -> "NovikovElement":
        return NovikovElement(field, ())

    @staticmethod
    def one(field: BaseField) -> "NovikovElement":
        return NovikovElement.make(field, [(0, field.one)])

    @staticmethod
    def monomial(field: BaseField, exponent: Rational, coeff=1) -> "NovikovElement":
        return NovikovElement.make(field, [(exponent, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        """Smallest exponent with nonzero coefficient; None encodes +infinity."""
        if not self.terms:
            return None
        return self.terms[0][0]

    def _check_field(self, other: "NovikovElement"):
        if self.field.tag != other.field.tag:
            raise NovikovError("mixed base fields")

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        self._check_field(other)
        return NovikovElement.make(self.field, list(self.terms) + list(other.terms))

    def __neg__(self) -> "NovikovElement":
        return NovikovElement(
            self.field, tuple((e, self.field.neg(c)) for e, c in self.terms)
        )

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return self + (-other)

    def __mul__(self, other: "NovikovElement") -> "NovikovElement":
        self._check_field(other)
        prods = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                prods.append((e1 + e2, self.field.mul(c1, c2)))
        return NovikovElement.make(self.field, prods)

    def scale(self, coeff) -> "NovikovElement":
        c = self.field.normalize(coeff)
        return NovikovElement.make(self.field, [(e, self.field.mul(c0, c)) for e, c0 in self.terms])

    def shift(self, exponent: Rational) -> "NovikovElement":
        d = Fraction(exponent)
        return NovikovElement(self.field, tuple((e + d, c) for e, c in self.terms))

    def truncate(self, E) -> "NovikovElement":
        """Drop all terms with exponent >= E."""
        cut = _as_energy(E)
        return NovikovElement(self.field, tuple(t for t in self.terms if t[0] < cut))

    def __str__(self) -> str:
        return nov_to_str(self)

    def __repr__(self) -> str:
        return f"NovikovElement<{nov_to_str(self)}>"


def nov_arith(a: NovikovElement, b, op: str) -> NovikovElement:
    """Spec-shaped dispatcher over {add, mul, neg} (neg ignores b)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise NovikovError(f"unknown op {op!r}")


def nov_valuation(a: NovikovElement):
    return a.valuation()


def nov_invert(a: NovikovElement, E) -> NovikovElement:
    """Inverse of a modulo T^E on the unit part.

    Writing a = c*T^v*(1 + u) with val(u) > 0, the result is
    c^-1 * T^-v * sum_k (-u)^k, the sum truncated at exponents >= E.
    Multiplying back gives 1 up to terms of exponent >= E - v after the
    leading T^v has been factored out; for monomials the inverse is exact.
    """
    if a.is_zero():
        raise NovikovError("cannot invert zero")
    cut = _as_energy(E)
    v, c = a.terms[0]
    unit = NovikovElement(a.field, tuple((e - v, cc) for e, cc in a.terms))
    u = NovikovElement.make(
        a.field, [(e, cc) for e, cc in unit.terms if e > 0]
    ).scale(a.field.inv(c))
    # inverse of (1 + u): geometric series, truncated below E
    inv_unit = NovikovElement.one(a.field)
    power = NovikovElement.one(a.field)
    minus_u = -u
    while not power.is_zero():
        power = (power * minus_u).truncate(cut)
        inv_unit = inv_unit + power
    inv_unit = inv_unit.scale(a.field.inv(c))
    return inv_unit.shift(-v)


class TruncationTooSmall(NovikovError):
    """Raised when elimination cannot certify a zero below the cutoff."""


def nov_rank(matrix: Sequence[Sequence[NovikovElement]], E) -> int:
    """Rank by elimination pivoting on minimal valuation, modulo T^E.

    Division-free: a row is cleared by the cross-multiplication
    row_i := p*row_i - e*row_p, which only rescales row_i by the nonzero
    pivot p, then the row is renormalized by factoring out its leading
    T-power.  Both steps preserve rank, and the arithmetic is exact as long
    as no term reaches T^E.  Ties among equal-valuation pivot candidates
    are broken by lowest row index, then lowest column index.  Entries must
    have valuation >= 0.  A zero produced after terms were dropped at T^E
    cannot be certified; TruncationTooSmall is raised if the outcome could
    depend on such a zero.
    """
    cut = _as_energy(E)
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise NovikovError("ragged matrix")
        for x in r:
            v = x.valuation()
            if v is not None and v < 0:
                raise NovikovError("matrix entries must have valuation >= 0")

    lossy = [False] * len(rows)  # row ever lost terms to the cutoff

    def red(x, i):
        t = x.truncate(cut)
        if len(t.terms) != len(x.terms):
            lossy[i] = True
        return t

    for i in range(len(rows)):
        rows[i] = [red(x, i) for x in rows[i]]

    rank = 0
    live_rows = list(range(len(rows)))
    live_cols = list(range(ncols))
    while live_rows and live_cols:
        pivot = None
        for i in live_rows:
            for j in live_cols:
                v = rows[i][j].valuation()
                if v is None:
                    continue
                if pivot is None or v < pivot[0]:
                    pivot = (v, i, j)
        if pivot is None:
            for i in live_rows:
                if lossy[i] and any(rows[i][j].is_zero() for j in live_cols):
                    raise TruncationTooSmall(
                        f"row {i} is zero mod T^{cut} but lost terms; "
                        "increase the truncation level"
                    )
            break
        _, pi, pj = pivot
        rank += 1
        p = rows[pi][pj]
        for i in live_rows:
            if i == pi:
                continue
            e = rows[i][pj]
            if e.is_zero():
                continue
            new_row = [
                red(p * rows[i][j] - e * rows[pi][j], i) for j in range(ncols)
            ]
            lossy[i] = lossy[i] or lossy[pi]
            vals = [x.valuation() for x in new_row if not x.is_zero()]
            if vals:
                shift = min(vals)
                if shift > 0:
                    new_row = [x.shift(-shift) for x in new_row]
            rows[i] = new_row
        live_rows.remove(pi)
        live_cols.remove(pj)
    return rank


# ---------- text serialization ----------

def _frac_str(e: Fraction) -> str:
    return f"{e.numerator}/{e.denominator}"


def nov_to_str(a: NovikovElement) -> str:
    """Render as ``c1*T^(p1/q1) + ...``; the zero element renders as ``0``."""
    if a.is_zero():
        return "0"
    return " + ".join(f"{a.field.coeff_str(c)}*T^({_frac_str(e)})" for e, c in a.terms)


def nov_from_str(field: BaseField, s: str) -> NovikovElement:
    s = s.strip()
    if s == "0":
        return NovikovElement.zero(field)
    terms = []
    for part in s.split("+"):
        part = part.strip()
        if "*T^" not in part:
            raise NovikovError(f"malformed Novikov term {part!r}")
        cs, es = part.split("*T^", 1)
        es = es.strip()
        if es.startswith("(") and es.endswith(")"):
            es = es[1:-1]
        terms.append((Fraction(es), Fraction(cs.strip())))
    return NovikovElement.make(field, terms)
