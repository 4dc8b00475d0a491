"""Exact Laurent-monomial and Laurent-polynomial arithmetic.

Variables are doubly indexed: ``VarId(s, i)`` stands for the generator
``Y[s,i]`` with shift ``s`` (any integer) and color ``i >= 1``.  A Monomial
is a finite product of integer powers of such generators and a LaurentPoly
is a finite sum of integer multiples of monomials.  All arithmetic is exact;
coefficients stay in Z and evaluation produces ``fractions.Fraction``.

There is no general division.  Monomials are units, so they carry an
``inverse()``, and that is the only reciprocal the module offers.

>>> a = Monomial.of((VarId(0, 1), 1), (VarId(0, 2), -1))
>>> str(a)
'Y[0,1]Y[0,2]^-1'
>>> str(a * a.inverse())
'1'
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import MissingAssignment, ZeroAssignment

Rational = Fraction


class VarId(NamedTuple):
    """Identifier of the generator Y[s,i]; ordered lexicographically."""

    s: int
    i: int

    def __str__(self) -> str:
        return f"Y[{self.s},{self.i}]"


def _check_var(v: VarId) -> VarId:
    if v.i < 1:
        raise ValueError(f"color index must be >= 1, got {v}")
    return v


class Monomial:
    """An immutable product of integer powers of generators.

    Factors are kept sorted by variable with zero exponents dropped, so
    equal monomials are equal objects in the dict/set sense.

    >>> m = Monomial.of((VarId(1, 2), 3))
    >>> m.exponent(VarId(1, 2))
    3
    >>> m.exponent(VarId(0, 1))
    0
    """

    __slots__ = ("_factors",)

    def __init__(self, factors: tuple[tuple[VarId, int], ...]):
        # internal: factors must already be sorted, deduplicated, zero-free
        self._factors = factors

    @staticmethod
    def one() -> "Monomial":
        return _ONE

    @staticmethod
    def of(*pairs: tuple[VarId, int]) -> "Monomial":
        """Build a monomial from (variable, exponent) pairs.

        Repeated variables accumulate; zero net exponents vanish.
        """
        acc: dict[VarId, int] = {}
        for v, e in pairs:
            _check_var(v)
            acc[v] = acc.get(v, 0) + int(e)
        return Monomial(tuple(sorted((v, e) for v, e in acc.items() if e != 0)))

    @property
    def factors(self) -> tuple[tuple[VarId, int], ...]:
        """Sorted (variable, exponent) pairs, exponents nonzero."""
        return self._factors

    def exponent(self, v: VarId) -> int:
        for w, e in self._factors:
            if w == v:
                return e
        return 0

    def variables(self) -> Iterator[VarId]:
        for v, _ in self._factors:
            yield v

    def is_one(self) -> bool:
        return not self._factors

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial.of(*self._factors, *other._factors)

    def inverse(self) -> "Monomial":
        return Monomial(tuple((v, -e) for v, e in self._factors))

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return _ONE
        return Monomial(tuple((v, e * n) for v, e in self._factors))

    def evaluate(self, assignment: Mapping[VarId, Fraction]) -> Fraction:
        out = Fraction(1)
        for v, e in self._factors:
            if v not in assignment:
                raise MissingAssignment(v)
            val = Fraction(assignment[v])
            if val == 0:
                raise ZeroAssignment(v)
            out *= val**e
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._factors == other._factors

    def __hash__(self) -> int:
        return hash(self._factors)

    def __lt__(self, other: "Monomial") -> bool:
        return _mono_cmp(self, other) < 0

    def __le__(self, other: "Monomial") -> bool:
        return _mono_cmp(self, other) <= 0

    def __str__(self) -> str:
        if not self._factors:
            return "1"
        parts = []
        for v, e in self._factors:
            parts.append(str(v) if e == 1 else f"{v}^{e}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


_ONE = Monomial(())


def _mono_cmp(a: Monomial, b: Monomial) -> int:
    """Canonical term order.

    Compare at the highest variable where the exponents differ; the larger
    exponent sorts first.  This walks both factor lists from the top, so
    absent variables count as exponent zero.
    """
    fa, fb = a._factors, b._factors
    ia, ib = len(fa) - 1, len(fb) - 1
    while ia >= 0 or ib >= 0:
        va = fa[ia][0] if ia >= 0 else None
        vb = fb[ib][0] if ib >= 0 else None
        if va == vb:
            ea, eb = fa[ia][1], fb[ib][1]
            if ea != eb:
                return -1 if ea > eb else 1
            ia -= 1
            ib -= 1
        elif vb is None or (va is not None and va > vb):
            return -1 if fa[ia][1] > 0 else 1
        else:
            return 1 if fb[ib][1] > 0 else -1
    return 0


_mono_key = functools.cmp_to_key(_mono_cmp)


class LaurentPoly:
    """A finite Z-linear combination of monomials, kept in canonical order.

    >>> p = LaurentPoly.from_monomial(Monomial.of((VarId(0, 1), 1)))
    >>> q = p + LaurentPoly.one()
    >>> str(q)
    'Y[0,1] + 1'
    >>> str(q - q)
    '0'
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: tuple[tuple[Monomial, int], ...]):
        # internal: terms must already be sorted with nonzero coefficients
        self._terms = terms

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _POLY_ONE

    @staticmethod
    def from_monomial(m: Monomial, coeff: int = 1) -> "LaurentPoly":
        if coeff == 0:
            return _ZERO
        return LaurentPoly(((m, int(coeff)),))

    @staticmethod
    def from_terms(terms: Iterable[tuple[Monomial, int]]) -> "LaurentPoly":
        acc: dict[Monomial, int] = {}
        for m, c in terms:
            acc[m] = acc.get(m, 0) + int(c)
        kept = [(m, c) for m, c in acc.items() if c != 0]
        kept.sort(key=lambda t: _mono_key(t[0]))
        return LaurentPoly(tuple(kept))

    @property
    def terms(self) -> tuple[tuple[Monomial, int], ...]:
        return self._terms

    def coefficient(self, m: Monomial) -> int:
        for mm, c in self._terms:
            if mm == m:
                return c
        return 0

    def monomials(self) -> Iterator[Monomial]:
        for m, _ in self._terms:
            yield m

    def variables(self) -> set[VarId]:
        out: set[VarId] = set()
        for m, _ in self._terms:
            out.update(m.variables())
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly.from_terms(self._terms + other._terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((m, -c) for m, c in self._terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.from_terms((m, c * other) for m, c in self._terms)
        if isinstance(other, Monomial):
            return LaurentPoly.from_terms((m * other, c) for m, c in self._terms)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly.from_terms(
            (ma * mb, ca * cb) for ma, ca in self._terms for mb, cb in other._terms
        )

    __rmul__ = __mul__

    def evaluate(self, assignment: Mapping[VarId, Fraction]) -> Fraction:
        out = Fraction(0)
        for m, c in self._terms:
            out += c * m.evaluate(assignment)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms:
            if m.is_one():
                parts.append(str(c))
            elif c == 1:
                parts.append(str(m))
            elif c == -1:
                parts.append("-" + str(m))
            else:
                parts.append(f"{c}{m}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


_ZERO = LaurentPoly(())
_POLY_ONE = LaurentPoly(((_ONE, 1),))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Product of two monomials (exponents add, zeros vanish)."""
    return a * b


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Sum of two polynomials in canonical form."""
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Product of two polynomials in canonical form."""
    return a * b


def poly_eval(p: LaurentPoly, assignment: Mapping[VarId, Fraction]) -> Fraction:
    """Evaluate p at nonzero rational values, exactly.

    Raises MissingAssignment if a variable of p has no value and
    ZeroAssignment if any used value is zero.
    """
    return p.evaluate(assignment)


# ---------------------------------------------------------------------------
# serialization


def mono_to_json(m: Monomial) -> list[list[int]]:
    return [[v.s, v.i, e] for v, e in m.factors]


def mono_from_json(data: Iterable[Iterable[int]]) -> Monomial:
    return Monomial.of(*((VarId(int(s), int(i)), int(e)) for s, i, e in data))


def poly_to_json(p: LaurentPoly) -> str:
    """Canonical JSON text: a list of {coeff, vars} in term order."""
    return json.dumps(
        [{"coeff": c, "vars": mono_to_json(m)} for m, c in p.terms],
        separators=(",", ":"),
    )


def poly_from_json(text: str) -> LaurentPoly:
    data = json.loads(text)
    return LaurentPoly.from_terms(
        (mono_from_json(t["vars"]), int(t["coeff"])) for t in data
    )


# ---------------------------------------------------------------------------
# parsing


def parse_monomial(text: str) -> Monomial:
    """Parse a monomial written with Y-generators.

    Accepts products of ``Y[s,i]`` factors with optional ``^e`` exponents,
    separated by nothing, '*', or whitespace, and an optional single '/'
    splitting numerator from denominator.  A bare '1' is the empty product.

    >>> str(parse_monomial("1/Y[2,2]"))
    'Y[2,2]^-1'
    >>> parse_monomial("Y[0,1] * Y[1,2]^-3") == Monomial.of(
    ...     (VarId(0, 1), 1), (VarId(1, 2), -3))
    True
    """
    text = text.strip()
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        if "/" in den_text:
            raise ValueError(f"more than one '/' in {text!r}")
        num = _parse_product(num_text)
        den = _parse_product(den_text)
        return num * den.inverse()
    return _parse_product(text)


def _parse_product(text: str) -> Monomial:
    text = text.strip().strip("()")
    if text in ("", "1"):
        return Monomial.one()
    pairs: list[tuple[VarId, int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch in " \t*":
            pos += 1
            continue
        if ch != "Y":
            raise ValueError(f"unexpected {ch!r} at offset {pos} in {text!r}")
        close = text.find("]", pos)
        if close < 0 or text[pos + 1] != "[":
            raise ValueError(f"malformed factor at offset {pos} in {text!r}")
        inner = text[pos + 2 : close]
        s_str, _, i_str = inner.partition(",")
        v = _check_var(VarId(int(s_str), int(i_str)))
        pos = close + 1
        exp = 1
        if pos < n and text[pos] == "^":
            pos += 1
            start = pos
            if pos < n and text[pos] in "+-":
                pos += 1
            while pos < n and text[pos].isdigit():
                pos += 1
            exp = int(text[start:pos])
        pairs.append((v, exp))
    return Monomial.of(*pairs)
