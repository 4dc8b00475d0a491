"""Seed matrices and mutation for staircase words.

The exchange matrix construction references the symbols p, q, k+, l+
without spelling them out; we adopt the convention of the standard
double Bruhat seed construction, which the source text delegates to its
references: the word is extended by letters i_k := k for k in [-1,-r],
k+ is the next position to the right carrying the same letter in
absolute value (n+1 if none), p := max(k,l) and q := min(k+,l+).  This
convention is pinned by the skew-symmetrizability and mutation
properties in the test suite rather than by printed entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .bruhat import WordSpec
from .errors import IndexOutOfRange

Matrix = tuple[tuple[int, ...], ...]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def _cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


def e_set(w: WordSpec) -> tuple[int, ...]:
    """Exchange indices: -1..-r followed by positions with a later repeat."""
    letters = w.letters()
    later = tuple(
        k
        for k in range(1, w.n + 1)
        if letters[k - 1] in letters[k:]
    )
    return tuple(range(-1, -w.r - 1, -1)) + later


def _index_universe(w: WordSpec) -> tuple[int, ...]:
    return tuple(range(-1, -w.r - 1, -1)) + tuple(range(1, w.n + 1))


def _abs_letter(w: WordSpec, k: int) -> int:
    return -k if k < 0 else w.letter(k)


def _signed_letter(w: WordSpec, k: int) -> int:
    return k if k < 0 else w.letter(k)


def _successor(w: WordSpec, k: int) -> int:
    """Next index to the right with the same letter, or n+1."""
    target = _abs_letter(w, k)
    for l in _index_universe(w):
        if l > k and _abs_letter(w, l) == target:
            return l
    return w.n + 1


def _entry(w: WordSpec, k: int, l: int) -> int:
    kp = _successor(w, k)
    lp = _successor(w, l)
    p = max(k, l)
    q = min(kp, lp)
    if p == q:
        return -_sgn((k - l) * _signed_letter(w, p))
    if p < q and k != l and kp != lp:
        cond = _sgn(_signed_letter(w, p) * _signed_letter(w, q)) * (k - l) * (kp - lp)
        if cond > 0:
            a = _cartan(_abs_letter(w, k), _abs_letter(w, l))
            return -_sgn((k - l) * _signed_letter(w, p) * a)
    return 0


@dataclass(frozen=True)
class SeedMatrix:
    """Integer matrix with explicit row and column index labels."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: Matrix

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != len(self.rows):
            raise ValueError("one entry row per row label")
        if any(len(row) != len(self.cols) for row in entries):
            raise ValueError("one entry per column label")
        if not set(self.cols) <= set(self.rows):
            raise ValueError("column labels must be row labels too")

    def entry(self, k: int, l: int) -> int:
        return self.entries[self.rows.index(k)][self.cols.index(l)]

    def principal_part(self) -> "SeedMatrix":
        """Square submatrix on the column labels."""
        sub = tuple(
            tuple(self.entry(k, l) for l in self.cols) for k in self.cols
        )
        return SeedMatrix(self.cols, self.cols, sub)

    def is_sign_skew_symmetric(self) -> bool:
        return is_sign_skew_symmetric(self.principal_part().entries)

    def mutate(self, k: int) -> "SeedMatrix":
        """Matrix mutation in the direction of column label k."""
        if k not in self.cols:
            raise IndexOutOfRange(k, what="mutation direction")
        out = []
        for i in self.rows:
            row = []
            for j in self.cols:
                a = self.entry(i, j)
                if i == k or j == k:
                    row.append(-a)
                else:
                    aik = self.entry(i, k)
                    akj = self.entry(k, j)
                    row.append(a + (abs(aik) * akj + aik * abs(akj)) // 2)
            out.append(tuple(row))
        return replace(self, entries=tuple(out))

    def to_json(self) -> str:
        payload = {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": [list(row) for row in self.entries],
        }
        return json.dumps(payload, separators=(",", ":"))


def seed_matrix(w: WordSpec) -> SeedMatrix:
    """Exchange matrix of the word, rows -1..-r,1..n, columns e_set(w)."""
    rows = _index_universe(w)
    cols = e_set(w)
    entries = tuple(tuple(_entry(w, k, l) for l in cols) for k in rows)
    return SeedMatrix(rows, cols, entries)


def _check_square(matrix: Sequence[Sequence[int]]) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix must be square")
    return rows


def mutate(matrix: Sequence[Sequence[int]], k: int) -> Matrix:
    """Square-matrix mutation in direction k (1-based)."""
    rows = _check_square(matrix)
    n = len(rows)
    if not 1 <= k <= n:
        raise IndexOutOfRange(k, what="mutation direction")
    k0 = k - 1
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            a = rows[i][j]
            if i == k0 or j == k0:
                row.append(-a)
            else:
                aik = rows[i][k0]
                akj = rows[k0][j]
                row.append(a + (abs(aik) * akj + aik * abs(akj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def is_sign_skew_symmetric(matrix: Sequence[Sequence[int]]) -> bool:
    rows = _check_square(matrix)
    n = len(rows)
    for i in range(n):
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                return False
            if rows[i][j] * rows[j][i] > 0:
                return False
    return True


def skew_symmetrizer(matrix: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Positive integer diagonal d with d_i b_ij = -d_j b_ji, if one exists."""
    rows = _check_square(matrix)
    n = len(rows)
    if not is_sign_skew_symmetric(rows):
        return None
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                want = -d[i] * Fraction(rows[i][j], rows[j][i])
                if d[j] is None:
                    d[j] = want
                    queue.append(j)
                elif d[j] != want:
                    return None
    scale = lcm(*(x.denominator for x in d)) if n else 1
    ints = [int(x * scale) for x in d]
    if n:
        g = gcd(*ints)
        ints = [x // g for x in ints]
    for i in range(n):
        for j in range(n):
            if ints[i] * rows[i][j] != -ints[j] * rows[j][i]:
                return None
    return tuple(ints)


@dataclass(frozen=True)
class ExchangeBinomial:
    """Right-hand side of an exchange relation: two formal products."""

    plus: tuple[tuple[str, int], ...]
    minus: tuple[tuple[str, int], ...]

    @staticmethod
    def _side(factors: tuple[tuple[str, int], ...]) -> str:
        if not factors:
            return "1"
        return "".join(t if e == 1 else f"{t}^{e}" for t, e in factors)

    def __str__(self) -> str:
        return f"{self._side(self.plus)} + {self._side(self.minus)}"


@dataclass(frozen=True)
class ExchangeSeed:
    """Cluster tags, frozen tags, and a square exchange matrix over both."""

    cluster: tuple[str, ...]
    frozen: tuple[str, ...]
    matrix: Matrix

    def __post_init__(self) -> None:
        matrix = _check_square(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "cluster", tuple(self.cluster))
        object.__setattr__(self, "frozen", tuple(self.frozen))
        if len(matrix) != len(self.cluster) + len(self.frozen):
            raise ValueError("matrix size must match tag count")
        n = len(self.cluster)
        principal = [row[:n] for row in matrix[:n]]
        if not is_sign_skew_symmetric(principal):
            raise ValueError("principal part must be sign skew symmetric")

    @staticmethod
    def initial(matrix: Sequence[Sequence[int]], frozen: int = 0) -> "ExchangeSeed":
        """Seed with tags x1..xn over the given matrix; last `frozen` are frozen."""
        size = len(matrix)
        tags = tuple(f"x{i}" for i in range(1, size + 1))
        return ExchangeSeed(tags[: size - frozen], tags[size - frozen:], tuple(matrix))

    @property
    def tags(self) -> tuple[str, ...]:
        return self.cluster + self.frozen


def exchange(seed: ExchangeSeed, k: int) -> tuple[ExchangeBinomial, ExchangeSeed]:
    """Exchange binomial for direction k and the seed mutated there.

    The new variable stays formal: the k-th cluster tag gains a prime
    and the relation x_k * x_k' = binomial is returned, not solved.
    """
    n = len(seed.cluster)
    if not 1 <= k <= n:
        raise IndexOutOfRange(k, what="exchange direction")
    row = seed.matrix[k - 1]
    plus = tuple((t, e) for t, e in zip(seed.tags, row) if e > 0)
    minus = tuple((t, -e) for t, e in zip(seed.tags, row) if e < 0)
    cluster = tuple(
        t + "'" if i == k - 1 else t for i, t in enumerate(seed.cluster)
    )
    mutated = ExchangeSeed(cluster, seed.frozen, mutate(seed.matrix, k))
    return ExchangeBinomial(plus, minus), mutated
