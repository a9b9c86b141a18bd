"""Integer-matrix model of twists on a one-holed torus.

Two curves meeting once induce ``t = [[1,1],[0,1]]`` and ``s = [[1,0],[-1,1]]``
on first homology.  The kernel of the map from the mapping class group of
the one-holed torus onto SL(2,Z) is the central cyclic group generated by
the boundary twist, so a nonempty reduced word in ``t^{+-m}, s^{+-n}``
that evaluates to the identity lifts to a central element of the twist
group: that group cannot be free of rank two.  Identity-matrix words are the
only non-freeness evidence this module produces.

Trace classes follow the usual trichotomy: |tr| < 2 periodic, |tr| = 2
reducible, |tr| > 2 Anosov.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .core import TwistWord


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __pow__(self, k: int) -> Mat2:
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> Mat2:
        return Mat2(self.d, -self.b, -self.c, self.a)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def is_central(self) -> bool:
        return self in (IDENTITY, -IDENTITY)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = Mat2(1, 0, 0, 1)
T = Mat2(1, 1, 0, 1)
S = Mat2(1, 0, -1, 1)
Q = Mat2(0, 1, -1, 0)


def eval_word(w: TwistWord, m: int = 1, n: int = 1) -> Mat2:
    """Matrix of a word over two generators, with ``A -> t^m`` and ``B -> s^n``."""
    if m < 1 or n < 1:
        raise ValueError("twist powers must be positive")
    gens = (T ** m, S ** n)
    out = IDENTITY
    for g, e in w.letters:
        if g not in (0, 1):
            raise ValueError(f"generator index {g} outside the two-generator model")
        out = out @ (gens[g] ** e)
    return out


class MatrixClass(str, enum.Enum):
    PERIODIC = "Periodic"
    REDUCIBLE = "Reducible"
    ANOSOV = "Anosov"


def classify_matrix(M: Mat2) -> MatrixClass:
    tr = abs(M.trace)
    if tr < 2:
        return MatrixClass.PERIODIC
    if tr == 2:
        return MatrixClass.REDUCIBLE
    return MatrixClass.ANOSOV


def torus_intersection(p: int, q: int, r: int, s: int) -> int:
    """Geometric intersection of the torus curves with slope vectors (p,q), (r,s)."""
    return abs(p * s - q * r)


def primitive_slopes(radius: int) -> Iterator[tuple[int, int]]:
    """Primitive vectors with entries in [-radius, radius], one per +- pair."""
    for p in range(0, radius + 1):
        for q in range(-radius, radius + 1):
            if gcd(p, q) == 1 and (p > 0 or q > 0):
                yield p, q


# -- relation search ---------------------------------------------------------

# canonical letter order A < A^-1 < B < B^-1
_LETTERS = ((0, 1), (0, -1), (1, 1), (1, -1))
_INVERSE = (1, 0, 3, 2)


def _reduced_words(length: int) -> Iterator[tuple[int, ...]]:
    """All reduced words of the given length, in lexicographic order."""
    if length == 0:
        yield ()
        return

    def extend(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for x in range(4):
            if prefix and _INVERSE[prefix[-1]] == x:
                continue
            prefix.append(x)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def _as_word(codes: tuple[int, ...]) -> TwistWord:
    return TwistWord.of(*(_LETTERS[x] for x in codes))


def find_relation(m: int, n: int, max_len: int) -> TwistWord | None:
    """Shortest, then lexicographically least, reduced word equal to the identity.

    Letters are single generator occurrences ordered ``A < A^-1 < B < B^-1``.
    The search runs level by level; a word ``u v`` of length L is the
    identity exactly when ``M(u) = M(v^-1)``, so each level is answered by
    joining reduced words of lengths ceil(L/2) and floor(L/2) that share a
    matrix.  Only levels up to ceil(max_len/2) are ever materialised.
    """
    if m < 1 or n < 1:
        raise ValueError("twist powers must be positive")
    gens = (T ** m, (T ** m).inverse(), S ** n, (S ** n).inverse())
    levels: list[dict[Mat2, list[tuple[int, ...]]]] = []

    def level(k: int) -> dict[Mat2, list[tuple[int, ...]]]:
        while len(levels) <= k:
            table = defaultdict(list)
            for codes in _reduced_words(len(levels)):
                M = IDENTITY
                for x in codes:
                    M = M @ gens[x]
                table[M].append(codes)
            levels.append(table)
        return levels[k]

    for length in range(1, max_len + 1):
        left, right = level((length + 1) // 2), level(length // 2)
        best = None
        for M, us in left.items():
            vs_inv = right.get(M)
            if not vs_inv:
                continue
            for u in us:
                for v_inv in vs_inv:
                    # u . v is reduced iff last(u) != last(v^-1)
                    if u and v_inv and u[-1] == v_inv[-1]:
                        continue
                    v = tuple(_INVERSE[x] for x in reversed(v_inv))
                    cand = u + v
                    if best is None or cand < best:
                        best = cand
        if best is not None:
            word = _as_word(best)
            if eval_word(word, m, n) != IDENTITY:
                raise AssertionError(f"search produced a non-identity word {best}")
            return word
    return None
