"""Certified enclosures of intersection numbers under twisting.

For simple closed curves a, x, b and n >= 0 the image ``T_a^{+-n}(x)``
satisfies ``|(T_a^{+-n} x, b) - n (x,a)(a,b)| <= (x,b)``; for a positive
multi-twist ``T_a = prod T_{a_i}^{m_i}`` and any integer n the same holds
with ``|n| sum m_i (x,a_i)(a_i,b)``.  (The multi-twist statement is
sometimes quoted with ``|n| - 2``; positivity of the powers gives the
sharper ``|n|`` used here.)

Everything is exact: bounds are ints or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

from .core import CurveSystem, TwistWord


@dataclass(frozen=True)
class IntervalBound:
    lo: Rational
    hi: Rational

    def __post_init__(self):
        exact = (int, Fraction)
        if type(self.lo) not in exact or type(self.hi) not in exact:
            if not isinstance(self.lo, Rational) or not isinstance(self.hi, Rational) \
                    or isinstance(self.lo, bool) or isinstance(self.hi, bool):
                raise TypeError("interval endpoints must be exact rationals")
        if self.lo < 0 or self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v: Rational) -> IntervalBound:
        return cls(v, v)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: IntervalBound) -> IntervalBound:
        return IntervalBound(self.lo + other.lo, self.hi + other.hi)

    def __str__(self):
        return f"{self.lo}" if self.exact else f"[{self.lo}, {self.hi}]"


def _clamped(centre: Rational, radius: Rational) -> IntervalBound:
    return IntervalBound(max(0, centre - radius), centre + radius)


def twist_bound(n: int, xa: int, xb: int, ab: int) -> IntervalBound:
    """Enclosure of ``(T_a^{+-n}(x), b)`` from ``(x,a)``, ``(x,b)``, ``(a,b)``."""
    if n < 0 or xa < 0 or xb < 0 or ab < 0:
        raise ValueError("twist_bound needs nonnegative inputs")
    if n == 0:
        return IntervalBound.point(xb)
    return _clamped(n * xa * ab, xb)


def multitwist_bound(n: int, terms: Sequence[tuple[int, int, int]], xb: int) -> IntervalBound:
    """Enclosure of ``(T_a^n(x), b)`` for a positive multi-twist.

    ``terms`` holds one ``(m_i, (x,a_i), (a_i,b))`` triple per component.
    """
    if xb < 0:
        raise ValueError("intersection numbers are nonnegative")
    total = 0
    for m, xa, ab in terms:
        if m < 1:
            raise ValueError(f"multi-twist powers must be positive, got {m}")
        if xa < 0 or ab < 0:
            raise ValueError("intersection numbers are nonnegative")
        total += m * xa * ab
    if n == 0:
        return IntervalBound.point(xb)
    return _clamped(abs(n) * total, xb)


@dataclass(frozen=True)
class PairState:
    """Bounds on ``(y, c)`` for the current image curve y and each reference curve c."""

    bounds: Mapping[str, IntervalBound]

    @classmethod
    def exact(cls, values: Mapping[str, Rational]) -> PairState:
        return cls({c: IntervalBound.point(v) for c, v in values.items()})

    @classmethod
    def of_curve(cls, sys: CurveSystem, x: str) -> PairState:
        """Seed for ``x`` being one of the system's own curves."""
        return cls.exact({c: sys.intersection(x, c) for c in sys.curves})

    def __getitem__(self, curve: str) -> IntervalBound:
        return self.bounds[curve]

    def family(self, sys: CurveSystem, i: int) -> IntervalBound:
        """``(y, a)`` for the multi-curve a of family i: the sum over components."""
        out = IntervalBound.point(0)
        for c in sys.families[i].curves:
            out = out + self.bounds[c]
        return out

    def norm(self, sys: CurveSystem) -> IntervalBound:
        out = IntervalBound.point(0)
        for c in sys.curves:
            out = out + self.bounds[c]
        return out


def family_incidence(sys: CurveSystem, family: int) -> dict[str, list[tuple[int, str, int]]]:
    """For each curve c, the (power, a, (a,c)) triples of the family curves a meeting c."""
    fam = sys.families[family]
    return {c: [(m, a, sys.intersection(a, c)) for m, a in zip(fam.powers, fam.curves)
                if sys.intersection(a, c)] for c in sys.curves}


def apply_letter(sys: CurveSystem, state: PairState, family: int, exponent: int,
                 incidence: Mapping[str, list] | None = None) -> PairState:
    """One multi-twist letter ``T_F^e`` applied to the current image curve.

    ``incidence`` may be passed in from :func:`family_incidence` to skip
    recomputing it on every letter.
    """
    if incidence is None:
        incidence = family_incidence(sys, family)
    k = abs(exponent)
    bounds = state.bounds
    new = {}
    for c, meets in incidence.items():
        cur = bounds[c]
        if k == 0 or not meets:
            # T_F fixes every curve disjoint from F, so (T_F y, c) = (y, T_F^-1 c) = (y, c)
            new[c] = cur
            continue
        lo_sum = sum(m * bounds[a].lo * i for m, a, i in meets)
        hi_sum = sum(m * bounds[a].hi * i for m, a, i in meets)
        new[c] = IntervalBound(max(0, k * lo_sum - cur.hi), k * hi_sum + cur.hi)
    return PairState(new)


def propagate(sys: CurveSystem, w: TwistWord, seed: PairState) -> list[PairState]:
    """States after applying 0, 1, ..., len(w) letters of ``w``.

    Letters act right to left, so state k bounds the image of x under the
    last k letters of w; the final state bounds ``w(x)``.
    """
    missing = [c for c in sys.curves if c not in seed.bounds]
    if missing:
        raise ValueError(f"seed lacks values for {missing}")
    incidence = {g: family_incidence(sys, g) for g in w.generators}
    states = [seed]
    for g, e in reversed(w.letters):
        states.append(apply_letter(sys, states[-1], g, e, incidence[g]))
    return states


# -- ping-pong set membership ------------------------------------------------

class Membership(str, enum.Enum):
    IN_A = "in N_a"
    IN_B = "in N_b"
    IN_Y = "in Y"
    IN = "in N_i"
    NOT_IN = "not in N_i"
    UNDETERMINED = "undetermined"


def _lt(x: IntervalBound, y: IntervalBound, scale: Rational = 1) -> bool | None:
    """Decide ``x < scale * y`` over all values in the intervals, or None."""
    if x.hi < scale * y.lo:
        return True
    if x.lo >= scale * y.hi:
        return False
    return None


def nset_membership(sys: CurveSystem, state: PairState, family: int, lam: Rational,
                    mu: Mapping[tuple[int, int], Rational] | None = None,
                    mode: str = "two-family",
                    lam_triples: Mapping[tuple[int, int, int], Rational] | None = None) -> Membership:
    """Decide which ping-pong set the image curve lies in.

    two-family mode: ``family`` is the a-side; returns IN_A when
    ``(y,a) < lam (y,b)``, IN_B when ``lam (y,b) < (y,a)``, IN_Y on exact
    equality, otherwise UNDETERMINED.

    n-family mode: the families must be single curves; ``mu[(i,j)]`` and
    ``lam_triples[(i,j,k)]`` parameterise the set for ``family = i``.
    """
    if mode == "two-family":
        if len(sys.families) != 2:
            raise ValueError("two-family membership needs exactly two families")
        if lam <= 0:
            raise ValueError("lambda must be positive")
        ya = state.family(sys, family)
        yb = state.family(sys, 1 - family)
        if ya.hi == 0 and yb.hi == 0:
            raise ValueError("curve is disjoint from both families (not in X)")
        if _lt(ya, yb, lam):
            return Membership.IN_A
        if _lt(IntervalBound(lam * yb.lo, lam * yb.hi), ya):
            return Membership.IN_B
        if ya.exact and yb.exact and ya.lo == lam * yb.lo:
            return Membership.IN_Y
        return Membership.UNDETERMINED

    if mode != "n-family":
        raise ValueError(f"unknown mode {mode!r}")
    n = len(sys.families)
    if n < 3 or not all(f.is_single for f in sys.families):
        raise ValueError("n-family membership needs at least three single-curve families")
    if mu is None or lam_triples is None:
        raise ValueError("n-family membership needs mu and lambda tables")
    check_parameters(n, lam_triples, mu)
    curve = [f.curves[0] for f in sys.families]
    i = family
    y = [state.bounds[c] for c in curve]
    undetermined = False
    for j in range(n):
        if j == i:
            continue
        res = _lt(y[i], y[j], mu[(i, j)])
        if res is False:
            return Membership.NOT_IN
        undetermined |= res is None
        for k in range(n):
            if k in (i, j):
                continue
            # (y,a_k)/(y,a_j) < lam_ijk (a_i,a_k)/(a_i,a_j), cleared of denominators
            scale = lam_triples[(i, j, k)] * Fraction(sys.intersection(curve[i], curve[k]),
                                                      sys.intersection(curve[i], curve[j]))
            res = _lt(y[k], y[j], scale)
            if res is False:
                return Membership.NOT_IN
            undetermined |= res is None
    return Membership.UNDETERMINED if undetermined else Membership.IN


def check_parameters(n: int, lam: Mapping[tuple[int, int, int], Rational],
                     mu: Mapping[tuple[int, int], Rational]) -> None:
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if (i, j) not in mu or mu[(i, j)] <= 0:
                raise ValueError(f"mu[{i},{j}] must be a positive rational")
            if mu[(i, j)] * mu[(j, i)] != 1:
                raise ValueError(f"mu[{j},{i}] must equal 1/mu[{i},{j}]")
            for k in range(n):
                if k in (i, j):
                    continue
                if (i, j, k) not in lam or lam[(i, j, k)] <= 1:
                    raise ValueError(f"lambda[{i},{j},{k}] must be a rational > 1")
            if lam.get((i, j, j), 2) <= 1:
                raise ValueError(f"lambda[{i},{j},{j}] must be a rational > 1")


def default_parameters(n: int, lam: Rational = 2, mu: Rational = 1):
    """Uniform tables: every lambda_ijk = lam, mu_ij = mu for i < j and 1/mu for i > j.

    The lambda table also carries ``(i, k, k)`` entries; they define no set
    but enter the nu bound when its two free indices coincide.
    """
    mu = Fraction(mu)
    lam_t = {(i, j, k): Fraction(lam) for i in range(n) for j in range(n) for k in range(n)
             if i != j and i != k}
    mu_t = {(i, j): (mu if i < j else 1 / mu) for i in range(n) for j in range(n) if i != j}
    return lam_t, mu_t

