"""Freeness and relative pseudo-Anosov certificates from ping-pong.

Every positive answer here is a closed-form check of integer or rational
inequalities on the intersection data; nothing is sampled or iterated to
convergence.  Negative answers come only from the complete two-twist tables
in :mod:`twistcert.classify`.  Everything else is ``Unknown``.

For two multi-twists ``T_a = prod T_{a_i}^{m_i}`` and ``T_b = prod T_{b_j}^{n_j}``
write ``P_A = {m_i (a_i,b)}`` and ``P_B = {n_j (a,b_j)}``.  Then

* all of P_A, P_B >= 2 gives a free group;
* with connected support, a free group unless some element of one side is
  1 while some element of the other is <= 3;
* min P_A, min P_B >= (2,3), (3,2), (1,5) or (5,1) gives a relatively
  pseudo-Anosov group, with ping-pong parameter 1, 1, 2 and 1/2.

For n >= 3 single curves with all pairwise intersections positive the sets
``N_i`` are cut out by the parameters ``mu_ij`` and ``lambda_ijk`` and
:func:`nu_bound` gives the twist power that maps every other ``N_j`` into
``N_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Mapping, Sequence

from .bounds import check_parameters, default_parameters
from .classify import FREE_TABLE, RELPA_TABLE, classify_two_group
from .core import Certificate, CurveSystem, Verdict, ensure_valid, unknown

PRODUCTS_AT_LEAST_TWO = "pingpong-products-ge-2"
CONNECTED_SUPPORT = "pingpong-connected-support"
RELPA_REGIME = "relpa-regime-{}"
RATIO_CONDITION = "n-twist-ratio-condition"
NU_POWERS = "n-twist-nu-powers"


def support_connected(sys: CurveSystem) -> bool:
    return len(sys.components()) == 1


def _two_family(sys: CurveSystem) -> tuple[list[int], list[int], int]:
    ensure_valid(sys)
    if len(sys.families) != 2:
        raise ValueError("two-generator certifiers need exactly two families")
    ab = sys.family_intersection(0, 1)
    if ab == 0:
        raise ValueError("the families are disjoint: (a,b) = 0")
    fa, fb = sys.families
    pa = [m * sys.curve_family_intersection(c, 1) for c, m in zip(fa.curves, fa.powers)]
    pb = [n * sys.curve_family_intersection(c, 0) for c, n in zip(fb.curves, fb.powers)]
    return pa, pb, ab


def _single_pair(sys: CurveSystem) -> tuple[int, int | None, int, int] | None:
    fa, fb = sys.families
    if not (fa.is_single and fb.is_single):
        return None
    a, b = fa.curves[0], fb.curves[0]
    return sys.intersection(a, b), sys.algebraic(a, b), fa.powers[0], fb.powers[0]


def _exceptional(pa: Sequence[int], pb: Sequence[int]) -> bool:
    return (1 in pa and min(pb) <= 3) or (1 in pb and min(pa) <= 3)


def certify_free_two(sys: CurveSystem) -> Certificate:
    pa, pb, ab = _two_family(sys)
    if min(pa) >= 2 and min(pb) >= 2:
        return Certificate(Verdict.CERTIFIED_FREE, PRODUCTS_AT_LEAST_TWO, {"lambda": 1})
    connected = support_connected(sys)
    if connected and not _exceptional(pa, pb):
        return Certificate(Verdict.CERTIFIED_FREE, CONNECTED_SUPPORT, {"lambda": 2},
                           notes=("ping-pong with parameter 2 or 1/2 on the side holding the product 1",))
    single = _single_pair(sys)
    if single is not None:
        ab, alg, m, n = single
        res = classify_two_group(ab, alg, m, n, require_witness=False)
        if res.free:
            return Certificate(Verdict.CERTIFIED_FREE, FREE_TABLE)
        return Certificate(Verdict.CERTIFIED_NOT_FREE, FREE_TABLE, witness=res.free_witness)
    if not connected:
        return unknown("support is disconnected; analyse the restriction to each component")
    return unknown(f"products {pa} and {pb} fall in the exceptional range")


_REGIMES = (("i", 2, 3, 1), ("ii", 3, 2, 1), ("iii", 1, 5, 2), ("iv", 5, 1, Fraction(1, 2)))


def certify_relpa_two(sys: CurveSystem) -> Certificate:
    pa, pb, ab = _two_family(sys)
    for tag, need_a, need_b, lam in _REGIMES:
        if min(pa) >= need_a and min(pb) >= need_b:
            return Certificate(Verdict.CERTIFIED_REL_PA, RELPA_REGIME.format(tag), {"lambda": lam})
    single = _single_pair(sys)
    if single is not None:
        ab, alg, m, n = single
        res = classify_two_group(ab, alg, m, n, require_witness=False)
        if res.relpa:
            return Certificate(Verdict.CERTIFIED_REL_PA, RELPA_TABLE)
        notes = () if res.relpa_witness is not None else (
            "witness needs the algebraic intersection (lantern for 0, (BA)^2 for 2)",)
        return Certificate(Verdict.CERTIFIED_NOT_REL_PA, RELPA_TABLE, witness=res.relpa_witness, notes=notes)
    return unknown(f"products {pa} and {pb} satisfy none of the four regimes")


# -- n >= 3 twists ---------------------------------------------------------------

NU_FAMILIES = ("E1", "E2", "E3", "E4", "E5")


@dataclass(frozen=True)
class NuBoundEntry:
    """Lower bounds on the power of ``T_{a_i}`` that maps ``N_j`` into ``N_i``.

    ``values[name]`` maps the free indices of each expression family to its
    exact value; a family with no admissible indices is empty.
    """

    i: int
    j: int
    values: Mapping[str, Mapping[tuple[int, ...], Fraction]]
    max: Fraction
    nu: int

    def family_max(self, name: str) -> Fraction | None:
        vals = self.values[name]
        return max(vals.values()) if vals else None


@dataclass(frozen=True)
class NuBoundReport:
    entries: Mapping[tuple[int, int], NuBoundEntry]

    @property
    def max(self) -> Fraction:
        return max(e.max for e in self.entries.values())

    def nu(self, i: int) -> int:
        return max(e.nu for (ii, _), e in self.entries.items() if ii == i)

    def values(self) -> set[Fraction]:
        return {v for e in self.entries.values() for fam in e.values.values() for v in fam.values()}


def _single_curves(sys: CurveSystem) -> list[str]:
    ensure_valid(sys)
    n = len(sys.families)
    if n < 3 or not all(f.is_single for f in sys.families):
        raise ValueError("n-twist certifiers need at least three single-curve families")
    curves = [f.curves[0] for f in sys.families]
    for x in range(n):
        for y in range(x + 1, n):
            if sys.intersection(curves[x], curves[y]) == 0:
                raise ValueError(f"curves {curves[x]!r} and {curves[y]!r} are disjoint")
    return curves


def nu_bound(sys: CurveSystem, i: int, j: int,
             lam: Mapping[tuple[int, int, int], Fraction] | None = None,
             mu: Mapping[tuple[int, int], Fraction] | None = None) -> NuBoundEntry:
    """Evaluate the five families of sufficient lower bounds for the ``(i, j)`` power.

    E1 = 2/(mu_ij I_ij);  E2(k) for k outside {i,j};  E3(k,l) for k, l
    outside {i,j}, with k = l allowed as in the derivation (for three curves
    that is the only term);  E4(k) covers l = j and E5(l) covers k = j.
    ``nu`` is the least integer >= every value, and at least 1.
    """
    curves = _single_curves(sys)
    n = len(curves)
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError("need distinct family indices")
    if lam is None or mu is None:
        dl, dm = default_parameters(n)
        lam = dl if lam is None else lam
        mu = dm if mu is None else mu
    check_parameters(n, lam, mu)

    def I(x, y):
        return Fraction(sys.intersection(curves[x], curves[y]))

    others = [k for k in range(n) if k not in (i, j)]
    L = lam
    vals: dict[str, dict[tuple[int, ...], Fraction]] = {name: {} for name in NU_FAMILIES}
    vals["E1"][()] = 2 / (mu[(i, j)] * I(i, j))
    for k in others:
        vals["E2"][(k,)] = 1 / (mu[(i, k)] * I(i, k)) + L[(j, i, k)] * I(j, k) / (I(i, j) * I(i, k))
    for k in others:
        for l in others:
            # lambda_ikk cuts out nothing, so it is a free choice; tables may
            # carry it under (i, k, k), otherwise the default 2 is used
            lam_kl = L[(i, k, l)] if k != l else Fraction(L.get((i, k, k), 2))
            d = lam_kl - 1
            vals["E3"][(k, l)] = (L[(j, i, l)] / d * I(j, l) / (I(i, l) * I(j, i))
                                  + lam_kl * L[(j, i, k)] / d * I(j, k) / (I(j, i) * I(i, k)))
    for k in others:
        d = L[(i, k, j)] - 1
        vals["E4"][(k,)] = (1 / (d * mu[(i, j)] * I(i, j))
                            + L[(i, k, j)] * L[(j, i, k)] / d * I(j, k) / (I(j, i) * I(i, k)))
    for l in others:
        d = L[(i, j, l)] - 1
        vals["E5"][(l,)] = (L[(i, j, l)] / (d * mu[(i, j)] * I(i, j))
                            + L[(j, i, l)] / d * I(j, l) / (I(j, i) * I(i, l)))
    top = max(v for fam in vals.values() for v in fam.values())
    return NuBoundEntry(i, j, vals, top, max(1, ceil(top)))


def nu_report(sys: CurveSystem, lam=None, mu=None) -> NuBoundReport:
    n = len(sys.families)
    return NuBoundReport({(i, j): nu_bound(sys, i, j, lam, mu)
                          for i in range(n) for j in range(n) if i != j})


def ratio_condition(sys: CurveSystem) -> Fraction:
    """Largest ``(a_i,a_k) / ((a_i,a_j)(a_j,a_k))`` over distinct ordered triples."""
    curves = _single_curves(sys)
    n = len(curves)
    out = Fraction(0)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                I = sys.intersection
                r = Fraction(I(curves[i], curves[k]), I(curves[i], curves[j]) * I(curves[j], curves[k]))
                out = max(out, r)
    return out


def certify_free_n(sys: CurveSystem, powers: Sequence[int] | None = None,
                   lam: Fraction = Fraction(2), mu: Fraction = Fraction(1)) -> Certificate:
    """Free-group certificate for ``<T_{a_1}^{p_1}, ..., T_{a_n}^{p_n}>``.

    Without powers (and with every family power 1) only the ratio condition
    ``<= 1/6`` is tried.  With powers, each ``p_i`` must reach the largest
    ``nu_ij``; the parameters are uniform, lambda_ijk = ``lam`` and
    mu_ij = ``mu`` for i < j (its inverse for i > j), defaulting to 2 and 1.
    """
    curves = _single_curves(sys)
    n = len(curves)
    if powers is None and any(f.powers[0] != 1 for f in sys.families):
        powers = [f.powers[0] for f in sys.families]
    if powers is None:
        ratio = ratio_condition(sys)
        if ratio <= Fraction(1, 6):
            report = nu_report(sys)
            return Certificate(Verdict.CERTIFIED_FREE, RATIO_CONDITION,
                               {"ratio_max": ratio, "mu": 1, "lambda": 2,
                                "nu_expression_max": report.max, "nu": max(report.nu(i) for i in range(n))})
        return unknown(f"ratio {ratio} exceeds 1/6", ratio_max=ratio)
    if len(powers) != n or any(p < 1 for p in powers):
        raise ValueError(f"need {n} positive powers")
    lam_t, mu_t = default_parameters(n, lam, mu)
    report = nu_report(sys, lam_t, mu_t)
    need = [report.nu(i) for i in range(n)]
    params = {"mu": mu, "lambda": lam, "nu_expression_max": report.max}
    params.update({f"nu_{i}": need[i] for i in range(n)})
    if all(p >= q for p, q in zip(powers, need)):
        return Certificate(Verdict.CERTIFIED_FREE, NU_POWERS, params)
    short = [i for i in range(n) if powers[i] < need[i]]
    return unknown(f"powers too small for families {short}", **params)
