import itertools
from fractions import Fraction

import pytest
import sympy

from conftest import curves_n, shipped_system, triangle, two_curves
from twistcert.core import CurveFamily, CurveSystem, Verdict
from twistcert.pingpong import (CONNECTED_SUPPORT, NU_POWERS, PRODUCTS_AT_LEAST_TWO, RATIO_CONDITION,
                                certify_free_n, certify_free_two, certify_relpa_two, nu_bound, nu_report,
                                ratio_condition, support_connected)
from twistcert.sl2z import find_relation


# -- sympy oracle for the nu expressions ------------------------------------------------

def oracle_nu_values(I):
    """All expression values for every ordered (i, j), transcribed symbolically.

    ``I`` maps frozenset({x, y}) to the intersection number.  Parameters are
    symbols substituted with mu = 1, lambda = 2 at the end.  The indices k, l
    range over everything outside {i, j} independently; E4 and E5 are the
    l = j and k = j variants.
    """
    n = len({x for pair in I for x in pair})
    lam = sympy.Symbol("lam", positive=True)
    mu = sympy.Symbol("mu", positive=True)

    def i_(x, y):
        return sympy.Integer(I[frozenset((x, y))])

    out = {}
    for i, j in itertools.permutations(range(n), 2):
        rest = [k for k in range(n) if k not in (i, j)]
        exprs = [2 / (mu * i_(i, j))]
        exprs += [1 / (mu * i_(i, k)) + lam * i_(j, k) / (i_(i, j) * i_(i, k)) for k in rest]
        exprs += [lam / (lam - 1) * i_(j, l) / (i_(i, l) * i_(j, i))
                  + lam * lam / (lam - 1) * i_(j, k) / (i_(j, i) * i_(i, k))
                  for k in rest for l in rest]
        exprs += [1 / ((lam - 1) * mu * i_(i, j)) + lam * lam / (lam - 1) * i_(j, k) / (i_(j, i) * i_(i, k))
                  for k in rest]
        exprs += [lam / ((lam - 1) * mu * i_(i, j)) + lam / (lam - 1) * i_(j, l) / (i_(j, i) * i_(i, l))
                  for l in rest]
        out[(i, j)] = sorted({sympy.nsimplify(e.subs({lam: 2, mu: 1})) for e in exprs})
    return out


def _as_fractions(values):
    return sorted({Fraction(int(v.p), int(v.q)) for v in values})


@pytest.mark.parametrize("x, y, z", [(6, 6, 6), (12, 12, 12), (2, 2, 4), (6, 7, 9), (3, 5, 8)])
def test_nu_values_match_oracle(x, y, z):
    sys = triangle(x, y, z)
    table = {frozenset((0, 1)): x, frozenset((0, 2)): y, frozenset((1, 2)): z}
    expected = oracle_nu_values(table)
    for (i, j), vals in expected.items():
        entry = nu_bound(sys, i, j)
        got = sorted({v for fam in entry.values.values() for v in fam.values()})
        assert got == _as_fractions(vals), (i, j)


def test_nu_values_match_oracle_four_curves():
    pairs = {(0, 1): 6, (0, 2): 7, (0, 3): 8, (1, 2): 9, (1, 3): 6, (2, 3): 10}
    sys = curves_n(*((i, j, v) for (i, j), v in pairs.items()))
    expected = oracle_nu_values({frozenset(k): v for k, v in pairs.items()})
    for (i, j), vals in expected.items():
        entry = nu_bound(sys, i, j)
        got = sorted({v for fam in entry.values.values() for v in fam.values()})
        assert got == _as_fractions(vals)


# Frozen from the oracle above, triple-six.
TRIPLE_SIX = {"E1": Fraction(1, 3), "E2": Fraction(1, 2), "E3": Fraction(1),
              "E4": Fraction(5, 6), "E5": Fraction(2, 3)}


def test_triple_six_per_family():
    entry = nu_bound(triangle(6, 6, 6), 0, 1)
    assert {name: entry.family_max(name) for name in TRIPLE_SIX} == TRIPLE_SIX
    assert entry.max == 1 and entry.nu == 1


def test_nu_examples():
    assert nu_report(triangle(12, 12, 12)).max == Fraction(1, 2)
    report = nu_report(triangle(2, 2, 4))
    assert report.max > 1 and max(report.nu(i) for i in range(3)) >= 2


@pytest.mark.parametrize("x, y, z", [(6, 6, 6), (2, 3, 4), (5, 7, 11)])
def test_doubling_never_increases_nu(x, y, z):
    small, big = nu_report(triangle(x, y, z)), nu_report(triangle(2 * x, 2 * y, 2 * z))
    for key, e in small.entries.items():
        assert big.entries[key].max <= e.max
        assert big.entries[key].nu <= e.nu


def test_nu_parameter_checks():
    sys = triangle(6, 6, 6)
    with pytest.raises(ValueError):
        nu_bound(sys, 0, 0)
    lam = {(i, j, k): Fraction(2) for i, j, k in itertools.permutations(range(3))}
    mu = {(i, j): Fraction(1) for i, j in itertools.permutations(range(3), 2)}
    mu[(0, 1)] = Fraction(3)
    with pytest.raises(ValueError):
        nu_bound(sys, 0, 1, lam, mu)


# -- n twists -------------------------------------------------------------------------

def test_triple_six_certified():
    cert = certify_free_n(triangle(6, 6, 6))
    assert cert.verdict is Verdict.CERTIFIED_FREE and cert.basis == RATIO_CONDITION
    assert cert.parameters["nu"] == 1


@pytest.mark.parametrize("c", range(1, 11))
def test_twisted_pattern_unknown(c):
    sys = triangle(c, c, c * c)
    assert ratio_condition(sys) >= 1
    assert certify_free_n(sys).verdict is Verdict.UNKNOWN


def test_all_fives_unknown():
    assert certify_free_n(triangle(5, 5, 5)).verdict is Verdict.UNKNOWN


def test_powers_route():
    cert = certify_free_n(triangle(2, 2, 4), [6, 2, 2])
    assert cert.verdict is Verdict.CERTIFIED_FREE and cert.basis == NU_POWERS
    assert certify_free_n(triangle(2, 2, 4), [1, 1, 1]).verdict is Verdict.UNKNOWN
    with pytest.raises(ValueError):
        certify_free_n(triangle(6, 6, 6), [1, 1])


def test_disjoint_pair_rejected():
    with pytest.raises(ValueError):
        certify_free_n(triangle(6, 6, 0))


# -- two multi-twists ------------------------------------------------------------------

def test_support_connected():
    assert support_connected(two_curves(1))
    sys = CurveSystem.build([CurveFamily("A", ("a1", "a2"), (1, 1)), CurveFamily.single("B")],
                            {("a1", "b"): 2})
    assert not support_connected(sys)
    assert support_connected(two_curves(2, 0))


def test_free_examples():
    assert certify_free_two(two_curves(2, 0)).verdict is Verdict.CERTIFIED_FREE
    assert certify_free_two(two_curves(1, 1, 2, 2)).basis == PRODUCTS_AT_LEAST_TWO
    assert certify_free_two(two_curves(1, 1, 1, 5)).basis == CONNECTED_SUPPORT
    cert = certify_free_two(two_curves(1, 1, 1, 3))
    assert cert.verdict is Verdict.CERTIFIED_NOT_FREE and cert.witness.name == "pow3_chain"


def test_relpa_examples():
    cert = certify_relpa_two(two_curves(3, 1))
    assert cert.verdict is Verdict.CERTIFIED_REL_PA and cert.basis == "relpa-regime-i"
    assert certify_relpa_two(two_curves(2, 0)).witness.name == "lantern"
    assert certify_relpa_two(two_curves(2, 2)).witness.name == "tbta_squared"
    cert = certify_relpa_two(two_curves(1, 1, 2, 2))
    assert cert.verdict is Verdict.CERTIFIED_NOT_REL_PA and cert.witness.trace == -2


def test_relpa_without_alg_has_no_witness():
    cert = certify_relpa_two(two_curves(2))
    assert cert.verdict is Verdict.CERTIFIED_NOT_REL_PA and cert.witness is None and cert.notes


def test_disjoint_families_rejected():
    with pytest.raises(ValueError):
        certify_free_two(CurveSystem.build([CurveFamily.single("A"), CurveFamily.single("B")], {}))


def _products(sys):
    fa, fb = sys.families
    pa = [m * sys.curve_family_intersection(c, 1) for c, m in zip(fa.curves, fa.powers)]
    pb = [n * sys.curve_family_intersection(c, 0) for c, n in zip(fb.curves, fb.powers)]
    return pa, pb


def _multi(m1, m2, n, x1, x2):
    fams = [CurveFamily("A", ("a1", "a2"), (m1, m2)), CurveFamily.single("B", "b", n)]
    return CurveSystem.build(fams, {("a1", "b"): x1, ("a2", "b"): x2})


def test_positive_verdicts_rederive_hypotheses():
    """Every positive certificate's basis is re-checked from the raw products."""
    for m1, m2, n, x1, x2 in itertools.product(range(1, 4), range(1, 4), range(1, 5), range(1, 3), range(1, 3)):
        sys = _multi(m1, m2, n, x1, x2)
        pa, pb = _products(sys)
        free = certify_free_two(sys)
        if free.basis == PRODUCTS_AT_LEAST_TWO:
            assert min(pa) >= 2 and min(pb) >= 2
        elif free.basis == CONNECTED_SUPPORT:
            assert not ((1 in pa and min(pb) <= 3) or (1 in pb and min(pa) <= 3))
        else:
            assert free.verdict is Verdict.UNKNOWN
        relpa = certify_relpa_two(sys)
        if relpa.verdict is Verdict.CERTIFIED_REL_PA:
            need = {"i": (2, 3), "ii": (3, 2), "iii": (1, 5), "iv": (5, 1)}[relpa.basis.rsplit("-", 1)[1]]
            assert min(pa) >= need[0] and min(pb) >= need[1]


def test_products_monotone():
    for m1, m2, n, x1, x2 in itertools.product(range(1, 4), range(1, 4), range(1, 4), range(1, 3), range(1, 3)):
        if certify_free_two(_multi(m1, m2, n, x1, x2)).basis != PRODUCTS_AT_LEAST_TWO:
            continue
        for bumped in ((m1 + 1, m2, n), (m1, m2 + 1, n), (m1, m2, n + 1)):
            assert certify_free_two(_multi(*bumped, x1, x2)).verdict is Verdict.CERTIFIED_FREE


@pytest.mark.parametrize("m, n", list(itertools.product(range(1, 6), repeat=2)))
def test_not_free_agrees_with_search(m, n):
    cert = certify_free_two(two_curves(1, 1, m, n))
    found = find_relation(m, n, 8)
    assert (cert.verdict is Verdict.CERTIFIED_NOT_FREE) == (found is not None)


def test_torus_relation_configuration_unknown():
    sys = shipped_system("torus_relation.json")
    assert certify_free_two(sys).verdict is Verdict.UNKNOWN
