import itertools
import random
from dataclasses import replace

import pytest

from conftest import two_curves
from twistcert.classify import (RatioCheck, WordKind, catalog_entry, check_conjugation_symmetry,
                                classify_two_group, classify_word, lantern_like_query, power_type,
                                ratio_propagation_check, relation_catalog, sl2z_kind_compatible)
from twistcert.core import TraceWitness, TwistWord, cyclic_reduce
from twistcert.sl2z import IDENTITY, classify_matrix, eval_word

A, B = 0, 1
W = TwistWord.of
BA = W((B, 1), (A, 1))
BAi = W((B, 1), (A, -1))


# -- two-twist tables ------------------------------------------------------------

def test_pow2_chain_witness():
    res = classify_two_group(1, 1, 1, 2)
    assert not res.free and not res.relpa
    assert res.free_witness.name == "pow2_chain"
    assert res.free_witness.text == "(AB^2)^4=(AB)^6"


def test_lantern_witness():
    res = classify_two_group(2, 0, 1, 1)
    assert res.free and not res.relpa and res.relpa_witness.name == "lantern"
    assert classify_two_group(2, 2, 1, 1).relpa_witness.name == "tbta_squared"


def test_trace_witness():
    res = classify_two_group(1, 1, 2, 2)
    assert res.free and not res.relpa
    assert isinstance(res.relpa_witness, TraceWitness) and res.relpa_witness.trace == -2


@pytest.mark.parametrize("m, n", list(itertools.product(range(1, 6), repeat=2)))
def test_large_intersection_always_free_and_relpa(m, n):
    res = classify_two_group(3, 1, m, n)
    assert res.free and res.relpa
    assert classify_two_group(2, 0, m, n).free


def test_missing_alg_needs_opt_out():
    with pytest.raises(ValueError):
        classify_two_group(2, None, 1, 1)
    res = classify_two_group(2, None, 1, 1, require_witness=False)
    assert not res.relpa and res.relpa_witness is None


@pytest.mark.parametrize("m, n", list(itertools.product(range(1, 6), repeat=2)))
def test_witnesses_confirmed_in_matrix_model(m, n):
    """Chain witnesses map to the identity; trace witnesses have trace -2."""
    res = classify_two_group(1, 1, m, n)
    if res.free_witness is not None:
        assert eval_word(res.free_witness.lhs, m, n) == IDENTITY
    if isinstance(res.relpa_witness, TraceWitness):
        assert eval_word(res.relpa_witness.word, m, n).trace == -2


# -- catalog --------------------------------------------------------------------------

def test_catalog_shape():
    cat = relation_catalog()
    assert len(cat) == 7 and len({r.name for r in cat}) == 7
    lantern = catalog_entry("lantern").rhs_exponents()
    assert sorted(lantern) == ["c", "d1", "d2", "d3", "d4"] and lantern["c"] == -1
    assert [e for _, e in catalog_entry("tbta_squared").rhs] == [1, 1, -4, -4]
    with pytest.raises(KeyError):
        catalog_entry("nope")


def test_braid_relation_in_matrix_model():
    rel = catalog_entry("braid")
    rhs = W(*((rel.generators.index(c), e) for c, e in rel.rhs))
    assert eval_word(rel.lhs) == eval_word(rhs)


@pytest.mark.parametrize("name", ["chain6", "pow2_chain", "pow3_chain"])
def test_chain_relations_are_central(name):
    # the catalog words carry their exponents, e.g. (A B^2)^4
    assert eval_word(catalog_entry(name).lhs) == IDENTITY


def test_conjugation_symmetry():
    rel = catalog_entry("tbta_squared")
    assert check_conjugation_symmetry(rel)

    def mutate(x, y):
        rhs = tuple((c, {"gamma": x, "gamma_prime": y}.get(c, e)) for c, e in rel.rhs)
        return replace(rel, rhs=rhs)

    assert not check_conjugation_symmetry(mutate(-4, -3))
    # symmetric but wrong: the swap argument cannot see the magnitude
    assert check_conjugation_symmetry(mutate(-2, -2))
    with pytest.raises(ValueError):
        check_conjugation_symmetry(catalog_entry("lantern"))


def test_lantern_like_queries():
    assert [r.name for r in lantern_like_query(2, 0)] == ["lantern"]
    assert [r.name for r in lantern_like_query(2, 2)] == ["tbta_squared"]
    one = lantern_like_query(1)
    assert len(one) == 0 and "< 3 components" in one.reason
    assert len(lantern_like_query(4)) == 0


# -- word classifier --------------------------------------------------------------------

def test_word_examples():
    alg0, alg2 = two_curves(2, 0), two_curves(2, 2)
    assert classify_word(alg0, W((A, 1), (B, 1))).relation.name == "lantern"
    v = classify_word(alg2, BA ** 2)
    assert v.kind is WordKind.MULTI_TWIST and v.relation.name == "tbta_squared"
    assert classify_word(alg2, BA).kind is WordKind.REDUCIBLE_NOT_REL_PA
    assert classify_word(alg0, BAi).kind is WordKind.REL_PA
    assert classify_word(alg2, BAi).kind is WordKind.REL_PA
    assert classify_word(alg0, W((B, 1), (A, 2))).kind is WordKind.REL_PA


@pytest.mark.parametrize("k", range(1, 5))
def test_powers_of_ba(k):
    assert classify_word(two_curves(2, 0), BA ** k).kind is WordKind.MULTI_TWIST
    kind = classify_word(two_curves(2, 2), BA ** (2 * k)).kind
    assert kind is WordKind.MULTI_TWIST
    assert classify_word(two_curves(2, 2), BA ** (2 * k - 1)).kind is WordKind.REDUCIBLE_NOT_REL_PA


def test_conjugates_classify_alike():
    sys = two_curves(2, 2)
    g = W((A, 2), (B, -1))
    assert classify_word(sys, g * BA ** 2 * g.inverse()).kind is WordKind.MULTI_TWIST


def test_generator_power_and_large_intersection():
    assert classify_word(two_curves(2, 0), W((A, 3))).kind is WordKind.GENERATOR_POWER
    assert classify_word(two_curves(3), BA).kind is WordKind.REL_PA


def test_unknown_alg_reports_both_cases():
    sys = two_curves(2)
    v = classify_word(sys, BA)
    assert v.kind is WordKind.UNKNOWN
    assert v.alternatives[0].kind is WordKind.MULTI_TWIST
    assert v.alternatives[2].kind is WordKind.REDUCIBLE_NOT_REL_PA
    # agreeing cases collapse to one verdict
    both = classify_word(sys, BA ** 2)
    assert both.kind is WordKind.MULTI_TWIST and set(both.alternatives) == {0, 2}


def test_rejects_identity_word():
    with pytest.raises(ValueError):
        classify_word(two_curves(2, 0), W((A, 1), (A, -1)))


def test_power_type():
    assert power_type(BA ** 3) == ("BA", 3)
    assert power_type(BAi ** -2) == ("BA^-1", -2)
    assert power_type(W((A, 1), (B, 1))) is not None
    assert power_type(W((B, 1), (A, 2))) is None


def test_agrees_with_trace_classes_on_the_torus():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        sys = two_curves(1, None, m, n)
        letters = [(i % 2, rng.choice([-2, -1, 1, 2])) for i in range(rng.randint(1, 8))]
        w = W(*letters)
        core, _ = cyclic_reduce(w)
        if not core:
            continue
        v = classify_word(sys, w)
        assert sl2z_kind_compatible(v.kind, classify_matrix(eval_word(w, m, n))), (m, n, w, v)
        checked += 1


# -- Y-state automaton ------------------------------------------------------------------

def test_ratio_check_examples():
    sys = two_curves(2, 0)
    assert ratio_propagation_check(sys, W((B, 1), (A, 1), (B, 1), (A, -1))).verified
    assert ratio_propagation_check(sys, W((B, 1), (A, -1), (B, 1), (A, 1))).verified
    res = ratio_propagation_check(sys, BA ** 2)
    assert isinstance(res, RatioCheck) and not res.verified


def test_ratio_check_preconditions():
    with pytest.raises(ValueError):
        ratio_propagation_check(two_curves(1), BA)
    with pytest.raises(ValueError):
        ratio_propagation_check(two_curves(2, 0), W((B, 2), (A, 1)))


def test_ratio_check_never_contradicts_classifier():
    hits = 0
    for sys in (two_curves(2, 0), two_curves(2, 2)):
        for length in (2, 4, 6):
            for signs in itertools.product((1, -1), repeat=length):
                w = W(*((B if i % 2 == 0 else A, s) for i, s in enumerate(signs)))
                if len(w) != length or not w.is_cyclically_reduced:
                    continue
                if ratio_propagation_check(sys, w).verified:
                    hits += 1
                    assert classify_word(sys, w).kind is WordKind.REL_PA
    assert hits > 0
