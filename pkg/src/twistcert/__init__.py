"""Exact certificates for groups generated by Dehn twists and multi-twists."""

from .bounds import IntervalBound, PairState, multitwist_bound, nset_membership, propagate, twist_bound
from .classify import (WordKind, WordVerdict, check_conjugation_symmetry, classify_two_group, classify_word,
                       lantern_like_query, ratio_propagation_check, relation_catalog)
from .core import (Certificate, CurveFamily, CurveSystem, RelationInstance, TraceWitness, TwistWord, Verdict,
                   cyclic_reduce, free_reduce, support, validate)
from .exact import QuadraticNumber
from .pingpong import (NuBoundReport, certify_free_n, certify_free_two, certify_relpa_two, nu_bound, nu_report,
                       support_connected)
from .sl2z import Mat2, classify_matrix, eval_word, find_relation, torus_intersection
from .traintrack import Chart, char_poly, compose, pa_certificate, verify_eigenpair

__all__ = [
    "Certificate", "Chart", "CurveFamily", "CurveSystem", "IntervalBound", "Mat2", "NuBoundReport", "PairState",
    "QuadraticNumber", "RelationInstance", "TraceWitness", "TwistWord", "Verdict", "WordKind", "WordVerdict",
    "certify_free_n", "certify_free_two", "certify_relpa_two", "char_poly", "check_conjugation_symmetry",
    "classify_matrix", "classify_two_group", "classify_word", "compose", "cyclic_reduce", "eval_word",
    "find_relation", "free_reduce", "lantern_like_query", "multitwist_bound", "nset_membership", "nu_bound",
    "nu_report", "pa_certificate", "propagate", "ratio_propagation_check", "relation_catalog", "support",
    "support_connected", "torus_intersection", "twist_bound", "validate", "verify_eigenpair",
]
