"""Classification of groups and words generated by two twist powers.

The two-twist tables are complete: for single curves a, b with
intersection number ab and powers m, n the group ``<T_a^m, T_b^n>`` is
free exactly when ab >= 2 or {m, n} avoids {1}, {1,2}, {1,3}, and it is
relatively pseudo-Anosov exactly when ab >= 3, or ab = 2 and
(m, n) != (1, 1), or ab = 1 and {m, n} avoids {1}, {1,2}, {1,3}, {1,4},
{2}.  Every negative answer comes with a relation from
:func:`relation_catalog` or a trace -2 word.

Word-level classification for ab = 2 rests on the three-state analysis of
the set ``Y`` where ``(x,a) = (x,b)``: apart from powers of ``BA`` and
``BA^-1`` every cyclically reduced word eventually pushes each curve off
``Y`` and then grows under ping-pong.  :func:`ratio_propagation_check`
replays that argument with exact interval bounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterator

from .bounds import twist_bound
from .core import CurveSystem, RelationInstance, TraceWitness, TwistWord, cyclic_reduce
from .sl2z import MatrixClass, classify_matrix, eval_word

A, B = 0, 1

FREE_TABLE = "two-twist-free-table"
RELPA_TABLE = "two-twist-relpa-table"


# -- the relation catalog ----------------------------------------------------

def _w(*letters) -> TwistWord:
    return TwistWord.of(*letters)


_AB = _w((A, 1), (B, 1))
_BA = _w((B, 1), (A, 1))

_CATALOG = (
    RelationInstance(
        "chain6", _AB ** 6, (("delta", 1),), ("a", "b"),
        "(AB)^6=delta", {"ab": 1}),
    RelationInstance(
        "braid", _w((A, 1), (B, 1), (A, 1)), (("b", 1), ("a", 1), ("b", 1)), ("a", "b"),
        "ABA=BAB", {"ab": 1}),
    RelationInstance(
        "pow2_chain", _w((A, 1), (B, 2)) ** 4, (("delta", 1),), ("a", "b"),
        "(AB^2)^4=(AB)^6", {"ab": 1}),
    RelationInstance(
        "pow3_chain", _w((A, 1), (B, 3)) ** 3, (("delta", 1),), ("a", "b"),
        "(AB^3)^3=(AB)^6", {"ab": 1}),
    RelationInstance(
        "lantern", _AB, (("d1", 1), ("d2", 1), ("d3", 1), ("d4", 1), ("c", -1)), ("a", "b"),
        "ABC=d1 d2 d3 d4, so AB=c^-1 d1 d2 d3 d4", {"ab": 2, "alg_abs": 0}),
    RelationInstance(
        "tbta_squared", _BA ** 2, (("d1", 1), ("d2", 1), ("gamma", -4), ("gamma_prime", -4)), ("a", "b"),
        "(BA)^2=d1 d2 gamma^-4 gamma_prime^-4", {"ab": 2, "alg_abs": 2}),
    RelationInstance(
        "torus", _w((0, 1), (1, 1), (2, 1)) ** 4, (("delta1", 1), ("delta2", 1)), ("a1", "a2", "b"),
        "(A1 A2 B)^4=delta1 delta2", {"a1|b": 1, "a2|b": 1}),
)

_BY_NAME = {r.name: r for r in _CATALOG}


def relation_catalog() -> list[RelationInstance]:
    return list(_CATALOG)


def catalog_entry(name: str) -> RelationInstance:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"no catalog relation named {name!r}") from None


def _chain_witness(m: int, n: int) -> RelationInstance:
    """The chain relation for {m, n} in {1}, {1,2}, {1,3}, over generators T_a^m, T_b^n.

    Each one says that some word in the generators equals the boundary twist
    of the one-holed torus, a central element.
    """
    k = max(m, n)
    name = {1: "chain6", 2: "pow2_chain", 3: "pow3_chain"}[k]
    reps = {1: 6, 2: 4, 3: 3}[k]
    if min(m, n) != 1:
        raise ValueError(f"no chain relation for powers ({m}, {n})")
    lhs = (_AB if n >= m else _BA) ** reps
    entry = _BY_NAME[name]
    return replace(entry, lhs=lhs, configuration={"ab": 1, "m": m, "n": n})


def _trace_witness(m: int, n: int) -> TraceWitness:
    word = _AB
    tr = eval_word(word, m, n).trace
    def power(x, k):
        return x if k == 1 else f"{x}^{k}"
    return TraceWitness(word, tr, f"{power('t', m)} {power('s', n)} has trace {tr}")


# -- two-twist tables --------------------------------------------------------

@dataclass(frozen=True)
class TwoGroupClassification:
    ab: int
    m: int
    n: int
    free: bool
    relpa: bool
    free_witness: RelationInstance | None = None
    relpa_witness: RelationInstance | TraceWitness | None = None


def classify_two_group(ab: int, alg_abs: int | None, m: int, n: int,
                       require_witness: bool = True) -> TwoGroupClassification:
    """Freeness and relative pseudo-Anosov status of ``<T_a^m, T_b^n>``.

    With ab = 2 and (m, n) = (1, 1) the witness depends on the algebraic
    intersection (lantern for 0, ``(BA)^2`` for 2).  When ``alg_abs`` is
    missing that case raises unless ``require_witness`` is False, in which
    case the verdict comes back without a witness.
    """
    if ab < 1 or m < 1 or n < 1:
        raise ValueError("need ab >= 1 and m, n >= 1")
    pair = frozenset((m, n))
    if ab >= 3:
        return TwoGroupClassification(ab, m, n, True, True)
    if ab == 2:
        if (m, n) != (1, 1):
            return TwoGroupClassification(ab, m, n, True, True)
        if alg_abs not in (0, 2):
            if require_witness:
                raise ValueError("ab = 2 needs alg_abs in {0, 2} to choose the witness")
            return TwoGroupClassification(ab, m, n, True, False)
        witness = _BY_NAME["lantern" if alg_abs == 0 else "tbta_squared"]
        return TwoGroupClassification(ab, m, n, True, False, relpa_witness=witness)
    # ab == 1
    if pair in ({1}, {1, 2}, {1, 3}):
        w = _chain_witness(m, n)
        return TwoGroupClassification(ab, m, n, False, False, w, w)
    if pair in ({1, 4}, {2}):
        return TwoGroupClassification(ab, m, n, True, False, relpa_witness=_trace_witness(m, n))
    return TwoGroupClassification(ab, m, n, True, True)


# -- words -------------------------------------------------------------------

class WordKind(str, enum.Enum):
    GENERATOR_POWER = "GeneratorPower"
    REL_PA = "RelPA"
    MULTI_TWIST = "MultiTwist"
    REDUCIBLE_NOT_REL_PA = "ReducibleNotRelPA"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class WordVerdict:
    kind: WordKind
    basis: str | None = None
    relation: RelationInstance | None = None
    core: TwistWord = TwistWord()
    alternatives: dict[int, WordVerdict] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is WordKind.MULTI_TWIST and self.relation is None:
            raise ValueError("a MultiTwist verdict needs a catalog relation")


def _two_single(sys: CurveSystem) -> tuple[str, str]:
    if len(sys.families) != 2:
        raise ValueError("word classification needs exactly two families")
    if not all(f.is_single for f in sys.families):
        raise ValueError("word classification needs single-curve families")
    return sys.families[0].curves[0], sys.families[1].curves[0]


def _effective(sys: CurveSystem, w: TwistWord) -> TwistWord:
    """Exponents in terms of the underlying Dehn twists (family powers folded in)."""
    return TwistWord(tuple((g, e * sys.families[g].powers[0]) for g, e in w.letters))


def power_type(core: TwistWord) -> tuple[str, int] | None:
    """Detect ``(BA)^n`` or ``(BA^-1)^n`` up to cyclic rotation.

    ``core`` must be cyclically reduced over generators 0 = A and 1 = B.
    Returns ``("BA", n)`` or ``("BA^-1", n)``, else None.
    """
    if len(core) < 2 or len(core) % 2 or any(abs(e) != 1 for _, e in core.letters):
        return None
    signs = {g: {e for gg, e in core.letters if gg == g} for g in (A, B)}
    if len(signs[A]) != 1 or len(signs[B]) != 1:
        return None
    sa, sb = signs[A].pop(), signs[B].pop()
    k = len(core) // 2
    if sa == sb:
        return "BA", sa * k
    return "BA^-1", sb * k


def _sl2z_verdict(sys: CurveSystem, core: TwistWord) -> WordVerdict:
    m, n = sys.families[0].powers[0], sys.families[1].powers[0]
    M = eval_word(core, m, n)
    cls = classify_matrix(M)
    note = f"matrix {M.rows()} trace {M.trace}"
    if cls is MatrixClass.ANOSOV:
        return WordVerdict(WordKind.REL_PA, "sl2z-trace", core=core, notes=(note,))
    if M.trace == 2:
        what = "power of the boundary twist" if M.rows() == [[1, 0], [0, 1]] else \
            "twist about one curve times a power of the boundary twist"
        return WordVerdict(WordKind.MULTI_TWIST, "sl2z-trace", _BY_NAME["chain6"], core,
                           notes=(note, what))
    what = "periodic" if cls is MatrixClass.PERIODIC else "reducible with a half-turn"
    return WordVerdict(WordKind.REDUCIBLE_NOT_REL_PA, "sl2z-trace", core=core, notes=(note, what))


def _ab2_verdict(core: TwistWord, alg: int, ptype: tuple[str, int]) -> WordVerdict:
    shape, k = ptype
    if shape == "BA^-1":
        basis = "lantern-conjugate" if alg == 0 else "chart-dilatation"
        return WordVerdict(WordKind.REL_PA, basis, core=core)
    if alg == 0:
        return WordVerdict(WordKind.MULTI_TWIST, "lantern", _BY_NAME["lantern"], core,
                           notes=("AB is a multi-twist, so every power of its conjugate BA is one too",))
    if k % 2 == 0:
        return WordVerdict(WordKind.MULTI_TWIST, "tbta-squared", _BY_NAME["tbta_squared"], core)
    return WordVerdict(WordKind.REDUCIBLE_NOT_REL_PA, "tbta-squared-odd", _BY_NAME["tbta_squared"], core,
                       notes=("odd power of BA: its square is a multi-twist, the power itself is not pure",))


def classify_word(sys: CurveSystem, w: TwistWord) -> WordVerdict:
    """Classify a word in the two generators of a single-curve system."""
    a, b = _two_single(sys)
    if not w.generators <= {A, B}:
        raise ValueError("words over three or more families are handled by the n-family certifiers")
    core, _ = cyclic_reduce(w)
    if not core:
        raise ValueError("word reduces to the identity")
    if len(core) == 1:
        return WordVerdict(WordKind.GENERATOR_POWER, "generator-power", core=core)
    ab = sys.intersection(a, b)
    if ab == 0:
        raise ValueError("disjoint curves: the twists commute")
    if ab >= 3:
        return WordVerdict(WordKind.REL_PA, "word-relpa-regime", core=core)
    if ab == 1:
        return _sl2z_verdict(sys, core)
    eff = _effective(sys, core)
    ptype = power_type(eff)
    if ptype is None:
        return WordVerdict(WordKind.REL_PA, "word-growth", core=core)
    alg = sys.algebraic(a, b)
    if alg in (0, 2):
        return _ab2_verdict(core, alg, ptype)
    cases = {x: _ab2_verdict(core, x, ptype) for x in (0, 2)}
    kinds = {v.kind for v in cases.values()}
    if len(kinds) == 1:
        first = cases[0]
        return replace(first, alternatives=cases,
                       notes=first.notes + ("algebraic intersection unknown; both cases agree",))
    return WordVerdict(WordKind.UNKNOWN, None, core=core, alternatives=cases,
                       notes=("verdict depends on the algebraic intersection (0 or 2)",))


def sl2z_kind_compatible(kind: WordKind, cls: MatrixClass) -> bool:
    """Whether a word verdict is consistent with the trace class of its matrix."""
    allowed = {
        MatrixClass.ANOSOV: {WordKind.REL_PA},
        MatrixClass.REDUCIBLE: {WordKind.GENERATOR_POWER, WordKind.MULTI_TWIST, WordKind.REDUCIBLE_NOT_REL_PA},
        MatrixClass.PERIODIC: {WordKind.REDUCIBLE_NOT_REL_PA},
    }
    return kind in allowed[cls]


# -- the Y-state automaton ---------------------------------------------------

@dataclass(frozen=True)
class Step:
    letter: tuple[int, int]
    state: str
    a: object
    b: object


@dataclass(frozen=True)
class RatioCheck:
    verified: bool
    rotation: TwistWord | None
    steps: tuple[Step, ...] = ()
    reason: str = ""


def _rotations(core: TwistWord) -> Iterator[TwistWord]:
    for i in range(len(core)):
        yield TwistWord(core.letters[i:] + core.letters[:i])


def _run_from_y(rotation: TwistWord, p: int = 1) -> tuple[bool, list[Step]]:
    """Follow a curve with ``(x,a) = (x,b) = p`` through one period of the rotation.

    Letters act right to left.  After each letter the untouched coordinate
    is exact and the other lies in an interval from the twist bound.  If the
    interval sits strictly above the equality value the curve has left Y for
    the twisted family's set and ping-pong takes over; otherwise only the
    equality branch can keep the curve in Y and we continue with it.
    Three letters ``X^e Z^d X^-e`` act as a twist about ``X^e(z)``, which
    meets z four times; that bound forces the escape.
    """
    applied = list(reversed(rotation.letters))
    val = {A: p, B: p}
    history: list[tuple[int, int, dict]] = []
    steps = []
    for idx, (g, e) in enumerate(applied):
        other = 1 - g
        before = dict(val)
        if (idx >= 2 and applied[idx - 2][0] == g and applied[idx - 2][1] == -e
                and abs(e) == 1 and abs(applied[idx - 1][1]) == 1):
            # conjugated twist about c = T_g^e(other curve): (c, other) = 4, and
            # (x0, c) = (T_g^-e x0, other) where x0 is the curve three letters back
            x0 = history[idx - 2][2]
            xc = history[idx - 1][2][other]
            bound = twist_bound(1, xc, x0[other], twist_bound(1, 2, 0, 2).lo)
        else:
            bound = twist_bound(abs(e), val[g], val[other], 2)
        history.append((g, e, before))
        equal = val[g]
        if bound.lo > equal:
            steps.append(Step((g, e), "N_a" if g == A else "N_b", val[g], bound))
            return True, steps
        if bound.lo < equal:
            steps.append(Step((g, e), "undetermined", val[g], bound))
            return False, steps
        val = {g: val[g], other: equal}
        steps.append(Step((g, e), "Y", val[A], val[B]))
    return False, steps


def ratio_propagation_check(sys: CurveSystem, w: TwistWord) -> RatioCheck:
    """Re-derive relative pseudo-Anosov behaviour for a +-1 word when ab = 2.

    Curves in either ping-pong set grow under any alternating word, so the
    only start that needs care is the equality set Y.  The check succeeds
    when some rotation of ``w`` drives every Y start strictly off Y within
    one period; a conjugate with no periodic curves means ``w`` has none.
    """
    a, b = _two_single(sys)
    if sys.intersection(a, b) != 2:
        raise ValueError("the Y-state automaton needs ab = 2")
    if not w.is_cyclically_reduced or len(w) < 2:
        raise ValueError("word must be cyclically reduced of length >= 2")
    eff = _effective(sys, w)
    if any(abs(e) != 1 for _, e in eff.letters):
        raise ValueError("all effective exponents must be +-1")
    if power_type(eff) is not None:
        return RatioCheck(False, None, reason="constant sign per generator: exceptional family")
    for rot in _rotations(eff):
        ok, steps = _run_from_y(rot)
        if ok:
            return RatioCheck(True, rot, tuple(steps), "every Y start leaves Y within one period")
    return RatioCheck(False, None, reason="no rotation forces an escape from Y")


# -- lantern-like relations ----------------------------------------------------

@dataclass(frozen=True)
class LanternLikeAnswer:
    relations: tuple[RelationInstance, ...]
    reason: str

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)


def lantern_like_query(ab: int, alg_abs: int | None = None) -> LanternLikeAnswer:
    """Relations between a word in two twists and a multi-twist with >= 3 components."""
    if ab < 1:
        raise ValueError("ab must be >= 1")
    if ab == 1:
        return LanternLikeAnswer((), "RHS multi-twist has < 3 components: the pair fills a one-holed torus")
    if ab >= 3:
        return LanternLikeAnswer((), "every word is relatively pseudo-Anosov when ab >= 3")
    if alg_abs == 0:
        return LanternLikeAnswer((_BY_NAME["lantern"],), "four-holed sphere: words (AB)^n")
    if alg_abs == 2:
        return LanternLikeAnswer((_BY_NAME["tbta_squared"],), "twice-punctured torus: words (BA)^(2n)")
    return LanternLikeAnswer((_BY_NAME["lantern"], _BY_NAME["tbta_squared"]),
                             "algebraic intersection unknown: one of the two applies")


def check_conjugation_symmetry(rel: RelationInstance) -> bool:
    """Conjugating ``(BA)^2 = d1 d2 gamma^x gamma_prime^y`` by BA swaps gamma and gamma_prime.

    BA commutes with its own square and fixes the boundary curves, so the
    right-hand side must be invariant under the swap, forcing x = y.  The
    magnitude 4 is not pinned down by this argument: a symmetric but wrong
    exponent pair still passes.
    """
    if rel.name != "tbta_squared":
        raise ValueError("conjugation symmetry applies only to tbta_squared")
    ex = rel.rhs_exponents()
    swapped = {{"gamma": "gamma_prime", "gamma_prime": "gamma"}.get(c, c): e for c, e in ex.items()}
    return swapped == ex
