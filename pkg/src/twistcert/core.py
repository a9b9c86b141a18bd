"""Domain types shared by every certifier.

A :class:`CurveSystem` is purely combinatorial: named families of pairwise
disjoint curves, a twist power per curve, and the geometric intersection
numbers between curves (optionally with absolute algebraic intersection
numbers).  Nothing here knows about surfaces.

Words are written the way twists compose: ``[(1, 1), (0, 1)]`` is
``T_B T_A``, i.e. apply the family-0 multi-twist first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]


@dataclass(frozen=True)
class CurveFamily:
    name: str
    curves: tuple[str, ...]
    powers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "powers", tuple(int(p) for p in self.powers))
        if len(self.curves) != len(self.powers):
            raise ValueError(f"family {self.name!r}: {len(self.curves)} curves but {len(self.powers)} powers")
        if not self.curves:
            raise ValueError(f"family {self.name!r} is empty")
        if len(set(self.curves)) != len(self.curves):
            raise ValueError(f"family {self.name!r}: curve identifiers must be distinct")
        for c, p in zip(self.curves, self.powers):
            if p < 1:
                raise ValueError(f"family {self.name!r}: power of {c!r} must be >= 1, got {p}")

    @classmethod
    def single(cls, name: str, curve: str | None = None, power: int = 1) -> CurveFamily:
        return cls(name, (curve or name.lower(),), (power,))

    @property
    def is_single(self) -> bool:
        return len(self.curves) == 1


def _pair_table(entries: Mapping[tuple[str, str], int] | None) -> dict[tuple[str, str], int]:
    if entries is None:
        return None
    return {(str(c), str(d)): int(v) for (c, d), v in entries.items()}


@dataclass(frozen=True)
class CurveSystem:
    """Curve families plus their intersection data.

    ``geom`` and ``alg_abs`` are stored exactly as given, keyed by ordered
    pairs; missing pairs read as 0.  Use :meth:`build` to get a symmetric
    table from one entry per unordered pair.  Call :func:`validate` to check
    the invariants; construction itself does not reject inconsistent data so
    that violations can be reported rather than raised.
    """

    families: tuple[CurveFamily, ...]
    geom: Mapping[tuple[str, str], int]
    alg_abs: Mapping[tuple[str, str], int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "geom", _pair_table(self.geom))
        object.__setattr__(self, "alg_abs", _pair_table(self.alg_abs))
        seen = set()
        for fam in self.families:
            for c in fam.curves:
                if c in seen:
                    raise ValueError(f"curve {c!r} appears in more than one family")
                seen.add(c)
        names = [f.name for f in self.families]
        if len(set(names)) != len(names):
            raise ValueError("family names must be distinct")

    @classmethod
    def build(cls, families: Sequence[CurveFamily],
              geom: Mapping[tuple[str, str], int],
              alg_abs: Mapping[tuple[str, str], int] | None = None) -> CurveSystem:
        """Construct with each unordered pair given once; mirrors the tables.

        Zero entries are dropped, since a missing pair already reads as 0.
        """

        def mirror(table):
            if table is None:
                return None
            out = {}
            for (c, d), v in table.items():
                if v == 0:
                    continue
                out[(c, d)] = v
                out[(d, c)] = v
            return out

        return cls(tuple(families), mirror(geom), mirror(alg_abs))

    @property
    def curves(self) -> tuple[str, ...]:
        return tuple(c for fam in self.families for c in fam.curves)

    def family_index(self, name: str) -> int:
        for i, fam in enumerate(self.families):
            if fam.name == name:
                return i
        raise KeyError(f"unknown family {name!r}")

    def family_of(self, curve: str) -> int:
        for i, fam in enumerate(self.families):
            if curve in fam.curves:
                return i
        raise KeyError(f"unknown curve {curve!r}")

    def power_of(self, curve: str) -> int:
        fam = self.families[self.family_of(curve)]
        return fam.powers[fam.curves.index(curve)]

    def intersection(self, c: str, d: str) -> int:
        if c == d:
            return self.geom.get((c, c), 0)
        return self.geom.get((c, d), self.geom.get((d, c), 0))

    def algebraic(self, c: str, d: str) -> int | None:
        if self.alg_abs is None:
            return None
        return self.alg_abs.get((c, d), self.alg_abs.get((d, c), 0))

    def family_intersection(self, i: int, j: int) -> int:
        """Geometric intersection of two multi-curves: the sum over components."""
        return sum(self.intersection(c, d)
                   for c in self.families[i].curves for d in self.families[j].curves)

    def curve_family_intersection(self, curve: str, j: int) -> int:
        return sum(self.intersection(curve, d) for d in self.families[j].curves)

    def components(self, curves: Iterable[str] | None = None) -> list[frozenset[str]]:
        """Connected components of the graph joining curves that intersect."""
        pool = list(self.curves if curves is None else dict.fromkeys(curves))
        remaining = set(pool)
        out = []
        for start in pool:
            if start not in remaining:
                continue
            comp = {start}
            stack = [start]
            remaining.discard(start)
            while stack:
                c = stack.pop()
                for d in list(remaining):
                    if self.intersection(c, d) > 0:
                        remaining.discard(d)
                        comp.add(d)
                        stack.append(d)
            out.append(frozenset(comp))
        return out


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    where: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


def validate(sys: CurveSystem) -> list[Violation]:
    """Check every CurveSystem invariant; an empty list means the system is ok."""
    out: list[Violation] = []
    curves = set(sys.curves)
    tables = [("geom", sys.geom)]
    if sys.alg_abs is not None:
        tables.append(("alg_abs", sys.alg_abs))
    for label, table in tables:
        for (c, d), v in sorted(table.items()):
            if c not in curves or d not in curves:
                missing = c if c not in curves else d
                out.append(Violation("unknown-curve", f"{label}({c},{d}) names unknown curve {missing!r}", (c, d)))
                continue
            if v < 0:
                out.append(Violation("negative", f"{label}({c},{d}) = {v} must be nonnegative", (c, d)))
            if c == d and v != 0:
                out.append(Violation("diagonal", f"{label}({c},{c}) = {v} must be 0", (c, d)))
            elif c < d and (d, c) in table and table[(d, c)] != v:
                out.append(Violation("symmetry", f"{label}({c},{d}) = {v} but {label}({d},{c}) = {table[(d, c)]}", (c, d)))
    for fam in sys.families:
        for x in fam.curves:
            for y in fam.curves:
                if x < y and sys.intersection(x, y) != 0:
                    out.append(Violation(
                        "disjointness",
                        f"curves {x!r} and {y!r} of family {fam.name!r} intersect ({sys.intersection(x, y)})",
                        (x, y)))
    if sys.alg_abs is not None:
        for x in sys.curves:
            for y in sys.curves:
                if x >= y:
                    continue
                g, a = sys.intersection(x, y), sys.algebraic(x, y)
                if a > g:
                    out.append(Violation("bound", f"alg_abs({x},{y}) = {a} exceeds geom = {g}", (x, y)))
                if (a - g) % 2:
                    out.append(Violation("parity", f"alg_abs({x},{y}) = {a} and geom = {g} differ mod 2", (x, y)))
    return out


class InvalidSystem(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def ensure_valid(sys: CurveSystem) -> CurveSystem:
    problems = validate(sys)
    if problems:
        raise InvalidSystem(problems)
    return sys


# -- words -----------------------------------------------------------------

@dataclass(frozen=True)
class TwistWord:
    """A word in multi-twist generators, as (family index, exponent) letters.

    Any letter list is accepted; operations that return words always return
    freely reduced ones.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(g), int(e)) for g, e in self.letters))

    @classmethod
    def of(cls, *letters: Letter) -> TwistWord:
        return free_reduce(cls(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: TwistWord) -> TwistWord:
        return free_reduce(TwistWord(self.letters + other.letters))

    def __pow__(self, k: int) -> TwistWord:
        if k < 0:
            return self.inverse() ** (-k)
        return free_reduce(TwistWord(self.letters * k))

    def inverse(self) -> TwistWord:
        return TwistWord(tuple((g, -e) for g, e in reversed(self.letters)))

    @property
    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @property
    def generators(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.letters)

    @property
    def is_freely_reduced(self) -> bool:
        return all(e != 0 for _, e in self.letters) and all(
            a[0] != b[0] for a, b in zip(self.letters, self.letters[1:]))

    @property
    def is_cyclically_reduced(self) -> bool:
        return self.is_freely_reduced and (len(self.letters) <= 1 or self.letters[0][0] != self.letters[-1][0])

    def expand(self) -> tuple[tuple[int, int], ...]:
        """Exponent blocks spelled out as single (generator, +-1) letters."""
        return tuple((g, 1 if e > 0 else -1) for g, e in self.letters for _ in range(abs(e)))

    def cyclic_rotations(self) -> list[TwistWord]:
        return [TwistWord(self.letters[i:] + self.letters[:i]) for i in range(max(len(self.letters), 1))]

    def render(self, names: Sequence[str] | None = None) -> str:
        parts = []
        for g, e in self.letters:
            name = names[g] if names is not None else chr(ord("A") + g)
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)


def free_reduce(w: TwistWord) -> TwistWord:
    stack: list[list[int]] = []
    for g, e in w.letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return TwistWord(tuple((g, e) for g, e in stack))


def cyclic_reduce(w: TwistWord) -> tuple[TwistWord, TwistWord]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``.

    Each step peels matching end families the way ``g^e1 u g^e2 =
    g^-e2 (g^(e1+e2) u) g^e2`` does, so the conjugator is built from
    inverted last letters.
    """
    core = list(free_reduce(w).letters)
    conj: list[Letter] = []
    while len(core) >= 2 and core[0][0] == core[-1][0]:
        g, e1 = core[0]
        e2 = core[-1][1]
        conj.append((g, -e2))
        middle = core[1:-1]
        core = ([(g, e1 + e2)] if e1 + e2 else []) + middle
    return TwistWord(tuple(core)), free_reduce(TwistWord(tuple(conj)))


@dataclass(frozen=True)
class Support:
    curves: frozenset[str]
    components: tuple[frozenset[str], ...]

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1


def support(w: TwistWord, sys: CurveSystem) -> Support:
    """Curves of the cyclically reduced core, split by intersection connectivity.

    This stands in for the filled subsurface; its topology is never computed.
    """
    core, _ = cyclic_reduce(w)
    curves = [c for g in sorted(core.generators) for c in sys.families[g].curves]
    comps = sys.components(curves)
    return Support(frozenset(curves), tuple(sorted(comps, key=lambda s: sorted(s))))


# -- certificates ------------------------------------------------------------

class Verdict(str, enum.Enum):
    CERTIFIED_FREE = "CertifiedFree"
    CERTIFIED_NOT_FREE = "CertifiedNotFree"
    CERTIFIED_REL_PA = "CertifiedRelPA"
    CERTIFIED_NOT_REL_PA = "CertifiedNotRelPA"
    UNKNOWN = "Unknown"

    @property
    def positive(self) -> bool:
        return self in (Verdict.CERTIFIED_FREE, Verdict.CERTIFIED_REL_PA)

    @property
    def negative(self) -> bool:
        return self in (Verdict.CERTIFIED_NOT_FREE, Verdict.CERTIFIED_NOT_REL_PA)


@dataclass(frozen=True)
class RelationInstance:
    """A relation ``lhs = rhs`` with a word on the left and named twists on the right.

    ``generators`` names the curves the lhs letters twist about, in family
    index order; ``rhs`` lists (curve label, exponent) pairs.  For every
    entry except ``braid`` the rhs is a multi-twist.
    """

    name: str
    lhs: TwistWord
    rhs: tuple[tuple[str, int], ...]
    generators: tuple[str, ...]
    text: str
    configuration: Mapping[str, int] = field(default_factory=dict)

    def rhs_exponents(self) -> dict[str, int]:
        return dict(self.rhs)


@dataclass(frozen=True)
class TraceWitness:
    """A word whose one-holed-torus matrix has trace +-2, so it is reducible."""

    word: TwistWord
    trace: int
    text: str


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    basis: str | None = None
    parameters: Mapping[str, Fraction] = field(default_factory=dict)
    witness: RelationInstance | TraceWitness | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict is not Verdict.UNKNOWN and not self.basis:
            raise ValueError("a certified verdict needs a basis tag")
        if self.verdict is Verdict.UNKNOWN and self.witness is not None:
            raise ValueError("an Unknown verdict cannot carry a witness")
        object.__setattr__(self, "parameters", {k: Fraction(v) for k, v in self.parameters.items()})
        object.__setattr__(self, "notes", tuple(self.notes))


def unknown(*notes: str, **parameters) -> Certificate:
    return Certificate(Verdict.UNKNOWN, None, parameters, None, notes)
