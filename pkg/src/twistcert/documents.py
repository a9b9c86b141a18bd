"""JSON documents for curve systems, charts, words and certificates.

Documents never contain floats.  Integers too large for a 53-bit mantissa
are written as decimal strings and accepted back in that form; rationals
are always strings such as ``"5/6"``; quadratic numbers are
``{"a": "2", "b": "1", "d": 10}`` meaning ``2 + sqrt(10)``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .core import (Certificate, CurveFamily, CurveSystem, RelationInstance, TraceWitness,
                   TwistWord, Verdict, validate)
from .exact import QuadraticNumber
from .traintrack import Chart, ChartError

SAFE_INT = 2 ** 53

EXIT_POSITIVE = 0
EXIT_INPUT_ERROR = 1
EXIT_NEGATIVE = 10
EXIT_UNKNOWN = 20


class DocumentError(ValueError):
    """Schema or invariant violation, located by a path into the document."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _reject_float(text: str):
    raise DocumentError("$", f"floating-point literal {text} is not allowed")


def load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"malformed JSON: {exc.msg} at line {exc.lineno}") from None


def dump_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(path, "must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"-?\d+", value):
        return int(value)
    raise DocumentError(path, "must be an integer")


def encode_int(v: int) -> int | str:
    return v if -SAFE_INT < v < SAFE_INT else str(v)


def encode_rational(v) -> str:
    return str(Fraction(v))


def encode_quadratic(x: QuadraticNumber) -> dict:
    return {"a": encode_rational(x.a), "b": encode_rational(x.b), "d": encode_int(x.d)}


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", text):
        raise ValueError(f"expected an exact rational like 3 or 5/6, got {text!r}")
    return Fraction(text.replace(" ", ""))


# -- curve systems ----------------------------------------------------------------

def _pairs(table: Any, path: str, label: str) -> dict[tuple[str, str], int]:
    if not isinstance(table, dict):
        raise DocumentError(path, f"{label} must be an object keyed by 'curve|curve'")
    out = {}
    for key, value in table.items():
        parts = key.split("|")
        if len(parts) != 2 or not all(parts):
            raise DocumentError(f"{path}.{key}", "key must have the form 'curveA|curveB'")
        v = _int(value, f"{path}.{key}")
        if v < 0:
            raise DocumentError(f"{path}.{key}", f"{label} must be nonnegative")
        out[(parts[0], parts[1])] = v
    return out


def parse_system(doc: Any) -> CurveSystem:
    """Build and validate a CurveSystem; errors name the offending path."""
    if isinstance(doc, str):
        doc = load_json(doc)
    if not isinstance(doc, dict):
        raise DocumentError("$", "system document must be an object")
    fams = doc.get("families")
    if not isinstance(fams, list) or not fams:
        raise DocumentError("$.families", "must be a nonempty list")
    families = []
    for idx, f in enumerate(fams):
        path = f"$.families[{idx}]"
        if not isinstance(f, dict):
            raise DocumentError(path, "family must be an object")
        name = f.get("name")
        if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise DocumentError(f"{path}.name", "must be an identifier")
        curves = f.get("curves")
        if not isinstance(curves, list) or not all(isinstance(c, str) and c and "|" not in c for c in curves):
            raise DocumentError(f"{path}.curves", "must be a list of curve names without '|'")
        powers = f.get("powers", [1] * len(curves))
        if not isinstance(powers, list):
            raise DocumentError(f"{path}.powers", "must be a list of integers")
        powers = [_int(p, f"{path}.powers[{k}]") for k, p in enumerate(powers)]
        try:
            families.append(CurveFamily(name, tuple(curves), tuple(powers)))
        except ValueError as exc:
            raise DocumentError(path, str(exc)) from None
    geom = _pairs(doc.get("geom", {}), "$.geom", "geom")
    alg = None
    if doc.get("alg_abs") is not None:
        alg = _pairs(doc["alg_abs"], "$.alg_abs", "alg_abs")
    extra = set(doc) - {"families", "geom", "alg_abs", "description"}
    if extra:
        raise DocumentError("$", f"unknown keys {sorted(extra)}")
    try:
        sys = CurveSystem.build(families, geom, alg)
    except ValueError as exc:
        raise DocumentError("$.families", str(exc)) from None
    problems = validate(sys)
    if problems:
        v = problems[0]
        table = "alg_abs" if v.message.startswith("alg_abs") or v.kind in ("bound", "parity") else "geom"
        where = f"$.{table}." + "|".join(v.where) if v.where else "$"
        raise DocumentError(where, str(v))
    return sys


def emit_system(sys: CurveSystem) -> dict:
    curves = sys.curves

    def table(get):
        out = {}
        for x, c in enumerate(curves):
            for d in curves[x + 1:]:
                v = get(c, d)
                if v:
                    out[f"{c}|{d}"] = encode_int(v)
        return out

    doc = {
        "families": [{"name": f.name, "curves": list(f.curves), "powers": [encode_int(p) for p in f.powers]}
                     for f in sys.families],
        "geom": table(sys.intersection),
    }
    if sys.alg_abs is not None:
        doc["alg_abs"] = table(sys.algebraic)
    return doc


def canonical_system(sys: CurveSystem) -> CurveSystem:
    """Same system with zero entries dropped and both orders of every pair present."""
    return parse_system(emit_system(sys))


# -- words -------------------------------------------------------------------------

_TERM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?")


def parse_word(text: str, names: Sequence[str], nonempty: bool = True) -> TwistWord:
    """Parse ``NAME(^INT)?`` terms separated by whitespace; ``B A`` is ``T_b T_a``."""
    if not isinstance(text, str):
        raise ValueError("word must be a string")
    letters = []
    for tok in text.split():
        m = _TERM.fullmatch(tok)
        if not m:
            raise ValueError(f"cannot parse term {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in names:
            raise ValueError(f"unknown generator {name!r}; expected one of {list(names)}")
        e = int(exp) if exp is not None else 1
        if e == 0:
            raise ValueError(f"zero exponent in {tok!r}")
        letters.append((list(names).index(name), e))
    w = TwistWord.of(*letters)
    if nonempty and not w:
        raise ValueError(f"word {text!r} is empty after reduction")
    return w


def render_word(w: TwistWord, names: Sequence[str]) -> str:
    return w.render(names)


# -- charts --------------------------------------------------------------------------

def parse_chart(doc: Any) -> tuple[Chart, str | None]:
    """Chart plus its optional default word."""
    if isinstance(doc, str):
        doc = load_json(doc)
    if not isinstance(doc, dict):
        raise DocumentError("$", "chart document must be an object")
    n = _int(doc.get("branch_count"), "$.branch_count")
    if n < 1:
        raise DocumentError("$.branch_count", "must be positive")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DocumentError("$.generators", "must be a list of names")
    mats_doc = doc.get("matrices")
    if not isinstance(mats_doc, dict):
        raise DocumentError("$.matrices", "must be an object of named matrices")
    mats = {}
    for name, rows in mats_doc.items():
        path = f"$.matrices.{name}"
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise DocumentError(path, "must be a list of rows")
        mats[name] = tuple(tuple(_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(r))
                           for i, r in enumerate(rows))
    flags = doc.get("full_carrying", {})
    if not isinstance(flags, dict) or not all(isinstance(v, bool) for v in flags.values()):
        raise DocumentError("$.full_carrying", "must map matrix names to booleans")
    word = doc.get("word")
    if word is not None and not isinstance(word, str):
        raise DocumentError("$.word", "must be a string")
    try:
        chart = Chart(n, tuple(gens), mats, str(doc.get("provenance", "")), flags)
    except ChartError as exc:
        raise DocumentError("$.matrices", str(exc)) from None
    return chart, word


def emit_matrix(M) -> list[list]:
    return [[encode_int(x) for x in row] for row in M]


# -- certificates ----------------------------------------------------------------------

def exit_code(verdict: Verdict) -> int:
    if verdict.positive:
        return EXIT_POSITIVE
    if verdict.negative:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def emit_relation(rel: RelationInstance, names: Sequence[str] | None = None) -> dict:
    gens = names if names is not None and len(names) == len(rel.generators) else \
        [g.upper() for g in rel.generators]
    return {
        "name": rel.name,
        "relation": rel.text,
        "lhs": rel.lhs.render(gens),
        "rhs": [[c, encode_int(e)] for c, e in rel.rhs],
        "configuration": {k: encode_int(v) for k, v in rel.configuration.items()},
    }


def emit_witness(w, names: Sequence[str] | None = None) -> dict | None:
    if w is None:
        return None
    if isinstance(w, RelationInstance):
        return {"kind": "relation", **emit_relation(w, names)}
    if isinstance(w, TraceWitness):
        return {"kind": "trace", "word": w.word.render(names), "trace": encode_int(w.trace), "relation": w.text}
    raise TypeError(f"unsupported witness {type(w).__name__}")


def emit_certificate(cert: Certificate, names: Sequence[str] | None = None) -> tuple[dict, int]:
    doc = {
        "verdict": cert.verdict.value,
        "basis": cert.basis,
        "parameters": {k: encode_rational(v) for k, v in cert.parameters.items()},
        "witness": emit_witness(cert.witness, names),
        "notes": list(cert.notes),
    }
    return doc, exit_code(cert.verdict)


def encode(value: Any) -> Any:
    """Generic exact encoder for report payloads."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return encode_int(value)
    if isinstance(value, Fraction):
        return encode_rational(value)
    if isinstance(value, QuadraticNumber):
        return encode_quadratic(value)
    if isinstance(value, Mapping):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")
