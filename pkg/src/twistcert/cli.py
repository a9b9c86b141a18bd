"""Command-line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 for a
certified positive answer, 10 for a certified negative one, 20 for
Unknown and 1 for bad input.  Words use family names with optional
exponents, composed right to left: ``B A`` is T_b after T_a.
"""

from __future__ import annotations

import argparse
import sys as _sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import bounds, classify, pingpong, sl2z, traintrack
from .core import CurveSystem, TwistWord, Verdict, unknown
from .documents import (EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_UNKNOWN, DocumentError,
                        dump_json, emit_certificate, emit_matrix, emit_relation, encode, encode_quadratic,
                        load_json, parse_chart, parse_rational, parse_system, parse_word)

COMMANDS = ("certify-free", "certify-relpa", "classify-word", "relations-list", "relations-check",
            "sl2z-classify", "sl2z-search", "traintrack-analyze", "bounds-propagate")

_WORD_EXIT = {
    classify.WordKind.GENERATOR_POWER: EXIT_POSITIVE,
    classify.WordKind.REL_PA: EXIT_POSITIVE,
    classify.WordKind.MULTI_TWIST: EXIT_NEGATIVE,
    classify.WordKind.REDUCIBLE_NOT_REL_PA: EXIT_NEGATIVE,
    classify.WordKind.UNKNOWN: EXIT_UNKNOWN,
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    """Read a file, falling back to the examples shipped in the package data."""
    p = Path(path)
    if p.exists():
        return p.read_text()
    shipped = resources.files("twistcert") / "data" / path
    if shipped.is_file():
        return shipped.read_text()
    raise InputError(f"no such file: {path}")


def _system(args) -> CurveSystem:
    if not args.input:
        raise InputError(f"{args.command} needs a curve-system file")
    return parse_system(load_json(_read(args.input)))


def _names(s: CurveSystem) -> list[str]:
    return [f.name for f in s.families]


def _rational(text: str | None, default) -> Fraction:
    return default if text is None else parse_rational(text)


def cmd_certify_free(args):
    s = _system(args)
    if len(s.families) == 2:
        cert = pingpong.certify_free_two(s)
    else:
        cert = pingpong.certify_free_n(s, None, _rational(args.lam, Fraction(2)), _rational(args.mu, Fraction(1)))
    return emit_certificate(cert, _names(s))


def cmd_certify_relpa(args):
    s = _system(args)
    if len(s.families) != 2:
        cert = unknown("no relative pseudo-Anosov certifier for three or more generators")
    else:
        cert = pingpong.certify_relpa_two(s)
    return emit_certificate(cert, _names(s))


def _word_verdict_doc(v: classify.WordVerdict, names) -> dict:
    return {
        "kind": v.kind.value,
        "basis": v.basis,
        "core": v.core.render(names),
        "relation": emit_relation(v.relation) if v.relation is not None else None,
        "alternatives": {f"alg_abs={k}": _word_verdict_doc(x, names) for k, x in sorted(v.alternatives.items())},
        "notes": list(v.notes),
    }


def cmd_classify_word(args):
    s = _system(args)
    if not args.word:
        raise InputError("classify-word needs --word")
    w = parse_word(args.word, _names(s))
    v = classify.classify_word(s, w)
    doc = _word_verdict_doc(v, _names(s))
    doc["word"] = w.render(_names(s))
    return doc, _WORD_EXIT[v.kind]


def cmd_relations_list(args):
    return {"relations": [emit_relation(r) for r in classify.relation_catalog()]}, EXIT_POSITIVE


def _relation_checks() -> list[dict]:
    """Confirm every relation that the one-holed torus model can see."""
    out = []
    for rel in classify.relation_catalog():
        if rel.configuration.get("ab") == 1:
            lhs = sl2z.eval_word(rel.lhs)
            if rel.name == "braid":
                rhs_word = TwistWord.of(*((rel.generators.index(c), e) for c, e in rel.rhs))
                rhs = sl2z.eval_word(rhs_word)
            else:
                rhs = sl2z.IDENTITY  # a boundary twist acts trivially on homology
            out.append({"name": rel.name, "model": "sl2z", "lhs": lhs.rows(), "rhs": rhs.rows(), "ok": lhs == rhs})
        elif rel.name == "tbta_squared":
            out.append({"name": rel.name, "model": "conjugation-symmetry",
                        "ok": classify.check_conjugation_symmetry(rel)})
        else:
            out.append({"name": rel.name, "model": None, "ok": None})
    return out


def cmd_relations_check(args):
    doc = {"checks": _relation_checks()}
    if args.input:
        s = _system(args)
        if len(s.families) != 2 or not all(f.is_single for f in s.families):
            raise InputError("relations-check needs two single-curve families")
        a, b = (f.curves[0] for f in s.families)
        ans = classify.lantern_like_query(s.intersection(a, b), s.algebraic(a, b))
        doc["lantern_like"] = {"relations": [r.name for r in ans], "reason": ans.reason}
    ok = all(c["ok"] is not False for c in doc["checks"])
    return doc, EXIT_POSITIVE if ok else EXIT_NEGATIVE


def _mn(args) -> tuple[int, int]:
    m = 1 if args.m is None else args.m
    n = 1 if args.n is None else args.n
    if m < 1 or n < 1:
        raise InputError("--m and --n must be positive")
    return m, n


def cmd_sl2z_classify(args):
    if not args.word:
        raise InputError("sl2z-classify needs --word")
    m, n = _mn(args)
    w = parse_word(args.word, ["A", "B"])
    M = sl2z.eval_word(w, m, n)
    return {"word": w.render(), "m": m, "n": n, "matrix": M.rows(), "trace": M.trace,
            "class": sl2z.classify_matrix(M).value, "central": M.is_central}, EXIT_POSITIVE


def cmd_sl2z_search(args):
    m, n = _mn(args)
    max_len = 16 if args.max_len is None else args.max_len
    if max_len < 1:
        raise InputError("--max-len must be positive")
    w = sl2z.find_relation(m, n, max_len)
    doc = {"m": m, "n": n, "max_len": max_len,
           "word": w.render() if w is not None else None,
           "length": w.letter_length if w is not None else None}
    if w is None:
        doc["verdict"] = Verdict.UNKNOWN.value
        return doc, EXIT_UNKNOWN
    doc["verdict"] = Verdict.CERTIFIED_NOT_FREE.value
    doc["basis"] = "sl2z-identity-word"
    return doc, EXIT_NEGATIVE


def cmd_traintrack_analyze(args):
    if not args.input:
        raise InputError("traintrack-analyze needs a chart file")
    chart, default_word = parse_chart(load_json(_read(args.input)))
    text = args.word or default_word
    if not text:
        raise InputError("no --word given and the chart has no default word")
    w = parse_word(text, chart.generators)
    M = traintrack.compose(chart, w)
    cert = traintrack.pa_certificate(M)
    fac = cert.factorization
    doc = {
        "word": text,
        "matrix": emit_matrix(M),
        "char_poly": str(fac.expand()) if fac else None,
        "factored": str(fac) if fac else None,
        "verdict": "CertifiedPAOnChart" if cert.certified else "NotCertified",
        "reason": cert.reason,
        "dilatation": encode_quadratic(cert.dilatation) if cert.dilatation is not None else None,
        "eigenvector": [encode_quadratic(x) for x in cert.eigenvector] if cert.eigenvector else None,
        "primitive_power": cert.primitive_power,
        "caveat": cert.caveat,
        "provenance": chart.provenance,
    }
    return doc, EXIT_POSITIVE if cert.certified else EXIT_UNKNOWN


def cmd_bounds_propagate(args):
    s = _system(args)
    if not args.word:
        raise InputError("bounds-propagate needs --word")
    if not args.seed or args.seed not in s.curves:
        raise InputError(f"--seed must name a curve of the system: {list(s.curves)}")
    w = parse_word(args.word, _names(s), nonempty=False)
    states = bounds.propagate(s, w, bounds.PairState.of_curve(s, args.seed))
    doc = {"word": w.render(_names(s)), "seed": args.seed,
           "states": [{c: [encode(st[c].lo), encode(st[c].hi)] for c in s.curves} for st in states]}
    if len(s.families) == 2:
        lam = _rational(args.lam, Fraction(1))
        try:
            doc["membership"] = bounds.nset_membership(s, states[-1], 0, lam).value
        except ValueError as exc:
            doc["membership"] = str(exc)
    return doc, EXIT_POSITIVE


_DISPATCH = {
    "certify-free": cmd_certify_free,
    "certify-relpa": cmd_certify_relpa,
    "classify-word": cmd_classify_word,
    "relations-list": cmd_relations_list,
    "relations-check": cmd_relations_check,
    "sl2z-classify": cmd_sl2z_classify,
    "sl2z-search": cmd_sl2z_search,
    "traintrack-analyze": cmd_traintrack_analyze,
    "bounds-propagate": cmd_bounds_propagate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twist-cert", description="Exact certificates for groups of Dehn twists.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="curve-system or chart file (shipped examples resolve by name)")
    p.add_argument("--word")
    p.add_argument("--max-len", type=int, dest="max_len")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", help="rational such as 2 or 1/2")
    p.add_argument("--mu", help="rational such as 1 or 3/2")
    p.add_argument("--seed", help="curve whose image bounds-propagate follows")
    return p


def _normalise_argv(argv: list[str]) -> list[str]:
    """Accept ``relations list`` as well as ``relations-list``."""
    if len(argv) >= 2 and f"{argv[0]}-{argv[1]}" in COMMANDS:
        return [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def run(argv: Sequence[str]) -> tuple[dict, int]:
    args = build_parser().parse_args(_normalise_argv(list(argv)))
    try:
        return _DISPATCH[args.command](args)
    except (InputError, DocumentError, ValueError, KeyError) as exc:
        return {"error": str(exc).strip("'\"")}, EXIT_INPUT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(_sys.argv[1:] if argv is None else argv)
    try:
        doc, code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT_ERROR if exc.code else 0
    _sys.stdout.write(dump_json(encode(doc)))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
