import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import shipped_system, shipped_text, two_curves
from twistcert.cli import main, run
from twistcert.core import Certificate, TwistWord, Verdict, unknown
from twistcert.documents import (DocumentError, canonical_system, emit_certificate, emit_system, encode,
                                 encode_int, load_json, parse_rational, parse_system, parse_word)
from twistcert.pingpong import certify_free_two

SYSTEMS = ["lantern.json", "one_holed_torus.json", "torus_relation.json", "triple_six.json",
           "twice_punctured_torus.json"]
FLOAT = re.compile(r"(?<![\w\"/])-?\d+\.\d+|\d[eE][+-]?\d")


def _write(tmp_path, doc, name="sys.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


# -- documents -----------------------------------------------------------------

def test_lantern_file():
    sys_ = shipped_system("lantern.json")
    assert [f.name for f in sys_.families] == ["A", "B"]
    assert sys_.intersection("a", "b") == 2 and sys_.algebraic("a", "b") == 0


def test_triple_six_file():
    sys_ = shipped_system("triple_six.json")
    curves = [f.curves[0] for f in sys_.families]
    assert len(curves) == 3
    assert all(sys_.intersection(x, y) == 6 for x in curves for y in curves if x != y)


@pytest.mark.parametrize("name", SYSTEMS)
def test_round_trip(name):
    sys_ = shipped_system(name)
    assert parse_system(emit_system(sys_)) == canonical_system(sys_) == sys_


def test_negative_geom_diagnostic():
    doc = {"families": [{"name": "A", "curves": ["a"]}, {"name": "B", "curves": ["b"]}],
           "geom": {"a|b": -1}}
    with pytest.raises(DocumentError) as exc:
        parse_system(doc)
    assert exc.value.path == "$.geom.a|b"
    assert "geom must be nonnegative" in str(exc.value)


@pytest.mark.parametrize("doc, path", [
    ({"families": []}, "$.families"),
    ({"families": [{"name": "A", "curves": ["a"], "powers": [0]}]}, "$.families[0]"),
    ({"families": [{"name": "1A", "curves": ["a"]}]}, "$.families[0].name"),
    ({"families": [{"name": "A", "curves": ["a"]}], "extra": 1}, "$"),
    ({"families": [{"name": "A", "curves": ["a"]}, {"name": "B", "curves": ["b"]}],
      "geom": {"a|b": 2}, "alg_abs": {"a|b": 1}}, "$.alg_abs.a|b"),
])
def test_schema_diagnostics(doc, path):
    with pytest.raises(DocumentError) as exc:
        parse_system(doc)
    assert exc.value.path == path


def test_floats_rejected_on_input():
    with pytest.raises(DocumentError):
        load_json('{"geom": {"a|b": 2.0}}')


def test_big_integers_as_strings():
    assert encode_int(2 ** 60) == str(2 ** 60)
    assert encode_int(-5) == -5
    doc = {"families": [{"name": "A", "curves": ["a"]}, {"name": "B", "curves": ["b"]}],
           "geom": {"a|b": str(2 ** 60)}}
    assert parse_system(doc).intersection("a", "b") == 2 ** 60


def test_parse_rational():
    assert parse_rational("5/6") == parse_rational(" 5 / 6 ")
    with pytest.raises(ValueError):
        parse_rational("0.5")


# -- words -----------------------------------------------------------------------

def test_parse_word_examples():
    assert parse_word("B A", ["A", "B"]).letters == ((1, 1), (0, 1))
    assert len(parse_word("B A B A", ["A", "B"])) == 4
    assert parse_word("A^-1 A", ["A", "B"], nonempty=False) == TwistWord()
    with pytest.raises(ValueError):
        parse_word("A^-1 A", ["A", "B"])


@pytest.mark.parametrize("text", ["C", "A^0", "A^", "A*B", ""])
def test_parse_word_errors(text):
    with pytest.raises(ValueError):
        parse_word(text, ["A", "B"])


# -- certificates ------------------------------------------------------------------

def test_emit_certificates():
    doc, code = emit_certificate(Certificate(Verdict.CERTIFIED_FREE, "n-twist-ratio-condition",
                                             {"ratio_max": Fraction(1, 6)}))
    assert code == 0 and doc["parameters"] == {"ratio_max": "1/6"}
    doc, code = emit_certificate(certify_free_two(two_curves(1, 1, 1, 3)), ["A", "B"])
    assert code == 10 and doc["witness"]["relation"] == "(AB^3)^3=(AB)^6"
    doc, code = emit_certificate(unknown("nothing applies"))
    assert code == 20 and doc["witness"] is None


def test_encode_rejects_floats():
    with pytest.raises(TypeError):
        encode({"x": 0.5})


# -- commands and exit codes ----------------------------------------------------------

@pytest.mark.parametrize("argv, code", [
    (["certify-free", "triple_six.json"], 0),
    (["certify-free", "lantern.json"], 0),
    (["certify-free", "one_holed_torus.json"], 10),
    (["certify-free", "torus_relation.json"], 20),
    (["certify-relpa", "lantern.json"], 10),
    (["certify-relpa", "triple_six.json"], 20),
    (["classify-word", "lantern.json", "--word", "B A^-1"], 0),
    (["classify-word", "lantern.json", "--word", "A^3"], 0),
    (["classify-word", "lantern.json", "--word", "A B"], 10),
    (["classify-word", "twice_punctured_torus.json", "--word", "B A"], 10),
    (["relations", "list"], 0),
    (["relations-check"], 0),
    (["relations-check", "lantern.json"], 0),
    (["sl2z-classify", "--word", "A B^-1"], 0),
    (["sl2z-search", "--m", "1", "--n", "1", "--max-len", "8"], 10),
    (["sl2z-search", "--m", "2", "--n", "2", "--max-len", "8"], 20),
    (["traintrack-analyze", "twice_punctured_torus_chart.json"], 0),
    (["traintrack-analyze", "twice_punctured_torus_chart.json", "--word", "A"], 20),
    (["bounds-propagate", "lantern.json", "--word", "A", "--seed", "b"], 0),
    (["certify-free", "missing.json"], 1),
    (["classify-word", "lantern.json", "--word", "C"], 1),
    (["sl2z-search", "--m", "0"], 1),
])
def test_exit_codes(argv, code):
    doc, got = run(argv)
    assert got == code, doc


def test_unknown_word_verdict_exit(tmp_path):
    doc = {"families": [{"name": "A", "curves": ["a"]}, {"name": "B", "curves": ["b"]}], "geom": {"a|b": 2}}
    out, code = run(["classify-word", _write(tmp_path, doc), "--word", "B A"])
    assert code == 20 and out["kind"] == "Unknown" and set(out["alternatives"]) == {"alg_abs=0", "alg_abs=2"}


def test_negative_file_reports_path(tmp_path):
    doc = {"families": [{"name": "A", "curves": ["a"]}, {"name": "B", "curves": ["b"]}], "geom": {"a|b": -3}}
    out, code = run(["certify-free", _write(tmp_path, doc)])
    assert code == 1 and "geom must be nonnegative" in out["error"]


def test_traintrack_document():
    doc, _ = run(["traintrack-analyze", "twice_punctured_torus_chart.json"])
    assert doc["matrix"] == [[2, 3, 3], [1, 4, 3], [1, 1, 1]]
    assert doc["factored"] == "(x - 1)(x^2 - 6x - 1)"
    assert doc["dilatation"] == {"a": "3", "b": "1", "d": 10}
    assert doc["eigenvector"][2] == {"a": "2", "b": "0", "d": 1}


def test_sl2z_search_document():
    doc, _ = run(["sl2z-search", "--m", "1", "--n", "3", "--max-len", "8"])
    assert doc["length"] == 6 and doc["word"] == "A B A B A B"


def test_lambda_flag():
    doc, code = run(["certify-free", "triple_six.json", "--lambda", "3", "--mu", "1"])
    assert code == 0
    out, code = run(["certify-free", "triple_six.json", "--lambda", "0.5"])
    assert code == 1


def test_argparse_errors_map_to_input_error():
    assert main(["no-such-command"]) == 1


def test_main_prints_json(capsys):
    assert main(["relations-list"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["relations"]) == 7


ALL_COMMANDS = [
    ["certify-free", "triple_six.json"],
    ["certify-free", "one_holed_torus.json"],
    ["certify-relpa", "twice_punctured_torus.json"],
    ["classify-word", "lantern.json", "--word", "A B"],
    ["classify-word", "twice_punctured_torus.json", "--word", "B A B A"],
    ["relations-list"],
    ["relations-check", "twice_punctured_torus.json"],
    ["sl2z-classify", "--word", "A^2 B^2"],
    ["sl2z-search", "--m", "1", "--n", "2", "--max-len", "8"],
    ["traintrack-analyze", "twice_punctured_torus_chart.json"],
    ["bounds-propagate", "one_holed_torus.json", "--word", "A B^-2 A", "--seed", "a"],
]


@pytest.mark.parametrize("argv", ALL_COMMANDS)
def test_no_float_text_and_stable_bytes(argv, capsys):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert not FLOAT.search(first), first


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "twistcert", "relations", "list"], capture_output=True, text=True)
    assert res.returncode == 0 and len(json.loads(res.stdout)["relations"]) == 7


def test_shipped_files_are_float_free():
    for name in SYSTEMS + ["twice_punctured_torus_chart.json"]:
        load_json(shipped_text(name))
