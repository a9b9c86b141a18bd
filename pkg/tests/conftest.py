import re
from importlib import resources

import pytest

from twistcert.core import CurveFamily, CurveSystem
from twistcert.documents import load_json, parse_system

_results: dict[int, list[tuple[str, str]]] = {}


def two_curves(ab, alg=None, m=1, n=1):
    return CurveSystem.build(
        [CurveFamily.single("A", "a", m), CurveFamily.single("B", "b", n)],
        {("a", "b"): ab},
        None if alg is None else {("a", "b"): alg},
    )


def curves_n(*pairs, powers=None):
    """Single-curve families a1..ak with intersections given in (i, j, value) triples."""
    k = 1 + max(max(i, j) for i, j, _ in pairs)
    powers = powers or [1] * k
    fams = [CurveFamily.single(f"A{i + 1}", f"a{i + 1}", powers[i]) for i in range(k)]
    return CurveSystem.build(fams, {(f"a{i + 1}", f"a{j + 1}"): v for i, j, v in pairs})


def triangle(x, y, z, powers=None):
    return curves_n((0, 1, x), (0, 2, y), (1, 2, z), powers=powers)


def shipped_text(name):
    return (resources.files("twistcert") / "data" / name).read_text()


def shipped_system(name):
    return parse_system(load_json(shipped_text(name)))


@pytest.fixture
def lantern_pair():
    return two_curves(2, 0)


@pytest.fixture
def tpt_pair():
    return two_curves(2, 2)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append((m.group(2), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        outcomes = _results[num]
        ok = all(o == "passed" for _, o in outcomes)
        names = ", ".join(n for n, _ in outcomes)
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({names})")
