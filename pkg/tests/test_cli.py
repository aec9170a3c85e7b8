"""Command-line interface: exit codes, formats, caching."""
import json

import pytest

from hireg.cli import main
from hireg.graphs import DenseGraph, graph6_decode


def _g6_lines(capsys):
    return [ln for ln in capsys.readouterr().out.splitlines() if ln]


def test_construct_gamma_graph6(capsys):
    assert main(["construct", "--m", "3", "--family", "gamma"]) == 0
    (line,) = _g6_lines(capsys)
    g = graph6_decode(line)
    assert g.n == 64
    assert all(g.degree(v) == 28 for v in range(g.n))


def test_construct_rejects_small_m(capsys):
    assert main(["construct", "--m", "1", "--family", "gamma"]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("family", ["upsilon-a", "upsilon-b"])
def test_construct_upsilon(family, capsys):
    assert main(["construct", "--m", "4", "--family", family]) == 0
    (line,) = _g6_lines(capsys)
    assert graph6_decode(line).n == 64


def test_construct_json_roundtrip(capsys, tmp_path):
    out = tmp_path / "g.json"
    assert main(
        ["construct", "--m", "3", "--family", "gamma1", "--format", "json", "--out", str(out)]
    ) == 0
    g = DenseGraph.from_json(out.read_text())
    assert g.n == 28


def test_types_enumerate_and_filter(capsys):
    assert main(["types", "--order", "3", "5", "enumerate"]) == 0
    assert len(_g6_lines(capsys)) == 148
    assert main(["types", "--order", "3", "5", "filter"]) == 0
    lines = _g6_lines(capsys)
    assert len(lines) == 4
    # record format: graph6 then comma-separated anchor list
    g6, anchors = lines[0].split()
    graph6_decode(g6)
    assert [int(a) for a in anchors.split(",")] == [0, 1, 2]


def test_types_rejects_oversized_order(capsys):
    assert main(["types", "--order", "3", "8", "enumerate"]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("check", ["srg", "constants"])
def test_verify_json_bundle(check, capsys):
    assert main(["verify", "--m", "3", "--check", check]) == 0
    captured = capsys.readouterr()
    bundle = json.loads(captured.out)
    assert bundle["inputs"] == {"m": 3, "check": check}
    assert all(r["verdict"] == "pass" for r in bundle["results"])
    assert "pass" in captured.err


def test_verify_regularity_small(capsys):
    assert main(
        ["verify", "--m", "3", "--check", "regularity", "--order", "2", "3"]
    ) == 0
    bundle = json.loads(capsys.readouterr().out)
    reports = bundle["results"][0]["reports"]
    assert all(r["status"] in ("Constant", "Vacuous") for r in reports)


def test_cache_created_and_reused(tmp_path, capsys):
    cache = tmp_path / "cache"
    argv = ["--cache", str(cache), "construct", "--m", "3", "--family", "gamma"]
    assert main(argv) == 0
    files = list(cache.glob("gamma-3-*.json"))
    assert len(files) == 1
    first = files[0].read_text()
    out1 = _g6_lines(capsys)
    assert main(argv) == 0
    assert _g6_lines(capsys) == out1
    assert files[0].read_text() == first
