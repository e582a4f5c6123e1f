"""CLI: subcommands, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from planarturan.cli import main
from planarturan.embedding import export_graph, from_graph6, import_graph
from planarturan.gadgets import stacked_gadget
from planarturan.hexhost import build_hex_host, stretch_to_girth


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_host_graph6_matches_library(capsys):
    code, out, _ = run(capsys, "host", "--k", "2", "--g", "6", "--format", "graph6")
    assert code == 0
    expected = export_graph(build_hex_host(2).graph, "graph6").decode().strip()
    assert out.strip() == expected
    assert from_graph6(out.strip()).n == 18


def test_host_json_roundtrip(capsys):
    code, out, _ = run(capsys, "host", "--k", "2", "--g", "12")
    assert code == 0
    g = import_graph(out, "json")
    assert (g.n, g.edge_count) == (42, 48)


def test_host_bad_k_exits_one(capsys):
    code, _, err = run(capsys, "host", "--k", "3")
    assert code == 1
    assert "even" in err


def test_gadget_json_fields(capsys):
    code, out, _ = run(capsys, "gadget", "--family", "stacked", "--t", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 11 and doc["e"] == 27 and doc["cycle_cap"] == 10
    assert len(doc["anchors"]) == 3
    assert doc["graph"]["n"] == 11


def test_gadget_moon_moser(capsys):
    code, out, _ = run(capsys, "gadget", "--family", "moon-moser", "--i", "3")
    assert code == 0
    assert json.loads(out)["n"] == 16


def test_counterexample_compositional(capsys):
    code, out, _ = run(capsys, "counterexample", "--ell", "11", "--k", "2",
                       "--method", "compositional")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 414 and doc["e"] == 1134
    assert doc["margin"] == {"num": "126", "den": "11"}
    assert doc["checks"]["failed"] is None
    # byte-identical on repeat invocation
    code2, out2, _ = run(capsys, "counterexample", "--ell", "11", "--k", "2",
                         "--method", "compositional")
    assert (code2, out2) == (code, out)


def test_counterexample_rejects_small_ell(capsys):
    code, _, err = run(capsys, "counterexample", "--ell", "9")
    assert code == 1


def test_verify_detects_cycle(tmp_path, capsys):
    dense = stretch_to_girth(build_hex_host(2), 11)
    path = tmp_path / "bad.json"
    path.write_bytes(export_graph(dense.graph, "json"))
    code, out, _ = run(capsys, "verify", "--input", str(path), "--ell", "11")
    assert code == 2
    doc = json.loads(out)
    assert doc["has_cycle"] is True
    assert len(doc["witness"]) == 11


def test_verify_plain_planarity(tmp_path, capsys):
    dense = stretch_to_girth(build_hex_host(2), 8)
    path = tmp_path / "g.json"
    path.write_bytes(export_graph(dense.graph, "json"))
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["planar"] is True and doc["girth"] == 8


def test_verify_rejects_adjacency_only_formats(tmp_path, capsys):
    path = tmp_path / "g.g6"
    path.write_bytes(b"Bw\n")
    code, _, err = run(capsys, "verify", "--input", str(path), "--format", "graph6")
    assert code == 1
    assert "embedded-JSON" in err


def test_verify_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--input", "/nonexistent.json")
    assert code == 1


def test_table_rows_and_determinism(capsys):
    code1, out1, _ = run(capsys, "table", "--ell-min", "11", "--ell-max", "20")
    code2, out2, _ = run(capsys, "table", "--ell-min", "11", "--ell-max", "20")
    assert code1 == code2 == 0
    assert out1 == out2
    rows = json.loads(out1)
    assert len(rows) == 10
    for row in rows:
        assert row["beats_bound"] is True
        margin = int(row["margin"]["num"])
        assert margin > 0
    # rows reproduce the construction counts exactly
    assert rows[0]["n"] == 414 and rows[0]["e"] == 1134
    assert rows[1]["n"] == 500 and rows[1]["e"] == 1380


def test_export_conversion(tmp_path, capsys):
    g = stacked_gadget(5).graph
    src = tmp_path / "g.json"
    src.write_bytes(export_graph(g, "json"))
    code, out, _ = run(capsys, "export", "--input", str(src), "--format", "graph6")
    assert code == 0
    assert from_graph6(out.strip()).edge_count == 27


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["host"])  # missing required --k
    assert exc.value.code == 1


def test_budget_override_surfaces_as_input_error(tmp_path, capsys, monkeypatch):
    dense = stretch_to_girth(build_hex_host(2), 11)
    path = tmp_path / "g.json"
    path.write_bytes(export_graph(dense.graph, "json"))
    monkeypatch.setenv("TURAN_BUDGET", "10")
    code, _, err = run(capsys, "verify", "--input", str(path), "--ell", "11")
    assert code == 1
    assert "budget" in err.lower()
