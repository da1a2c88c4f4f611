import json
import os
import sys

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from catalog.table import complex_of
from cli import cli_dispatch
from complexes.facet_io import read_facet_file, write_facet_file
from topology.stacked import boundary


def test_verify_catalog_entry(capsys):
    assert cli_dispatch(["verify", "N1", "--class", "kbar5", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"]
    assert cli_dispatch(["verify", "N1", "--class", "k4"]) == 1


def test_isomorphic_exit_codes(capsys):
    assert cli_dispatch(["isomorphic", "N1", "N2"]) == 1
    assert "not isomorphic" in capsys.readouterr().out
    assert cli_dispatch(["isomorphic", "N4", "N4"]) == 0


def test_usage_errors(tmp_path, capsys):
    mixed = tmp_path / "mixed.facets"
    mixed.write_text("a1 b1 c1\na2 b2\n")
    assert cli_dispatch(["invariants", str(mixed)]) == 2
    assert "error" in capsys.readouterr().out
    assert cli_dispatch(["invariants", str(tmp_path / "missing.facets")]) == 2
    assert cli_dispatch(["frobnicate"]) == 2
    assert cli_dispatch(["catalog", "show", "N13"]) == 2
    assert cli_dispatch(["verify", "N1", "--class", "bogus"]) == 2
    assert cli_dispatch(["enumerate", "--graph", "g36", "--jobs", "0"]) == 2


def test_catalog_commands(capsys):
    assert cli_dispatch(["catalog", "list"]) == 0
    listing = capsys.readouterr().out
    assert "N12" in listing
    assert cli_dispatch(["catalog", "show", "N1", "--json"]) == 0
    shown = json.loads(capsys.readouterr().out)
    assert shown["id"] == "N1"
    assert shown["graph"] == "G(3,6)"
    assert len(shown["facets"]) == 25


def test_boundary_written_to_file(tmp_path, capsys):
    out = tmp_path / "bd.facets"
    assert cli_dispatch(["boundary", "N1", "--out", str(out)]) == 0
    assert read_facet_file(str(out)) == boundary(complex_of("N1"))


def test_invariants_and_aut(capsys):
    assert cli_dispatch(["invariants", "N5", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["boundary"]["euler_characteristic"] == -4
    assert cli_dispatch(["aut", "N5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 3


def test_graphs_classify(capsys):
    assert cli_dispatch(["graphs", "classify", "--vertices", "4", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["found"] == ["G(1,1)"]


def test_minimal(capsys):
    assert cli_dispatch(["minimal", "N3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# string ")


def test_enumerate_single_graph(tmp_path, capsys):
    assert cli_dispatch(["enumerate", "--graph", "g36", "--out", str(tmp_path), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["catalog"]["agrees"]
    assert report["classes_per_graph"] == {"G(3,6)": 1}
    assert (tmp_path / "summary.json").exists()


def test_invariants_of_closed_boundary(tmp_path, capsys):
    path = tmp_path / "n1_boundary.facets"
    write_facet_file(str(path), boundary(complex_of("N1")))
    assert cli_dispatch(["invariants", str(path), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["boundary"] is None
    assert report["dimension"] == 4
    assert report["f_vector"] == [15, 105, 230, 240, 96]
    assert report["betti_z2"] == [1, 3, 0, 3, 1]
    assert report["closed_pseudomanifold"]
    assert report["orientable"] is False
    assert report["stacked_sphere_links"]
    assert report["tight_neighborly"] == {"lhs": 45, "rhs": 45, "holds": True}


def test_unknown_log_level(capsys):
    assert cli_dispatch(["--log-level", "loud", "catalog", "list"]) == 2
    assert "log level" in capsys.readouterr().out
    assert cli_dispatch(["--log-level", "warning", "catalog", "list"]) == 0
