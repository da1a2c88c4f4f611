import json
import os
import sys

import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from catalog.reports import (
    catalog_frame,
    invariants_report,
    render_json,
    render_text,
    tally_frame,
    verify_class,
    write_enumeration,
)
from catalog.table import all_entries, catalog_get, complex_of, facet_mask, is_catalog_id
from complexes.facet_io import parse_facets, read_facet_file, serialize
from core.config import load_parameters
from core.errors import IdError, ParamError
from enumeration.search import enumerate_all
from topology.stacked import boundary

PARAMS = load_parameters()


def test_catalog_ids():
    assert [e.id for e in all_entries()] == [f"N{i}" for i in range(1, 13)]
    assert is_catalog_id("n7")
    assert not is_catalog_id("N13")
    with pytest.raises(IdError):
        catalog_get("N13")


def test_table_facets_present():
    assert complex_of("N1").has_facet(facet_mask("a1b1a2b2a3a4"))
    assert complex_of("N12").has_facet(facet_mask("b2b3c3a4b4a5"))
    with pytest.raises(IdError):
        facet_mask("a1b1")


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_entry_expands_to_distinct_facets(entry):
    masks = entry.masks()
    assert len(masks) == 25
    assert len(set(masks)) == 25
    assert entry.complex.n_vertices == 15


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_serialize_round_trip(entry):
    assert parse_facets(serialize(entry.complex)) == entry.complex


def test_verify_class():
    K = complex_of("N4")
    checks = verify_class(K, "kbar5")
    assert checks == {"dimension": True, "neighborly": True, "stacked_ball_links": True}
    assert not all(verify_class(K, "k4").values())
    assert all(verify_class(boundary(K), "k4").values())
    assert all(verify_class(boundary(K), "tight").values())
    with pytest.raises(ParamError):
        verify_class(K, "manifold")


def test_invariants_report():
    report = invariants_report(complex_of("N2"), PARAMS)
    assert list(report)[:4] == ["vertices", "facets", "dimension", "f_vector"]
    assert report["facets"] == 25
    assert report["dual_graph"]["edges"] == report["dual_graph"]["expected_edges"] == 27
    assert report["dual_graph"]["family"] == "G(4,5)"
    assert report["trees"]["sizes"] == [10]
    assert report["trees"]["intersections"] == [15]
    assert report["automorphisms"]["order"] == 3
    assert report["boundary"]["betti_z2"] == [1, 3, 0, 3, 1]
    assert report["boundary"]["orientable"] is False
    assert report["boundary"]["tight_neighborly"]["holds"]
    # same input, same document
    assert render_json(report, PARAMS) == render_json(invariants_report(complex_of("N2"), PARAMS), PARAMS)
    assert "betti_z2" in render_text(report)


def test_catalog_frame():
    frame = catalog_frame()
    assert len(frame) == 12
    assert list(frame.columns) == ["id", "graph", "boundary_orientable", "X", "Y"]
    assert frame["graph"].value_counts().to_dict() == {"G(5,4)": 8, "G(4,5)": 3, "G(3,6)": 1}
    assert frame.loc[frame["id"] == "N1", "X"].item() == "c2,c1,b1,b2,a2,a1,a4,a3,a5"


def test_write_enumeration(tmp_path):
    enumeration = enumerate_all(graphs=["g36"], params=PARAMS)
    paths = write_enumeration(enumeration, str(tmp_path), PARAMS)
    assert len(paths) == 1
    assert read_facet_file(paths[0]) == complex_of("N1")

    with open(tmp_path / "summary.json") as f:
        summary = json.load(f)
    assert summary["classes_per_graph"] == {"G(3,6)": 1}
    assert [t["candidates"] for t in summary["templates"]] == [72, 72]

    frame = tally_frame(enumeration)
    assert frame["survivors"].tolist() == [1, 0]
    assert (tmp_path / "tallies.csv").exists()
