import os
import sys

import networkx as nx
import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from core.config import load_parameters
from core.errors import ParamError, ScaleError
from networks.graph_family import (
    NONE,
    GraphFamilyId,
    build_G,
    build_T,
    classify,
    family_candidates,
    g_rotation,
    has_order3_automorphism,
    is_two_connected,
)
from networks.oracle import (
    IsomorphismClasses,
    oracle_classification,
    scan_all_edge_sets,
    symmetric_edge_sets,
)

PARAMS = load_parameters()


def test_build_G_small_cases():
    assert nx.is_isomorphic(build_G(1, 1), nx.complete_graph(4))
    G = build_G(3, 6)
    assert G.number_of_nodes() == 25
    assert G.number_of_edges() == 27
    assert sorted(d for _, d in G.degree()).count(3) == 4
    assert is_two_connected(G)


def test_build_T():
    T = build_T(1, 4)
    assert T.number_of_nodes() == 7
    assert T.number_of_edges() == 9
    with pytest.raises(ParamError):
        build_T(1, 1)
    with pytest.raises(ParamError):
        build_G(0, 3)


def test_rotation_is_an_automorphism():
    G = build_G(4, 5)
    rotation = g_rotation(4, 5)
    for a, b in G.edges:
        assert G.has_edge(rotation[a], rotation[b])


def test_order3_automorphism_found():
    mapping = has_order3_automorphism(build_G(2, 3))
    assert mapping is not None
    moved = [k for k, v in mapping.items() if k != v]
    assert moved
    assert all(mapping[mapping[mapping[k]]] == k for k in mapping)
    assert has_order3_automorphism(nx.path_graph(4)) is None


def test_family_parse():
    assert GraphFamilyId.parse("G(3,6)") == GraphFamilyId("G", 3, 6)
    assert GraphFamilyId.parse("g45") == GraphFamilyId("G", 4, 5)
    assert str(GraphFamilyId("T", 2, 3)) == "T(2,3)"
    assert GraphFamilyId("G", 5, 4).short_name == "g54"
    with pytest.raises(ParamError):
        GraphFamilyId.parse("H(1,2)")


def test_classify():
    for r, s in ((1, 8), (3, 6), (5, 4), (8, 1)):
        assert classify(build_G(r, s)) == GraphFamilyId("G", r, s)
    assert classify(build_T(2, 3)) == GraphFamilyId("T", 2, 3)
    assert classify(nx.cycle_graph(6)) == NONE


def test_family_candidates_at_25():
    names = {str(f) for f in family_candidates(25)}
    expected = {f"G({r},{9 - r})" for r in range(1, 9)}
    expected |= {f"T({r},{25 - 3 * r})" for r in range(1, 8) if 25 - 3 * r >= 2}
    assert names == expected


def test_oracle_four_vertices():
    report = oracle_classification(4, params=PARAMS)
    assert report.found == ["G(1,1)"]
    assert report.agrees


def test_oracle_seven_vertices():
    report = oracle_classification(7, params=PARAMS)
    assert set(report.found) == {"G(1,2)", "G(2,1)", "T(1,4)"}
    assert report.agrees
    assert report.unclassified == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_orbit_scan_matches_unrestricted_scan(n):
    symmetric = IsomorphismClasses()
    for graph in symmetric_edge_sets(n):
        if is_two_connected(graph) and has_order3_automorphism(graph) is not None:
            symmetric.add(graph)
    everything = IsomorphismClasses()
    for graph in scan_all_edge_sets(n):
        if is_two_connected(graph) and has_order3_automorphism(graph) is not None:
            everything.add(graph)
    assert len(symmetric) == len(everything)


def test_oracle_subdivision_mode():
    report = oracle_classification(25, mode="subdivision", params=PARAMS)
    assert report.agrees
    assert "T(8,1)" not in report.found
    assert "G(3,6)" in report.found


def test_oracle_limits():
    with pytest.raises(ScaleError):
        oracle_classification(30, mode="exhaustive", params=PARAMS)
    with pytest.raises(ParamError):
        oracle_classification(7, mode="bogus", params=PARAMS)
