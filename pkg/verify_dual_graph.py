import os
import sys

import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from catalog.table import all_entries, catalog_get, complex_of
from complexes.simplicial import build
from core.errors import AdjacencyError, PathError
from enumeration.phi import PHI, phi_mask
from networks.dual_graph import (
    critical_cover_check,
    degree_three_cover,
    dual,
    facet_tree,
    induced_automorphism,
    is_critical,
    oriented_labels,
    path_label_check,
    tree_intersection_count,
    tree_report,
)
from networks.graph_family import classify


def stacked_path():
    """Stacked 2-ball: three triangles glued in a row."""
    return build([["1", "2", "3"], ["2", "3", "4"], ["3", "4", "5"]])


def test_dual_graph_of_small_ball():
    D = dual(stacked_path())
    assert D.node_count == 3
    assert D.edge_count == 2
    assert D.is_tree()
    assert D.degree_sequence() == [2, 1, 1]
    assert D.get_neighbors(1) == [0, 2]


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_dual_graph_numerology(entry):
    K = entry.complex
    D = dual(K)
    assert D.node_count == 25
    assert D.edge_count == 27
    assert D.is_two_connected()
    assert classify(D.graph) == entry.graph


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_trees_and_intersections(entry):
    report = tree_report(entry.complex)
    assert report["distinct"]
    for row in report["trees"]:
        assert row["size"] == 10
        assert row["is_tree"]
        assert row["leaves_low_degree"]
        assert row["intersections"] == 15


def test_oriented_labels_distinct_from_every_root():
    K = complex_of("N1")
    D = dual(K)
    for x in ("a1", "c3", "b5"):
        tree = facet_tree(K, x, D)
        for root in tree.nodes:
            labels = oriented_labels(K, tree, root)
            assert labels.ok
            assert len(labels.labels) == tree.size - 1


def test_oriented_labels_rejects_non_adjacent_tree():
    K = stacked_path()
    tree = facet_tree(K, "3")
    # rewire the tree so that the two outer triangles are joined directly
    tree.graph.remove_edges_from(list(tree.graph.edges))
    tree.graph.add_edge(0, 2)
    with pytest.raises(AdjacencyError):
        oriented_labels(K, tree, 0)


def test_tree_intersection_count_on_stacked_ball():
    K = stacked_path()
    # star of vertex 3 is the whole ball: |V(T_3)| + d = 3 + 2
    assert tree_intersection_count(K, "3") == 5


def test_path_label_check():
    entry = catalog_get("N3")
    K = entry.complex
    spoke = [entry.z0] + list(entry.arm[:entry.r])
    report = path_label_check(K, spoke)
    assert report.ok
    assert report.short
    assert report.interior_degree_two
    assert len(set(report.leaving)) == entry.r

    rim = list(entry.arm[entry.r - 1:]) + [phi_mask(entry.arm[entry.r - 1])]
    report = path_label_check(K, rim)
    assert report.ok
    assert report.length == entry.graph.s


def test_path_label_check_errors():
    K = stacked_path()
    with pytest.raises(PathError):
        path_label_check(K, [K.facets[0]])
    with pytest.raises(PathError):
        path_label_check(K, [K.facets[0], K.facets[2]])


def test_critical_sets():
    K = complex_of("N5")
    D = dual(K)
    hubs = [n for n in D.graph.nodes if D.degree(n) == 3]
    assert len(hubs) == 4
    assert degree_three_cover(K, D)
    assert is_critical(K, hubs, D)
    assert critical_cover_check(K, hubs, D)


def test_induced_automorphism():
    K = complex_of("N7")
    mapping = induced_automorphism(K, PHI)
    assert mapping is not None
    fixed = [idx for idx, image in mapping.items() if idx == image]
    assert len(fixed) == 1
    swap = tuple([1, 0] + list(range(2, 15)))
    assert induced_automorphism(K, swap) is None


def test_branch_facets_are_critical():
    entry = catalog_get("N1")
    K = entry.complex
    D = dual(K)
    assert not is_critical(K, [], D)
    u3 = entry.arm[entry.r - 1]
    branch = [D.node_of(u3), D.node_of(phi_mask(u3)), D.node_of(phi_mask(u3, 2))]
    assert all(D.degree(n) == 3 for n in branch)
    assert is_critical(K, branch, D)
    covered = 0
    for n in branch:
        covered |= K.facets[n]
    assert covered == K.full_mask
    assert critical_cover_check(K, branch, D)
