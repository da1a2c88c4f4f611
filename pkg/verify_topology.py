import os
import sys

import numpy as np
import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from catalog.table import all_entries, complex_of
from complexes.simplicial import build, permute_mask
from core.config import load_parameters
from core.errors import BoundaryError, DimensionError
from enumeration.phi import PHI
from networks.dual_graph import dual
from topology.homology import (
    euler_characteristic,
    gf2_rank,
    is_tight_neighborly,
    orientable,
    tight_neighborly_sides,
    z2_betti,
)
from topology.numerology import Numerology
from topology.stacked import (
    boundary,
    in_k,
    in_kbar,
    is_stacked_ball,
    is_stacked_sphere,
    random_pasted_complex,
    random_stacked_ball,
)
from topology.symmetry import automorphisms, contains_z3, find_isomorphism, inverse, isomorphic

PARAMS = load_parameters()


def simplex_boundary(n):
    vertices = [str(v) for v in range(1, n + 1)]
    return build([[v for v in vertices if v != w] for w in vertices])


def rp2():
    """Six-vertex real projective plane."""
    return build([
        ["1", "2", "3"], ["1", "3", "4"], ["1", "4", "5"], ["1", "5", "6"], ["1", "2", "6"],
        ["2", "3", "5"], ["3", "4", "6"], ["2", "4", "5"], ["3", "5", "6"], ["2", "4", "6"],
    ])


# --------------------------------------------------
# Stacked balls and spheres
# --------------------------------------------------
def test_random_stacked_balls():
    rng = np.random.default_rng(PARAMS["properties"]["random_seed"])
    trials = PARAMS["properties"]["stacked_ball_trials"]
    max_facets = PARAMS["properties"]["stacked_ball_max_facets"]
    for _ in range(trials):
        d = int(rng.integers(2, 6))
        m = int(rng.integers(1, max_facets + 1))
        ball = random_stacked_ball(d, m, rng)
        assert len(ball.facets) == m
        assert ball.n_vertices == m + d
        assert is_stacked_ball(ball)


def test_random_stacked_sphere_boundaries():
    rng = np.random.default_rng(PARAMS["properties"]["random_seed"] + 1)
    trials = PARAMS["properties"]["stacked_sphere_trials"]
    max_facets = PARAMS["properties"]["stacked_sphere_max_facets"]
    for _ in range(trials):
        d = int(rng.integers(2, 5))
        m = int(rng.integers(1, max_facets + 1))
        sphere = boundary(random_stacked_ball(d, m, rng))
        assert is_stacked_sphere(sphere)


def test_tree_dual_vertex_bound():
    """A pure complex with tree dual has f0 <= f_d + d, with equality only for stacked balls."""
    rng = np.random.default_rng(PARAMS["properties"]["random_seed"] + 2)
    checked = 0
    for _ in range(PARAMS["properties"]["pasted_trials"]):
        d = int(rng.integers(2, 5))
        K = random_pasted_complex(d, int(rng.integers(2, 20)), rng)
        if not dual(K).is_tree():
            continue
        checked += 1
        m = len(K.facets)
        assert K.n_vertices <= Numerology.vertex_bound_for_trees(m, d)
        assert (K.n_vertices == m + d) == is_stacked_ball(K)
    assert checked > 0


def test_stacked_sphere_rejections():
    assert is_stacked_sphere(simplex_boundary(5))
    assert not is_stacked_sphere(rp2())
    ball = build([["1", "2", "3"], ["2", "3", "4"]])
    assert not is_stacked_sphere(ball)


def test_boundary_of_closed_complex():
    with pytest.raises(BoundaryError):
        boundary(simplex_boundary(4))


# --------------------------------------------------
# Homology
# --------------------------------------------------
def test_gf2_rank():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([0b1, 0b10, 0b100]) == 3
    assert gf2_rank([]) == 0


def test_betti_of_small_complexes():
    assert z2_betti(simplex_boundary(4)).to_list() == [1, 0, 1]
    assert z2_betti(rp2()).to_list() == [1, 1, 1]
    assert not orientable(rp2())
    assert orientable(simplex_boundary(5))


def test_tight_neighborly_needs_dimension_three():
    with pytest.raises(DimensionError):
        is_tight_neighborly(simplex_boundary(4))


def test_stacked_sphere_is_not_tight_neighborly():
    rng = np.random.default_rng(PARAMS["properties"]["random_seed"] + 3)
    sphere = boundary(random_stacked_ball(5, 11, rng))
    assert sphere.n_vertices == 16
    assert sphere.dimension == 4
    assert in_k(sphere)
    assert z2_betti(sphere)[1] == 0
    assert tight_neighborly_sides(sphere) == (55, 0)
    assert not is_tight_neighborly(sphere)


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_catalog_boundaries(entry):
    K = entry.complex
    assert len(K.facets) == 25
    assert in_kbar(K, require_neighborly=True)

    bd = boundary(K)
    assert bd.f_vector().to_list() == [15, 105, 230, 240, 96]
    assert euler_characteristic(bd) == -4
    betti = z2_betti(bd)
    assert betti.to_list() == [1, 3, 0, 3, 1]
    # Poincare duality over Z2
    assert betti.to_list() == betti.to_list()[::-1]
    assert tight_neighborly_sides(bd, betti) == (45, 45)
    assert is_tight_neighborly(bd, betti)
    assert in_k(bd, require_neighborly=True)
    assert orientable(bd) == entry.boundary_orientable


def test_orientability_split():
    flags = {e.id: e.boundary_orientable for e in all_entries()}
    assert [k for k, v in flags.items() if not v] == ["N1", "N2"]


def test_numerology_identities():
    assert Numerology.dual_nodes(15, 5) == 25
    assert Numerology.dual_edges(15, 5) == 27
    assert Numerology.tree_size(15, 5) == 10
    assert Numerology.tree_intersections(15, 5) == 15
    assert Numerology.tight_sides(15, 4, 3) == (45, 45)


# --------------------------------------------------
# Symmetry
# --------------------------------------------------
def test_simplex_boundary_automorphisms():
    group = automorphisms(simplex_boundary(6), PARAMS)
    assert group.order == 720
    assert group.is_closed()


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_catalog_automorphisms(entry):
    K = entry.complex
    group = automorphisms(K, PARAMS)
    assert group.contains(PHI)
    assert contains_z3(K, PHI)
    assert all(PHI[v] != v for v in range(15))
    bd_group = automorphisms(boundary(K), PARAMS)
    assert set(bd_group.elements) == set(group.elements)


def test_catalog_classes_pairwise_distinct():
    entries = all_entries()
    boundaries = {e.id: boundary(e.complex) for e in entries}
    for i, a in enumerate(entries):
        assert isomorphic(a.complex, a.complex)
        for b in entries[i + 1:]:
            assert not isomorphic(a.complex, b.complex), (a.id, b.id)
            assert not isomorphic(boundaries[a.id], boundaries[b.id]), (a.id, b.id)


def test_isomorphism_of_relabeled_copy():
    K = complex_of("N9")
    perm = tuple((v + 3) % 15 for v in range(15))
    image = K.relabel(perm)
    psi = find_isomorphism(K, image)
    assert psi is not None
    assert {f for f in image.facets} == {
        sum(1 << psi[v] for v in range(15) if (f >> v) & 1) for f in K.facets
    }
    inv = inverse(psi)
    assert {f for f in K.facets} == {permute_mask(f, inv) for f in image.facets}


def test_contains_z3_checks_the_given_permutation():
    hexagon = build([[str(v), str((v + 1) % 6)] for v in range(6)], vertex_order=[str(v) for v in range(6)])
    rotation = (2, 3, 4, 5, 0, 1)
    assert contains_z3(hexagon, rotation)
    assert not contains_z3(hexagon, (1, 2, 0, 4, 5, 3))
    assert not contains_z3(hexagon, (1, 2, 3, 4, 5, 0))
    assert automorphisms(hexagon, PARAMS).contains(rotation)
