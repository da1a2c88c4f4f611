import os
import sys

import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from complexes.facet_io import parse_facets, read_facet_file, serialize, write_facet_file
from complexes.simplicial import CANONICAL_LABELS, build, cone, ridge_map_of
from core.errors import DimensionError, EmptyError, PurityError, TokenError, VertexError


def simplex_boundary(n):
    """Boundary of the (n-1)-simplex on vertices 1..n."""
    vertices = [str(v) for v in range(1, n + 1)]
    return build([[v for v in vertices if v != w] for w in vertices])


def test_build_sorts_and_deduplicates():
    K = build([["c1", "b1", "a1"], ["a1", "b1", "c1"], ["b1", "c1", "a2"]])
    assert K.n_vertices == 4
    assert len(K.facets) == 2
    assert K.dimension == 2
    assert K.facet_tokens() == [("a1", "b1", "c1"), ("b1", "c1", "a2")]


def test_build_errors():
    with pytest.raises(EmptyError):
        build([])
    with pytest.raises(PurityError):
        build([["a1", "b1", "c1"], ["a1", "b2"]])
    with pytest.raises(TokenError):
        build([["a1", "a1", "b1"], ["a2", "b2", "c2"]])


def test_canonical_tokens_ordered_first():
    K = build([["x", "b1", "a1"], ["y", "a1", "c5"]])
    assert K.labels == ("a1", "b1", "c5", "x", "y")


def test_f_vector_and_euler_characteristic():
    S = simplex_boundary(5)
    assert S.f_vector().to_list() == [5, 10, 10, 5]
    assert S.f_vector().euler_characteristic == 0
    T = simplex_boundary(4)
    assert T.f_vector().euler_characteristic == 2


def test_faces_are_memoized():
    S = simplex_boundary(5)
    first = S.faces(1)
    assert S.faces(1) is first
    assert len(first) == 10


def test_link_star_and_cone():
    S = simplex_boundary(5)
    link = S.link("1")
    assert link.n_vertices == 4
    assert link.dimension == 2
    assert len(link.facets) == 4
    star = S.star("1")
    assert len(star.facets) == 4
    # cone over a link has the star's facets
    coned = {frozenset(t) for t in cone("1", link).facet_tokens()}
    assert coned == {frozenset(t) for t in star.facet_tokens()}
    with pytest.raises(VertexError):
        cone("1", S)
    with pytest.raises(VertexError):
        S.link("zz")


def test_link_of_zero_dimensional_complex():
    K = build([["a"], ["b"]])
    with pytest.raises(DimensionError):
        K.link("a")


def test_skeleton():
    S = simplex_boundary(5)
    edges = S.skeleton(1)
    assert len(edges.facets) == 10
    with pytest.raises(DimensionError):
        S.skeleton(4)


def test_pseudomanifold_predicates():
    S = simplex_boundary(5)
    assert S.is_weak_pseudomanifold()
    assert S.is_pseudomanifold()
    assert S.is_neighborly()
    ball = build([["1", "2", "3"], ["2", "3", "4"]])
    assert not ball.is_weak_pseudomanifold()
    assert ball.is_weak_pseudomanifold(with_boundary=True)
    assert len(ball.boundary_ridges()) == 4
    assert not ball.is_neighborly()


def test_ridge_map_two_cofacets_on_closed_complex():
    S = simplex_boundary(6)
    assert all(len(members) == 2 for members in S.ridge_map.values())


def test_ridge_map_of_masks_matches_complex():
    K = build([["a1", "b1", "c1"], ["b1", "c1", "a2"], ["c1", "a2", "b2"]])
    assert ridge_map_of(K.facets) == K.ridge_map
    shared = [members for members in K.ridge_map.values() if len(members) == 2]
    assert sorted(shared) == [[0, 1], [1, 2]]
    assert ridge_map_of([]) == {}


def test_relabel_preserves_f_vector():
    S = simplex_boundary(5)
    perm = (1, 2, 3, 4, 0)
    assert S.relabel(perm).f_vector() == S.f_vector()


def test_parse_with_comments_and_directive():
    text = "# vertices: a b c d\n# a comment\nd c b  # trailing\nb a c\n"
    K = parse_facets(text)
    assert K.labels == ("a", "b", "c", "d")
    assert K.facet_tokens() == [("a", "b", "c"), ("b", "c", "d")]


def test_parse_bad_token():
    with pytest.raises(TokenError):
        parse_facets("a1 b1 c-1\n")
    with pytest.raises(TokenError):
        parse_facets("a1 a1 b1\na2 b2 c2\n")


def test_serialize_round_trip(tmp_path):
    K = build([["q", "a1", "p"], ["a1", "r", "q"]])
    path = tmp_path / "k.facets"
    write_facet_file(str(path), K, header="test complex")
    again = read_facet_file(str(path))
    assert again == K
    assert parse_facets(serialize(K)) == K


def test_canonical_labels():
    assert CANONICAL_LABELS[:4] == ("a1", "b1", "c1", "a2")
    assert len(CANONICAL_LABELS) == 15
