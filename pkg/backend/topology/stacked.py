import logging

import numpy as np

from complexes.simplicial import SimplicialComplex, bits, popcount, ridge_map_of
from core.errors import BoundaryError

logger = logging.getLogger(__name__)


# --------------------------------------------------
# Mask-level predicates
# --------------------------------------------------
def _dual_is_tree(masks):
    masks = list(masks)
    parent = list(range(len(masks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = 0
    for members in ridge_map_of(masks).values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                edges += 1
                if edges > len(masks) - 1:
                    return False
                a, b = find(members[i]), find(members[j])
                if a == b:
                    return False
                parent[a] = b
    return edges == len(masks) - 1


def stacked_ball_masks(masks, d):
    """Dual graph a tree and f0 = f_d + d."""
    masks = set(masks)
    if not masks:
        return False
    if d == 0:
        return len(masks) == 1
    support = 0
    for m in masks:
        support |= m
    return popcount(support) == len(masks) + d and _dual_is_tree(masks)


def stacked_sphere_masks(masks, d):
    """
    Undo 0-moves (lowest removable vertex first) until the boundary of
    a (d+1)-simplex remains; False as soon as no vertex is removable.
    """
    facets = set(masks)
    if any(len(members) != 2 for members in ridge_map_of(list(facets)).values()):
        return False

    incidence = {}
    for facet in facets:
        for v in bits(facet):
            incidence.setdefault(v, set()).add(facet)

    while True:
        if len(incidence) == d + 2:
            return len(facets) == d + 2
        for v in sorted(incidence):
            star = incidence[v]
            if len(star) != d + 1:
                continue
            union = 0
            for facet in star:
                union |= facet
            replacement = union & ~(1 << v)
            if popcount(union) != d + 2 or replacement in facets:
                continue
            for facet in list(star):
                facets.discard(facet)
                for w in bits(facet):
                    incidence[w].discard(facet)
            del incidence[v]
            facets.add(replacement)
            for w in bits(replacement):
                incidence[w].add(replacement)
            break
        else:
            return False


def _links(complex_):
    for v in range(complex_.n_vertices):
        bit = 1 << v
        yield v, [f & ~bit for f in complex_.facets if f & bit]


# --------------------------------------------------
# Public predicates
# --------------------------------------------------
def is_stacked_ball(complex_):
    return stacked_ball_masks(complex_.facets, complex_.dimension)


def is_stacked_sphere(complex_):
    return stacked_sphere_masks(complex_.facets, complex_.dimension)


def in_kbar(complex_, require_neighborly=False):
    """Every vertex link is a stacked ball (locally stacked with boundary)."""
    d = complex_.dimension
    if d < 1:
        return False
    for v, link in _links(complex_):
        if not stacked_ball_masks(link, d - 1):
            logger.debug("link of %s is not a stacked ball", complex_.labels[v])
            return False
    return complex_.is_neighborly() if require_neighborly else True


def in_k(complex_, require_neighborly=False):
    """Every vertex link is a stacked sphere."""
    d = complex_.dimension
    if d < 1:
        return False
    for v, link in _links(complex_):
        if not stacked_sphere_masks(link, d - 1):
            logger.debug("link of %s is not a stacked sphere", complex_.labels[v])
            return False
    return complex_.is_neighborly() if require_neighborly else True


def boundary(complex_):
    ridges = complex_.boundary_ridges()
    if not ridges:
        raise BoundaryError(f"{complex_} has no boundary")
    if not complex_.is_weak_pseudomanifold(with_boundary=True):
        logger.warning("%s has ridges in more than two facets", complex_)
    return SimplicialComplex.from_masks(ridges, complex_.labels)


# --------------------------------------------------
# Random constructors
# --------------------------------------------------
def _paste(d, n_facets, rng, reuse):
    facets = [(1 << (d + 1)) - 1]
    present = set(facets)
    counts = {}
    for v in range(d + 1):
        counts[facets[0] & ~(1 << v)] = 1
    n_vertices = d + 1

    attempts = 0
    while len(facets) < n_facets and attempts < 50 * n_facets:
        attempts += 1
        free = sorted(r for r, c in counts.items() if c == 1)
        if not free:
            break
        ridge = free[int(rng.integers(len(free)))]
        apex = n_vertices
        if reuse and rng.random() < reuse:
            others = [v for v in range(n_vertices) if not (ridge >> v) & 1]
            apex = others[int(rng.integers(len(others)))]
        facet = ridge | (1 << apex)
        if facet in present:
            continue
        if apex == n_vertices:
            n_vertices += 1
        facets.append(facet)
        present.add(facet)
        for v in bits(facet):
            key = facet & ~(1 << v)
            counts[key] = counts.get(key, 0) + 1

    labels = tuple(f"v{i}" for i in range(n_vertices))
    return SimplicialComplex.from_masks(facets, labels)


def random_stacked_ball(d, n_facets, rng=None):
    """Paste n_facets d-simplices one at a time along free ridges."""
    rng = rng if rng is not None else np.random.default_rng()
    return _paste(d, n_facets, rng, reuse=0.0)


def random_pasted_complex(d, n_facets, rng=None, reuse=0.3):
    """Like random_stacked_ball, but the apex may be an old vertex."""
    rng = rng if rng is not None else np.random.default_rng()
    return _paste(d, n_facets, rng, reuse=reuse)
