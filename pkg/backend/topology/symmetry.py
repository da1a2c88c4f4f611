import logging
from collections import Counter
from dataclasses import dataclass
from itertools import permutations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from complexes.simplicial import bits, permute_mask
from core.config import load_parameters

logger = logging.getLogger(__name__)


# --------------------------------------------------
# Permutations
# --------------------------------------------------
def compose(p, q):
    """(p o q)(v) = p[q[v]]."""
    return tuple(p[v] for v in q)


def inverse(p):
    inv = [0] * len(p)
    for v, image in enumerate(p):
        inv[image] = v
    return tuple(inv)


def perm_order(p):
    identity = tuple(range(len(p)))
    order, current = 1, tuple(p)
    while current != identity:
        current = compose(p, current)
        order += 1
    return order


def cycles(p):
    seen, result = set(), []
    for start in range(len(p)):
        if start in seen:
            continue
        cycle, v = [], start
        while v not in seen:
            seen.add(v)
            cycle.append(v)
            v = p[v]
        result.append(tuple(cycle))
    return result


def cycle_string(p, labels):
    parts = [c for c in cycles(p) if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + ",".join(labels[v] for v in c) + ")" for c in parts)


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def contains(self, p):
        return tuple(p) in set(self.elements)

    def elements_of_order(self, k):
        return [p for p in self.elements if perm_order(p) == k]

    def fixed_point_free(self, k=3):
        return [
            p for p in self.elements_of_order(k)
            if all(p[v] != v for v in range(self.degree))
        ]

    def is_closed(self):
        members = set(self.elements)
        return all(compose(p, q) in members for p in self.elements for q in self.elements)


# --------------------------------------------------
# Invariants
# --------------------------------------------------
def _vertex_invariants(complex_):
    adjacency = complex_.facet_adjacency
    degrees = complex_.vertex_degrees
    invariants = []
    for v in range(complex_.n_vertices):
        around = sorted(
            len(adjacency[idx])
            for idx, facet in enumerate(complex_.facets) if (facet >> v) & 1
        )
        invariants.append((degrees[v], tuple(around)))
    return invariants


def _facet_invariants(complex_, vertex_inv):
    adjacency = complex_.facet_adjacency
    return [
        (len(adjacency[idx]), tuple(sorted(vertex_inv[v] for v in bits(facet))))
        for idx, facet in enumerate(complex_.facets)
    ]


def _shape(complex_):
    vertex_inv = _vertex_invariants(complex_)
    return (
        complex_.n_vertices,
        len(complex_.facets),
        complex_.dimension,
        Counter(vertex_inv),
        Counter(_facet_invariants(complex_, vertex_inv)),
    )


def _propagation_applies(complex_):
    return complex_.is_weak_pseudomanifold(with_boundary=True) and complex_.dual_connected()


# --------------------------------------------------
# Facet-driven propagation
# --------------------------------------------------
def _propagate(source, target, start, image_mask, assignment):
    """
    Extend vertex assignment (source facet start -> image_mask) through
    shared ridges. Returns the full permutation or None.
    """
    psi = [-1] * source.n_vertices
    used = set()
    for v, w in assignment:
        psi[v] = w
        used.add(w)

    ridges_src = source.ridge_map
    ridges_dst = target.ridge_map
    images = {start: image_mask}
    queue = [start]

    while queue:
        idx = queue.pop()
        facet, image = source.facets[idx], images[idx]
        for x in bits(facet):
            ridge = facet & ~(1 << x)
            others = [j for j in ridges_src[ridge] if j != idx]
            ridge_image = image & ~(1 << psi[x])
            other_images = [
                target.facets[g] for g in ridges_dst.get(ridge_image, ())
                if target.facets[g] != image
            ]
            if len(others) != len(other_images):
                return None
            if not others:
                continue

            nxt, nxt_image = others[0], other_images[0]
            y = (source.facets[nxt] & ~facet).bit_length() - 1
            y_image = (nxt_image & ~image).bit_length() - 1
            if psi[y] == -1:
                if y_image in used:
                    return None
                psi[y] = y_image
                used.add(y_image)
            elif psi[y] != y_image:
                return None

            if nxt not in images:
                images[nxt] = nxt_image
                queue.append(nxt)
            elif images[nxt] != nxt_image:
                return None

    if -1 in psi:
        return None
    if any(permute_mask(f, psi) not in target.facet_set for f in source.facets):
        return None
    return tuple(psi)


def _propagation_maps(source, target):
    vertex_src = _vertex_invariants(source)
    vertex_dst = _vertex_invariants(target)
    facet_src = _facet_invariants(source, vertex_src)
    facet_dst = _facet_invariants(target, vertex_dst)

    # start from the rarest facet type
    counts = Counter(facet_src)
    start = min(range(len(source.facets)), key=lambda i: (counts[facet_src[i]], i))
    start_vertices = list(bits(source.facets[start]))

    for g, image in enumerate(target.facets):
        if facet_dst[g] != facet_src[start]:
            continue
        image_vertices = list(bits(image))
        for order in permutations(image_vertices):
            if any(vertex_src[v] != vertex_dst[w] for v, w in zip(start_vertices, order)):
                continue
            psi = _propagate(source, target, start, image, list(zip(start_vertices, order)))
            if psi is not None:
                yield psi


# --------------------------------------------------
# Incidence-graph fallback
# --------------------------------------------------
def _incidence_graph(complex_):
    graph = nx.Graph()
    for v in range(complex_.n_vertices):
        graph.add_node(("v", v), kind="vertex", degree=complex_.vertex_degrees[v])
    for idx, facet in enumerate(complex_.facets):
        graph.add_node(("f", idx), kind="facet", degree=len(complex_.facet_adjacency[idx]))
        for v in bits(facet):
            graph.add_edge(("v", v), ("f", idx))
    return graph


def _incidence_maps(source, target):
    matcher = GraphMatcher(
        _incidence_graph(source),
        _incidence_graph(target),
        node_match=lambda a, b: a["kind"] == b["kind"] and a["degree"] == b["degree"],
    )
    for mapping in matcher.isomorphisms_iter():
        psi = [0] * source.n_vertices
        for node, image in mapping.items():
            if node[0] == "v":
                psi[node[1]] = image[1]
        yield tuple(psi)


def isomorphisms_iter(source, target):
    if _shape(source) != _shape(target):
        return iter(())
    if _propagation_applies(source) and _propagation_applies(target):
        return _propagation_maps(source, target)
    return _incidence_maps(source, target)


# --------------------------------------------------
# Public API
# --------------------------------------------------
def find_isomorphism(source, target):
    return next(isomorphisms_iter(source, target), None)


def isomorphic(source, target):
    return find_isomorphism(source, target) is not None


def automorphisms(complex_, params=None):
    params = params or load_parameters()
    limit = params["symmetry"]["max_automorphisms"]
    found = set()
    for psi in isomorphisms_iter(complex_, complex_):
        found.add(psi)
        if len(found) >= limit:
            logger.warning("automorphism search stopped at %d elements", limit)
            break
    group = PermutationGroup(degree=complex_.n_vertices, elements=tuple(sorted(found)))
    logger.debug("|Aut(%s)| = %d", complex_, group.order)
    return group


def contains_z3(complex_, phi):
    """phi has order three and maps the facet set onto itself."""
    if len(phi) != complex_.n_vertices or perm_order(phi) != 3:
        return False
    facets = set(complex_.facets)
    return all(permute_mask(f, phi) in facets for f in complex_.facets)
