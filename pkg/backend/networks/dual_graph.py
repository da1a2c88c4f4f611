from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from complexes.simplicial import permute_mask, popcount
from core.errors import AdjacencyError, PathError


class DualGraph:
    """
    Dual graph of a pure complex.
    Nodes are facet indices, edges join facets sharing a codimension-one face.
    """

    def __init__(self, complex_):
        self.complex = complex_

        self.graph = nx.Graph()
        for idx, facet in enumerate(complex_.facets):
            self.graph.add_node(idx, facet=facet)
        for idx, neighbors in enumerate(complex_.facet_adjacency):
            for other in neighbors:
                if idx < other:
                    self.graph.add_edge(idx, other)

    # --------------------------------------------------
    # Queries
    # --------------------------------------------------
    @property
    def node_count(self):
        return self.graph.number_of_nodes()

    @property
    def edge_count(self):
        return self.graph.number_of_edges()

    def facet(self, node):
        return self.graph.nodes[node]["facet"]

    def node_of(self, mask):
        return self.complex.facets.index(mask)

    def degree(self, node):
        return self.graph.degree(node)

    def get_neighbors(self, node):
        return sorted(self.graph.neighbors(node))

    def degree_sequence(self):
        return sorted((d for _, d in self.graph.degree()), reverse=True)

    def is_two_connected(self):
        return self.node_count > 2 and nx.is_biconnected(self.graph)

    def is_tree(self):
        return nx.is_tree(self.graph)

    def facet_edges(self):
        """Edges as frozensets of facet masks, independent of node numbering."""
        return {frozenset((self.facet(a), self.facet(b))) for a, b in self.graph.edges}


def dual(complex_):
    return DualGraph(complex_)


# --------------------------------------------------
# Facet trees
# --------------------------------------------------
@dataclass
class FacetTree:
    vertex: int
    nodes: tuple
    graph: nx.Graph = field(repr=False)

    @property
    def size(self):
        return len(self.nodes)

    @property
    def is_tree(self):
        return self.size > 0 and nx.is_tree(self.graph)

    def leaves(self):
        return [n for n in self.nodes if self.graph.degree(n) <= 1]


def facet_tree(complex_, x, dual_graph=None):
    """Subgraph of the dual graph induced by the facets through x."""
    x = complex_.vertex(x)
    dual_graph = dual_graph or dual(complex_)
    nodes = tuple(complex_.facets_containing(x))
    return FacetTree(vertex=x, nodes=nodes, graph=dual_graph.graph.subgraph(nodes).copy())


@dataclass
class OrientedLabels:
    root: int
    labels: dict
    distinct: bool
    avoids_root: bool

    @property
    def ok(self):
        return self.distinct and self.avoids_root


def oriented_labels(complex_, tree, root):
    """
    Orient every tree edge towards root and label (u -> v) by the
    vertex of u missing from v.
    """
    facets = complex_.facets
    parent = {root: None}
    queue = deque([root])
    labels = {}

    while queue:
        node = queue.popleft()
        for nxt in tree.graph.neighbors(node):
            if nxt in parent:
                continue
            parent[nxt] = node
            queue.append(nxt)
            leaving = facets[nxt] & ~facets[node]
            if popcount(leaving) != 1:
                raise AdjacencyError(f"facets {nxt} and {node} are not adjacent")
            labels[(nxt, node)] = leaving.bit_length() - 1

    values = list(labels.values())
    root_mask = facets[root]
    return OrientedLabels(
        root=root,
        labels=labels,
        distinct=len(set(values)) == len(values),
        avoids_root=all(not (root_mask >> v) & 1 for v in values),
    )


def tree_intersection_count(complex_, x):
    """Number of trees T_y meeting T_x, i.e. vertices in the star of x."""
    x = complex_.vertex(x)
    star = 0
    for facet in complex_.facets:
        if (facet >> x) & 1:
            star |= facet
    return popcount(star)


# --------------------------------------------------
# Critical sets
# --------------------------------------------------
def is_critical(complex_, removed, dual_graph=None):
    """removed: facet indices. Every component left must have < f0 - d nodes."""
    dual_graph = dual_graph or dual(complex_)
    rest = dual_graph.graph.copy()
    rest.remove_nodes_from(removed)
    bound = complex_.n_vertices - complex_.dimension
    return all(len(c) < bound for c in nx.connected_components(rest))


def critical_cover_check(complex_, removed, dual_graph=None):
    if not is_critical(complex_, removed, dual_graph):
        return True
    covered = 0
    for idx in removed:
        covered |= complex_.facets[idx]
    return covered == complex_.full_mask


def degree_three_cover(complex_, dual_graph=None):
    """Facets of dual degree >= 3 together contain every vertex."""
    dual_graph = dual_graph or dual(complex_)
    covered = 0
    for node in dual_graph.graph.nodes:
        if dual_graph.degree(node) >= 3:
            covered |= dual_graph.facet(node)
    return covered == complex_.full_mask


# --------------------------------------------------
# Paths
# --------------------------------------------------
@dataclass
class PathReport:
    length: int
    leaving: tuple
    entering: tuple
    interior_degree_two: bool
    labels_distinct: bool = True
    labels_in_start: bool = True
    entering_distinct: bool = True
    length_within_bound: bool = True
    short: bool = False
    leaving_in_difference: bool = True
    entering_in_difference: bool = True

    @property
    def ok(self):
        return all((
            self.labels_distinct,
            self.labels_in_start,
            self.entering_distinct,
            self.length_within_bound,
            self.leaving_in_difference,
            self.entering_in_difference,
        ))


def path_label_check(complex_, path, dual_graph=None):
    """
    path: facet masks u0..ur of a walk in the dual graph.
    Degree-two interiors force distinct labels taken from u0 and r <= d + 1;
    short paths (r < d + 1) leave only u0 - ur and enter only ur - u0.
    """
    if len(path) < 2:
        raise PathError("a path needs at least two facets")
    d = complex_.dimension
    leaving, entering = [], []
    for prev, cur in zip(path, path[1:]):
        if popcount(prev & cur) != d or popcount(prev) != d + 1 or popcount(cur) != d + 1:
            raise PathError("consecutive facets are not adjacent")
        leaving.append((prev & ~cur).bit_length() - 1)
        entering.append((cur & ~prev).bit_length() - 1)

    dual_graph = dual_graph or dual(complex_)
    try:
        interior = [dual_graph.node_of(mask) for mask in path[1:-1]]
    except ValueError as exc:
        raise PathError("path facet is not a facet of the complex") from exc

    first, last = path[0], path[-1]
    r = len(path) - 1
    report = PathReport(
        length=r,
        leaving=tuple(leaving),
        entering=tuple(entering),
        interior_degree_two=all(dual_graph.degree(n) == 2 for n in interior),
    )

    if report.interior_degree_two:
        report.labels_distinct = len(set(leaving)) == r
        report.labels_in_start = all((first >> x) & 1 for x in leaving)
        report.entering_distinct = len(set(entering)) == r
        report.length_within_bound = r <= d + 1

    if r < d + 1:
        report.short = True
        report.leaving_in_difference = all(
            (first >> x) & 1 and not (last >> x) & 1 for x in leaving
        )
        report.entering_in_difference = all(
            (last >> y) & 1 and not (first >> y) & 1 for y in entering
        )
    return report


# --------------------------------------------------
# Symmetry and per-vertex reports
# --------------------------------------------------
def induced_automorphism(complex_, perm, dual_graph=None):
    """
    Facet permutation induced by a vertex permutation, or None when the
    permutation does not preserve the facet set.
    """
    index = {facet: idx for idx, facet in enumerate(complex_.facets)}
    mapping = {}
    for idx, facet in enumerate(complex_.facets):
        image = permute_mask(facet, perm)
        if image not in index:
            return None
        mapping[idx] = index[image]

    dual_graph = dual_graph or dual(complex_)
    for a, b in dual_graph.graph.edges:
        if not dual_graph.graph.has_edge(mapping[a], mapping[b]):
            return None
    return mapping


def tree_report(complex_, dual_graph=None):
    dual_graph = dual_graph or dual(complex_)
    rows = []
    node_sets = set()
    for x in range(complex_.n_vertices):
        tree = facet_tree(complex_, x, dual_graph)
        node_sets.add(tree.nodes)
        leaves_ok = all(dual_graph.degree(leaf) < 3 for leaf in tree.leaves())
        rows.append({
            "vertex": complex_.labels[x],
            "size": tree.size,
            "is_tree": tree.is_tree,
            "leaves_low_degree": leaves_ok,
            "intersections": tree_intersection_count(complex_, x),
        })
    return {"trees": rows, "distinct": len(node_sets) == complex_.n_vertices}

