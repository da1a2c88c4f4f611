import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import networkx as nx

from core.config import load_parameters
from core.errors import ParamError, ScaleError
from networks.graph_family import classify, family_candidates, is_two_connected

logger = logging.getLogger(__name__)

MODES = ("exhaustive", "subdivision")


@dataclass
class OracleReport:
    n: int
    mode: str
    found: list = field(default_factory=list)
    predicted: list = field(default_factory=list)
    graphs_examined: int = 0
    isomorphism_classes: int = 0
    unclassified: int = 0

    @property
    def agrees(self):
        return sorted(self.found) == sorted(self.predicted)

    def to_dict(self):
        return {
            "vertices": self.n,
            "mode": self.mode,
            "found": self.found,
            "predicted": self.predicted,
            "agrees": self.agrees,
            "graphs_examined": self.graphs_examined,
            "isomorphism_classes": self.isomorphism_classes,
            "unclassified": self.unclassified,
        }


class IsomorphismClasses:
    """Keeps one representative per isomorphism class (WL hash buckets)."""

    def __init__(self):
        self.buckets = {}

    def add(self, graph):
        key = nx.weisfeiler_lehman_graph_hash(graph)
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        return True

    def representatives(self):
        return [g for key in sorted(self.buckets) for g in self.buckets[key]]

    def __len__(self):
        return sum(len(b) for b in self.buckets.values())


# --------------------------------------------------
# Exhaustive mode
# --------------------------------------------------
def _three_cycles(n, k):
    perm = list(range(n))
    for c in range(k):
        a = 3 * c
        perm[a], perm[a + 1], perm[a + 2] = a + 1, a + 2, a
    return perm


def pair_orbits(n, perm):
    orbits = []
    seen = set()
    for pair in combinations(range(n), 2):
        edge = frozenset(pair)
        if edge in seen:
            continue
        orbit = []
        while edge not in orbit:
            orbit.append(edge)
            a, b = tuple(edge)
            edge = frozenset((perm[a], perm[b]))
        seen.update(orbit)
        orbits.append(tuple(tuple(sorted(e)) for e in orbit))
    return orbits


def _orbit_unions(orbits, target, start=0, chosen=()):
    if target == 0:
        yield chosen
        return
    for idx in range(start, len(orbits)):
        if len(orbits[idx]) <= target:
            yield from _orbit_unions(orbits, target - len(orbits[idx]), idx + 1, chosen + (idx,))


def symmetric_edge_sets(n):
    """
    Graphs on range(n) with n + 2 edges that are invariant under
    (0 1 2)(3 4 5)... with k three-cycles, for every k. Any graph with an
    order-3 automorphism is isomorphic to one of these.
    """
    for k in range(1, n // 3 + 1):
        orbits = pair_orbits(n, _three_cycles(n, k))
        for chosen in _orbit_unions(orbits, n + 2):
            graph = nx.Graph()
            graph.add_nodes_from(range(n))
            for idx in chosen:
                graph.add_edges_from(orbits[idx])
            yield graph


def scan_all_edge_sets(n):
    """Every labeled graph on range(n) with n + 2 edges and min degree 2."""
    for edges in combinations(list(combinations(range(n), 2)), n + 2):
        degree = [0] * n
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        if min(degree) < 2:
            continue
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        yield graph


# --------------------------------------------------
# Subdivision mode
# --------------------------------------------------
def base_multigraphs(m):
    """
    Loopless 2-connected multigraphs on range(m) with m + 2 edges and
    all degrees >= 3, as edge lists.
    """
    pairs = list(combinations(range(m), 2))
    for mult in product(range(m + 3), repeat=len(pairs)):
        if sum(mult) != m + 2:
            continue
        degree = [0] * m
        for (a, b), k in zip(pairs, mult):
            degree[a] += k
            degree[b] += k
        if min(degree) < 3:
            continue
        support = nx.Graph()
        support.add_nodes_from(range(m))
        support.add_edges_from(p for p, k in zip(pairs, mult) if k)
        if m > 2 and not nx.is_biconnected(support):
            continue
        yield [p for p, k in zip(pairs, mult) for _ in range(k)]


def base_symmetries(edges, m):
    """Edge-orbit partitions of the order-3 symmetries of a base multigraph."""
    groups = {}
    for idx, pair in enumerate(edges):
        groups.setdefault(pair, []).append(idx)

    partitions = set()
    for p in permutations(range(m)):
        if any(p[p[p[i]]] != i for i in range(m)):
            continue
        targets = {}
        for pair, members in groups.items():
            image = tuple(sorted((p[pair[0]], p[pair[1]])))
            if len(groups.get(image, ())) != len(members):
                break
            targets[pair] = groups[image]
        else:
            choices = [
                [dict(zip(groups[pair], perm)) for perm in permutations(targets[pair])]
                for pair in groups
            ]
            for parts in product(*choices):
                q = {}
                for part in parts:
                    q.update(part)
                if all(q[e] == e for e in q) or any(q[q[q[e]]] != e for e in q):
                    continue
                orbits = frozenset(
                    frozenset((e, q[e], q[q[e]])) for e in q
                )
                partitions.add(orbits)

    ordered = sorted(sorted(sorted(o) for o in part) for part in partitions)
    return ordered


def _orbit_lengths(orbits, remaining, idx=0, counts=()):
    if idx == len(orbits):
        if remaining == 0:
            yield counts
        return
    size = len(orbits[idx])
    for k in range(remaining // size + 1):
        yield from _orbit_lengths(orbits, remaining - k * size, idx + 1, counts + (k,))


def subdivide(edges, m, lengths):
    graph = nx.Graph()
    graph.add_nodes_from(range(m))
    nxt = m
    for (a, b), k in zip(edges, lengths):
        chain = [a] + list(range(nxt, nxt + k)) + [b]
        nxt += k
        nx.add_path(graph, chain)
    return graph


def symmetric_subdivisions(n, max_base=4):
    for m in range(2, max_base + 1):
        if n < m:
            continue
        for edges in base_multigraphs(m):
            for orbits in base_symmetries(edges, m):
                for counts in _orbit_lengths(orbits, n - m):
                    lengths = [0] * len(edges)
                    for orbit, k in zip(orbits, counts):
                        for e in orbit:
                            lengths[e] = k
                    # parallel edges may not both stay unsubdivided
                    direct = [edges[e] for e in range(len(edges)) if lengths[e] == 0]
                    if len(direct) != len(set(direct)):
                        continue
                    yield subdivide(edges, m, lengths)


# --------------------------------------------------
# Driver
# --------------------------------------------------
def oracle_classification(n, mode="exhaustive", params=None):
    """
    Generate the 2-connected graphs on n nodes with n + 2 edges and an
    order-3 automorphism, and classify them as G(r, s) / T(r, s).
    """
    params = params or load_parameters()
    oracle_cfg = params["oracle"]
    if mode not in MODES:
        raise ParamError(f"unknown oracle mode {mode!r}")
    if n < 1:
        raise ParamError("vertex count must be positive")

    if mode == "exhaustive":
        if n > oracle_cfg["exhaustive_max_vertices"]:
            raise ScaleError(
                f"exhaustive oracle limited to {oracle_cfg['exhaustive_max_vertices']} vertices"
            )
        graphs = symmetric_edge_sets(n)
    else:
        if n > oracle_cfg["subdivision_max_vertices"]:
            raise ScaleError(
                f"subdivision oracle limited to {oracle_cfg['subdivision_max_vertices']} vertices"
            )
        graphs = symmetric_subdivisions(n, oracle_cfg["max_base_vertices"])

    report = OracleReport(n=n, mode=mode)
    classes = IsomorphismClasses()
    for graph in graphs:
        report.graphs_examined += 1
        if graph.number_of_nodes() != n or not is_two_connected(graph):
            continue
        classes.add(graph)

    report.isomorphism_classes = len(classes)
    found = set()
    for graph in classes.representatives():
        family = classify(graph)
        if family.tag == "none":
            report.unclassified += 1
            logger.warning("unclassified graph with edges %s", sorted(graph.edges))
        else:
            found.add(family)

    if (n - 1) % 3 == 0 and n >= 4:
        logger.info("T(%d,1) excluded from the family list: x1 is a cut vertex", (n - 1) // 3)

    report.found = [str(f) for f in sorted(found)]
    report.predicted = [str(f) for f in sorted(family_candidates(n))]
    logger.info(
        "oracle n=%d mode=%s: %d graphs, %d classes, found %s",
        n, mode, report.graphs_examined, report.isomorphism_classes, report.found,
    )
    return report
