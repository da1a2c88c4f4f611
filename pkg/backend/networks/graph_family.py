import logging
import re
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from core.errors import ParamError

logger = logging.getLogger(__name__)

_FAMILY = re.compile(r"^\s*([GT])\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True, order=True)
class GraphFamilyId:
    tag: str
    r: int = 0
    s: int = 0

    def __str__(self):
        if self.tag == "none":
            return "none"
        return f"{self.tag}({self.r},{self.s})"

    @property
    def short_name(self):
        """'g36' style name used for the enumeration graphs."""
        return f"{self.tag.lower()}{self.r}{self.s}"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text == "none":
            return NONE
        match = _FAMILY.match(text)
        if match:
            return cls(match.group(1), int(match.group(2)), int(match.group(3)))
        short = re.match(r"^([gt])(\d)(\d)$", text)
        if short:
            return cls(short.group(1).upper(), int(short.group(2)), int(short.group(3)))
        raise ParamError(f"cannot parse graph family {text!r}")


NONE = GraphFamilyId("none")


# --------------------------------------------------
# Builders
# --------------------------------------------------
def _add_path(graph, nodes):
    for a, b in zip(nodes, nodes[1:]):
        graph.add_edge(a, b)


def build_G(r, s):
    """
    G(r, s): hub z0 with three spokes z0-a1-...-ar (a in u, v, w) and a
    rim u_r..u_{r+s-1} v_r ..., closing back at u_r.
    """
    if r < 1 or s < 1:
        raise ParamError(f"G({r},{s}) needs r, s >= 1")
    length = r + s - 1
    arms = ("u", "v", "w")
    graph = nx.Graph()
    graph.add_node("z0")
    for k, arm in enumerate(arms):
        spoke = ["z0"] + [f"{arm}{i}" for i in range(1, r + 1)]
        _add_path(graph, spoke)
        nxt = arms[(k + 1) % 3]
        rim = [f"{arm}{i}" for i in range(r, length + 1)] + [f"{nxt}{r}"]
        _add_path(graph, rim)
    return graph


def build_T(r, s):
    """T(r, s): path x1..xs and three internally disjoint paths x1-a1-..-ar-xs."""
    if r < 1 or s < 1:
        raise ParamError(f"T({r},{s}) needs r, s >= 1")
    if r == 1 and s == 1:
        raise ParamError("T(1,1) has parallel edges")
    graph = nx.Graph()
    xs = [f"x{i}" for i in range(1, s + 1)]
    graph.add_nodes_from(xs)
    _add_path(graph, xs)
    for arm in ("u", "v", "w"):
        _add_path(graph, [xs[0]] + [f"{arm}{i}" for i in range(1, r + 1)] + [xs[-1]])
    if s == 1:
        logger.warning("T(%d,1) has a cut vertex x1", r)
    return graph


def build_family(family):
    if family.tag == "G":
        return build_G(family.r, family.s)
    if family.tag == "T":
        return build_T(family.r, family.s)
    raise ParamError(f"no graph for {family}")


def g_rotation(r, s):
    """The order-3 automorphism u_i -> v_i -> w_i of G(r, s)."""
    mapping = {"z0": "z0"}
    nxt = {"u": "v", "v": "w", "w": "u"}
    for arm in nxt:
        for i in range(1, r + s):
            mapping[f"{arm}{i}"] = f"{nxt[arm]}{i}"
    return mapping


# --------------------------------------------------
# Predicates
# --------------------------------------------------
def is_two_connected(graph):
    return graph.number_of_nodes() > 2 and nx.is_biconnected(graph)


def _order(mapping):
    order = 1
    current = dict(mapping)
    while any(k != v for k, v in current.items()):
        current = {k: mapping[v] for k, v in current.items()}
        order += 1
    return order


def has_order3_automorphism(graph):
    """
    Search automorphisms (VF2) for one of order exactly 3; returns it or None.
    Only automorphisms whose order is divisible by 3 can yield one.
    """
    matcher = GraphMatcher(graph, graph)
    for mapping in matcher.isomorphisms_iter():
        order = _order(mapping)
        if order % 3 == 0:
            power = dict(mapping)
            for _ in range(order // 3 - 1):
                power = {k: mapping[v] for k, v in power.items()}
            return power
    return None


def family_candidates(n):
    """All G(r, s) and T(r, s) (s >= 2) with n nodes."""
    found = []
    for r in range(1, n + 1):
        s = (n + 2) // 3 - r
        if s >= 1 and 3 * (r + s) - 2 == n:
            found.append(GraphFamilyId("G", r, s))
    for r in range(1, n // 3 + 1):
        s = n - 3 * r
        if s >= 2:
            found.append(GraphFamilyId("T", r, s))
    return found


def classify(graph):
    """
    Identify a 2-connected graph with |E| = |V| + 2 and an order-3
    automorphism as G(r, s) or T(r, s); otherwise NONE.
    """
    n = graph.number_of_nodes()
    if graph.number_of_edges() != n + 2 or not is_two_connected(graph):
        return NONE
    if has_order3_automorphism(graph) is None:
        return NONE
    for family in family_candidates(n):
        if nx.is_isomorphic(graph, build_family(family)):
            return family
    logger.warning("graph on %d nodes has an order-3 automorphism but no family", n)
    return NONE
