import json
import logging
import os
import re

import pandas as pd

from catalog.table import all_entries
from complexes.facet_io import write_facet_file
from core.config import load_parameters
from core.errors import BoundaryError, ParamError
from networks.dual_graph import dual, tree_report
from networks.graph_family import classify
from topology.homology import is_tight_neighborly, orientable, tight_neighborly_sides, z2_betti
from topology.numerology import Numerology
from topology.stacked import boundary, in_k, in_kbar
from topology.symmetry import automorphisms, cycle_string

logger = logging.getLogger(__name__)

_CLASS = re.compile(r"^(kbar|k)(\d*)$")
CLASSES = ("kbar<d>", "k<d>", "tight")


# --------------------------------------------------
# Class checks
# --------------------------------------------------
def verify_class(complex_, name):
    """
    Membership checks for 'kbar<d>' (neighborly, stacked-ball links),
    'k<d>' (neighborly, stacked-sphere links) and 'tight'.
    Returns an ordered dict of named booleans.
    """
    checks = {}
    if name == "tight":
        checks["dimension_at_least_3"] = complex_.dimension >= 3
        checks["neighborly"] = complex_.is_neighborly()
        if checks["dimension_at_least_3"]:
            checks["tight_neighborly"] = is_tight_neighborly(complex_)
        return checks

    match = _CLASS.match(name)
    if not match:
        raise ParamError(f"unknown class {name!r} (expected one of {', '.join(CLASSES)})")
    family, dim = match.groups()
    if dim:
        checks["dimension"] = complex_.dimension == int(dim)
    checks["neighborly"] = complex_.is_neighborly()
    if family == "kbar":
        checks["stacked_ball_links"] = in_kbar(complex_)
    else:
        checks["closed_pseudomanifold"] = complex_.is_pseudomanifold()
        checks["stacked_sphere_links"] = in_k(complex_)
    return checks


# --------------------------------------------------
# Invariants
# --------------------------------------------------
def _homology_section(complex_, betti=None):
    """Z2 Betti numbers and the closed-manifold flags of one complex."""
    betti = betti or z2_betti(complex_)
    closed = complex_.is_weak_pseudomanifold()
    section = {
        "betti_z2": betti.to_list(),
        "closed_pseudomanifold": complex_.is_pseudomanifold(),
        "orientable": orientable(complex_) if closed else None,
        "stacked_sphere_links": in_k(complex_),
    }
    if closed and complex_.dimension >= 3:
        lhs, rhs = tight_neighborly_sides(complex_, betti)
        section["tight_neighborly"] = {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}
    return section


def _boundary_section(complex_):
    try:
        bd = boundary(complex_)
    except BoundaryError:
        return None

    betti = z2_betti(bd)
    section = {
        "vertices": bd.n_vertices,
        "facets": len(bd.facets),
        "f_vector": bd.f_vector().to_list(),
        "euler_characteristic": betti.euler_characteristic,
    }
    section.update(_homology_section(bd, betti))
    return section


def invariants_report(complex_, params=None):
    """Fixed-order invariant document for a complex and, when it has one, its boundary."""
    dual_graph = dual(complex_)
    trees = tree_report(complex_, dual_graph)
    group = automorphisms(complex_, params)
    n, d = complex_.n_vertices, complex_.dimension

    report = {
        "vertices": complex_.n_vertices,
        "facets": len(complex_.facets),
        "dimension": complex_.dimension,
        "f_vector": complex_.f_vector().to_list(),
        "euler_characteristic": complex_.f_vector().euler_characteristic,
        "neighborly": complex_.is_neighborly(),
        "weak_pseudomanifold_with_boundary": complex_.is_weak_pseudomanifold(with_boundary=True),
        "stacked_ball_links": in_kbar(complex_),
        **_homology_section(complex_),
        "dual_graph": {
            "nodes": dual_graph.node_count,
            "edges": dual_graph.edge_count,
            "two_connected": dual_graph.is_two_connected(),
            "family": str(classify(dual_graph.graph)),
            "expected_nodes": Numerology.dual_nodes(n, d),
            "expected_edges": Numerology.dual_edges(n, d) if d else None,
        },
        "trees": {
            "sizes": sorted({row["size"] for row in trees["trees"]}),
            "all_trees": all(row["is_tree"] for row in trees["trees"]),
            "distinct": trees["distinct"],
            "leaves_low_degree": all(row["leaves_low_degree"] for row in trees["trees"]),
            "intersections": sorted({row["intersections"] for row in trees["trees"]}),
            "expected_size": Numerology.tree_size(n, d),
        },
        "automorphisms": {
            "order": group.order,
            "fixed_point_free_order_3": len(group.fixed_point_free(3)),
        },
        "boundary": _boundary_section(complex_),
    }
    return report


def automorphism_report(complex_, params=None):
    group = automorphisms(complex_, params)
    bd_group = None
    try:
        bd_group = automorphisms(boundary(complex_), params)
    except BoundaryError as exc:
        logger.debug("no boundary automorphisms: %s", exc)
    return {
        "order": group.order,
        "elements": [cycle_string(p, complex_.labels) for p in group.elements],
        "fixed_point_free_order_3": [
            cycle_string(p, complex_.labels) for p in group.fixed_point_free(3)
        ],
        "equals_boundary_group": (
            bd_group is not None and set(bd_group.elements) == set(group.elements)
        ),
    }


# --------------------------------------------------
# Rendering
# --------------------------------------------------
def render_json(report, params=None):
    params = params or load_parameters()
    return json.dumps(report, indent=params["report"]["json_indent"])


def render_text(report, indent=0):
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(render_text(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines).rstrip()


# --------------------------------------------------
# Tables
# --------------------------------------------------
def catalog_frame():
    rows = []
    for entry in all_entries():
        row = entry.to_dict()
        rows.append({
            "id": row["id"],
            "graph": row["graph"],
            "boundary_orientable": row["boundary_orientable"],
            "X": ",".join(row["X"]),
            "Y": ",".join(row["Y"]),
        })
    return pd.DataFrame(rows, columns=["id", "graph", "boundary_orientable", "X", "Y"])


def tally_frame(enumeration):
    columns = [
        "template", "graph", "candidates", "chain_errors", "degenerate",
        "slot_mismatches", "rejected", "survivors",
    ]
    rows = []
    for tally in enumeration.tallies:
        row = tally.to_dict()
        row["survivors"] = len(row["survivors"])
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def write_enumeration(enumeration, out_dir, params=None):
    """summary.json, tallies.csv and one facet file per class."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "summary.json"), "w") as f:
        f.write(render_json(enumeration.to_dict(), params) + "\n")
    tally_frame(enumeration).to_csv(os.path.join(out_dir, "tallies.csv"), index=False)

    paths = []
    for idx, record in enumerate(enumeration.classes, start=1):
        path = os.path.join(out_dir, f"class_{idx:02d}.facets")
        header = f"class {idx} {record.graph}\nstring {record.canonical}"
        write_facet_file(path, record.complex, header=header)
        paths.append(path)
    logger.info("wrote %d class files to %s", len(paths), out_dir)
    return paths
