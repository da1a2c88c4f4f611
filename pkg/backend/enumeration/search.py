import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from complexes.simplicial import CANONICAL_LABELS, SimplicialComplex
from core.config import load_parameters
from core.errors import ChainError, DegenerateError
from enumeration.encoding import chain, decode_masks
from enumeration.minimal import minimal_representative
from enumeration.phi import N_VERTICES, PHI, phi_mask
from enumeration.templates import templates
from networks.dual_graph import dual, facet_tree, induced_automorphism, oriented_labels, path_label_check
from networks.graph_family import GraphFamilyId, build_G
from topology.stacked import in_kbar

logger = logging.getLogger(__name__)


# --------------------------------------------------
# Validation
# --------------------------------------------------
def expected_dual_edges(t, arm):
    """Dual edges of G(r, s) with u_i, v_i, w_i read off the arm."""
    names = {"z0": t.z0}
    for i, u in enumerate(arm, start=1):
        names[f"u{i}"] = u
        names[f"v{i}"] = phi_mask(u, 1)
        names[f"w{i}"] = phi_mask(u, 2)
    graph = build_G(t.graph.r, t.graph.s)
    return {frozenset((names[a], names[b])) for a, b in graph.edges}


def rejection_reason(t, complex_, arm):
    """None when the decoded complex passes every structural check."""
    if complex_.n_vertices != N_VERTICES:
        return "vertices missing from the facets"
    if not in_kbar(complex_, require_neighborly=True):
        return "not a neighborly member with stacked-ball links"

    dual_graph = dual(complex_)
    if any(PHI[v] == v for v in range(N_VERTICES)) or induced_automorphism(complex_, PHI, dual_graph) is None:
        return "Phi is not a fixed-point-free automorphism"
    if dual_graph.facet_edges() != expected_dual_edges(t, arm):
        return f"dual graph is not {t.graph}"

    for x in range(complex_.n_vertices):
        tree = facet_tree(complex_, x, dual_graph)
        for root in tree.nodes:
            if not oriented_labels(complex_, tree, root).ok:
                return f"tree of {complex_.labels[x]} has repeated labels"

    r = t.graph.r
    spoke = [t.z0] + list(arm[:r])
    rim = list(arm[r - 1:]) + [phi_mask(arm[r - 1])]
    for path in (spoke, rim):
        if not path_label_check(complex_, path, dual_graph).ok:
            return "path labels violate the degree-two path conditions"
    return None


# --------------------------------------------------
# Tallies
# --------------------------------------------------
@dataclass
class TemplateTally:
    template: str
    graph: str
    candidates: int = 0
    chain_errors: int = 0
    degenerate: int = 0
    slot_mismatches: int = 0
    rejected: int = 0
    survivors: list = field(default_factory=list)
    reasons: dict = field(default_factory=dict)

    def merge(self, other):
        self.candidates += other.candidates
        self.chain_errors += other.chain_errors
        self.degenerate += other.degenerate
        self.slot_mismatches += other.slot_mismatches
        self.rejected += other.rejected
        self.survivors.extend(other.survivors)
        for reason, count in other.reasons.items():
            self.reasons[reason] = self.reasons.get(reason, 0) + count

    def to_dict(self):
        return {
            "template": self.template,
            "graph": self.graph,
            "candidates": self.candidates,
            "chain_errors": self.chain_errors,
            "degenerate": self.degenerate,
            "slot_mismatches": self.slot_mismatches,
            "rejected": self.rejected,
            "survivors": [str(t) for t in self.survivors],
        }


def _reject(tally, reason):
    tally.rejected += 1
    tally.reasons[reason] = tally.reasons.get(reason, 0) + 1


def search(template, chunk=0, n_chunks=1):
    """
    Decode and validate every candidate of a template (the chunk-th share
    when the candidate list is partitioned across n_chunks workers).
    """
    tally = TemplateTally(template=template.name, graph=str(template.graph))
    position = -1
    for kind, t in template.expand():
        # prefix failures are counted once, by chunk 0
        if kind == "chain_error":
            tally.chain_errors += chunk == 0
            continue
        if kind == "slot_mismatch":
            tally.slot_mismatches += chunk == 0
            continue

        position += 1
        if position % n_chunks != chunk:
            continue
        tally.candidates += 1
        try:
            arm = chain(t)[1:]
            masks = decode_masks(t)
        except ChainError:
            tally.chain_errors += 1
            continue
        except DegenerateError:
            tally.degenerate += 1
            continue

        complex_ = SimplicialComplex.from_masks(masks, CANONICAL_LABELS)
        reason = rejection_reason(t, complex_, arm)
        if reason:
            logger.debug("%s rejected: %s", t, reason)
            _reject(tally, reason)
            continue
        tally.survivors.append(t)
    return tally


def _search_task(args):
    template, chunk, n_chunks = args
    return search(template, chunk, n_chunks)


def run_templates(template_list, jobs=1):
    """Search several templates, fanning chunks out over a process pool."""
    tallies = {t.name: TemplateTally(template=t.name, graph=str(t.graph)) for t in template_list}
    tasks = [(t, chunk, jobs) for t in template_list for chunk in range(jobs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_task, tasks))
    else:
        results = [_search_task(task) for task in tasks]
    for result in results:
        tallies[result.template].merge(result)
    for tally in tallies.values():
        tally.survivors.sort(key=lambda t: (t.xs, t.ys))
    return [tallies[t.name] for t in template_list]


# --------------------------------------------------
# Full enumeration
# --------------------------------------------------
@dataclass
class ClassRecord:
    canonical: str
    graph: str
    complex: SimplicialComplex = field(repr=False)
    sources: list = field(default_factory=list)

    def to_dict(self):
        return {"canonical": self.canonical, "graph": self.graph, "sources": self.sources}


@dataclass
class EnumerationReport:
    graphs: list
    tallies: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    relaxed: bool = False

    def class_tally(self):
        counts = {g: 0 for g in self.graphs}
        for record in self.classes:
            counts[record.graph] = counts.get(record.graph, 0) + 1
        return counts

    def to_dict(self):
        return {
            "mode": "relaxed" if self.relaxed else "templates",
            "graphs": self.graphs,
            "templates": [t.to_dict() for t in self.tallies],
            "classes_per_graph": self.class_tally(),
            "classes": [c.to_dict() for c in self.classes],
        }


def canonical_classes(survivors, graph):
    """Deduplicate decoded survivors by their minimal string."""
    records = {}
    for t in survivors:
        complex_ = SimplicialComplex.from_masks(decode_masks(t), CANONICAL_LABELS)
        relabeled, rep = minimal_representative(complex_)
        record = records.get(rep)
        if record is None:
            record = records[rep] = ClassRecord(
                canonical=rep.text, graph=str(graph), complex=relabeled
            )
        record.sources.append(str(t))
    return [records[rep] for rep in sorted(records)]


def enumerate_all(graphs=None, jobs=None, params=None):
    params = params or load_parameters()
    jobs = jobs or params["enumeration"]["jobs"]
    graphs = [GraphFamilyId.parse(g) if isinstance(g, str) else g
              for g in (graphs or params["enumeration"]["graphs"])]
    report = EnumerationReport(graphs=[str(g) for g in graphs])

    for graph in graphs:
        start = time.time()
        graph_templates = templates(graph)
        tallies = run_templates(graph_templates, jobs=jobs)
        survivors = [t for tally in tallies for t in tally.survivors]
        report.tallies.extend(tallies)
        report.classes.extend(canonical_classes(survivors, graph))
        logger.info(
            "%s: %d templates, %d survivors, %d classes (%.2fs)",
            graph, len(graph_templates), len(survivors),
            report.class_tally()[str(graph)], time.time() - start,
        )
    return report

