"""
Template-free search: every (X, Y) with z0 = a1b1c1a2b2c2 whose walk
z0 u1 ... u8 Phi(u_r) obeys the generic path and tree constraints, in
leave-sequence normal form. Used to confirm that no class escapes the
template case analysis.
"""
import logging
import time

from complexes.simplicial import CANONICAL_LABELS, SimplicialComplex, bits, popcount
from core.config import load_parameters
from core.errors import DegenerateError, GraphError
from enumeration.encoding import ARM_LENGTH, XYTuple, decode_masks
from enumeration.phi import N_ORBITS, N_VERTICES, ORBIT_MASKS, Z0, orbit_index, phi_mask
from enumeration.search import EnumerationReport, TemplateTally, canonical_classes, rejection_reason
from networks.graph_family import GraphFamilyId

logger = logging.getLogger(__name__)

FULL = (1 << N_VERTICES) - 1
TREE_SIZE = 10
# paths shorter than d + 1 = 6 never re-enter a vertex of their first facet
WINDOW = 5

C1, C2, A3 = 2, 5, 6
RIM_MAX = 6


def _adjacent(a, b):
    return popcount(a & b) == 5


def _quick_neighborly(masks):
    for v in range(N_VERTICES):
        star = 0
        for f in masks:
            if (f >> v) & 1:
                star |= f
        if star != FULL:
            return False
    return True


class RelaxedSearch:
    """Depth-first walk over the spoke, then the rim, of one G(r, 9 - r)."""

    def __init__(self, graph):
        if isinstance(graph, str):
            graph = GraphFamilyId.parse(graph)
        if graph.tag != "G" or graph.r + graph.s != ARM_LENGTH + 1 or not 3 <= graph.r <= 6:
            raise GraphError(f"relaxed search needs G(r, 9 - r) with 3 <= r <= 6, got {graph}")
        self.graph = graph
        self.r = graph.r
        self.s = graph.s
        self.tally = TemplateTally(template=f"relaxed-{graph.short_name}", graph=str(graph))
        self.nodes = 0

    # --------------------------------------------------
    # Constraints
    # --------------------------------------------------
    def _facet_ok(self, walk, u):
        """u = u_i against z0, u1..u_{i-1} and their Phi-images."""
        i = len(walk)
        if u == phi_mask(u) or _adjacent(u, phi_mask(u)) or _adjacent(u, phi_mask(u, 2)):
            return False
        for j, f in enumerate(walk):
            if u == f or (j < i - 1 and _adjacent(u, f)):
                return False
            if j == 0:
                continue
            for power in (1, 2):
                image = phi_mask(f, power)
                if u == image:
                    return False
                closing = i == ARM_LENGTH and j == self.r and power == 1
                if _adjacent(u, image) != closing:
                    return False
        return True

    def _window_ok(self, walk, x, y):
        """
        x stays in every facet since the start of its degree-two segment
        (z0 on the spoke, u_r on the rim); y avoids every facet of the
        short windows ending here, branch facet or not.
        """
        i = len(walk)
        start = 0 if i <= self.r else self.r
        if any(not (walk[a] >> x) & 1 for a in range(start, i)):
            return False
        return not any((walk[a] >> y) & 1 for a in range(max(0, i - WINDOW), i))

    @staticmethod
    def _counts_ok(counts, i):
        return all(TREE_SIZE - 3 * (ARM_LENGTH - i) <= c <= TREE_SIZE for c in counts)

    @staticmethod
    def _entering(y, entered):
        """New orbits 3, 4, 5 must enter in order and first as a_i."""
        o = orbit_index(y)
        if o < 2 or o < 2 + entered:
            return entered
        if o == 2 + entered and y == 3 * o:
            return entered + 1
        return None

    @staticmethod
    def _leaving(x, left_first):
        """c2 leaves first; the first member of orbit 1 to leave is c1."""
        if orbit_index(x) == 0 and not left_first:
            return True if x == C1 else None
        return left_first

    def _step(self, walk, counts, x, y, entered, left_first):
        current = walk[-1]
        if not (current >> x) & 1 or (current >> y) & 1:
            return None
        entered = self._entering(y, entered)
        left_first = self._leaving(x, left_first)
        if entered is None or left_first is None:
            return None
        if not self._window_ok(walk, x, y):
            return None
        u = (current & ~(1 << x)) | (1 << y)
        if not self._facet_ok(walk, u):
            return None
        counts = tuple(c + popcount(u & ORBIT_MASKS[j]) for j, c in enumerate(counts))
        if not self._counts_ok(counts, len(walk)):
            return None
        return u, counts, entered, left_first

    def _rim_pools(self, u_r):
        """
        Labels the rim may leave and enter. A rim of length d + 1 empties
        u_r, so a vertex shared with v_r leaves and comes back; shorter rims
        leave exactly u_r - v_r.
        """
        v_r = phi_mask(u_r)
        # degree-3 facets z0, u_r, v_r, w_r cover every vertex
        if Z0 | u_r | v_r | phi_mask(u_r, 2) != FULL:
            return None
        if self.s == RIM_MAX:
            return u_r, v_r
        leaving, entering = u_r & ~v_r, v_r & ~u_r
        if popcount(leaving) != self.s:
            return None
        return leaving, entering

    def _closing_ok(self, walk, counts, x, y, entered, left_first):
        """Last rim step u8 -> Phi(u_r)."""
        if self._entering(y, entered) is None or self._leaving(x, left_first) is None:
            return False
        if not (walk[-1] >> x) & 1 or (walk[-1] >> y) & 1:
            return False
        if not self._window_ok(walk, x, y):
            return False
        if (walk[-1] & ~(1 << x)) | (1 << y) != phi_mask(walk[self.r]):
            return False
        return all(c == TREE_SIZE for c in counts)

    # --------------------------------------------------
    # Walks
    # --------------------------------------------------
    def run(self):
        counts = tuple(1 if j < 2 else 0 for j in range(N_ORBITS))
        # x1 = c2 and y1 = a3 in normal form
        stepped = self._step([Z0], counts, C2, A3, 0, False)
        if stepped:
            u, counts, entered, left_first = stepped
            self._spoke([Z0, u], counts, [C2], [A3], entered, left_first)
        return self.tally

    def _spoke(self, walk, counts, xs, ys, entered, left_first):
        self.nodes += 1
        if len(walk) == self.r + 1:
            pools = self._rim_pools(walk[-1])
            if pools:
                self._rim(walk, counts, xs, ys, entered, left_first, *pools)
            return
        current = walk[-1]
        for x in bits(current & Z0):
            for y in bits(~current & FULL):
                stepped = self._step(walk, counts, x, y, entered, left_first)
                if stepped:
                    u, c, e, lf = stepped
                    self._spoke(walk + [u], c, xs + [x], ys + [y], e, lf)

    def _rim(self, walk, counts, xs, ys, entered, left_first, leaving, entering):
        self.nodes += 1
        if len(walk) == ARM_LENGTH + 1:
            x, y = next(bits(leaving)), next(bits(entering))
            if self._closing_ok(walk, counts, x, y, entered, left_first):
                self._leaf(walk, xs + [x], ys + [y])
            return
        for x in bits(leaving):
            for y in bits(entering):
                stepped = self._step(walk, counts, x, y, entered, left_first)
                if stepped:
                    u, c, e, lf = stepped
                    self._rim(
                        walk + [u], c, xs + [x], ys + [y], e, lf,
                        leaving & ~(1 << x), entering & ~(1 << y),
                    )

    def replay(self, t):
        """
        Follow one tuple through the pruning rules. Returns None when the
        walk reaches a leaf, else the step (1-based) or 'branch' where it
        would be cut.
        """
        walk = [Z0]
        counts = tuple(1 if j < 2 else 0 for j in range(N_ORBITS))
        entered, left_first = 0, False
        leaving = entering = None
        for i, (x, y) in enumerate(zip(t.xs, t.ys), start=1):
            if i == 1 and (x, y) != (C2, A3):
                return "step 1"
            if i == self.r + 1:
                pools = self._rim_pools(walk[-1])
                if pools is None:
                    return "branch"
                leaving, entering = pools
            if i > self.r and (not (leaving >> x) & 1 or not (entering >> y) & 1):
                return f"step {i}"
            if i <= self.r and not (Z0 >> x) & 1:
                return f"step {i}"
            if i == ARM_LENGTH + 1:
                return None if self._closing_ok(walk, counts, x, y, entered, left_first) else f"step {i}"
            stepped = self._step(walk, counts, x, y, entered, left_first)
            if stepped is None:
                return f"step {i}"
            u, counts, entered, left_first = stepped
            walk.append(u)
            if i > self.r:
                leaving, entering = leaving & ~(1 << x), entering & ~(1 << y)
        return None

    def _leaf(self, walk, xs, ys):
        self.tally.candidates += 1
        t = XYTuple(self.graph, tuple(xs), tuple(ys))
        try:
            masks = decode_masks(t)
        except DegenerateError:
            self.tally.degenerate += 1
            return
        if not _quick_neighborly(masks):
            self.tally.rejected += 1
            return
        complex_ = SimplicialComplex.from_masks(masks, CANONICAL_LABELS)
        reason = rejection_reason(t, complex_, walk[1:])
        if reason:
            self.tally.rejected += 1
            self.tally.reasons[reason] = self.tally.reasons.get(reason, 0) + 1
            return
        self.tally.survivors.append(t)


def relaxed_search(graph):
    search = RelaxedSearch(graph)
    start = time.time()
    tally = search.run()
    tally.survivors.sort(key=lambda t: (t.xs, t.ys))
    logger.info(
        "relaxed %s: %d nodes, %d leaves, %d survivors (%.2fs)",
        search.graph, search.nodes, tally.candidates, len(tally.survivors), time.time() - start,
    )
    return tally


def enumerate_relaxed(graphs=None, params=None):
    params = params or load_parameters()
    graphs = [GraphFamilyId.parse(g) if isinstance(g, str) else g
              for g in (graphs or params["enumeration"]["relaxed"]["graphs"])]
    report = EnumerationReport(graphs=[str(g) for g in graphs], relaxed=True)
    for graph in graphs:
        tally = relaxed_search(graph)
        report.tallies.append(tally)
        report.classes.extend(canonical_classes(tally.survivors, graph))
    return report
