import logging
from dataclasses import dataclass, field

from complexes.simplicial import (
    CANONICAL_INDEX,
    CANONICAL_LABELS,
    SimplicialComplex,
    bits,
    facet_key,
    permute_mask,
)
from core.errors import ChainError, ClassError, DegenerateError, GraphError
from enumeration.phi import PHI, Z0, orbit_index, orbit_of, phi_mask
from networks.dual_graph import dual
from networks.graph_family import GraphFamilyId

logger = logging.getLogger(__name__)

ARM_LENGTH = 8


def label(v):
    return CANONICAL_LABELS[v]


def facet_text(mask):
    return "".join(label(v) for v in bits(mask))


@dataclass(frozen=True)
class XYTuple:
    """
    Leaving labels xs and entering labels ys along z0 u1 ... u8 v_r,
    where u_r is the branch facet of G(r, 9 - r).
    """

    graph: GraphFamilyId
    xs: tuple
    ys: tuple
    z0: int = Z0

    @property
    def r(self):
        return self.graph.r

    @classmethod
    def from_labels(cls, r, xs, ys):
        return cls(
            graph=GraphFamilyId("G", r, ARM_LENGTH + 1 - r),
            xs=tuple(CANONICAL_INDEX[x] for x in xs),
            ys=tuple(CANONICAL_INDEX[y] for y in ys),
        )

    def x_labels(self):
        return tuple(label(v) for v in self.xs)

    def y_labels(self):
        return tuple(label(v) for v in self.ys)

    def __str__(self):
        return f"{self.graph} X=({','.join(self.x_labels())}) Y=({','.join(self.y_labels())})"


# --------------------------------------------------
# Decode
# --------------------------------------------------
def chain(t):
    """u0 = z0, u1..u8; checks each step and the closure at Phi(u_r)."""
    facets = [t.z0]
    current = t.z0
    for i, (x, y) in enumerate(zip(t.xs[:ARM_LENGTH], t.ys[:ARM_LENGTH]), start=1):
        if not (current >> x) & 1:
            raise ChainError(f"x{i}={label(x)} not in u{i - 1}")
        if (current >> y) & 1:
            raise ChainError(f"y{i}={label(y)} already in u{i - 1}")
        current = (current & ~(1 << x)) | (1 << y)
        facets.append(current)

    x9, y9 = t.xs[ARM_LENGTH], t.ys[ARM_LENGTH]
    if not (current >> x9) & 1 or (current >> y9) & 1:
        raise ChainError("x9/y9 do not act on u8")
    closing = (current & ~(1 << x9)) | (1 << y9)
    if closing != phi_mask(facets[t.r]):
        raise ChainError(f"u8 does not close onto Phi(u{t.r})")
    return facets


def decode_masks(t):
    arm = chain(t)[1:]
    facets = [t.z0]
    for u in arm:
        facets.extend(orbit_of(u))
    if len(set(facets)) != len(facets):
        raise DegenerateError(f"{t} decodes to repeated facets")
    return facets


def decode(t):
    return SimplicialComplex.from_masks(decode_masks(t), CANONICAL_LABELS)


def tuple_from_arm(z0, arm, r):
    """Read (X, Y) off z0, the arm u1..u8 and the closing facet Phi(u_r)."""
    walk = [z0] + list(arm) + [phi_mask(arm[r - 1])]
    xs = tuple((a & ~b).bit_length() - 1 for a, b in zip(walk, walk[1:]))
    ys = tuple((b & ~a).bit_length() - 1 for a, b in zip(walk, walk[1:]))
    return XYTuple(GraphFamilyId("G", r, ARM_LENGTH + 1 - r), xs, ys, z0)


# --------------------------------------------------
# Arms
# --------------------------------------------------
@dataclass(frozen=True)
class Arm:
    z0: int
    facets: tuple
    r: int


def _walk(dual_graph, prev, cur):
    """Follow degree-2 nodes from cur (coming from prev) to a branch node."""
    path = [cur]
    while dual_graph.degree(cur) == 2:
        nxt = [n for n in dual_graph.get_neighbors(cur) if n != prev][0]
        prev, cur = cur, nxt
        path.append(cur)
    return path


def arms(complex_, alpha=PHI):
    """
    The three arms of a G(r, s) dual graph with respect to alpha: spoke
    z0 -> u_r, then the rim from u_r towards alpha(u_r), excluding it.
    """
    if len(complex_.facets) != 1 + 3 * ARM_LENGTH:
        raise GraphError(f"{complex_} does not have 25 facets")
    index = {f: i for i, f in enumerate(complex_.facets)}
    images = [permute_mask(f, alpha) for f in complex_.facets]
    if any(image not in index for image in images):
        raise ClassError("permutation is not an automorphism")
    fixed = [i for i, f in enumerate(complex_.facets) if images[i] == f]
    if len(fixed) != 1:
        raise ClassError(f"expected one invariant facet, found {len(fixed)}")

    dual_graph = dual(complex_)
    z = fixed[0]
    starts = dual_graph.get_neighbors(z)
    if len(starts) != 3:
        raise GraphError("invariant facet does not have dual degree 3")

    found = []
    for start in starts:
        spoke = _walk(dual_graph, z, start)
        branch = spoke[-1]
        if dual_graph.degree(branch) != 3:
            raise GraphError("spoke does not end at a degree-3 facet")
        target = index[images[branch]]
        before = spoke[-2] if len(spoke) > 1 else z
        rim = None
        for nxt in dual_graph.get_neighbors(branch):
            if nxt == before:
                continue
            walked = _walk(dual_graph, branch, nxt)
            if walked[-1] == target:
                rim = walked[:-1]
        if rim is None:
            raise GraphError("rim from the branch facet never reaches its image")
        path = spoke + rim
        if len(path) != ARM_LENGTH:
            raise GraphError(f"arm of length {len(path)} instead of {ARM_LENGTH}")
        found.append(Arm(
            z0=complex_.facets[z],
            facets=tuple(complex_.facets[i] for i in path),
            r=len(spoke),
        ))
    return found


def _check_class(complex_):
    if complex_.labels != CANONICAL_LABELS:
        raise ClassError("complex is not on the canonical vertices a1..c5")


@dataclass(frozen=True, order=True)
class StringRep:
    key: tuple
    text: str = field(compare=False)

    @classmethod
    def of(cls, facets):
        return cls(
            key=tuple(facet_key(f) for f in facets),
            text="".join(facet_text(f) for f in facets),
        )

    def __str__(self):
        return self.text


def arm_string(arm):
    return StringRep.of((arm.z0,) + arm.facets)


def encode(complex_):
    """XY tuple of the arm with the least string."""
    _check_class(complex_)
    best = min(arms(complex_), key=arm_string)
    return tuple_from_arm(best.z0, best.facets, best.r)


def string_rep(complex_):
    _check_class(complex_)
    return min(arm_string(arm) for arm in arms(complex_))


# --------------------------------------------------
# Leave sequences
# --------------------------------------------------
def _first(values, orbit):
    for position, v in enumerate(values, start=1):
        if orbit_index(v) == orbit:
            return position
    return None


def leave_sequence_report(t):
    """
    m_i: first y in orbit i (i = 3, 4, 5); n_i: first x in orbit i (i = 1, 2).
    Minimal members have m3 < m4 < m5, n2 < n1, y_{m_i} = a_i, x_{n_i} = c_i.
    """
    m = {i: _first(t.ys, i - 1) for i in (3, 4, 5)}
    n = {i: _first(t.xs, i - 1) for i in (1, 2)}
    defined = all(v is not None for v in list(m.values()) + list(n.values()))
    return {
        "m": m,
        "n": n,
        "entering_increasing": defined and m[3] < m[4] < m[5],
        "leaving_order": defined and n[2] < n[1],
        "entering_first_a": defined and all(
            t.ys[m[i] - 1] == 3 * (i - 1) for i in (3, 4, 5)
        ),
        "leaving_first_c": defined and all(
            t.xs[n[i] - 1] == 3 * (i - 1) + 2 for i in (1, 2)
        ),
    }
