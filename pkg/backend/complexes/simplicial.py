import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from core.errors import DimensionError, EmptyError, PurityError, TokenError, VertexError

logger = logging.getLogger(__name__)

# a1 < b1 < c1 < a2 < ... < c5; index = 3 * (i - 1) + letter
CANONICAL_LABELS = tuple(f"{letter}{i}" for i in range(1, 6) for letter in "abc")
CANONICAL_INDEX = {label: idx for idx, label in enumerate(CANONICAL_LABELS)}
_CANONICAL_TOKEN = re.compile(r"^[a-c][1-5]$")


# --------------------------------------------------
# Bitmask helpers
# --------------------------------------------------
def bits(mask):
    """Vertex indices of a facet mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


def mask_of(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def facet_key(mask):
    return tuple(bits(mask))


def permute_mask(mask, perm):
    image = 0
    for v in bits(mask):
        image |= 1 << perm[v]
    return image


def ridge_map_of(masks):
    """(d-1)-face mask -> positions in masks of the facets containing it."""
    ridges = {}
    for idx, facet in enumerate(masks):
        for v in bits(facet):
            ridges.setdefault(facet & ~(1 << v), []).append(idx)
    return ridges


def order_labels(tokens):
    """
    Canonical tokens (a1..c5) first, in canonical order,
    then every other token by first appearance.
    """
    seen = []
    for token in tokens:
        if token not in seen:
            seen.append(token)
    canonical = sorted((t for t in seen if _CANONICAL_TOKEN.match(t)), key=CANONICAL_INDEX.get)
    others = [t for t in seen if not _CANONICAL_TOKEN.match(t)]
    return tuple(canonical + others)


@dataclass(frozen=True)
class FVector:
    counts: tuple

    @property
    def dimension(self):
        return len(self.counts) - 1

    @property
    def euler_characteristic(self):
        signs = (-1) ** np.arange(len(self.counts))
        return int(np.dot(signs, np.array(self.counts, dtype=np.int64)))

    def __getitem__(self, j):
        return self.counts[j]

    def to_list(self):
        return list(self.counts)


@dataclass(frozen=True)
class SimplicialComplex:
    """
    Pure simplicial complex stored as a sorted tuple of facet bitmasks.
    Bit i of a mask is the vertex labels[i]; every vertex lies in a facet.
    """

    labels: tuple
    facets: tuple
    _faces: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def from_masks(cls, masks, labels):
        masks = set(masks)
        if not masks or any(m == 0 for m in masks):
            raise EmptyError("complex needs at least one non-empty facet")
        sizes = {popcount(m) for m in masks}
        if len(sizes) != 1:
            raise PurityError(f"facets of mixed cardinalities {sorted(sizes)}")

        present = 0
        for m in masks:
            present |= m
        if present != (1 << len(labels)) - 1:
            # compact to the vertices actually used
            kept = list(bits(present))
            remap = {old: new for new, old in enumerate(kept)}
            masks = {mask_of(remap[v] for v in bits(m)) for m in masks}
            labels = tuple(labels[v] for v in kept)

        return cls(labels=tuple(labels), facets=tuple(sorted(masks, key=facet_key)))

    # --------------------------------------------------
    # Basic data
    # --------------------------------------------------
    @property
    def n_vertices(self):
        return len(self.labels)

    @property
    def dimension(self):
        return popcount(self.facets[0]) - 1

    @cached_property
    def full_mask(self):
        return (1 << self.n_vertices) - 1

    @cached_property
    def facet_set(self):
        return frozenset(self.facets)

    @cached_property
    def label_index(self):
        return {label: idx for idx, label in enumerate(self.labels)}

    def vertex(self, v):
        """Resolve a label or an index to a vertex index."""
        if isinstance(v, str):
            if v not in self.label_index:
                raise VertexError(f"unknown vertex {v!r}")
            return self.label_index[v]
        if not 0 <= v < self.n_vertices:
            raise VertexError(f"vertex index {v} out of range")
        return v

    def labels_of(self, mask):
        return tuple(self.labels[v] for v in bits(mask))

    def facet_tokens(self):
        return [self.labels_of(f) for f in self.facets]

    def has_facet(self, mask):
        return mask in self.facet_set

    # --------------------------------------------------
    # Faces
    # --------------------------------------------------
    def faces(self, j):
        if j < 0 or j > self.dimension:
            return ()
        if j == self.dimension:
            return self.facets
        if j not in self._faces:
            found = set()
            for facet in self.facets:
                for sub in combinations(tuple(bits(facet)), j + 1):
                    found.add(mask_of(sub))
            self._faces.setdefault(j, tuple(sorted(found, key=facet_key)))
        return self._faces[j]

    def f_vector(self):
        return FVector(tuple(len(self.faces(j)) for j in range(self.dimension + 1)))

    @cached_property
    def ridge_map(self):
        """(d-1)-face mask -> indices of facets containing it."""
        return ridge_map_of(self.facets)

    @cached_property
    def facet_adjacency(self):
        neighbors = [set() for _ in self.facets]
        for members in self.ridge_map.values():
            for i, j in combinations(members, 2):
                neighbors[i].add(j)
                neighbors[j].add(i)
        return tuple(tuple(sorted(n)) for n in neighbors)

    @cached_property
    def vertex_degrees(self):
        """Number of facets through each vertex."""
        counts = [0] * self.n_vertices
        for facet in self.facets:
            for v in bits(facet):
                counts[v] += 1
        return tuple(counts)

    def facets_containing(self, v):
        bit = 1 << self.vertex(v)
        return [idx for idx, f in enumerate(self.facets) if f & bit]

    # --------------------------------------------------
    # Derived complexes
    # --------------------------------------------------
    def link(self, v):
        v = self.vertex(v)
        if self.dimension == 0:
            raise DimensionError("link of a vertex in a 0-dimensional complex is empty")
        bit = 1 << v
        return SimplicialComplex.from_masks(
            [f & ~bit for f in self.facets if f & bit], self.labels
        )

    def star(self, v):
        v = self.vertex(v)
        bit = 1 << v
        return SimplicialComplex.from_masks([f for f in self.facets if f & bit], self.labels)

    def skeleton(self, k):
        if k < 0 or k > self.dimension:
            raise DimensionError(f"skeleton dimension {k} outside 0..{self.dimension}")
        return SimplicialComplex.from_masks(self.faces(k), self.labels)

    def relabel(self, perm):
        """Apply the vertex permutation perm (index -> index)."""
        return SimplicialComplex(
            labels=self.labels,
            facets=tuple(sorted((permute_mask(f, perm) for f in self.facets), key=facet_key)),
        )

    # --------------------------------------------------
    # Predicates
    # --------------------------------------------------
    def is_neighborly(self):
        adjacent = [0] * self.n_vertices
        for facet in self.facets:
            for v in bits(facet):
                adjacent[v] |= facet
        return all(a == self.full_mask for a in adjacent)

    def boundary_ridges(self):
        return [ridge for ridge, members in self.ridge_map.items() if len(members) == 1]

    def is_weak_pseudomanifold(self, with_boundary=False):
        limit = (1, 2) if with_boundary else (2,)
        return all(len(members) in limit for members in self.ridge_map.values())

    def dual_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            for nxt in self.facet_adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(self.facets)

    def is_pseudomanifold(self, with_boundary=False):
        return self.is_weak_pseudomanifold(with_boundary) and self.dual_connected()

    def __str__(self):
        return (
            f"SimplicialComplex(n={self.n_vertices}, d={self.dimension}, "
            f"facets={len(self.facets)})"
        )


def build(facets, vertex_order=None):
    """
    Build a complex from facets given as vertex tokens.
    vertex_order fixes the vertex order explicitly; otherwise
    canonical a1..c5 tokens come first, then first appearance.
    """
    facets = [tuple(str(v) for v in facet) for facet in facets]
    if not facets:
        raise EmptyError("no facets given")
    if any(len(f) == 0 for f in facets):
        raise EmptyError("empty facet")
    for facet in facets:
        if len(set(facet)) != len(facet):
            raise TokenError(f"facet {' '.join(facet)} repeats a vertex")

    sizes = {len(f) for f in facets}
    if len(sizes) != 1:
        raise PurityError(f"facets of mixed cardinalities {sorted(sizes)}")

    tokens = [v for facet in facets for v in facet]
    if vertex_order is not None:
        labels = tuple(vertex_order)
        missing = set(tokens) - set(labels)
        if missing:
            raise VertexError(f"vertices missing from declared order: {sorted(missing)}")
    else:
        labels = order_labels(tokens)

    index = {label: idx for idx, label in enumerate(labels)}
    masks = [mask_of(index[v] for v in facet) for facet in facets]
    return SimplicialComplex.from_masks(masks, labels)


def cone(x, complex_):
    x = str(x)
    if x in complex_.label_index:
        raise VertexError(f"cone apex {x!r} already a vertex")
    order = complex_.labels + (x,)
    return build([tokens + (x,) for tokens in complex_.facet_tokens()], vertex_order=order)
