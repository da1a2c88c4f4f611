import logging
from collections import deque
from dataclasses import dataclass
from math import comb

import numpy as np

from complexes.simplicial import bits
from core.errors import BoundaryError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiVector:
    values: tuple

    @property
    def euler_characteristic(self):
        signs = (-1) ** np.arange(len(self.values))
        return int(np.dot(signs, np.array(self.values, dtype=np.int64)))

    def __getitem__(self, j):
        return self.values[j]

    def to_list(self):
        return list(self.values)


def gf2_rank(rows):
    """Rank over GF(2) of int-bitset rows (xor basis keyed by leading bit)."""
    pivots = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
    return len(pivots)


def boundary_rows(complex_, j):
    """Rows of the mod-2 boundary map C_j -> C_{j-1}, one bitset per j-face."""
    lower = {face: idx for idx, face in enumerate(complex_.faces(j - 1))}
    rows = []
    for face in complex_.faces(j):
        row = 0
        for v in bits(face):
            row |= 1 << lower[face & ~(1 << v)]
        rows.append(row)
    return rows


def z2_betti(complex_):
    """Z2 Betti numbers beta_0..beta_d."""
    d = complex_.dimension
    f = complex_.f_vector().counts
    ranks = [0] * (d + 2)
    for j in range(1, d + 1):
        ranks[j] = gf2_rank(boundary_rows(complex_, j))
    betti = tuple(f[j] - ranks[j] - ranks[j + 1] for j in range(d + 1))

    result = BettiVector(betti)
    assert result.euler_characteristic == complex_.f_vector().euler_characteristic
    return result


def is_tight_neighborly(complex_, betti=None):
    """C(f0 - d - 1, 2) == C(d + 2, 2) * beta_1 for d >= 3."""
    d = complex_.dimension
    if d < 3:
        raise DimensionError("tight neighborliness needs dimension >= 3")
    betti = betti or z2_betti(complex_)
    f0 = complex_.n_vertices
    return comb(f0 - d - 1, 2) == comb(d + 2, 2) * betti[1]


def tight_neighborly_sides(complex_, betti=None):
    d = complex_.dimension
    betti = betti or z2_betti(complex_)
    return comb(complex_.n_vertices - d - 1, 2), comb(d + 2, 2) * betti[1]


def orientable(complex_):
    """
    Propagate facet signs over a spanning tree of the dual graph, then check
    every ridge sees opposite induced orientations.
    """
    ridges = complex_.ridge_map
    if any(len(m) == 1 for m in ridges.values()):
        raise BoundaryError("orientability is only checked for closed complexes")
    if any(len(m) > 2 for m in ridges.values()):
        logger.warning("%s is not a pseudomanifold", complex_)
        return False

    facets = complex_.facets

    def induced(idx, ridge):
        # sign of the ridge obtained by dropping the k-th vertex of the facet
        missing = facets[idx] & ~ridge
        position = sum(1 for v in bits(facets[idx]) if (1 << v) < missing)
        return -1 if position % 2 else 1

    sign = {}
    for start in range(len(facets)):
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            idx = queue.popleft()
            for v in bits(facets[idx]):
                ridge = facets[idx] & ~(1 << v)
                for other in ridges[ridge]:
                    if other == idx:
                        continue
                    wanted = -sign[idx] * induced(idx, ridge) * induced(other, ridge)
                    if other not in sign:
                        sign[other] = wanted
                        queue.append(other)
                    elif sign[other] != wanted:
                        return False
    return True


def euler_characteristic(complex_):
    return complex_.f_vector().euler_characteristic
