import logging

from complexes.simplicial import CANONICAL_LABELS, SimplicialComplex, bits, permute_mask
from core.errors import ClassError
from enumeration.encoding import StringRep, arms
from enumeration.phi import N_VERTICES, Z0, centralizer_coset
from topology.symmetry import automorphisms

logger = logging.getLogger(__name__)


def _key(psi, sequence):
    return tuple(tuple(sorted(psi[v] for v in facet)) for facet in sequence)


def minimal_relabeling(complex_, group=None):
    """
    Least string over all relabelings psi with psi alpha psi^-1 = Phi for
    some fixed-point-free order-3 automorphism alpha. Returns (psi, key).
    """
    if complex_.n_vertices != N_VERTICES:
        raise ClassError(f"{complex_} is not on {N_VERTICES} vertices")
    group = group or automorphisms(complex_)
    alphas = group.fixed_point_free(3)
    if not alphas:
        raise ClassError(f"{complex_} has no fixed-point-free automorphism of order 3")
    if group.order > 3:
        logger.warning("|Aut| = %d exceeds 3", group.order)

    best_psi, best_key = None, None
    for alpha in alphas:
        sequences = [
            [tuple(bits(arm.z0))] + [tuple(bits(f)) for f in arm.facets]
            for arm in arms(complex_, alpha)
        ]
        z0 = sequences[0][0]
        for psi in centralizer_coset(alpha):
            if sum(1 << psi[v] for v in z0) != Z0:
                continue
            for sequence in sequences:
                key = _key(psi, sequence)
                if best_key is None or key < best_key:
                    best_psi, best_key = psi, key
    return best_psi, best_key


def minimal_representative(complex_, group=None):
    """The minimal relabeling of complex_ and its string."""
    psi, key = minimal_relabeling(complex_, group)
    relabeled = SimplicialComplex.from_masks(
        [permute_mask(f, psi) for f in complex_.facets], CANONICAL_LABELS
    )
    masks = [sum(1 << v for v in facet) for facet in key]
    return relabeled, StringRep.of(masks)
