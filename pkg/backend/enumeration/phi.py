"""
The fixed-point-free order-3 map Phi = (a1,b1,c1)(a2,b2,c2)...(a5,b5,c5)
on the 15 canonical vertices, and the permutations normalizing it.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from complexes.simplicial import permute_mask
from core.errors import ClassError
from topology.symmetry import compose, cycles

N_VERTICES = 15
N_ORBITS = 5

PHI = tuple(3 * (v // 3) + (v % 3 + 1) % 3 for v in range(N_VERTICES))
PHI2 = compose(PHI, PHI)
IDENTITY = tuple(range(N_VERTICES))

ORBIT_MASKS = tuple(0b111 << (3 * i) for i in range(N_ORBITS))
# z0 = a1 b1 c1 a2 b2 c2
Z0 = ORBIT_MASKS[0] | ORBIT_MASKS[1]


def phi_mask(mask, power=1):
    for _ in range(power % 3):
        mask = permute_mask(mask, PHI)
    return mask


def orbit_of(mask):
    return (mask, phi_mask(mask, 1), phi_mask(mask, 2))


def orbit_index(v):
    return v // 3


@dataclass(frozen=True)
class NormalizerElement:
    """
    v = 3i + j  ->  3 sigma(i) + (shift_i + j) mod 3, or with flip
    3 sigma(i) + (shift_i - j) mod 3 (conjugates Phi to Phi^2).
    """

    sigma: tuple
    shifts: tuple
    flip: bool = False

    def permutation(self):
        perm = [0] * N_VERTICES
        for i in range(N_ORBITS):
            for j in range(3):
                k = (self.shifts[i] - j) % 3 if self.flip else (self.shifts[i] + j) % 3
                perm[3 * i + j] = 3 * self.sigma[i] + k
        return tuple(perm)


def is_normalizer_element(perm):
    perm = tuple(perm)
    lhs = compose(PHI, perm)
    return lhs == compose(perm, PHI) or lhs == compose(perm, PHI2)


@lru_cache(maxsize=None)
def centralizer():
    """The 5! * 3^5 = 29160 permutations commuting with Phi."""
    return tuple(
        NormalizerElement(sigma, shifts).permutation()
        for sigma in permutations(range(N_ORBITS))
        for shifts in product(range(3), repeat=N_ORBITS)
    )


def normalizer_elements():
    return centralizer() + tuple(
        NormalizerElement(sigma, shifts, flip=True).permutation()
        for sigma in permutations(range(N_ORBITS))
        for shifts in product(range(3), repeat=N_ORBITS)
    )


def normalizer_generators():
    """pi_i (rotate orbit i), pi_{i,j} (swap orbits i, j), gamma (b_i <-> c_i)."""
    gens = []
    for i in range(N_ORBITS):
        shifts = tuple(1 if k == i else 0 for k in range(N_ORBITS))
        gens.append(NormalizerElement(tuple(range(N_ORBITS)), shifts).permutation())
    for i in range(N_ORBITS):
        for j in range(i + 1, N_ORBITS):
            sigma = list(range(N_ORBITS))
            sigma[i], sigma[j] = j, i
            gens.append(NormalizerElement(tuple(sigma), (0,) * N_ORBITS).permutation())
    gens.append(NormalizerElement(tuple(range(N_ORBITS)), (0,) * N_ORBITS, flip=True).permutation())
    return gens


def generate_group(generators):
    elements = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for element in frontier:
            for gen in generators:
                product_ = compose(gen, element)
                if product_ not in elements:
                    elements.add(product_)
                    nxt.append(product_)
        frontier = nxt
    return elements


def conjugator(alpha):
    """
    psi0 with psi0 alpha psi0^-1 = Phi: the i-th cycle of alpha (by least
    element x) goes to orbit i as x -> a_i, alpha(x) -> b_i, alpha^2(x) -> c_i.
    """
    parts = sorted(cycles(alpha), key=min)
    if len(parts) != N_ORBITS or any(len(c) != 3 for c in parts):
        raise ClassError("alpha is not a fixed-point-free order-3 permutation")
    psi = [0] * N_VERTICES
    for i, cycle in enumerate(parts):
        start = min(cycle)
        psi[start] = 3 * i
        psi[alpha[start]] = 3 * i + 1
        psi[alpha[alpha[start]]] = 3 * i + 2
    return tuple(psi)


def centralizer_coset(alpha):
    """All psi with psi alpha psi^-1 = Phi."""
    psi0 = conjugator(alpha)
    return [compose(c, psi0) for c in centralizer()]


def normalizer_group():
    """Closure of the generators: all 2 * 5! * 3^5 = 58320 elements."""
    return generate_group(normalizer_generators())
