"""
The twelve classes N1..N12, each stored as its z0 and u-arm u1..u8.
Facets are the z0 and the Phi-orbits of the arm facets.
"""
import re
from dataclasses import dataclass
from functools import cached_property

from complexes.simplicial import CANONICAL_INDEX, CANONICAL_LABELS, SimplicialComplex, mask_of
from core.errors import IdError
from enumeration.encoding import ARM_LENGTH, tuple_from_arm
from enumeration.phi import orbit_of
from networks.graph_family import GraphFamilyId

_TOKEN = re.compile(r"[abc][1-5]")

Z0_TEXT = "a1b1c1a2b2c2"

_COMMON = ("a1b1c1a2b2a3", "a1b1c1a2a3a4", "a1b1a2a3a4a5")

# id: (r, boundary orientable, u1..u8)
_ROWS = {
    "N1": (3, False, (
        "a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1a2b2a3a4a5", "a1a2a3a4b4a5",
        "a1a3a4b4a5b5", "a3b3a4b4a5b5", "c2a3b3b4a5b5", "b1c2b3b4a5b5",
    )),
    "N2": (4, False, (
        "a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1a2b2a3a4a5", "a1a2a3a4b4a5",
        "a1a2a3b4a5b5", "a2a3b3b4a5b5", "a3b3b4c4a5b5", "b1b3b4c4a5b5",
    )),
    "N3": (4, True, (
        "a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1b1a2a3a4a5", "a1a2a3a4b4a5",
        "a1a2a3b4a5b5", "a2a3b3b4a5b5", "a3b3b4c4a5b5", "b2b3b4c4a5b5",
    )),
    "N4": (4, True, (
        "a1b1c1a2b2a3", "a1b1a2b2a3a4", "a1b1a2a3a4a5", "b1a2a3a4a5c5",
        "a2a3b3a4a5c5", "a2a3b3a4b4a5", "a2b3a4b4a5b5", "c1b3a4b4a5b5",
    )),
    "N5": (5, True, _COMMON + (
        "a1a2a3a4a5b5", "a2a3a4b4a5b5", "a2a3b3b4a5b5", "a2a3b3b4c4b5", "a2b3b4c4b5c5",
    )),
    "N6": (5, True, _COMMON + (
        "a1a2a3a4a5b5", "a2a3a4b4a5b5", "a2a3b3a4b4b5", "a2a3b3b4b5c5", "a2b3b4c4b5c5",
    )),
    "N7": (5, True, _COMMON + (
        "b1a2a3a4a5c5", "a2a3a4b4a5c5", "a2a3b3b4a5c5", "a2a3b3b4c4a5", "a2b3b4c4a5b5",
    )),
    "N8": (5, True, _COMMON + (
        "b1a2a3a4a5c5", "a2a3a4b4a5c5", "a2a3b3a4b4a5", "a2a3b3b4a5b5", "a2b3b4c4a5b5",
    )),
    "N9": (5, True, _COMMON + (
        "a1a2a3a4a5b5", "a2a3a4c4a5b5", "a2a3b3a4c4b5", "a2a3b3a4b5c5", "a2b3a4b4b5c5",
    )),
    "N10": (5, True, _COMMON + (
        "b1a2a3a4a5c5", "a2a3a4c4a5c5", "a2a3b3a4c4a5", "a2a3b3a4a5b5", "a2b3a4b4a5b5",
    )),
    "N11": (5, True, _COMMON + (
        "a1a2a3a4a5b5", "a2a3b3a4a5b5", "a2b3a4b4a5b5", "b2b3a4b4a5b5", "b2b3c3a4b4b5",
    )),
    "N12": (5, True, _COMMON + (
        "b1a2a3a4a5c5", "a2a3b3a4a5c5", "a2b3a4b4a5c5", "b2b3a4b4a5c5", "b2b3c3a4b4a5",
    )),
}


def facet_mask(text):
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != text or len(tokens) != 6:
        raise IdError(f"malformed facet {text!r}")
    return mask_of(CANONICAL_INDEX[t] for t in tokens)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    r: int
    boundary_orientable: bool
    arm_text: tuple
    z0_text: str = Z0_TEXT

    @property
    def graph(self):
        return GraphFamilyId("G", self.r, ARM_LENGTH + 1 - self.r)

    @property
    def z0(self):
        return facet_mask(self.z0_text)

    @property
    def arm(self):
        return tuple(facet_mask(f) for f in self.arm_text)

    @property
    def xy(self):
        return tuple_from_arm(self.z0, self.arm, self.r)

    def masks(self):
        facets = [self.z0]
        for u in self.arm:
            facets.extend(orbit_of(u))
        return facets

    @cached_property
    def complex(self):
        return SimplicialComplex.from_masks(self.masks(), CANONICAL_LABELS)

    def to_dict(self):
        return {
            "id": self.id,
            "graph": str(self.graph),
            "boundary_orientable": self.boundary_orientable,
            "z0": self.z0_text,
            "arm": list(self.arm_text),
            "X": list(self.xy.x_labels()),
            "Y": list(self.xy.y_labels()),
        }


_ENTRIES = {
    key: CatalogEntry(id=key, r=r, boundary_orientable=orientable, arm_text=arm)
    for key, (r, orientable, arm) in _ROWS.items()
}


def catalog_get(entry_id):
    key = entry_id.strip().upper()
    if key not in _ENTRIES:
        raise IdError(f"unknown catalog id {entry_id!r} (expected N1..N12)")
    return _ENTRIES[key]


def all_entries():
    return list(_ENTRIES.values())


def is_catalog_id(text):
    return text.strip().upper() in _ENTRIES


def complex_of(entry_id):
    return catalog_get(entry_id).complex
