"""
Constraint templates: partial assignments of (X, Y) for each admissible
dual graph, with the remaining positions filled by permutations of a
set difference of the branch facet u_r and its image v_r = Phi(u_r).
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product

from complexes.simplicial import CANONICAL_INDEX, bits, mask_of
from core.errors import ChainError, GraphError, ParamError
from enumeration.encoding import ARM_LENGTH, XYTuple
from enumeration.phi import Z0, phi_mask
from networks.graph_family import GraphFamilyId

logger = logging.getLogger(__name__)

POSITIONS = tuple(f"{side}{i}" for side in "xy" for i in range(1, ARM_LENGTH + 2))


@dataclass(frozen=True)
class FreeChoice:
    """Positions filled jointly by one of the listed label tuples."""

    positions: tuple
    options: tuple


@dataclass(frozen=True)
class SlotRule:
    """
    Positions filled by every ordering of (base - minus) - exclude, where
    base and minus name the branch facet 'u' or its image 'v'.
    """

    positions: tuple
    base: str
    exclude: tuple = ()
    minus: str = None

    def values(self, u_r, v_r):
        facets = {"u": u_r, "v": v_r}
        mask = facets[self.base]
        if self.minus:
            mask &= ~facets[self.minus]
        mask &= ~mask_of(CANONICAL_INDEX[v] for v in self.exclude)
        return tuple(bits(mask))


@dataclass(frozen=True)
class ConstraintTemplate:
    name: str
    graph: GraphFamilyId
    fixed: tuple
    free: tuple = ()
    slots: tuple = ()
    note: str = field(default="", compare=False)

    def __post_init__(self):
        named = [p for p, _ in self.fixed]
        named += [p for choice in self.free for p in choice.positions]
        named += [p for slot in self.slots for p in slot.positions]
        if sorted(named) != sorted(POSITIONS):
            raise ParamError(f"template {self.name} does not cover every position exactly once")
        spoke = {f"{side}{i}" for side in "xy" for i in range(1, self.graph.r + 1)}
        if spoke & {p for slot in self.slots for p in slot.positions}:
            raise ParamError(f"template {self.name} leaves a spoke position to a slot")

    @property
    def r(self):
        return self.graph.r

    def _assignments(self):
        base = dict(self.fixed)
        for combo in product(*(choice.options for choice in self.free)):
            values = dict(base)
            for choice, option in zip(self.free, combo):
                values.update(zip(choice.positions, option))
            yield values

    def _branch(self, values):
        current = Z0
        for i in range(1, self.r + 1):
            x = CANONICAL_INDEX[values[f"x{i}"]]
            y = CANONICAL_INDEX[values[f"y{i}"]]
            if not (current >> x) & 1 or (current >> y) & 1:
                raise ChainError(f"{self.name}: spoke step {i} is not a valid exchange")
            current = (current & ~(1 << x)) | (1 << y)
        return current

    def expand(self):
        """
        Yields ('candidate', XYTuple), ('slot_mismatch', None) or
        ('chain_error', None) per partial assignment.
        """
        for values in self._assignments():
            try:
                u_r = self._branch(values)
            except ChainError:
                yield "chain_error", None
                continue
            v_r = phi_mask(u_r)

            slot_values = [slot.values(u_r, v_r) for slot in self.slots]
            if any(len(vals) != len(slot.positions) for vals, slot in zip(slot_values, self.slots)):
                yield "slot_mismatch", None
                continue

            orderings = [permutations(vals) for vals in slot_values]
            for filling in product(*orderings):
                full = {p: CANONICAL_INDEX[v] for p, v in values.items()}
                for slot, order in zip(self.slots, filling):
                    full.update(zip(slot.positions, order))
                xs = tuple(full[f"x{i}"] for i in range(1, ARM_LENGTH + 2))
                ys = tuple(full[f"y{i}"] for i in range(1, ARM_LENGTH + 2))
                yield "candidate", XYTuple(self.graph, xs, ys)

    def candidates(self):
        return [t for kind, t in self.expand() if kind == "candidate"]

    def describe(self):
        fixed = " ".join(f"{p}={v}" for p, v in self.fixed)
        return f"{self.name} [{self.graph}] {fixed}"


# --------------------------------------------------
# Template tables
# --------------------------------------------------
def _fixed(side, values):
    return tuple((f"{side}{i}", v) for i, v in enumerate(values, start=1))


def _pos(*names):
    return tuple(names)


G36 = GraphFamilyId("G", 3, 6)
G45 = GraphFamilyId("G", 4, 5)
G54 = GraphFamilyId("G", 5, 4)
G63 = GraphFamilyId("G", 6, 3)

_X34_G45 = (("b1", "a2"), ("b1", "b2"), ("b2", "a1"), ("b2", "b1"))


def _g36_templates():
    common_y = _fixed("y", ("a3", "a4", "a5"))
    slots = (
        SlotRule(_pos("x4", "x5", "x6"), "u", exclude=("a3", "a4", "a5")),
        SlotRule(_pos("y7", "y8", "y9"), "v", exclude=("b3", "b4", "b5")),
    )
    free = (FreeChoice(_pos("x3"), (("b1",), ("b2",))),)
    return [
        ConstraintTemplate(
            name="dg36-1",
            graph=G36,
            fixed=(("x1", "c2"), ("x2", "c1"), ("x7", "a4"), ("x8", "a3"), ("x9", "a5"))
            + common_y + (("y4", "b4"), ("y5", "b5"), ("y6", "b3")),
            free=free,
            slots=slots,
        ),
        ConstraintTemplate(
            name="dg36-2",
            graph=G36,
            fixed=(("x1", "c2"), ("x2", "c1"), ("x7", "a3"), ("x8", "a5"), ("x9", "a4"))
            + common_y + (("y4", "b5"), ("y5", "b3"), ("y6", "b4")),
            free=free,
            slots=slots,
        ),
    ]


def _g45_templates():
    head = (("x1", "c2"), ("x2", "c1"), ("y1", "a3"), ("y2", "a4"), ("y3", "a5"))
    x34 = FreeChoice(_pos("x3", "x4"), _X34_G45)
    return [
        ConstraintTemplate(
            name="dg45-1",
            graph=G45,
            fixed=head + (("x8", "a3"), ("x9", "a5"), ("y5", "b5"), ("y6", "b3")),
            free=(x34, FreeChoice(_pos("y4"), (("b4",), ("c4",)))),
            slots=(
                SlotRule(_pos("x5", "x6", "x7"), "u", exclude=("a3", "a5"), minus="v"),
                SlotRule(_pos("y7", "y8", "y9"), "v", exclude=("b3", "b5"), minus="u"),
            ),
            note="y5 = b5, y6 = b3 as in the worked solutions",
        ),
        ConstraintTemplate(
            name="dg45-2-1",
            graph=G45,
            fixed=head + (("x7", "a3"), ("x9", "a4"), ("y5", "b3"), ("y6", "b4")),
            free=(x34, FreeChoice(_pos("y4"), (("b5",), ("c5",)))),
            slots=(
                SlotRule(_pos("x5", "x6", "x8"), "u", exclude=("a3", "a4"), minus="v"),
                SlotRule(_pos("y7", "y8", "y9"), "v", exclude=("b3", "b4"), minus="u"),
            ),
        ),
        ConstraintTemplate(
            name="dg45-2-2",
            graph=G45,
            fixed=head + (("x8", "a4"), ("x9", "a3"), ("y5", "b4"), ("y7", "b3")),
            free=(x34, FreeChoice(_pos("y4"), (("b5",), ("c5",)))),
            slots=(
                SlotRule(_pos("x5", "x6", "x7"), "u", exclude=("a3", "a4"), minus="v"),
                SlotRule(_pos("y6", "y8", "y9"), "v", exclude=("b3", "b4"), minus="u"),
            ),
        ),
    ]


def _g54_template(name, x45, y4, y5_options, leaving, entering):
    """
    leaving: (position, label) fixed on the rim for X, the rest of
    (u5 - v5) minus that label fills the other rim X positions;
    entering likewise for Y on v5 - u5.
    """
    x_pos, x_label = leaving
    y_pos, y_label = entering
    rim_x = tuple(p for p in ("x6", "x7", "x8", "x9") if p != x_pos)
    rim_y = tuple(p for p in ("y6", "y7", "y8", "y9") if p != y_pos)
    fixed = (
        ("x1", "c2"), ("x2", "b2"), ("x3", "c1"), ("x4", x45[0]), ("x5", x45[1]), (x_pos, x_label),
        ("y1", "a3"), ("y2", "a4"), ("y3", "a5"), ("y4", y4), (y_pos, y_label),
    )
    return ConstraintTemplate(
        name=name,
        graph=G54,
        fixed=fixed,
        free=(FreeChoice(_pos("y5"), tuple((v,) for v in y5_options)),),
        slots=(
            SlotRule(rim_x, "u", exclude=(x_label,), minus="v"),
            SlotRule(rim_y, "v", exclude=(y_label,), minus="u"),
        ),
    )


def _g54_templates():
    return [
        _g54_template("dg54-1", ("b1", "a1"), "b5", ("b3", "c3"), ("x9", "a4"), ("y6", "b4")),
        _g54_template("dg54-2", ("a1", "b1"), "c5", ("b3", "c3"), ("x9", "a4"), ("y6", "b4")),
        _g54_template("dg54-3-1", ("b1", "a1"), "b5", ("b4", "c4"), ("x9", "a3"), ("y7", "b3")),
        _g54_template("dg54-3-2", ("b1", "a1"), "b5", ("b4", "c4"), ("x8", "a3"), ("y6", "b3")),
        _g54_template("dg54-4-1", ("a1", "b1"), "c5", ("b4", "c4"), ("x9", "a3"), ("y7", "b3")),
        _g54_template("dg54-4-2", ("a1", "b1"), "c5", ("b4", "c4"), ("x8", "a3"), ("y6", "b3")),
    ]


def g63_witness():
    """
    G(6, 3) admits no template: the six spoke labels x1..x6 are a permutation
    of z0, and the tree sizes around the spoke would force the positions at
    which they re-enter to sum to 24, while 1 + 2 + ... + 6 = 21.
    """
    required = 2 * (10 + 2)
    available = sum(range(1, 7))
    return {"graph": str(G63), "required": required, "available": available}


_TABLES = {
    G36: _g36_templates,
    G45: _g45_templates,
    G54: _g54_templates,
    G63: lambda: [],
}

GRAPHS = tuple(_TABLES)


def templates(graph):
    if isinstance(graph, str):
        graph = GraphFamilyId.parse(graph)
    if graph not in _TABLES:
        raise GraphError(f"no templates for {graph}")
    found = _TABLES[graph]()
    if not found:
        witness = g63_witness()
        logger.info(
            "%s: no templates (needs %d, permutation sum %d)",
            graph, witness["required"], witness["available"],
        )
    return found


def format_template(template):
    lines = [template.describe()]
    for choice in template.free:
        options = " | ".join(",".join(o) for o in choice.options)
        lines.append(f"  free {','.join(choice.positions)}: {options}")
    for slot in template.slots:
        minus = f" - {slot.minus}_r" if slot.minus else ""
        lines.append(
            f"  slot {','.join(slot.positions)} = ({slot.base}_r{minus}) - {{{','.join(slot.exclude)}}}"
        )
    return "\n".join(lines)
