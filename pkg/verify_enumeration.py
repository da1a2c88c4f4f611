import os
import sys

import pytest

# Add backend directory to python path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend"))

from catalog.table import all_entries, catalog_get
from complexes.simplicial import CANONICAL_INDEX
from core.config import load_parameters
from core.errors import ChainError, ClassError, GraphError, ParamError
from enumeration.encoding import (
    XYTuple,
    chain,
    decode,
    encode,
    leave_sequence_report,
    string_rep,
    tuple_from_arm,
)
from enumeration.minimal import minimal_representative
from enumeration.phi import (
    IDENTITY,
    PHI,
    PHI2,
    Z0,
    centralizer,
    centralizer_coset,
    conjugator,
    is_normalizer_element,
    normalizer_elements,
    normalizer_group,
)
from enumeration.relaxed import RelaxedSearch, relaxed_search
from enumeration.search import canonical_classes, enumerate_all, rejection_reason, run_templates, search
from enumeration.templates import (
    POSITIONS,
    ConstraintTemplate,
    format_template,
    g63_witness,
    templates,
)
from networks.graph_family import GraphFamilyId
from topology.symmetry import compose, inverse

PARAMS = load_parameters()


def xy(r, xs, ys):
    return XYTuple.from_labels(r, xs.split(","), ys.split(","))


# Solutions as found by the template search, one per class.
SOLUTIONS = {
    "N1": xy(3, "c2,c1,b1,b2,a2,a1,a4,a3,a5", "a3,a4,a5,b4,b5,b3,c2,b1,b2"),
    "N2": xy(4, "c2,c1,b1,b2,a4,a1,a2,a3,a5", "a3,a4,a5,b4,b5,b3,c4,b1,b2"),
    "N3": xy(4, "c2,c1,b2,b1,a4,a1,a2,a3,a5", "a3,a4,a5,b4,b5,b3,c4,b2,b1"),
    "N4": xy(4, "c2,c1,b2,a1,b1,c5,a3,a2,a4", "a3,a4,a5,c5,b3,b4,b5,c1,b2"),
    "N5": xy(5, "c2,b2,c1,b1,a1,a4,a5,a3,a2", "a3,a4,a5,b5,b4,b3,c4,c5,b2"),
    "N6": xy(5, "c2,b2,c1,b1,a1,a5,a4,a3,a2", "a3,a4,a5,b5,b4,b3,c5,c4,b2"),
    "N7": xy(5, "c2,b2,c1,a1,b1,a4,c5,a3,a2", "a3,a4,a5,c5,b4,b3,c4,b5,b2"),
    "N8": xy(5, "c2,b2,c1,a1,b1,c5,a4,a3,a2", "a3,a4,a5,c5,b4,b3,b5,c4,b2"),
    "N9": xy(5, "c2,b2,c1,b1,a1,a5,c4,a3,a2", "a3,a4,a5,b5,c4,b3,c5,b4,b2"),
    "N10": xy(5, "c2,b2,c1,a1,b1,c5,c4,a3,a2", "a3,a4,a5,c5,c4,b3,b5,b4,b2"),
    "N11": xy(5, "c2,b2,c1,b1,a1,a3,a2,a5,a4", "a3,a4,a5,b5,b3,b4,b2,c3,c5"),
    "N12": xy(5, "c2,b2,c1,a1,b1,a3,a2,c5,a4", "a3,a4,a5,c5,b3,b4,b2,c3,b5"),
}

TEMPLATE_SURVIVORS = {
    "dg36-1": ["N1"],
    "dg36-2": [],
    "dg45-1": ["N2", "N3"],
    "dg45-2-1": ["N4"],
    "dg45-2-2": [],
    "dg54-1": ["N11"],
    "dg54-2": ["N12"],
    "dg54-3-1": [],
    "dg54-3-2": ["N5", "N6", "N9"],
    "dg54-4-1": [],
    "dg54-4-2": ["N7", "N8", "N10"],
}


def all_templates():
    found = []
    for name in ("g36", "g45", "g54"):
        found.extend(templates(name))
    return found


@pytest.fixture(scope="module")
def enumeration():
    return enumerate_all(params=PARAMS)


# --------------------------------------------------
# Decode / encode
# --------------------------------------------------
@pytest.mark.parametrize("entry_id", sorted(SOLUTIONS))
def test_decode_matches_catalog(entry_id):
    t = SOLUTIONS[entry_id]
    entry = catalog_get(entry_id)
    assert decode(t) == entry.complex
    assert entry.xy == t
    assert str(entry.graph) == str(t.graph)


@pytest.mark.parametrize("entry_id", sorted(SOLUTIONS))
def test_encode_recovers_tuple(entry_id):
    assert encode(catalog_get(entry_id).complex) == SOLUTIONS[entry_id]


def test_chain_walk():
    t = SOLUTIONS["N1"]
    walk = chain(t)
    assert walk[0] == Z0
    assert len(walk) == 9
    assert tuple_from_arm(Z0, walk[1:], t.r) == t


def test_chain_errors():
    t = SOLUTIONS["N1"]
    # x1 = a3 is not in z0
    bad = XYTuple(t.graph, (CANONICAL_INDEX["a3"],) + t.xs[1:], t.ys)
    with pytest.raises(ChainError):
        chain(bad)
    # y1 = a1 is already in z0
    bad = XYTuple(t.graph, t.xs, (CANONICAL_INDEX["a1"],) + t.ys[1:])
    with pytest.raises(ChainError):
        chain(bad)
    # closing label that misses Phi(u_r)
    bad = XYTuple(t.graph, t.xs, t.ys[:8] + (CANONICAL_INDEX["c5"],))
    with pytest.raises(ChainError):
        chain(bad)


def test_rejection_needs_phi_symmetry():
    entry = catalog_get("N1")
    assert rejection_reason(entry.xy, entry.complex, entry.arm) is None
    # swapping a1 and b1 keeps the links stacked but breaks the Phi action
    swapped = entry.complex.relabel((1, 0) + tuple(range(2, 15)))
    assert rejection_reason(entry.xy, swapped, entry.arm) == "Phi is not a fixed-point-free automorphism"


@pytest.mark.parametrize("entry_id", sorted(SOLUTIONS))
def test_leave_sequence_normal_form(entry_id):
    report = leave_sequence_report(SOLUTIONS[entry_id])
    assert report["entering_increasing"]
    assert report["leaving_order"]
    assert report["entering_first_a"]
    assert report["leaving_first_c"]


# --------------------------------------------------
# Normalizer of Phi
# --------------------------------------------------
def test_normalizer_order():
    group = normalizer_group()
    assert len(group) == 58320
    assert set(normalizer_elements()) == group
    assert all(is_normalizer_element(p) for p in list(group)[:2000])


def test_centralizer_and_cosets():
    assert len(centralizer()) == 29160
    assert all(compose(PHI, p) == compose(p, PHI) for p in centralizer()[:500])
    alpha = PHI2
    coset = centralizer_coset(alpha)
    assert len(coset) == 29160
    for psi in coset[:500]:
        assert compose(compose(psi, alpha), inverse(psi)) == PHI
    with pytest.raises(ClassError):
        conjugator(IDENTITY)


@pytest.mark.parametrize("entry_id", sorted(SOLUTIONS))
def test_catalog_entries_are_minimal(entry_id):
    K = catalog_get(entry_id).complex
    relabeled, rep = minimal_representative(K)
    assert relabeled == K
    assert rep == string_rep(K)


def test_normalizer_images_never_beat_minimal_string():
    K = catalog_get("N1").complex
    rep = string_rep(K)
    group = sorted(normalizer_group())
    for gamma in group[::97]:
        assert string_rep(K.relabel(gamma)) >= rep


def test_minimal_representative_of_relabeled_copy():
    K = catalog_get("N6").complex
    shuffle = tuple((v * 7 + 2) % 15 for v in range(15))
    relabeled, rep = minimal_representative(K.relabel(shuffle))
    assert relabeled == K
    assert rep == string_rep(K)


# --------------------------------------------------
# Templates
# --------------------------------------------------
def test_template_positions_checked():
    with pytest.raises(ParamError):
        ConstraintTemplate(name="broken", graph=GraphFamilyId("G", 3, 6), fixed=(("x1", "c2"),))
    assert len(POSITIONS) == 18


def test_g63_has_no_templates():
    assert templates("g63") == []
    witness = g63_witness()
    assert witness["required"] == 24
    assert witness["available"] == 21
    with pytest.raises(GraphError):
        templates("g27")


def test_dg36_candidate_counts():
    for template in templates("g36"):
        tally = search(template)
        assert tally.candidates == 72
    assert "slot" in format_template(templates("g36")[0])


@pytest.mark.parametrize("template", all_templates(), ids=lambda t: t.name)
def test_template_survivors(template):
    tally = search(template)
    expected = sorted(str(SOLUTIONS[k]) for k in TEMPLATE_SURVIVORS[template.name])
    assert sorted(str(t) for t in tally.survivors) == expected


def test_dg45_first_template_count():
    tally = search(templates("g45")[0])
    assert tally.candidates == 288


def test_parallel_chunks_agree():
    serial = run_templates(templates("g45"), jobs=1)
    parallel = run_templates(templates("g45"), jobs=2)
    assert [t.to_dict() for t in serial] == [t.to_dict() for t in parallel]


# --------------------------------------------------
# Full enumeration
# --------------------------------------------------
def test_class_tallies(enumeration):
    assert enumeration.class_tally() == {"G(3,6)": 1, "G(4,5)": 3, "G(5,4)": 8, "G(6,3)": 0}
    assert len(enumeration.classes) == 12


def test_enumeration_matches_catalog(enumeration):
    found = sorted(record.canonical for record in enumeration.classes)
    expected = sorted(string_rep(e.complex).text for e in all_entries())
    assert found == expected
    by_string = {string_rep(e.complex).text: e for e in all_entries()}
    for record in enumeration.classes:
        assert record.complex == by_string[record.canonical].complex


def test_report_is_deterministic(enumeration):
    again = enumerate_all(graphs=["g36"], params=PARAMS)
    first = [t for t in enumeration.to_dict()["templates"] if t["graph"] == "G(3,6)"]
    assert again.to_dict()["templates"] == first


def test_canonical_classes_deduplicate():
    survivors = [SOLUTIONS["N2"], SOLUTIONS["N2"], SOLUTIONS["N3"]]
    records = canonical_classes(survivors, GraphFamilyId("G", 4, 5))
    assert len(records) == 2
    assert sorted(len(r.sources) for r in records) == [1, 2]


# --------------------------------------------------
# Relaxed search
# --------------------------------------------------
def test_relaxed_search_rejects_other_graphs():
    with pytest.raises(GraphError):
        RelaxedSearch("g27")
    with pytest.raises(GraphError):
        RelaxedSearch("T(2,3)")


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_relaxed_rules_admit_catalog_tuples(entry):
    # windows across the branch facet and the shared vertex of u_r, v_r in G(3,6)
    assert RelaxedSearch(entry.graph).replay(entry.xy) is None


def test_relaxed_replay_reports_cut():
    t = SOLUTIONS["N2"]
    swapped = XYTuple(t.graph, (CANONICAL_INDEX["c1"], CANONICAL_INDEX["c2"]) + t.xs[2:], t.ys)
    assert RelaxedSearch("g45").replay(swapped) == "step 1"
    # N1 read as a G(4,5) walk has no valid rim
    assert RelaxedSearch("g45").replay(SOLUTIONS["N1"]) is not None


@pytest.mark.parametrize("graph,count", [("g36", 1), ("g45", 3), ("g54", 8), ("g63", 0)])
def test_relaxed_search_finds_no_new_classes(graph, count):
    tally = relaxed_search(graph)
    records = canonical_classes(tally.survivors, GraphFamilyId.parse(graph))
    catalog = {string_rep(e.complex).text for e in all_entries()}
    assert len(records) == count
    assert {r.canonical for r in records} <= catalog
