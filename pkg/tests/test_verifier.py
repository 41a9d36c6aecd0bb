import dataclasses
import types

import pytest

from prenichols import catalog
from prenichols.catalog import lemma_instances, load_entry
from prenichols.rootsys import NotFiniteWithinCap, enumerate_roots
from prenichols.verifier import (
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    Report,
    ReportItem,
    check_forced_relation,
    run_paper_suite,
)

A = load_entry("g23-a")
B = load_entry("g23-b")
AUX = A.relation_texts["aux"]


@pytest.mark.parametrize("rel", ["[x1,{x_u}]", "[{x_v},x3]", "[{x_u},x3]", "[x1,{x_v}]"])
def test_new_relations_of_the_first_diagram_are_forced(rel):
    v = check_forced_relation(A.braiding, A.expand(rel), AUX)
    assert v.status == "ForcedZero" and v.reason == "RootsNotFinite"
    assert v.primitivity == "primitive"
    big = v.adjoined
    # the extended diagram: four vertices labeled -1, beta joined to 2 only, by xi
    assert [big.exps[i][i] for i in range(4)] == [3, 3, 3, 3]
    assert [big.qt_exp(i, 3) for i in range(3)] == [0, 2, 0]
    assert v.conditional


@pytest.mark.parametrize("name", ["x_u", "x_v"])
def test_new_generators_are_not_forced(name):
    v = check_forced_relation(A.braiding, A.element(name), AUX)
    assert v.status == "NotForced"
    assert v.adjoined.exps[3][3] == 0


def test_label_one_witness():
    inst = load_entry("x1123-x123-1")
    v = check_forced_relation(inst.braiding, inst.relation, inst.lower)
    assert v.status == "ForcedZero" and v.reason == "OneLabeledEdge"
    assert "OneLabeledEdge" in v.kinds


def test_relation_not_primitive_is_inconclusive():
    v = check_forced_relation(A.braiding, "x123", AUX)
    assert v.status == "Inconclusive" and v.primitivity == "not primitive"


def test_relation_zero_modulo_lower():
    v = check_forced_relation(A.braiding, "x1^2*x2", AUX)
    assert v.primitivity == "zero modulo lower relations"


def test_invalid_relations():
    with pytest.raises(ValueError):
        check_forced_relation(A.braiding, "x1 - x1")
    with pytest.raises(ValueError):
        check_forced_relation(A.braiding, "x1 + x1*x2")


def test_small_caps_are_inconclusive():
    v = check_forced_relation(A.braiding, A.expand("[x1,{x_u}]"), AUX, max_objects=1)
    assert v.status == "Inconclusive"
    v = check_forced_relation(A.braiding, A.expand("[x1,{x_u}]"), AUX, max_words=5)
    assert v.status == "Inconclusive" and v.primitivity == "undecided"


def test_verdicts_are_deterministic():
    inst = lemma_instances()[5]
    a = check_forced_relation(inst.braiding, inst.relation, inst.lower)
    b = check_forced_relation(inst.braiding, inst.relation, inst.lower)
    assert a == b


def test_shape_witnesses_are_confirmed_by_root_enumeration():
    for inst in lemma_instances():
        v = check_forced_relation(inst.braiding, inst.relation, inst.lower)
        for w in v.witnesses:
            if w.kind in ("OneLabeledEdge", "LongCycle", "Rank3Triangle"):
                sub = v.adjoined.restrict(w.vertices)
                assert isinstance(enumerate_roots(sub), NotFiniteWithinCap), (inst.name, w)


def test_conditional_flag_tracks_rank_four_non_cartan_refutations():
    for inst in lemma_instances():
        v = check_forced_relation(inst.braiding, inst.relation, inst.lower)
        for w in v.witnesses:
            if w.conditional:
                assert w.kind == "RootsNotFinite" and len(w.vertices) >= 4
            if w.kind != "RootsNotFinite" or len(w.vertices) < 4:
                assert not w.conditional
        assert v.conditional == (v.witnesses[0].conditional if v.witnesses else False)


def test_frozen_verdicts_of_all_instances():
    for inst in lemma_instances():
        v = check_forced_relation(inst.braiding, inst.relation, inst.lower)
        exp = inst.expected
        assert (v.status, v.reason, list(v.kinds)) == (exp["status"], exp["reason"], exp["kinds"]), inst.name
        assert v.conditional == exp["conditional"]


def test_report_bookkeeping():
    r = Report()
    r.add(ReportItem("b", "pass"))
    r.add(ReportItem("a", "inconclusive"))
    assert [it.item for it in r.items] == ["a", "b"]
    assert r.exit_code() == EXIT_INCONCLUSIVE
    r.add(ReportItem("c", "fail"))
    assert r.exit_code() == EXIT_FAIL and not r.passed
    assert Report([ReportItem("x", "pass")]).exit_code() == EXIT_OK


def _fake_catalog(entry):
    return types.SimpleNamespace(lemma_instances=lambda: [], load_entry=lambda name: entry)


def test_fault_injection_names_the_corrupted_identity():
    ident = next(i for i in B.identities if i.id == "x1-x123")
    flipped = dataclasses.replace(ident, rhs=ident.rhs.lstrip("-"))
    ids = [flipped if i is ident else i for i in B.identities]
    broken = dataclasses.replace(B, identities=ids, product_forms={}, representation=None, forced=[])
    report = run_paper_suite(entries=("g23-b",), catalog=_fake_catalog(broken), hilbert_degree=4)
    failed = [it.item for it in report.failures()]
    assert "identity:g23-b:x1-x123" in failed
    clean = dataclasses.replace(B, identities=[ident], product_forms={}, representation=None, forced=[])
    report = run_paper_suite(entries=("g23-b",), catalog=_fake_catalog(clean), hilbert_degree=4)
    assert "identity:g23-b:x1-x123" not in [it.item for it in report.failures()]


def test_tiny_caps_make_the_suite_inconclusive_not_failed():
    only = dataclasses.replace(B, identities=[], product_forms={}, representation=None, primitive=[], nonzero=[], basis=None)
    report = run_paper_suite(entries=("g23-b",), catalog=_fake_catalog(only), max_objects=1)
    assert report.counts()["inconclusive"] > 0
    assert report.counts()["fail"] == 0
    assert report.exit_code() == EXIT_INCONCLUSIVE


def test_default_catalog_is_used():
    assert catalog.load_entry("g23-a") is A
