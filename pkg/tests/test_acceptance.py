"""Acceptance suite: one test per criterion, each printing one PASS/FAIL line."""

import cmath
import itertools
import random

import pytest

from prenichols import catalog
from prenichols.braiding import BraidingMatrix, NoFiniteEntry
from prenichols.catalog import lemma_instances, load_entry
from prenichols.freealg import FreeAlgebra, FreeElement
from prenichols.hilbert import gk_of_product_form
from prenichols.repcheck import is_nonzero, rep_from_data, verify_representation
from prenichols.rootsys import Finite, NotFiniteWithinCap, enumerate_roots
from prenichols.suite import suite_items
from prenichols.verifier import FORCED, check_forced_relation

A = load_entry("g23-a")
B = load_entry("g23-b")
MAX_WORDS = 20000
CAP = 1000


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok

    return emit


def run_items(entries, keep):
    """Run the suite items whose id satisfies keep; returns {id: (status, detail)}."""
    out = {}
    for item, fn in suite_items(catalog, entries, MAX_WORDS, CAP, 6):
        if keep(item):
            out[item] = fn()
    return out


def failures(results):
    return sorted(k for k, (status, _) in results.items() if status != "pass")


def test_criterion_1_bracket_identities_and_coassociativity(report):
    rng = random.Random(20230101)
    bad = 0
    for q in (A.braiding, B.braiding):
        alg = FreeAlgebra(q)
        b = alg.bracket
        for _ in range(500):
            u, v, w = (FreeElement.word(3, tuple(rng.randrange(3) for _ in range(rng.randint(1, 4)))) for _ in range(3))
            q_ab, q_bc = alg.q(u.degree(), v.degree()), alg.q(v.degree(), w.degree())
            bad += b(u, v * w) != b(u, v) * w + (v * b(u, w)).scale(q_ab)
            bad += b(u * v, w) != (b(u, w) * v).scale(q_bc) + u * b(v, w)
            bad += b(b(u, v), w) != b(u, b(v, w)) - (v * b(u, w)).scale(q_ab) + (b(u, w) * v).scale(q_bc)
        for n in range(1, 6):
            for w in itertools.product(range(3), repeat=n):
                t = alg.coproduct(FreeElement.word(3, w))
                bad += alg.coproduct_left(t) != alg.coproduct_right(t)
    assert report(1, bad == 0, f"{bad} violations over 2 x 500 triples and all words of length <= 5")


def _cartan_oracle(q, i, j, cap=50):
    z = cmath.exp(2j * cmath.pi / q.conductor)
    qii, qt = z ** q.exps[i][i], z ** q.qt_exp(i, j)
    for n in range(cap):
        if abs(sum(qii**k for k in range(n + 1)) * (1 - qii**n * qt)) < 1e-9:
            return -n
    return None


def _catalog_braidings():
    yield from (A.braiding, B.braiding)
    yield from (A.variant(k) for k in A.variants)
    yield from (inst.braiding for inst in lemma_instances())


def test_criterion_2_cartan_matrices(report):
    bad = []
    for name, q in (("g23-a", A.braiding), ("g23-b", B.braiding)):
        c = q.cartan().matrix
        for i, j in itertools.product(range(3), repeat=2):
            want = 2 if i == j else _cartan_oracle(q, i, j)
            if c[i][j] != want:
                bad.append(f"{name} c{i + 1}{j + 1}")
    checked = 0
    for q in _catalog_braidings():
        for i, j in itertools.permutations(range(q.rank), 2):
            try:
                c = q.cartan_entry(i, j, cap=q.conductor)
            except NoFiniteEntry:
                c = None
            checked += 1
            if (c == 0) != (q.qt_exp(i, j) == 0):
                bad.append(f"{q.exps} ({i + 1},{j + 1})")
    assert report(2, not bad, f"oracle agrees on both diagrams; {checked} catalog pairs checked; mismatches {bad}")


def test_criterion_3_root_systems(report):
    res = run_items(["g23-a", "g23-b"], lambda k: k.startswith("roots:"))
    counts = [len(enumerate_roots(e.braiding, max_objects=CAP).roots) for e in (A, B)]
    adjoined = check_forced_relation(A.braiding, A.expand("[x1,{x_u}]"), A.relation_texts["aux"]).adjoined
    rank_two = BraidingMatrix(9, [[1, 1], [0, 3]])  # labels q, q^3 joined by q, q of order 9
    caps = [enumerate_roots(q, max_objects=CAP) for q in (adjoined, rank_two)]
    ok = (
        not failures(res)
        and counts == [10, 10]
        and all(isinstance(enumerate_roots(e.braiding), Finite) for e in (A, B))
        and all(isinstance(r, NotFiniteWithinCap) for r in caps)
    )
    detail = f"roots {counts}, PBW cross-check {failures(res) or 'ok'}, capped: " + "; ".join(r.reason for r in caps)
    assert report(3, ok, detail)


def test_criterion_4_forced_relation_suite(report):
    bad = []
    for inst in lemma_instances():
        v = check_forced_relation(inst.braiding, inst.relation, inst.lower, max_words=MAX_WORDS, max_objects=CAP)
        if v.status != FORCED or (inst.expected_kind is not None and inst.expected_kind not in v.kinds):
            bad.append(f"{inst.name}: expected {inst.expected_kind}, got {v.summary()}")
    for e in (A, B):
        for f in e.forced:
            v = check_forced_relation(e.braiding, f.relation, e.relation_texts[f.lower], max_words=MAX_WORDS, max_objects=CAP)
            if v.status != f.status or (f.kind is not None and f.kind not in v.kinds):
                bad.append(f"{e.name}:{f.id}: got {v.summary()}")
    n = len(lemma_instances()) + len(A.forced) + len(B.forced)
    assert report(4, not bad, f"{n - len(bad)}/{n} instances; " + (" | ".join(bad) or "all kinds found"))


def test_criterion_5_primitivity(report):
    res = run_items(
        ["g23-a", "g23-b"],
        lambda k: k.startswith("primitive:") or k in ("identity:g23-b:xu-x1", "identity:g23-b:xu-x3", "identity:g23-b:xu-x2-zero"),
    )
    assert len(res) == 9
    assert report(5, not failures(res), f"{len(res)} checks; failing {failures(res) or 'none'}")


def test_criterion_6_hilbert_series_second_diagram(report):
    keys = ("hilbert:g23-b:hat:hat-displayed", "hilbert:g23-b:hat:z-times-tilde")
    res = run_items(["g23-b"], lambda k: k in keys)
    assert set(res) == set(keys)
    assert report(6, not failures(res), "; ".join(d for _, d in res.values()))


def test_criterion_7_hilbert_series_first_diagram(report):
    keys = ("hilbert:g23-a:hat:basis", "hilbert:g23-a:hat:reading")
    res = run_items(["g23-a"], lambda k: k in keys)
    assert set(res) == set(keys)
    assert report(7, not failures(res), "; ".join(d for _, d in res.values()))


def test_criterion_8_gk_values(report):
    want = {"hat": 6, "tilde": 4, "z": 2}
    got = {f"{e.name}:{k}": gk_of_product_form(f) for e in (A, B) for k, f in sorted(e.product_forms.items())}
    ok = all(v == want[k.split(":")[1].split("-")[0]] for k, v in got.items())
    assert report(8, ok, ", ".join(f"{k}={v}" for k, v in got.items()))


def test_criterion_9_representation(report):
    rep = A.representation
    lines, ok = [], True
    for label, q in [("q13-trivial", A.braiding)] + [(k, A.variant(k)) for k in sorted(A.variants)]:
        r = rep_from_data(rep, q)
        verified, _ = verify_representation(A.presentation(rep["presentation"], q), r)
        alg = FreeAlgebra(q)
        nz = {el: is_nonzero(r, alg.parse(A.element(el))) for el in ("x_u", "x_v")}
        ok = ok and verified and all(nz.values())
        lines.append(f"{label}: relations {'vanish' if verified else 'fail'}, nonzero {nz}")
    assert report(9, ok, "; ".join(lines))


def test_criterion_10_step_identities(report):
    keys = {f"identity:{e.name}:{i.id}" for e in (A, B) for i in e.identities if i.presentation == "hat"}
    hat = run_items(["g23-a", "g23-b"], lambda k: k in keys)
    assert set(hat) == keys
    bad = failures(hat)
    assert report(10, not bad, f"{len(hat) - len(bad)}/{len(hat)} hold; failing {bad}")
