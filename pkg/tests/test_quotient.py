from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prenichols.braiding import BraidingMatrix
from prenichols.freealg import FreeAlgebra, FreeElement
from prenichols.hilbert import degrees_up_to
from prenichols.quotient import Presentation, QuotientEngine, ResourceLimitError, brute_force_dimension
from prenichols.scalar import Cyclotomic


def nichols_dim_oracle(q: BraidingMatrix, d) -> int:
    # rank of the pairing <w, w'> = constant term of d_{w'}(w), built from skew derivations
    alg = FreeAlgebra(q)
    letters = [i for i in range(q.rank) for _ in range(d[i])]
    words = sorted(set(permutations(letters)))
    rows = []
    for w in words:
        row = []
        for v in words:
            u = FreeElement.word(q.rank, w)
            for i in reversed(v):
                u = alg.derivation(i, u)
            row.append(u.coefficient(()))
        rows.append(row)
    return _rank(rows)


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        p = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        inv = rows[rank][c].inverse()
        for i in range(len(rows)):
            if i != rank and not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


A2_MINUS = BraidingMatrix(2, [[1, 1], [0, 1]])  # labels -1, qt = -1: dimension 8
A2_OMEGA = BraidingMatrix(3, [[1, 2], [0, 1]])  # labels w, qt = w^-1: dimension 27
SUPER = BraidingMatrix(6, [[3, 2], [0, 3]])  # labels -1, -1, qt of order 3: dimension 12


def nichols(q):
    return QuotientEngine(Presentation(q, [], "nichols", "all"))


@pytest.mark.parametrize("q,total", [(A2_MINUS, 8), (A2_OMEGA, 27), (SUPER, 12), (BraidingMatrix(5, [[1]]), 5)])
def test_finite_nichols_algebras(q, total):
    E = nichols(q)
    h = E.hilbert(10)
    assert sum(h.by_total_degree()) == total
    assert h.by_total_degree()[-1] == 0


@pytest.mark.parametrize("q", [A2_MINUS, A2_OMEGA, SUPER, BraidingMatrix(6, [[3, 2, 0], [0, 3, 2], [0, 0, 3]])])
def test_nichols_dimensions_match_pairing_rank(q):
    E = nichols(q)
    for d in degrees_up_to(q.rank, 4):
        assert E.dim(d) == nichols_dim_oracle(q, d), d


def test_minimal_nichols_generators():
    E = nichols(A2_MINUS)
    assert len(E.new_nichols_generators((2, 0))) == 1
    assert E.new_nichols_generators((2, 1)) == []
    assert len(E.new_nichols_generators((2, 2))) == 1


@st.composite
def presentations(draw):
    n = draw(st.sampled_from([2, 3, 4, 6]))
    exps = [[draw(st.integers(0, n - 1)) for _ in range(2)] for _ in range(2)]
    q = BraidingMatrix(n, exps)
    alg = FreeAlgebra(q)
    rels = []
    for _ in range(draw(st.integers(1, 2))):
        w = draw(st.lists(st.integers(0, 1), min_size=2, max_size=3))
        perms = sorted(set(permutations(w)))
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(perms), max_size=len(perms)))
        r = FreeElement(2, {p: c for p, c in zip(perms, coeffs)})
        if not r.is_zero():
            rels.append(r)
    if not rels:
        rels = [alg.parse("x12")]
    return Presentation(q, rels)


@given(presentations())
def test_engine_dimension_equals_brute_force(p):
    E = QuotientEngine(p)
    for d in degrees_up_to(2, 4):
        assert E.dim(d) == brute_force_dimension(p, d)


@given(presentations(), st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_normal_form_is_idempotent_and_linear(p, w):
    E = QuotientEngine(p)
    u = FreeElement.word(2, tuple(w)) + FreeElement.word(2, tuple(reversed(w)), 3)
    nf = E.normal_form(u)
    assert E.normal_form(nf) == nf
    assert E.is_zero(u - nf)
    for r in p.relations:
        assert E.is_zero(r)


def test_quantum_plane():
    q = BraidingMatrix(5, [[1, 2], [0, 3]])
    E = QuotientEngine(Presentation.from_texts(q, ["x12"]))
    assert E.hilbert(6).by_total_degree() == [1, 2, 3, 4, 5, 6, 7]


def test_evaluate_agrees_with_parse():
    q = BraidingMatrix(6, [[3, 2, 0], [0, 3, 2], [0, 0, 3]])
    E = QuotientEngine(Presentation.from_texts(q, ["x1^2", "x2^2", "x3^2", "x13"]))
    for text in ["[[x12,x123],x2]", "x123^2 - x2*x13", "[x1,[x12,x23]]*x3"]:
        assert E.evaluate(text) == E.normal_form(E.parse(text))


def test_primitivity():
    q = BraidingMatrix(6, [[3, 2, 0], [0, 3, 2], [0, 0, 3]])
    free = QuotientEngine(Presentation(q, []))
    assert free.is_primitive(free.parse("x1^2"))
    assert not free.is_primitive(free.parse("x12"))
    assert free.primitivity_defect(free.parse("x12"))
    E = QuotientEngine(Presentation.from_texts(q, ["x1^2", "x2^2", "x3^2", "x13"]))
    assert E.is_primitive(E.parse("[[x12,x123],x2]"))
    assert E.is_primitive(E.parse("[[x123,x23],x2]"))
    assert not E.is_primitive(E.parse("x123"))
    # scalars are not primitive
    assert not E.is_primitive(FreeElement.scalar(3, Cyclotomic.one()))


def test_resource_cap():
    q = BraidingMatrix(6, [[3, 2, 0], [0, 3, 2], [0, 0, 3]])
    E = QuotientEngine(Presentation(q, []), max_words=10)
    with pytest.raises(ResourceLimitError):
        E.dim((2, 2, 1))


def test_invalid_relations_are_rejected():
    q = BraidingMatrix(2, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        QuotientEngine(Presentation.from_texts(q, ["x1 + x2^2"]))
    with pytest.raises(ValueError):
        QuotientEngine(Presentation.from_texts(q, ["x1 - x1"]))
