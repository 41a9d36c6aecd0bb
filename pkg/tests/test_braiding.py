import cmath
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prenichols.braiding import BraidingMatrix, NoFiniteEntry, ValidationError

G23A = BraidingMatrix(6, [[3, 2, 0], [0, 3, 2], [0, 0, 3]])
G23B = BraidingMatrix(6, [[3, 4, 0], [0, 2, 2], [0, 0, 3]])


def cartan_oracle(q: BraidingMatrix, i: int, j: int, cap: int = 50) -> int:
    # brute-force minimisation over n in C, independent of the exponent bookkeeping
    N = q.conductor
    z = cmath.exp(2j * cmath.pi / N)
    qii = z ** q.exps[i][i]
    qt = z ** ((q.exps[i][j] + q.exps[j][i]) % N)
    for n in range(cap):
        qn = sum(qii**k for k in range(n + 1))
        if abs(qn * (1 - qii**n * qt)) < 1e-9:
            return -n
    raise AssertionError("no entry")


@st.composite
def braidings(draw, max_rank=4):
    n = draw(st.sampled_from([2, 3, 4, 6, 8, 12]))
    r = draw(st.integers(1, max_rank))
    exps = [[draw(st.integers(0, n - 1)) for _ in range(r)] for _ in range(r)]
    return BraidingMatrix(n, exps)


@pytest.mark.parametrize("q", [G23A, G23B])
def test_cartan_matrices_of_the_g23_diagrams(q):
    c = q.cartan().matrix
    for i in range(3):
        assert c[i][i] == 2
        for j in range(3):
            if i != j:
                assert c[i][j] == cartan_oracle(q, i, j)
                assert (c[i][j] == 0) == (q.qt_exp(i, j) == 0)


def test_cartan_values():
    assert G23A.cartan().matrix == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert G23B.cartan().matrix == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert G23B.cartan().cartan_vertices == (1,)


@given(braidings())
def test_cartan_entry_matches_brute_force(q):
    for i in range(q.rank):
        for j in range(q.rank):
            if i == j:
                continue
            try:
                got = q.cartan_entry(i, j, cap=q.conductor)
            except NoFiniteEntry:
                continue
            assert got == cartan_oracle(q, i, j)
            assert (got == 0) == (q.qt_exp(i, j) == 0)


def test_cartan_entry_with_label_one_needs_trivial_edge():
    q = BraidingMatrix(6, [[0, 1], [0, 3]])
    with pytest.raises(NoFiniteEntry):
        q.cartan_entry(0, 1, cap=20)


def test_bilinear_form_and_adjoin():
    q = G23A
    u = (2, 3, 1)
    v = (1, 3, 2)
    # adjoined primitive elements of these degrees have trivial self-braiding
    assert q.q_self(u).is_one() and q.q_self(v).is_one()
    big = q.adjoin_primitive((1, 1, 0))
    assert big.rank == 4
    assert big.exps[3][3] == q.q_self_exp((1, 1, 0))
    assert big.exps[0][3] == q.bilinear_exp((1, 0, 0), (1, 1, 0))
    with pytest.raises(ValueError):
        q.adjoin_primitive((0, 0, 0))


def test_obstructions():
    one = BraidingMatrix(6, [[0, 1], [1, 3]])
    assert [ob.kind for ob in one.obstruction_scan()] == ["OneLabeledEdge"]
    square = BraidingMatrix(2, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    kinds = [ob.kind for ob in square.obstruction_scan()]
    assert kinds == ["LongCycle"]
    assert square.long_cycles() == [(0, 1, 2, 3)]
    # triangle whose edge labels do not multiply to 1
    bad = BraidingMatrix(6, [[3, 2, 2], [0, 3, 4], [0, 0, 3]])
    assert [ob.kind for ob in bad.obstruction_scan()] == ["Rank3Triangle"]
    # a triangle of super type D(2,1;alpha): labels -1, edges q, r, s with qrs = 1
    ok = BraidingMatrix(6, [[3, 1, 1], [0, 3, 4], [0, 0, 3]])
    assert ok.obstruction_scan() == []
    assert G23A.obstruction_scan() == [] and G23B.obstruction_scan() == []


def test_serialization_round_trip(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps(G23B.to_dict()))
    assert BraidingMatrix.load(str(path)) == G23B
    assert BraidingMatrix.from_dict(G23A.to_dict()) == G23A
    with pytest.raises(ValidationError):
        BraidingMatrix.from_dict({"conductor": 6, "rank": 2, "q": [[1]]})
    with pytest.raises(ValidationError):
        BraidingMatrix(6, [[1, 2]])


def test_equality_across_conductors():
    assert BraidingMatrix(6, [[3]]) == BraidingMatrix(2, [[1]])
    assert hash(BraidingMatrix(6, [[3]])) == hash(BraidingMatrix(2, [[1]]))


def test_validate_warns_on_label_one_with_edge():
    q = BraidingMatrix(6, [[0, 1], [0, 3]])
    with pytest.warns(UserWarning):
        q.validate()
    with pytest.raises(ValidationError):
        q.validate(strict=True)


def test_diagram_text():
    assert G23A.diagram_text() == "labels 1:-1 2:-1 3:-1; edges 1-2:z(3,1) 2-3:z(3,1)"
