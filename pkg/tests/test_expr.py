import pytest

from prenichols.braiding import BraidingMatrix
from prenichols.expr import ExprSyntaxError, UnknownGenerator, ExprError, parse, to_text
from prenichols.freealg import FreeAlgebra
from prenichols.scalar import Cyclotomic

Q = BraidingMatrix(6, [[3, 4, 0], [0, 2, 2], [0, 0, 3]])
ALG = FreeAlgebra(Q)


def test_atoms():
    x1, x2, x3 = (ALG.gen(i) for i in range(3))
    assert ALG.parse("x12") == ALG.bracket(x1, x2)
    assert ALG.parse("[x12,x3]") == ALG.bracket(ALG.bracket(x1, x2), x3)
    assert ALG.parse("x1*x2 - q(1,2)*x2*x1") == ALG.parse("x12")
    assert ALG.parse("z(3,1)").coefficient(()) == Cyclotomic.root(3)
    assert ALG.parse("qt(1,2)").coefficient(()) == Q.qt(0, 1)
    assert ALG.parse("q(2,2)^-1").coefficient(()) == Q.entry(1, 1).inverse()


def test_arithmetic_and_powers():
    a = ALG.parse("(1 + z(3,1))/2 * x1^2")
    assert a.coefficient((0, 0)) == (1 + Cyclotomic.root(3)) / 2
    assert ALG.parse("x2^0").coefficient(()) == 1
    assert ALG.parse("-x1 + x1").is_zero()


def test_errors():
    with pytest.raises(ExprSyntaxError) as exc:
        ALG.parse("[x1,x2")
    assert exc.value.pos >= 0
    with pytest.raises(UnknownGenerator):
        ALG.parse("x4")
    with pytest.raises(ExprError):
        ALG.parse("x1/0")
    with pytest.raises(ExprError):
        ALG.parse("x1/x2")
    with pytest.raises(ExprError):
        ALG.parse("x1^-1")


def test_text_round_trip():
    for text in ["[[x12,x123],x2] - 3/2*x1*x2", "z(6,1)*[x1,x23]^2", "q(1,2)^-2*qt(2,3)"]:
        node = parse(text)
        assert ALG.parse(to_text(node)) == ALG.parse(text)


def test_element_text_round_trip():
    u = ALG.parse("[[x12,x123],x2] + z(3,2)*x1*x3*x2")
    assert ALG.parse(u.to_text()) == u
