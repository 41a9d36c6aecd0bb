from hypothesis import given
from hypothesis import strategies as st

from prenichols.hilbert import (
    BasisSpec,
    HilbertData,
    ProductForm,
    count_basis_monomials,
    degrees_up_to,
    expand_product_form,
    gk_of_product_form,
    multiply_series,
)

degrees = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any)


@st.composite
def basis_specs(draw):
    gens = draw(st.lists(st.tuples(degrees, st.sampled_from([2, 3, None])), min_size=1, max_size=5))
    return BasisSpec(2, tuple((f"g{k}", d, h) for k, (d, h) in enumerate(gens)))


@given(basis_specs())
def test_basis_count_equals_product_form(b):
    assert count_basis_monomials(b, 6) == expand_product_form(b.product_form(), 6)


@given(basis_specs(), basis_specs())
def test_product_forms_multiply(a, b):
    joined = BasisSpec(2, a.generators + b.generators)
    lhs = expand_product_form(joined.product_form(), 5)
    rhs = multiply_series(expand_product_form(a.product_form(), 5), expand_product_form(b.product_form(), 5))
    assert lhs == rhs
    assert multiply_series(expand_product_form(a.product_form(), 5), expand_product_form(b.product_form(), 5)) == multiply_series(
        expand_product_form(b.product_form(), 5), expand_product_form(a.product_form(), 5)
    )


def test_gk_counts_unbounded_generators():
    f = ProductForm(3, ((1, 0, 0),), ((0, 1, 0), (1, 1, 0)), (((0, 0, 1), 3),))
    assert gk_of_product_form(f) == 2


def test_small_expansions():
    # (1 + t1)(1 + t2 + t2^2 + ...) up to total degree 3
    f = ProductForm(2, ((1, 0),), ((0, 1),))
    h = expand_product_form(f, 3)
    assert h.by_total_degree() == [1, 2, 2, 2]
    assert h[(1, 2)] == 1 and h[(2, 0)] == 0
    # a height-3 generator
    h = expand_product_form(ProductForm(1, (), (), (((1,), 3),)), 5)
    assert h.by_total_degree() == [1, 1, 1, 0, 0, 0]


def test_degrees_and_comparison():
    assert list(degrees_up_to(2, 1)) == [(0, 0), (1, 0), (0, 1)]
    a = HilbertData(2, 3, {(0, 0): 1, (1, 0): 1})
    b = HilbertData(2, 2, {(0, 0): 1, (1, 0): 1, (0, 3): 5})
    assert a == b  # compared up to the smaller truncation
    c = HilbertData(2, 3, {(0, 0): 1, (1, 0): 2})
    assert a.differences(c) == [((1, 0), 1, 2)]
