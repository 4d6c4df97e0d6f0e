"""PowerProduct arithmetic: exactness, ordering, floor, budgets."""

from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtlab.errors import ContractViolationError, ResourceLimitError
from rtlab.exactnum import (EQUAL, LESS, PowerProduct, least_integer_greater,
                            ordering_name, pp_compare, pp_floor, pp_is_integer)


def pp(*factors):
    return PowerProduct(factors)


class TestCanonicalForm:
    def test_merges_equal_bases(self):
        assert pp((2, Fr(1, 2)), (2, Fr(1, 2))) == pp((2, 1))

    def test_drops_base_one_and_zero_exponent(self):
        assert pp((1, Fr(7, 3)), (5, 0)) == PowerProduct.one()

    def test_sorted_by_base(self):
        x = pp((7, 1), (2, Fr(1, 3)), (5, 2))
        assert [b for b, _ in x.factors] == [2, 5, 7]

    def test_idempotent(self):
        x = pp((6, Fr(2, 4)), (6, Fr(1, 2)))
        assert PowerProduct(x.factors) == x
        assert x == pp((6, 1))

    def test_hash_consistent_with_structural_eq(self):
        assert hash(pp((2, 1))) == hash(pp((2, Fr(1, 2)), (2, Fr(1, 2))))

    def test_rejects_bad_bases_and_float_exponents(self):
        with pytest.raises(ContractViolationError):
            pp((0, 1))
        with pytest.raises(ContractViolationError):
            pp((-3, 1))
        with pytest.raises(ContractViolationError):
            pp((2, 0.5))

    def test_algebra(self):
        x = pp((2, Fr(1, 2)))
        assert x * x == pp((2, 1))
        assert x ** 4 == pp((2, 2))
        assert (x / x) == PowerProduct.one()
        assert 3 * PowerProduct.one() == pp((3, 1))


class TestCompare:
    def test_sqrt8_below_3(self):
        # 2^3 = 8 < 3^2 = 9
        assert pp_compare(pp((2, Fr(3, 2))), PowerProduct.of_int(3)) == LESS

    def test_exponent_addition_equal(self):
        assert pp_compare(pp((2, Fr(1, 2)), (2, Fr(1, 2))), PowerProduct.of_int(2)) == EQUAL

    def test_cleared_denominator_example(self):
        # lcm of denominators is 6: 3^8 * 2 = 13122 < 5^6 = 15625
        assert pp_compare(pp((3, Fr(4, 3)), (2, Fr(1, 6))), PowerProduct.of_int(5)) == LESS

    def test_antisymmetry_names(self):
        a, b = pp((2, Fr(3, 2))), PowerProduct.of_int(3)
        assert pp_compare(a, b) == -pp_compare(b, a)
        assert ordering_name(pp_compare(a, b)) == "less"
        assert ordering_name(pp_compare(b, a)) == "greater"

    def test_value_equality_across_forms(self):
        # structurally different, equal as reals
        assert pp((4, 1)) != pp((2, 2))
        assert pp_compare(pp((4, 1)), pp((2, 2))) == EQUAL
        assert pp_compare(pp((4, Fr(1, 2))), pp((2, 1))) == EQUAL

    def test_bit_budget(self):
        # equal values force the big-integer path; the budget must trip
        a = pp((2, 10 ** 7))
        b = pp((4, Fr(10 ** 7, 2)))
        with pytest.raises(ResourceLimitError):
            pp_compare(a, b)
        assert pp_compare(a, b, bit_budget=4 * 10 ** 7) == EQUAL

    def test_wide_gap_huge_values_fast(self):
        # decided by the screen; no big integers materialize
        assert pp_compare(pp((2, 10 ** 6)), pp((3, 10 ** 6))) == LESS


class TestFloor:
    def test_examples(self):
        assert pp_floor(pp((3, Fr(4, 3)), (2, Fr(1, 6)))) == 4
        assert pp_floor(PowerProduct.of_int(2)) == 2
        assert pp_floor(pp((14, Fr(5, 4)))) == 27

    def test_least_integer_greater(self):
        assert least_integer_greater(pp((2, Fr(3, 2)))) == 3
        assert least_integer_greater(PowerProduct.one()) == 2
        assert least_integer_greater(pp((3, Fr(4, 3)), (2, Fr(1, 6)))) == 5

    def test_exact_integer_branch(self):
        assert least_integer_greater(pp((4, Fr(3, 2)))) == 9   # 4^(3/2) = 8
        assert pp_is_integer(pp((4, Fr(3, 2))))
        assert not pp_is_integer(pp((2, Fr(3, 2))))

    def test_value_below_one(self):
        assert pp_floor(pp((2, -1))) == 0
        assert least_integer_greater(pp((2, -1))) == 1


_factor = st.tuples(st.integers(min_value=2, max_value=50),
                    st.fractions(min_value=Fr(-4), max_value=Fr(4), max_denominator=12))
_products = st.lists(_factor, min_size=0, max_size=6).map(PowerProduct)


@settings(max_examples=300, deadline=None)
@given(_products, _products)
def test_compare_agrees_with_256bit_floats(a, b):
    """Where a 256-bit evaluation shows a clear gap, the exact path agrees."""
    import mpmath
    with mpmath.workprec(256):
        la = sum(e * mpmath.log(bb) for bb, e in
                 ((bb, mpmath.mpf(x.numerator) / x.denominator) for bb, x in a.factors))
        lb = sum(e * mpmath.log(bb) for bb, e in
                 ((bb, mpmath.mpf(x.numerator) / x.denominator) for bb, x in b.factors))
        gap = la - lb
        if abs(gap) > mpmath.mpf("1e-30"):
            want = 1 if gap > 0 else -1
            assert pp_compare(a, b) == want
        else:
            assert pp_compare(a, b) == EQUAL


@settings(max_examples=150, deadline=None)
@given(_products)
def test_floor_sandwich(x):
    f = pp_floor(x)
    assert f >= 0
    if f > 0:
        assert pp_compare(PowerProduct.of_int(f), x) <= 0
    assert pp_compare(x, PowerProduct.of_int(f + 1)) == LESS


@settings(max_examples=150, deadline=None)
@given(_products, _products)
def test_compare_antisymmetric(a, b):
    assert pp_compare(a, b) == -pp_compare(b, a)


@settings(max_examples=100, deadline=None)
@given(_products, _products, _products)
def test_equal_transitive(a, b, c):
    if pp_compare(a, b) == EQUAL and pp_compare(b, c) == EQUAL:
        assert pp_compare(a, c) == EQUAL
