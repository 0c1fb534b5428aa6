import pytest
from hypothesis import given, settings as hsettings, strategies as st

from rankext.algebra.gf import (
    FieldOp,
    enumerate_elements,
    field_arith,
    field_from_order,
    is_irreducible_modulus,
    make_field,
)
from rankext.core.errors import (
    DivisionByZero,
    FieldTooLarge,
    InvalidModulus,
    NotPrime,
    ReducibleModulus,
    UnsupportedField,
)


ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32]


class TestMakeField:
    def test_prime_field(self):
        F = make_field(5)
        assert F.q == 5
        assert F.is_prime_field
        assert str(F) == "GF(5)"

    def test_builtin_extension(self):
        F = make_field(2, 2)
        assert F.modulus == (1, 1, 1)
        assert str(F) == "GF(2^2)"

    def test_explicit_modulus(self):
        F = make_field(3, 2, [1, 0, 1])
        assert F.q == 9
        assert F.modulus == (1, 0, 1)

    @pytest.mark.parametrize("p", [0, 1, 4, 6, 9])
    def test_not_prime(self, p):
        with pytest.raises(NotPrime):
            make_field(p)

    def test_reducible_modulus(self):
        # x^2 + 1 = (x + 1)^2 over GF(2)
        with pytest.raises(ReducibleModulus):
            make_field(2, 2, [1, 0, 1])

    def test_wrong_degree_modulus(self):
        with pytest.raises(InvalidModulus):
            make_field(2, 3, [1, 1, 1])

    def test_no_builtin(self):
        with pytest.raises(UnsupportedField):
            make_field(2, 6)

    def test_too_large(self):
        with pytest.raises(FieldTooLarge):
            make_field(2, 17)

    @pytest.mark.parametrize("q", ORDERS)
    def test_from_order(self, q):
        assert field_from_order(q).q == q

    @pytest.mark.parametrize("q", [1, 6, 12, 100])
    def test_from_order_rejects(self, q):
        with pytest.raises(NotPrime):
            field_from_order(q)


class TestArithmetic:
    def test_gf4_multiplication(self):
        # x * x = x + 1 modulo x^2 + x + 1
        F = make_field(2, 2)
        assert field_arith(F, FieldOp.MUL, 2, 2) == 3
        assert field_arith(F, "add", 2, 3) == 1

    def test_gf3(self):
        F = make_field(3)
        assert field_arith(F, "add", 2, 2) == 1
        assert field_arith(F, "neg", 1) == 2
        assert field_arith(F, "inv", 2) == 2
        assert field_arith(F, "pow", 2, 2) == 1
        assert field_arith(F, "div", 1, 2) == 2

    def test_division_by_zero(self):
        F = make_field(5)
        with pytest.raises(DivisionByZero):
            field_arith(F, "div", 3, 0)
        with pytest.raises(DivisionByZero):
            field_arith(F, "inv", 0)

    def test_elements(self):
        assert enumerate_elements(make_field(2, 3)) == tuple(range(8))

    @pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32])
    def test_builtin_moduli_irreducible(self, q):
        F = field_from_order(q)
        assert is_irreducible_modulus(F.p, F.modulus)

    @hsettings(max_examples=50, deadline=None)
    @given(st.sampled_from(ORDERS), st.data())
    def test_field_axioms(self, q, data):
        F = field_from_order(q)
        a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
        mul = lambda x, y: field_arith(F, "mul", x, y)
        add = lambda x, y: field_arith(F, "add", x, y)
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, field_arith(F, "neg", a)) == 0
        if a:
            assert mul(a, field_arith(F, "inv", a)) == 1
            assert field_arith(F, "pow", a, q - 1) == 1
