from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from paramkit.errors import (
    ExponentOverflow,
    LengthMismatch,
    ParamkitError,
    RingMismatch,
)
from paramkit.parser import make_ring, parse_poly
from paramkit.polyring import (
    GREVLEX,
    LEX,
    FieldSpec,
    MonomialOrder,
    Polynomial,
    monomial_compare,
    primitive_part,
    render_poly,
)


class TestFieldSpec:
    def test_rationals(self):
        f = FieldSpec("rationals", None)
        assert f.char == 0
        assert f.from_int(3) == Fraction(3)
        assert f.div(f.one(), f.from_int(4)) == Fraction(1, 4)

    def test_prime_field(self):
        f = FieldSpec("prime-field", 7)
        assert f.char == 7
        assert f.from_int(10) == 3
        assert f.mul(f.from_int(3), f.inv(f.from_int(3))) == 1

    def test_rejects_composite_modulus(self):
        with pytest.raises(ParamkitError):
            FieldSpec("prime-field", 6)

    def test_rejects_huge_modulus(self):
        with pytest.raises(ParamkitError):
            FieldSpec("prime-field", 2**31 + 11)

    def test_large_prime_accepted(self):
        f = FieldSpec("prime-field", 2147483647)
        assert f.inv(f.from_int(2)) == (2147483647 + 1) // 2


class TestMonomialOrders:
    def test_grevlex_ties_break_by_reversed_last_variable(self):
        # deg-2 monomials in 3 vars: x^2 > xy > y^2 > xz > yz > z^2
        R = make_ring(0, ["x", "y", "z"], [])
        ordered = sorted(
            [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)],
            key=GREVLEX.key, reverse=True,
        )
        assert ordered == [(2, 0, 0), (1, 1, 0), (0, 2, 0),
                           (1, 0, 1), (0, 1, 1), (0, 0, 2)]

    def test_lex_ignores_total_degree(self):
        assert monomial_compare(LEX, (1, 0), (0, 5)) == "GT"
        assert monomial_compare(GREVLEX, (1, 0), (0, 5)) == "LT"

    def test_compare_requires_equal_lengths(self):
        with pytest.raises(LengthMismatch):
            monomial_compare(GREVLEX, (1, 0), (1, 0, 0))

    def test_elimination_order_blocks(self):
        elim = MonomialOrder("elimination", block=1)
        # any monomial containing the tag beats any tag-free monomial
        assert monomial_compare(elim, (1, 0, 0), (0, 7, 7)) == "GT"
        assert monomial_compare(elim, (0, 2, 0), (0, 1, 1)) == "GT"


class TestArithmetic:
    def test_add_mul_pow(self):
        R = make_ring(0, ["x", "y"], [])
        x, y = parse_poly("x", R), parse_poly("y", R)
        assert (x + y) * (x - y) == x * x - y * y
        assert (x + y) ** 3 == x**3 + 3 * x**2 * y + 3 * x * y**2 + y**3

    def test_char_two_squares(self):
        R = make_ring(2, ["x", "y"], [])
        f = parse_poly("x + y", R)
        assert f * f == parse_poly("x^2 + y^2", R)

    def test_scalar_coercion(self):
        R = make_ring(0, ["x"], [])
        x = parse_poly("x", R)
        assert 2 * x + 1 == parse_poly("2*x + 1", R)
        assert x - x == R.zero()
        assert not (x - x)

    def test_cross_ring_arithmetic_rejected(self):
        R1 = make_ring(0, ["x"], [])
        R2 = make_ring(0, ["y"], [])
        with pytest.raises(RingMismatch):
            parse_poly("x", R1) + parse_poly("y", R2)

    def test_same_presentation_different_objects_compatible(self):
        R1 = make_ring(0, ["x", "y"], ["x*y"])
        R2 = make_ring(0, ["x", "y"], ["x*y"])
        assert parse_poly("x", R1) + parse_poly("y", R2) == parse_poly("x+y", R1)

    def test_power_overflow_guard(self):
        R = make_ring(0, ["x"], [])
        x = parse_poly("x", R)
        with pytest.raises(ExponentOverflow):
            (x ** 1000) ** (2**24)

    def test_total_degree_and_homogeneity(self):
        R = make_ring(0, ["x", "y"], [])
        assert parse_poly("x^2*y", R).total_degree() == 3
        assert R.zero().total_degree() == -1
        assert parse_poly("x^2 + x*y", R).is_homogeneous()
        assert not parse_poly("x^2 + x", R).is_homogeneous()


class TestRingPresentation:
    def test_var_lookup_and_gens(self, highpower):
        assert highpower.nvars == 4
        names = [render_poly(g) for g in highpower.gens_of_maximal_ideal()]
        assert names == ["a", "b", "c", "d"]

    def test_quotient_and_ambient(self, highpower):
        amb = highpower.ambient()
        assert amb.quotient_gens == ()
        again = amb.quotient_by(highpower.quotient_gens)
        assert again.key() == highpower.key()

    def test_homogeneous_flags(self, heitmann, highpower):
        assert highpower.is_homogeneous()
        assert heitmann.is_homogeneous()
        W = make_ring(0, ["x"], ["x^2 + x"])
        assert not W.is_homogeneous()


class TestRendering:
    def test_known_forms(self):
        R = make_ring(0, ["x", "y"], [])
        assert render_poly(parse_poly("x - y", R)) == "x - y"
        assert render_poly(parse_poly("-x + y", R)) == "-x + y"
        assert render_poly(R.zero()) == "0"
        assert render_poly(parse_poly("1/2*x^2", R)) == "1/2*x^2"
        assert render_poly(R.const(Fraction(-3, 4))) == "-3/4"

    def test_char_p_rendering_has_no_fractions(self):
        R = make_ring(5, ["x"], [])
        assert render_poly(parse_poly("4*x + 3", R)) == "4*x + 3"

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_render_parse_round_trip(self, data):
        R = make_ring(0, ["x", "y"], [])
        nterms = data.draw(st.integers(0, 5))
        terms = {}
        for _ in range(nterms):
            m = (data.draw(st.integers(0, 4)), data.draw(st.integers(0, 4)))
            c = Fraction(data.draw(st.integers(-9, 9)),
                         data.draw(st.integers(1, 9)))
            if c:
                terms[m] = c
        f = Polynomial(R, terms)
        assert parse_poly(render_poly(f), R) == f


def test_primitive_part_clears_denominators():
    R = make_ring(0, ["x", "y"], [])
    f = parse_poly("1/2*x + 1/3*y", R)
    g = primitive_part(f)
    assert g == parse_poly("3*x + 2*y", R)
    assert primitive_part(parse_poly("-4*x - 6*y", R)) == parse_poly("2*x + 3*y", R)
