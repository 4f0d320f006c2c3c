import pytest

from paramkit.errors import (
    BudgetExceeded,
    EmptyVariety,
    NotFiniteLength,
    ZeroDivisorQuery,
)
from paramkit.groebner import Ideal, ideal_equal
from paramkit.idealops import (
    ElementSequence,
    as_sequence,
    bracket_power,
    colon,
    dimension,
    graded_standard_counts,
    intersect,
    length,
    module_length,
    ring_dimension,
    saturate,
    socle,
    standard_monomials,
)
from paramkit.parser import make_ring, parse_poly, parse_poly_list
from paramkit.polyring import render_poly

from oracles import graded_dims, kdim_from_dims, length_from_dims


def ideal(ring, text):
    return Ideal(ring, parse_poly_list(text, ring) if text else [])


def same(ring, I, text):
    return ideal_equal(I, ideal(ring, text))


class TestSequences:
    def test_product_and_powers(self, highpower):
        s = as_sequence(parse_poly_list("a+c, b+d", highpower))
        assert render_poly(s.product()) == "a*b + b*c + a*d + c*d"
        cubes = s.powers(3)
        assert cubes[0] == parse_poly("(a+c)^3", highpower)

    def test_as_ideal_includes_quotient_implicitly(self, highpower):
        s = as_sequence(parse_poly_list("a+c, b+d", highpower))
        assert s.as_ideal().contains(parse_poly("a*c", highpower))


class TestColon:
    def test_heitmann_colon_is_the_frozen_ideal(self, heitmann):
        x = parse_poly("x", heitmann)
        got = colon(ideal(heitmann, "x^2"), x)
        assert same(heitmann, got, "x, u^4")

    def test_xz_colon(self, xz_ring):
        got = colon(ideal(xz_ring, "x^2"), parse_poly("x", xz_ring))
        assert same(xz_ring, got, "x")

    def test_colon_by_ideal_intersects_element_colons(self, highpower):
        I = ideal(highpower, "a^2, b^2")
        m = ideal(highpower, "a, b, c, d")
        got = colon(I, m)
        expected = colon(I, parse_poly("a", highpower))
        for v in ("b", "c", "d"):
            expected = intersect(expected,
                                 colon(I, parse_poly(v, highpower)))
        assert ideal_equal(got, expected)

    def test_colon_by_zero_rejected(self, highpower):
        with pytest.raises(ZeroDivisorQuery):
            colon(ideal(highpower, "a"), highpower.zero())

    def test_colon_by_element_zero_in_s(self, xz_ring):
        # z^2 is literally nonzero but vanishes in S; I : 0 is everything,
        # so the quotient is the unit ideal
        got = colon(ideal(xz_ring, "x"), parse_poly("z^2", xz_ring))
        assert same(xz_ring, got, "1")


class TestIntersect:
    def test_nested_ideals(self, highpower):
        big = ideal(highpower, "a+c, b+d")
        small = ideal(highpower, "a^2, b^2")
        assert ideal_equal(intersect(big, small), small)

    def test_coordinate_planes(self):
        R = make_ring(0, ["x", "y"], [])
        got = intersect(ideal(R, "x"), ideal(R, "y"))
        assert same(R, got, "x*y")

    def test_includes_quotient_on_both_sides(self, xz_ring):
        got = intersect(ideal(xz_ring, "x"), ideal(xz_ring, "z"))
        # x*z plus everything of J
        assert got.contains(parse_poly("x*z", xz_ring))
        assert not got.contains(parse_poly("x", xz_ring))


class TestSaturate:
    def test_strips_component(self):
        R = make_ring(0, ["x", "y"], [])
        # (x^2 y) : y^inf = (x^2)
        got = saturate(ideal(R, "x^2*y"), parse_poly("y", R))
        assert same(R, got, "x^2")

    def test_stable_when_already_saturated(self, highpower):
        I = ideal(highpower, "a+c, b+d")
        got = saturate(I, parse_poly("a", highpower))
        assert got.contains_ideal(I)


class TestBracketPower:
    def test_entries_powered(self, highpower):
        seq = as_sequence(parse_poly_list("a+c, b+d", highpower))
        bp = bracket_power(seq, 3)
        assert bp.exponent == 3
        gens = bp.as_ideal.gens
        assert gens[0] == parse_poly("(a+c)^3", highpower)
        assert gens[1] == parse_poly("(b+d)^3", highpower)


class TestDimension:
    def test_ring_dimensions(self, heitmann, highpower, xz_ring, plane):
        assert ring_dimension(heitmann) == 1
        assert ring_dimension(highpower) == 2
        assert ring_dimension(xz_ring) == 1
        assert ring_dimension(plane) == 2

    def test_quotient_dimension_with_witness(self, highpower):
        rep = dimension(ideal(highpower, "a^2, b^2"))
        assert rep.dim == 2
        assert rep.witness == ("c", "d")

    def test_zero_dimensional(self, highpower):
        rep = dimension(ideal(highpower, "a+c, b+d"))
        assert rep.dim == 0 and rep.witness == ()

    def test_unit_ideal_raises(self, plane):
        with pytest.raises(EmptyVariety):
            dimension(ideal(plane, "x, z, 1"))

    def test_matches_graded_growth_oracle(self, highpower, heitmann, ab_line):
        for ring in (highpower, heitmann, ab_line):
            dims = graded_dims(ring, [], 12)
            assert ring_dimension(ring) == kdim_from_dims(dims)


class TestStandardMonomialsAndLength:
    def test_standard_monomials_of_point(self, plane):
        monos = standard_monomials(ideal(plane, "x, z"))
        assert monos == [(0, 0)]

    def test_length_values(self, heitmann, highpower, xz_ring):
        assert length(ideal(heitmann, "x")) == 6
        assert length(ideal(heitmann, "x^2")) == 10
        assert length(ideal(heitmann, "x, u^4")) == 4
        assert length(ideal(highpower, "a+c, b+d")) == 3
        assert length(ideal(xz_ring, "x")) == 2

    def test_length_matches_graded_oracle(self, heitmann):
        x2 = parse_poly_list("x^2", heitmann)
        dims = graded_dims(heitmann, x2, 12)
        assert length(ideal(heitmann, "x^2")) == length_from_dims(dims)

    def test_unit_ideal_length_zero(self, plane):
        assert length(ideal(plane, "1")) == 0

    def test_positive_dimension_rejected(self, highpower):
        with pytest.raises(NotFiniteLength):
            length(ideal(highpower, "a^2, b^2"))


class TestSocle:
    def test_heitmann_socle(self, heitmann):
        assert same(heitmann, socle(ideal(heitmann, "x")), "x, u^5")

    def test_point_socle_is_unit(self, plane):
        assert same(plane, socle(ideal(plane, "x, z")), "1")


class TestGradedCounts:
    def test_counts_profile(self, heitmann):
        counts = graded_standard_counts(ideal(heitmann, "x"), 7)
        assert counts == [1, 1, 1, 1, 1, 1, 0, 0]

    def test_module_length_of_annihilator(self, xz_ring):
        ann = colon(Ideal(xz_ring, []), parse_poly("x", xz_ring))
        assert module_length(ann) == 1

    def test_module_length_infinite_rejected(self, highpower):
        with pytest.raises(NotFiniteLength):
            module_length(ideal(highpower, "a"))
