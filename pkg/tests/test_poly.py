from fractions import Fraction

import pytest

from arcmult.errors import ParseError, VariableMismatch
from arcmult.fields import INF, RATIONALS, prime_field
from arcmult.poly import MultiPoly, origin, parse_poly

XY = ("x", "y")


def P(text, variables=XY, field=RATIONALS):
    return parse_poly(text, variables, field)


class TestOrderAt:
    def test_cusp_at_origin(self):
        assert P("y^2 - x^3").order_at((0, 0)) == 2

    def test_unit_everywhere(self):
        one = P("1")
        assert one.order_at((0, 0)) == 0
        assert one.order_at((5, -2)) == 0

    def test_cusp_at_smooth_point(self):
        # f(x+1, y+1) has linear part -3x + 2y
        assert P("y^2 - x^3").order_at((1, 1)) == 1

    def test_zero_polynomial_is_infinite(self):
        zero = MultiPoly.zero(XY, RATIONALS)
        assert zero.order_at((0, 0)) == INF

    def test_point_length_checked(self):
        with pytest.raises(VariableMismatch):
            P("x").order_at((1, 2, 3))


class TestHasseDerivative:
    def test_first_derivative(self):
        assert P("x^3").hasse_derivative((1, 0)) == P("3*x^2")

    def test_char2_first_derivative_vanishes(self):
        f2 = prime_field(2)
        assert P("y^2", field=f2).hasse_derivative((0, 1)).is_zero()

    def test_char2_divided_second_derivative(self):
        f2 = prime_field(2)
        assert P("y^2", field=f2).hasse_derivative((0, 2)) == P("1", field=f2)

    def test_matches_scaled_partials_over_q(self):
        # a! * hasse(a) equals the iterated partial derivative
        f = P("x^3*y^2 - 2*x*y + 7")
        once = f.hasse_derivative((1, 0))
        twice = f.hasse_derivative((2, 0))
        d1 = P("3*x^2*y^2 - 2*y")
        assert once == d1
        # second iterated partial = 6xy^2; 2! * hasse = 2*(3xy^2)
        assert twice.scale(2) == P("6*x*y^2")


class TestTranslateSubstitute:
    def test_translate_by_origin_is_identity(self):
        f = P("y^2 - x^3")
        assert f.translate((0, 0)) == f

    def test_translate_expands_binomially(self):
        assert P("x^2", ("x",)).translate((1,)) == P("x^2 + 2*x + 1", ("x",))

    def test_translation_composition(self):
        f = P("y^2 - x^3 + 5*x*y")
        p = (Fraction(2), Fraction(-1, 2))
        minus = (Fraction(-2), Fraction(1, 2))
        assert f.translate(p).translate(minus) == f

    def test_substitute_is_ring_homomorphism(self):
        xyt = ("x", "y", "t")
        f = P("y^2 - x^3", xyt)
        values = {
            "x": P("x*t", xyt),
            "y": P("y*t", xyt),
        }
        assert f.substitute(values) == P("y^2*t^2 - x^3*t^3", xyt)

    def test_substitute_requires_matching_field(self):
        f = P("x")
        with pytest.raises(Exception):
            f.substitute({"x": P("x", field=prime_field(3))})


def test_order_multiplicative_spot():
    f = P("y^2 - x^3")
    g = P("x + y")
    point = (Fraction(0), Fraction(0))
    assert (f * g).order_at(point) == f.order_at(point) + g.order_at(point)


def test_coefficients_in_and_restrict():
    f = P("y^2 + x*y + x^3")
    coefficients = f.coefficients_in("y")
    assert coefficients[2] == P("1")
    assert coefficients[1] == P("x")
    assert coefficients[0] == P("x^3")
    assert coefficients[0].restrict(("x",)) == P("x^3", ("x",))
    with pytest.raises(VariableMismatch):
        f.restrict(("x",))


def test_extend_keeps_values():
    f = P("y^2 - x^3")
    g = f.extend(("x", "y", "w"))
    assert g.variables == ("x", "y", "w")
    assert g.order_at_origin() == 2
    assert g.restrict(XY) == f


def test_initial_form():
    f = P("2*y + y^2 - x^3")
    assert f.initial_form() == P("2*y")


def test_normalized_scales_lowest_term_to_one():
    f = P("2*y + 4*x^2")
    assert f.normalized() == P("y + 2*x^2")
    g = P("y^2 - x^3")
    assert g.normalized() == g


def test_str_round_trips_through_parser():
    for text in ("y^2 - x^3", "1 - x^3*y", "x^2 + 2*x + 1", "3*x*y - 7"):
        f = P(text)
        assert parse_poly(str(f), XY, RATIONALS) == f


def test_str_of_prime_field_polys():
    f2 = prime_field(2)
    assert str(P("y^2 - x^3", field=f2)) == "y^2 + x^3"


class TestParser:
    def test_rejects_double_caret(self):
        with pytest.raises(ParseError):
            P("y^^2")

    def test_rejects_unknown_variable(self):
        with pytest.raises(ParseError) as err:
            P("y^2 - z^3")
        assert "z" in str(err.value)

    def test_rejects_trailing_garbage(self):
        with pytest.raises(ParseError):
            P("x + ")

    def test_reports_column(self):
        with pytest.raises(ParseError) as err:
            P("x + %")
        assert err.value.column == 5

    def test_unary_minus_and_parentheses(self):
        assert P("-x + y") == P("y - x")
        assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")

    def test_integer_coefficients_reduce_mod_p(self):
        f3 = prime_field(3)
        assert P("3*x + 4*y", field=f3) == P("y", field=f3)
