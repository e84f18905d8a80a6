from fractions import Fraction

import pytest
import sympy as sp

from cubechow.algebra import ParseError, Polynomial, RationalFunction, Ring, divide_exact
from cubechow.algebra.poly import UndefinedSubstitution

from conftest import to_sympy

R = Ring(["x"], ["y", "z"], ["c"])


def P(text, ring=R):
    return ring.parse_poly(text)


def test_parse_and_print_roundtrip():
    p = P("3/2*x^2*y - 1 + z*c")
    assert str(p) == "3/2*x^2*y + z*c - 1"
    assert P(str(p)) == p


def test_parse_errors():
    for bad in ["x +", "(x", "w", "x ** y", "1/0"]:
        with pytest.raises((ParseError, ZeroDivisionError)):
            R.parse(bad)


def test_parse_poly_rejects_rational_function():
    with pytest.raises(ValueError):
        R.parse_poly("1/x")


def test_arithmetic_matches_sympy():
    a = P("x*y - 2*z + 1/3")
    b = P("y^2 - x + c")
    expected = sp.expand(to_sympy(a) * to_sympy(b) - 3 * to_sympy(a) ** 2)
    got = a * b - 3 * a ** 2
    assert sp.expand(to_sympy(got) - expected) == 0


def test_eta_boundary_substitution():
    p = P("(1 - (1 - c)*(1 - z))*y")
    assert p.substitute({"z": 0}) == RationalFunction(P("c*y"), R.one())


def test_empty_substitution_is_identity():
    p = P("x*y - z")
    assert p.substitute({}).as_polynomial() == p


def test_numeric_substitution():
    assert P("y*z").substitute({"y": 2, "z": 3}).as_polynomial() == R.const(6)


def test_substitute_rational_values_cancels():
    # (y^2 - 1) at y = 1/z is (1 - z^2)/z^2
    r = P("y^2 - 1").substitute({"y": R.parse("1/z")})
    assert r == R.parse("(1 - z^2)/z^2")


def test_undefined_evaluation():
    r = R.parse("x/(y - 1)")
    with pytest.raises(UndefinedSubstitution):
        r.evaluate({"x": 1, "y": 1})


def test_rational_function_normal_form():
    r = R.parse("(x^2 - y^2)/(2*x - 2*y)")
    assert r.is_polynomial()
    assert r.as_polynomial() == P("1/2*x + 1/2*y")


def test_divide_exact():
    assert divide_exact(P("x^2 - 1"), P("x - 1")) == P("x + 1")
    assert divide_exact(P("x^2 + 1"), P("x - 1")) is None


def test_evaluate_and_degree():
    p = P("x^3*y - y*z + 2")
    assert p.degree() == 4
    assert p.degree("y") == 1
    assert p.evaluate({"x": 2, "y": Fraction(1, 2), "z": 3}) == Fraction(9, 2)


def test_compose_into_other_ring():
    target = Ring.standard(0, 2)
    p = P("y*z - y", Ring(["y", "z"], []))
    q = p.compose([P("y1 + 1", target), P("y2^2", target)], target)
    assert q == P("y1*y2^2 + y2^2 - y1 - 1", target)


def test_polynomial_equality_and_hash():
    a = P("x + y")
    b = P("y + x")
    assert a == b and hash(a) == hash(b)
    assert isinstance(a, Polynomial)
