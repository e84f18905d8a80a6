from fractions import Fraction

import pytest
import sympy as sp

from cubechow.algebra import Ideal, Ring, variety_contained

XY = Ring(["x", "y"], [])


def I(*gens, ring=XY):
    return Ideal.parse(ring, gens)


def test_dimension_examples():
    assert Ideal(Ring(["a", "b", "c"], []), []).dimension() == 3
    R = Ring.standard(2, 2)
    assert I("y1 - x1*x2", "y2 - x1", ring=R).dimension() == 2
    assert I("1").dimension() is None


def test_dimension_of_union_is_max():
    R = Ring(["a", "b", "c"], [])
    assert I("a*b", "a*c", ring=R).dimension() == 2
    assert I("a", "b*c", ring=R).dimension() == 1


def test_saturate_examples():
    x = XY.gen("x")
    assert I("x*y").saturate(x) == I("y")
    assert I("x*y").saturate(XY.one()) == I("x*y")
    assert I("x^2").saturate(x).is_unit()


def test_saturate_against_quotient_oracle():
    # I : x^inf for I = <x^2*y, x*y^2> is <y>
    x = XY.gen("x")
    assert I("x^2*y", "x*y^2").saturate(x) == I("y")


def test_eliminate_examples():
    R = Ring(["x"], ["y1", "y2"])
    assert I("y1 - x", "y2 - x", ring=R).eliminate(["x"]) == I("y1 - y2", ring=R)
    assert I("x*y - 1").eliminate(["x"]).is_zero()
    ideal = I("x^2 - y")
    assert ideal.eliminate([]) == ideal


def test_eliminate_against_resultant():
    R = Ring(["t"], ["u", "v"])
    got = I("u - t^2 - 1", "v - t^3", ring=R).eliminate(["t"])
    t, u, v = sp.symbols("t u v")
    res = sp.resultant(u - t ** 2 - 1, v - t ** 3, t)
    (g,) = got.basis
    assert sp.simplify(sp.expand(sp.sympify(str(g).replace("^", "**"))) / sp.expand(res)).is_constant()


def test_variety_containment():
    assert variety_contained(I("x", "y"), I("x"))
    assert variety_contained(I("x"), I("x*y"))
    assert not variety_contained(I("x"), I("y"))


def test_radical_membership():
    assert I("x^3").radical_contains(XY.gen("x"))
    assert not I("x^3").radical_contains(XY.gen("y"))


def test_intersection():
    assert I("x").intersect(I("y")) == I("x*y")
    assert I("x").intersect(Ideal.unit(XY)) == I("x")


def test_sum_and_product():
    assert (I("x") + I("y")) == I("x", "y")
    assert (I("x") * I("y")) == I("x*y")


def test_length_and_point_multiplicities():
    ideal = I("x^2", "y - 1")
    assert ideal.length() == 2
    pieces = ideal.point_cycle()
    assert [(str(p), k) for p, k in pieces] == [("<x, y - 1>", 2)]


def test_point_cycle_splits_distinct_points():
    ideal = I("(x - 1)*(x - 2)^2", "y")
    mults = sorted(k for _, k in ideal.point_cycle())
    assert mults == [1, 2]
    assert ideal.length() == 3


def test_generic_reducedness():
    assert I("x*y").is_generically_reduced()
    assert not I("x^2").is_generically_reduced()


def test_substitute_clears_denominators():
    got = I("x - y").substitute({"x": XY.parse("1/y")})
    assert got == I("1 - y^2")


def test_characteristic_polynomial():
    ideal = I("x^2 - 2", "y")
    q = ideal.characteristic_polynomial(XY.gen("x"))
    assert [Fraction(v) for v in q] == [Fraction(-2), Fraction(0), Fraction(1)]


def test_generators_must_be_polynomials():
    with pytest.raises(ValueError):
        Ideal(XY, [XY.parse("1/x")])
