import pytest

from cubechow.cycles import AmbientContext, Cycle, build_cycle
from cubechow.sheaf import (GlueError, OpenSet, class_equal, glue, in_kernel,
                            kernel_intersection_law, mv_check, restrict_components)

A1 = AmbientContext(1, 1)


def pt(x, y="2", coef=1):
    """The point (x1, y1) = (x, y) over the affine line."""
    return build_cycle(A1, [(coef, [f"x1 - ({x})", f"y1 - ({y})"])], -1)


def graph():
    return build_cycle(A1, [(1, ["x1*y1^2 - x1*y1 + 2"])], 0)


U = OpenSet.principal(1, "x1")
V = OpenSet.principal(1, "x1 - 1")


def test_in_kernel_examples():
    assert in_kernel(pt(0), ["x1"])
    assert not in_kernel(graph(), ["x1"])
    assert in_kernel(Cycle.zero(A1, 0), ["x1"])


def test_class_equality():
    z = pt(2)
    assert class_equal(z, z + pt(0), U)
    assert not class_equal(z, z + pt(1), U)


def test_open_set_algebra():
    assert str(U & V) == "Y - V(x1^2 - x1)"
    assert str(U | V) == "Y"
    assert (U & V) <= U and U <= (U | V)
    assert not U <= V
    assert str(OpenSet.whole(1)) == "Y" and str(OpenSet.empty(1)) == "{}"


def test_restrictions_compose():
    u1, u2 = OpenSet.principal(1, "x1"), OpenSet.principal(1, "x1*(x1 - 2)")
    u3 = OpenSet.principal(1, "x1*(x1 - 2)*(x1 + 1)")
    z = pt(0) + pt(2) + pt(-1) + pt(3)
    direct = restrict_components(z, u3)
    staged = restrict_components(restrict_components(z, u1), u2)
    staged = restrict_components(staged, u3)
    assert direct == staged == pt(3)


def test_glue_points():
    x1 = pt(0) + pt(2)
    x2 = pt(2)
    result = glue(x1, x2, U, V)
    assert class_equal(result.cycle, x1, U) and class_equal(result.cycle, x2, V)
    assert result.delta_uv.is_zero()


def test_glue_equal_sections():
    z = pt(2) + pt(-1, coef=3)
    result = glue(z, z, U, V)
    assert result.cycle == z
    assert result.delta_u.is_zero() and result.delta_v.is_zero()


def test_glue_over_whole_line():
    y = OpenSet.whole(1)
    z = pt(5)
    assert glue(z, z, y, y).cycle == z


def test_glue_rejects_disagreeing_sections():
    with pytest.raises(GlueError):
        glue(pt(2), pt(3), U, V)


def test_mv_on_point_corpus(corpus):
    data = corpus.mv_points()
    cycles = [Cycle.from_json(c) for c in data["cycles"]]
    report = mv_check(OpenSet(1, tuple(data["U"])), OpenSet(1, tuple(data["V"])), cycles)
    assert report.passed
    assert any(e.check_id.startswith("ker d1 in im d0") for e in report.entries)


def test_mv_degenerate_case():
    y = OpenSet.whole(1)
    assert mv_check(y, y, [pt(0), pt(1)]).passed


def test_global_sections_are_cycles():
    y = OpenSet.whole(1)
    assert class_equal(pt(0), pt(0), y)
    assert not class_equal(pt(0), pt(0) + pt(1), y)


def test_kernel_intersection_law():
    z = pt(0) + pt(1, coef=-2)
    assert kernel_intersection_law(z, ["x1*(x1 - 1)"], ["x1*(x1 - 1)*(x1 - 2)"])
    assert kernel_intersection_law(z, ["x1"], ["x1 - 1"])
    assert in_kernel(z, ["x1*(x1 - 1)"])
