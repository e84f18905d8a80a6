from fractions import Fraction

import pytest

from cubechow.cube import identity, involution, mu, scaling
from cubechow.cycles import (AmbientContext, Cycle, DimensionMismatch, boundary, build_cycle,
                             closure_from_open, codim_one_faces, face, is_admissible,
                             is_degenerate, is_normalized, is_supported_in, point_cycle,
                             pullback, reduce_degenerates, restrict_to_open)

SQ = AmbientContext(0, 2)
A1 = AmbientContext(1, 1)
A2 = AmbientContext(2, 2)


def cyc(ctx, d, *comps):
    return build_cycle(ctx, comps, d)


def line(expr):
    return cyc(SQ, -1, (1, [expr]))


def test_point_cycle():
    z = point_cycle([2])
    assert len(z.components) == 1
    assert str(z) == "V(y1 - 2)"


def test_cancellation():
    z = cyc(SQ, -1, (1, ["y1 + y2 - 3"]), (-1, ["y1 + y2 - 3"]))
    assert z.is_zero()


def test_dimension_check():
    assert line("y1 + y2 - 3").components[0].dim == 1
    with pytest.raises(DimensionMismatch):
        cyc(SQ, -1, (1, ["y1", "y2"]))


def test_faces_of_line():
    z = line("y1 + y2 - 3")
    assert face(z, 1, 0) == point_cycle([3])
    assert face(z, 1, 1) == point_cycle([2])


def test_faces_of_point_vanish():
    z = point_cycle([2])
    assert face(z, 1, 0).is_zero() and face(z, 1, 1).is_zero()
    assert boundary(z).is_zero()


def test_demo_face_reindexes():
    z = cyc(A2, 0, (1, ["y1 - x1*x2", "y2 - x1"]))
    expected = cyc(AmbientContext(2, 1), 0, (1, ["y1 - x2", "x1 - 1"]))
    assert face(z, 2, 1) == expected


def test_boundary_of_line_cancels():
    # -(d1^1 - d1^0) + (d2^1 - d2^0) = -[2] + [3] + [2] - [3] in the 1-cube
    assert boundary(line("y1 + y2 - 3")).is_zero()


def test_boundary_of_graph():
    z = cyc(A1, 0, (1, ["y1 - x1"]))
    assert boundary(z) == cyc(AmbientContext(1, 0), 0, (1, ["x1"]), (-1, ["x1 - 1"]))


def test_face_multiplicity():
    # the second curve is tangent to y1 = 0 at y2 = 2
    ctx = AmbientContext(0, 2)
    z = cyc(ctx, -1, (1, ["y2 - 2*y1^2 - 2"]))
    assert face(z, 1, 0) == point_cycle([2])
    tangent = cyc(ctx, -1, (1, ["(y2 - 2)^2 - y1"]))
    assert face(tangent, 1, 0) == point_cycle([2]).scale(2)


def test_boundary_squared_on_plane():
    z = cyc(AmbientContext(0, 3), -1, (1, ["y1 + 2*y2 + 3*y3 - 7"]))
    assert is_admissible(z)
    assert boundary(boundary(z, False), False).is_zero()


def test_admissibility_examples():
    assert is_admissible(line("y1 + y2 - 3"))
    verdict = is_admissible(line("y1 + y2 - 1"))
    assert not verdict
    assert dict(verdict.face.assignment) in ({1: 0, 2: 1}, {1: 1, 2: 0})
    assert verdict.dimension == 0 and verdict.expected == -1


def test_demo_admissibility():
    z = cyc(A2, 0, (1, ["y1 - x1*x2", "y2 - x1"]))
    verdict = is_admissible(z)
    assert not verdict
    assert dict(verdict.face.assignment) == {1: 0, 2: 0}
    assert (verdict.dimension, verdict.expected) == (1, 0)
    assert is_admissible(restrict_to_open(z, ["x1"]))


def test_degenerate_components():
    assert is_degenerate(line("y2 - 3").components[0])
    assert not is_degenerate(line("y1 + y2 - 3").components[0])
    assert is_degenerate(cyc(A1, 0, (1, ["x1 - 2"])).components[0])
    assert reduce_degenerates(line("y2 - 3")).is_zero()


def test_normalized_examples():
    assert is_normalized(point_cycle([2]))
    assert not is_normalized(line("y1 + y2 - 3"))
    assert is_normalized(Cycle.zero(SQ, -1))


def test_pullback_examples():
    z = point_cycle([2])
    assert pullback(z, scaling(1, 1, Fraction(1, 3))) == point_cycle([6])
    assert pullback(z, identity(1)) == z
    assert pullback(z, involution(1, 1)) == point_cycle([-1])


def test_pullback_along_mu():
    z = point_cycle([Fraction(1, 2)])
    w = pullback(z, mu())
    assert str(w) == "V(y1*y2 - 1/2)"
    assert is_admissible(w)


def test_support():
    assert is_supported_in(cyc(A1, -1, (1, ["x1", "y1 - 2"])), ["x1"])
    assert not is_supported_in(cyc(A1, 0, (1, ["y1 - x1"])), ["x1"])
    assert is_supported_in(Cycle.zero(A1, 0), ["x1"])


def test_restrict_and_close():
    inside = cyc(A1, -1, (1, ["x1", "y1 - 2"]))
    outside = cyc(A1, -1, (1, ["x1 - 1", "y1 - 2"]))
    restricted = restrict_to_open(inside + outside, ["x1"])
    assert len(restricted.components) == 1
    assert closure_from_open(restricted) == outside
    assert restrict_to_open(Cycle.zero(A1, -1), ["x1"]).is_zero()


def test_json_roundtrip():
    z = cyc(A2, 0, (2, ["y1 - x1*x2", "y2 - x1"]), (-1, ["y1 - x2", "y2 - 1/2"]))
    assert Cycle.from_json(z.to_json()) == z
    u = restrict_to_open(z, ["x1"])
    assert Cycle.from_json(u.to_json()) == u


def test_codim_one_faces_keys():
    faces = codim_one_faces(line("y1 + y2 - 3"))
    assert sorted(faces) == [(1, 0), (1, 1), (2, 0), (2, 1)]
