from fractions import Fraction
import itertools

import pytest

from cubechow.cube import (CubeMorphism, compose, compose_all, cube_ring, equal, eta, face_map,
                           faces, h_map, identity, involution, iota_v, mu, permutation, pi_v,
                           projection, scaling, vertex_sign, vertices, verify_eta_table,
                           verify_h_face_table)


def coords(f):
    return [str(c) for c in f.coords]


def test_involution_and_scaling():
    assert coords(involution(2, 2)) == ["y1", "-y2 + 1"]
    assert coords(scaling(1, 1, "c")) == ["y1*c"]


def test_scaling_rejects_face_values():
    for bad in (0, 1):
        with pytest.raises(ValueError):
            scaling(1, 1, bad)


def test_pi_iota_composite():
    f = compose(pi_v((0, 1)), iota_v((0, 1), ("c1", "c2")))
    ring = cube_ring(2, ("c1", "c2"))
    expected = CubeMorphism(2, [ring.parse("c1*y1"), ring.parse("1 - (1 - c2)*y2")],
                            ("c1", "c2"))
    assert equal(f, expected)


def test_eta_values_on_edges():
    ring = cube_ring(1, ("c",))
    at_z1 = compose(eta(0, "c"), face_map(2, 2, 1).with_params(["c"]))
    assert at_z1.coords[0] == ring.parse("y1")
    at_y0 = compose(eta(1, "c"), face_map(2, 1, 0).with_params(["c"]))
    assert at_y0.coords[0] == ring.parse("1")


def test_eta_at_degenerate_parameter():
    f = eta(0, "c").specialize({"c": 1})
    assert coords(f) == ["y1"]


def test_h_map_low_dimension():
    ring = cube_ring(2, ("c1",))
    h = h_map(1, 0, ("c1",), 1)
    assert h.coords[0] == ring.parse("(1 - (1 - c1)*(1 - y2))*y1")


def test_h_faces_on_last_coordinate():
    c = ("c1", "c2")
    h = h_map(2, 0, c, 1)
    assert equal(compose(h, face_map(3, 3, 1)), identity(2).with_params(c))
    assert equal(compose(h, face_map(3, 3, 0)), scaling(2, 1, "c1").with_params(c))
    h1 = h_map(2, 1, c, 1)
    assert equal(compose(h1, face_map(3, 3, 0)),
                 compose(involution(2, 1), scaling(2, 1, "1-c1")).with_params(c))


def test_involution_squares_to_identity():
    for n in (1, 2, 3):
        for j in range(1, n + 1):
            assert equal(compose(involution(n, j), involution(n, j)), identity(n))


def test_inverse_scaling():
    for c in (Fraction(1, 3), Fraction(-5, 2), Fraction(7)):
        assert equal(compose(scaling(1, 1, c), scaling(1, 1, 1 / c)), identity(1))


def test_flatness_factorizations():
    assert equal(eta(0, "c"), compose_all(mu(), involution(2, 2), scaling(2, 2, "1-c"),
                                          involution(2, 2)))
    assert equal(eta(1, "c"), compose_all(involution(1, 1), mu(), scaling(2, 1, "1-c"),
                                          involution(2, 2)))


def test_cubical_face_relations():
    for n in (2, 3):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            for e, d in itertools.product((0, 1), repeat=2):
                lhs = compose(face_map(n, j, d), face_map(n - 1, i, e))
                rhs = compose(face_map(n, i, e), face_map(n - 1, j - 1, d))
                assert equal(lhs, rhs)


def test_projection_and_permutation():
    assert coords(projection(2, 1)) == ["y2"]
    p = permutation(3, (2, 3, 1))
    assert equal(compose_all(p, p, p), identity(3))


def test_vertex_signs():
    assert vertex_sign((0, 0)) == 1
    assert vertex_sign((1, 0)) == -1
    assert vertex_sign((1, 0, 1)) == 1


def test_face_and_vertex_counts():
    assert len(vertices(3)) == 8
    assert len(faces(2, 1)) == 4
    assert len(faces(3, 2)) == 12


def test_eta_table_passes():
    report = verify_eta_table()
    assert report.passed and len(report.entries) == 8


def test_eta_table_catches_corruption():
    def corrupt(ell, c):
        f = eta(ell, c)
        if ell == 0:
            ring = f.ring
            return CubeMorphism(2, [f.coords[0] + ring.parse("y1*y2*(1 - c)")], f.params)
        return f
    report = verify_eta_table(eta_impl=corrupt)
    assert not report.passed
    assert 0 < len(report.failures()) < 8


@pytest.mark.parametrize("n,count", [(1, 9), (2, 26), (3, 51), (4, 84)])
def test_h_face_table(n, count):
    report = verify_h_face_table(n)
    assert report.passed
    assert len(report.entries) == count


def test_h_face_table_catches_wrong_h():
    def swapped(n, ell, c, i):
        return h_map(n, 1 - ell, c, i)
    assert not verify_h_face_table(2, h_impl=swapped).passed


def test_morphism_json_roundtrip():
    f = compose(pi_v((1, 0)), iota_v((1, 0), ("c1", "c2")))
    assert equal(CubeMorphism.from_json(f.to_json()), f)
