from fractions import Fraction

import pytest

from cubechow.cycles import AmbientContext, Cycle, build_cycle, codim_one_faces, face, point_cycle
from cubechow.subdivision import (BudgetExhausted, NonGeneralParameter, NotNormalized,
                                  bidivision, cubical_subdivision, is_general, phi_chain,
                                  phi_cycle, phi_homotopy, random_points,
                                  sample_general_position, subdivision_maps)

THIRD = Fraction(1, 3)


def test_bidivision_of_point():
    z = point_cycle([2])
    assert bidivision(z, 1, THIRD) == point_cycle([6]) - point_cycle([Fraction(-3, 2)])


def test_bidivision_of_zero():
    z = Cycle.zero(AmbientContext(0, 1), -1)
    assert bidivision(z, 1, THIRD).is_zero()


def test_bidivision_keeps_faces_trivial():
    w = bidivision(point_cycle([2]), 1, THIRD)
    assert face(w, 1, 0).is_zero() and face(w, 1, 1).is_zero()


def test_bidivision_rejects_face_parameter():
    with pytest.raises(NonGeneralParameter):
        bidivision(point_cycle([2]), 1, 1)


def test_phi_of_point():
    z = point_cycle([2])
    phi = phi_cycle(z, 1, [THIRD])
    ctx = AmbientContext(0, 2)
    expected = build_cycle(ctx, [(1, ["(1 - 2/3*(1 - y2))*y1 - 2"]),
                                 (-1, ["1 - 2/3*y1*(1 - y2) - 2"])], -1)
    assert phi == expected
    cert = phi_homotopy(z, 1, [THIRD])
    assert cert.passed


def test_phi_of_zero():
    z = Cycle.zero(AmbientContext(0, 1), -1)
    cert = phi_homotopy(z, 1, [THIRD])
    assert cert.phi.is_zero() and cert.passed


def test_sign_mutation_detected_for_even_n():
    z = point_cycle([2, 3])
    c = [THIRD, Fraction(2, 5)]
    assert phi_homotopy(z, 1, c).passed
    assert not phi_homotopy(z, 1, c, sign=False).passed


def test_homotopy_requires_normalized():
    z = build_cycle(AmbientContext(0, 2), [(1, ["y1 + y2 - 3"])], -1)
    with pytest.raises(NotNormalized):
        phi_homotopy(z, 1, [THIRD, THIRD])


def test_subdivision_forms_agree_on_point():
    z = point_cycle([2])
    a = cubical_subdivision(z, [THIRD], "iterated")
    b = cubical_subdivision(z, [THIRD], "vertex_sum")
    assert a == b == point_cycle([6]) - point_cycle([Fraction(-3, 2)])


def test_subdivision_forms_agree_in_two_dims(corpus):
    z = corpus.cycle("quartic-curve").cycle
    c = sample_general_position(z, seed=5)
    assert cubical_subdivision(z, c, "iterated") == cubical_subdivision(z, c, "vertex")


def test_vertex_sum_terms():
    maps = subdivision_maps([THIRD, THIRD])
    assert len(maps) == 4
    assert sorted(s for s, _, _ in maps) == [-1, -1, 1, 1]


def test_chain_on_point():
    z = point_cycle([2])
    _, cert = phi_chain(z, [THIRD])
    assert cert.passed


def test_chain_two_stages(corpus):
    z = corpus.cycle("point-2-3").cycle
    c = sample_general_position(z, seed=1)
    _, cert = phi_chain(z, c)
    assert cert.passed
    assert cert.stages_normalized == [True, True]
    assert all(f.is_zero() for f in codim_one_faces(cert.sd).values())


def test_sampler_zero_cycle_accepts_first():
    z = Cycle.zero(AmbientContext(0, 1), -1)
    assert sample_general_position(z, seed=3) == next(random_points(1, 3))


def test_sampler_deterministic():
    z = point_cycle([2])
    assert sample_general_position(z, seed=9) == sample_general_position(z, seed=9)
    c = sample_general_position(z, seed=9)
    assert all(0 < v < 1 for v in c)


def test_adversarial_parameter_rejected(corpus):
    fx = corpus.cycle("point-half")
    bad = tuple(Fraction(v) for v in fx.extra["bad_c"])
    assert not is_general(fx.cycle, bad)
    rejected = []
    c = sample_general_position(fx.cycle, candidates=[bad, (THIRD,)], rejected=rejected)
    assert rejected == [bad]
    assert c == (THIRD,)


def test_sampler_budget():
    z = point_cycle([Fraction(1, 2)])
    with pytest.raises(BudgetExhausted):
        sample_general_position(z, candidates=[(Fraction(1, 2),)] * 3, budget=3)
