"""Property tests over random inputs."""

import random

from hypothesis import HealthCheck, given, settings, strategies as st

from cubechow.algebra import Ideal, Polynomial, Ring
from cubechow.blowup import initial_space
from cubechow.cycles import boundary
from cubechow.suites import random_linear_cycle

R = Ring(["x"], ["y", "z"])
NAMES = R.names

coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 2)] * 3)
polys = st.dictionaries(exps, coefs, max_size=4).map(lambda t: Polynomial(R, t))
values = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@given(polys, polys, values, values)
def test_substitution_is_a_ring_map(p, q, a, b):
    assign = {"x": a, "y": b}
    assert (p + q).substitute(assign) == p.substitute(assign) + q.substitute(assign)
    assert (p * q).substitute(assign) == p.substitute(assign) * q.substitute(assign)


@given(polys, polys, values, values, values)
def test_evaluation_is_a_ring_map(p, q, a, b, c):
    point = {"x": a, "y": b, "z": c}
    assert (p * q - p).evaluate(point) == p.evaluate(point) * q.evaluate(point) - p.evaluate(point)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_groebner_basis_is_canonical(gens, rnd):
    ideal = Ideal(R, gens)
    # a different generating set of the same ideal
    mixed = list(ideal.gens)
    rnd.shuffle(mixed)
    extra = [g * R.gen(rnd.choice(NAMES)) + h for g, h in zip(mixed, mixed[1:] + mixed[:1])]
    other = Ideal(R, mixed + extra)
    assert other.basis == ideal.basis


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=1, max_size=2), polys)
def test_saturation_is_idempotent(gens, f):
    if f.is_zero():
        return
    ideal = Ideal(R, gens)
    once = ideal.saturate(f)
    assert once.saturate(f) == once
    assert once.contains_ideal(ideal)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10 ** 6))
def test_boundary_squares_to_zero(seed):
    z = random_linear_cycle(random.Random(seed))
    assert boundary(boundary(z, False), False).is_zero()
    assert boundary(boundary(z)).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, [2, 3]), (2, [1, 4]), (3, [2, 4]), (3, [1, 3, 5])]))
def test_signs_flip_along_every_edge(case):
    n, center = case
    space = initial_space(n).blow_up(center)
    signs = space.vertex_signs()
    for _, v, w in space.edges():
        g = space.edge_permutation(v, w)
        parity = _sign(g)
        assert signs[v.key] == -parity * signs[w.key]


def _sign(g):
    seen, sign = set(), 1
    for start in range(len(g)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = g[k]
            length += 1
        sign *= -1 if length % 2 == 0 else 1
    return sign
