"""Bi-division, its homotopy, and cubical subdivision at a general point c."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .cube import compose, h_map, involution, iota_v, pi_v, scaling, vertex_sign, vertices
from .cycles import Cycle, boundary, closure_from_open, is_admissible, is_normalized_mod, pullback, \
    reduce_degenerates, codim_one_faces


class NonGeneralParameter(ValueError):
    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.stage = stage


class NotNormalized(ValueError):
    pass


Membership = Callable[[Cycle], bool]


def _as_point(c: Sequence) -> tuple[Fraction, ...]:
    out = tuple(Fraction(v) for v in c)
    for v in out:
        if v in (0, 1):
            raise NonGeneralParameter(f"parameter {v} lies on a face")
    return out


def _require_admissible(z: Cycle, stage: str) -> Cycle:
    result = is_admissible(z)
    if not result:
        raise NonGeneralParameter(f"non-general parameter at {stage}: {result.describe()}", stage)
    return z


def bidivision_map(n: int, i: int, c: Fraction):
    """y_i |-> 1 - (1 - c) y_i, the map of the second bi-division term."""
    return compose(involution(n, i), scaling(n, i, 1 - Fraction(c)))


def bidivision(z: Cycle, i: int, c: Fraction | int, check: bool = True) -> Cycle:
    """sigma_{c,i}^* z - sigma_{1-c,i}^* tau_i^* z."""
    (c,) = _as_point([c])
    if z.is_zero():
        return z
    n = z.n
    result = pullback(z, scaling(n, i, c)) - pullback(z, bidivision_map(n, i, c))
    if check:
        _require_admissible(result, f"bidivision i={i} c={c}")
    return result


@dataclass
class HomotopyCertificate:
    z: Cycle
    c: tuple[Fraction, ...]
    i: int
    phi: Cycle
    lhs: Cycle
    rhs: Cycle
    passed: bool
    residual: Cycle | None = None

    def to_json(self) -> dict:
        out = {
            "index": self.i,
            "point": [str(v) for v in self.c],
            "phi": self.phi.to_json(),
            "boundary_phi": str(self.lhs),
            "z_minus_delta": str(self.rhs),
            "status": "pass" if self.passed else "fail",
        }
        if self.residual is not None:
            out["residual"] = str(self.residual)
        return out


def phi_cycle(z: Cycle, i: int, c: Sequence, sign: bool = True, check: bool = True) -> Cycle:
    """(-1)^{n+1} (H_{(0),c,i}^* z - H_{(1),c,i}^* z) on Y x (n+1)-cube."""
    c = _as_point(c)
    n = z.n
    if z.is_zero():
        return Cycle.zero(z.context.with_n(n + 1), z.d)
    h0 = pullback(z, h_map(n, 0, c, i))
    h1 = pullback(z, h_map(n, 1, c, i))
    phi = h0 - h1
    if sign and (n + 1) % 2:
        phi = -phi
    if check:
        _require_admissible(phi, f"homotopy i={i} c={list(map(str, c))}")
    return phi


def phi_homotopy(z: Cycle, i: int, c: Sequence, trivial: Membership | None = None,
                 sign: bool = True) -> HomotopyCertificate:
    """Build the homotopy for the i-th bi-division and certify its boundary.

    With ``trivial`` unset every codimension-one face of z must vanish and the
    identity is checked exactly.  Otherwise faces need only pass ``trivial``
    and the identity is checked up to a residual that must pass it as well.
    """
    c = _as_point(c)
    n = z.n
    if trivial is None:
        faces_ok = all(f.is_zero() for f in codim_one_faces(z).values())
    else:
        faces_ok = is_normalized_mod(z, trivial)
    if not faces_ok:
        raise NotNormalized("not normalized: some codimension-one face is non-trivial")
    phi = phi_cycle(z, i, c, sign=sign)
    lhs = boundary(phi)
    rhs = reduce_degenerates(z - bidivision(z, i, c[i - 1]))
    if trivial is None:
        return HomotopyCertificate(z, c, i, phi, lhs, rhs, lhs == rhs)
    residual = lhs - rhs
    return HomotopyCertificate(z, c, i, phi, lhs, rhs,
                               residual.is_zero() or trivial(residual), residual)


def subdivision_maps(c: Sequence) -> list[tuple[int, tuple[int, ...], object]]:
    """(sign, vertex, pi_v o iota_v) for every vertex of the n-cube."""
    c = _as_point(c)
    n = len(c)
    return [(vertex_sign(v), v, compose(pi_v(v), iota_v(v, c))) for v in vertices(n)]


def cubical_subdivision(z: Cycle, c: Sequence, form: str = "iterated",
                        check: bool = True) -> Cycle:
    """sd_c(z) either as the composite of bi-divisions or as a signed vertex sum."""
    c = _as_point(c)
    if len(c) != z.n:
        raise ValueError(f"need {z.n} parameters, got {len(c)}")
    if form == "iterated":
        w = z
        for k in range(1, z.n + 1):
            w = bidivision(w, k, c[k - 1], check=check)
        return w
    if form in ("vertex_sum", "vertex"):
        total = Cycle.zero(z.context, z.d)
        for sign, _, f in subdivision_maps(c):
            total = total + pullback(z, f).scale(sign)
        if check:
            _require_admissible(total, "vertex sum")
        return total
    raise ValueError(f"unknown subdivision form {form!r}")


@dataclass
class ChainCertificate:
    z: Cycle
    c: tuple[Fraction, ...]
    phi: Cycle
    sd: Cycle
    lhs: Cycle
    rhs: Cycle
    stages_normalized: list[bool] = field(default_factory=list)
    sd_faces_vanish: bool = False

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs and all(self.stages_normalized) and self.sd_faces_vanish

    def to_json(self) -> dict:
        return {
            "point": [str(v) for v in self.c],
            "phi": self.phi.to_json(),
            "subdivision": self.sd.to_json(),
            "boundary_phi": str(self.lhs),
            "z_minus_sd": str(self.rhs),
            "stages_normalized": self.stages_normalized,
            "sd_faces_vanish": self.sd_faces_vanish,
            "status": "pass" if self.passed else "fail",
        }


def phi_chain(z: Cycle, c: Sequence) -> tuple[Cycle, ChainCertificate]:
    """Telescoping homotopy sum_k phi_{c,k}(delta_{k-1} ... delta_1 z) with certificate."""
    c = _as_point(c)
    n = z.n
    phi = Cycle.zero(z.context.with_n(n + 1), z.d)
    w = z
    stages = []
    for k in range(1, n + 1):
        stages.append(all(f.is_zero() for f in codim_one_faces(w).values()))
        try:
            phi = phi + phi_cycle(w, k, c)
            w = bidivision(w, k, c[k - 1])
        except NonGeneralParameter as exc:
            raise NonGeneralParameter(f"stage {k}: {exc}", f"stage {k}") from exc
    sd_faces = all(f.is_zero() for f in codim_one_faces(w).values())
    lhs = boundary(phi)
    rhs = reduce_degenerates(z - w)
    return phi, ChainCertificate(z, c, phi, w, lhs, rhs, stages, sd_faces)


# -- general position -----------------------------------------------------------

def random_points(n: int, seed: int, max_den: int = 1000) -> Iterator[tuple[Fraction, ...]]:
    """Deterministic stream of points of (0,1)^n with denominators at most ``max_den``."""
    rng = random.Random(seed)
    while True:
        point = []
        for _ in range(n):
            b = rng.randint(2, max_den)
            a = rng.randint(1, b - 1)
            point.append(Fraction(a, b))
        yield tuple(point)


def is_general(z: Cycle, c: Sequence, homotopy: bool = True) -> bool:
    """Every object built from z at c (delta chain, vertex sum, homotopies) is admissible."""
    try:
        c = _as_point(c)
        w = z
        for k in range(1, z.n + 1):
            if homotopy:
                phi_cycle(w, k, c)
            w = bidivision(w, k, c[k - 1])
        cubical_subdivision(z, c, "vertex_sum")
    except NonGeneralParameter:
        return False
    return True


class BudgetExhausted(RuntimeError):
    pass


def sample_general_position(z: Cycle, seed: int = 0, budget: int = 50, homotopy: bool = True,
                            candidates: Iterable[Sequence] | None = None,
                            rejected: list | None = None) -> tuple[Fraction, ...]:
    """First candidate point at which every constructed cycle is admissible.

    ``candidates`` overrides the seeded stream; rejected points are appended
    to ``rejected`` when given.
    """
    stream = iter(candidates) if candidates is not None else random_points(z.n, seed)
    for _, c in zip(range(budget), stream):
        c = tuple(Fraction(v) for v in c)
        if is_general(z, c, homotopy):
            return c
        if rejected is not None:
            rejected.append(c)
    raise BudgetExhausted(f"budget exhausted after {budget} attempts")


def extends_over(ambient_closed: bool = True) -> Membership:
    """Membership test: the cycle's closure is admissible over all of Y."""
    def test(w: Cycle) -> bool:
        if not w.context.closed:
            return bool(is_admissible(w))
        try:
            return bool(is_admissible(closure_from_open(w)))
        except ValueError:
            return False
    return test
