"""The cube as affine n-space with faces y_i = 0, 1, and its coordinate morphisms.

A :class:`CubeMorphism` from the n-cube to the m-cube is a tuple of m rational
functions in the source coordinates ``y1..yn`` and, optionally, formal
parameters.  Composition is substitution; equality is exact identity of
rational functions, so a check with symbolic parameters holds for every value
of the parameters at which both sides are defined.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .algebra import RationalFunction, Ring
from .algebra.poly import as_rational
from .report import VerificationReport

Param = Union[str, int, Fraction]


def cube_ring(n: int, params: Iterable[str] = ()) -> Ring:
    return Ring((), [f"y{k}" for k in range(1, n + 1)], params)


def _merge_params(*lists: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for names in lists:
        for p in names:
            if p not in out:
                out.append(p)
    return tuple(out)


_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _param_names(values: Iterable[Param]) -> tuple[str, ...]:
    """Parameter symbols used by the given values (strings are expressions like ``1-c2``)."""
    return _merge_params(*(_IDENT_RE.findall(v) for v in values if isinstance(v, str)))


def _check_scalar(c: Param) -> None:
    value = _param_rf(c, Ring((), (), _param_names([c])))
    if value.is_polynomial() and value.num.is_constant() and value.num.constant_value() in (0, 1):
        raise ValueError(f"parameter {c} lies on a face; need c not in {{0, 1}}")


@dataclass(frozen=True)
class Face:
    """Face of the n-cube given by a partial assignment of coordinates to 0/1."""

    n: int
    assignment: tuple[tuple[int, int], ...]

    @property
    def codim(self) -> int:
        return len(self.assignment)

    def equations(self) -> dict[str, int]:
        return {f"y{i}": e for i, e in self.assignment}

    def __str__(self) -> str:
        if not self.assignment:
            return "{whole cube}"
        return "{" + ", ".join(f"y{i}={e}" for i, e in self.assignment) + "}"


def faces(n: int, codim: int | None = None) -> list[Face]:
    """All faces, ordered by codimension then lexicographically."""
    out = []
    codims = range(n + 1) if codim is None else [codim]
    for r in codims:
        for idx in itertools.combinations(range(1, n + 1), r):
            for eps in itertools.product((0, 1), repeat=r):
                out.append(Face(n, tuple(zip(idx, eps))))
    return out


def vertices(n: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=n))


def vertex_sign(v: Sequence[int]) -> int:
    return -1 if sum(v) % 2 else 1


class CubeMorphism:
    """Rational map between cubes, given by coordinate functions."""

    __slots__ = ("source_dim", "target_dim", "coords", "ring")

    def __init__(self, source_dim: int, coords: Sequence[object], params: Iterable[str] = ()):
        ring = cube_ring(source_dim, params)
        self.source_dim = source_dim
        self.ring = ring
        self.coords = tuple(as_rational(c, ring) for c in coords)
        self.target_dim = len(self.coords)

    @property
    def params(self) -> tuple[str, ...]:
        return self.ring.params

    def with_params(self, params: Sequence[str]) -> "CubeMorphism":
        params = _merge_params(self.params, params)
        if params == self.params:
            return self
        ring = cube_ring(self.source_dim, params)
        return CubeMorphism(self.source_dim, [c.to_ring(ring) for c in self.coords], params)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeMorphism):
            return NotImplemented
        return equal(self, other)

    def __hash__(self) -> int:
        return hash((self.source_dim, self.target_dim))

    def __str__(self) -> str:
        src = ", ".join(self.ring.cube)
        return f"({src}) |-> (" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"CubeMorphism[{self.source_dim}->{self.target_dim}] {self}"

    def specialize(self, values: Mapping[str, Param]) -> "CubeMorphism":
        rest = tuple(p for p in self.params if p not in values)
        ring = cube_ring(self.source_dim, rest)
        assignment = {p: as_rational(v, ring) for p, v in values.items() if p in self.ring}
        return CubeMorphism(self.source_dim,
                            [c.substitute(assignment, ring) for c in self.coords], rest)

    def to_json(self) -> dict:
        out: dict = {"source_dim": self.source_dim, "target_dim": self.target_dim,
                     "coords": [str(c) for c in self.coords]}
        if self.params:
            out["params"] = list(self.params)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "CubeMorphism":
        f = cls(int(data["source_dim"]), [], data.get("params", ()))
        coords = [f.ring.parse(text) for text in data["coords"]]
        if len(coords) != int(data["target_dim"]):
            raise ValueError("coords length does not match target_dim")
        return cls(f.source_dim, coords, f.params)


def identity(n: int) -> CubeMorphism:
    ring = cube_ring(n)
    return CubeMorphism(n, [ring.gen(v) for v in ring.cube])


def _param_rf(c: Param, ring: Ring) -> RationalFunction:
    return ring.parse(c) if isinstance(c, str) else as_rational(Fraction(c), ring)


def _check_index(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")


def involution(n: int, j: int) -> CubeMorphism:
    _check_index(j, n)
    ring = cube_ring(n)
    ys = [ring.gen(v) for v in ring.cube]
    ys[j - 1] = 1 - ys[j - 1]
    return CubeMorphism(n, ys)


def scaling(n: int, j: int, c: Param) -> CubeMorphism:
    _check_index(j, n)
    _check_scalar(c)
    ring = cube_ring(n, _param_names([c]))
    ys = [as_rational(ring.gen(v), ring) for v in ring.cube]
    ys[j - 1] = _param_rf(c, ring) * ys[j - 1]
    return CubeMorphism(n, ys, ring.params)


def mu() -> CubeMorphism:
    ring = cube_ring(2)
    return CubeMorphism(2, [ring.gen("y1") * ring.gen("y2")])


def face_map(n: int, j: int, eps: int) -> CubeMorphism:
    """The inclusion of the face {y_j = eps} of the n-cube, from the (n-1)-cube."""
    _check_index(j, n)
    if eps not in (0, 1):
        raise ValueError("face value must be 0 or 1")
    ring = cube_ring(n - 1)
    ys = [ring.gen(v) for v in ring.cube]
    ys.insert(j - 1, ring.const(eps))
    return CubeMorphism(n - 1, ys)


def projection(n: int, j: int) -> CubeMorphism:
    """The projection from the n-cube forgetting coordinate j."""
    _check_index(j, n)
    ring = cube_ring(n)
    return CubeMorphism(n, [ring.gen(v) for k, v in enumerate(ring.cube, 1) if k != j])


def permutation(n: int, perm: Sequence[int]) -> CubeMorphism:
    """Map whose k-th coordinate is ``y_{perm[k-1]}``."""
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    ring = cube_ring(n)
    return CubeMorphism(n, [ring.gen(f"y{p}") for p in perm])


def pi_v(v: Sequence[int]) -> CubeMorphism:
    """Flip the coordinates where ``v_i = 1``."""
    n = len(v)
    ring = cube_ring(n)
    ys = [ring.gen(y) for y in ring.cube]
    return CubeMorphism(n, [1 - y if e else y for y, e in zip(ys, v)])


def iota_v(v: Sequence[int], c: Sequence[Param]) -> CubeMorphism:
    """Scale ``y_i`` by ``c_i`` where ``v_i = 0`` and by ``1 - c_i`` where ``v_i = 1``."""
    n = len(v)
    if len(c) != n:
        raise ValueError("need one parameter per coordinate")
    for ci in c:
        _check_scalar(ci)
    ring = cube_ring(n, _param_names(c))
    ys = [as_rational(ring.gen(y), ring) for y in ring.cube]
    out = []
    for y, e, ci in zip(ys, v, c):
        cc = _param_rf(ci, ring)
        out.append((1 - cc) * y if e else cc * y)
    return CubeMorphism(n, out, ring.params)


def basic_morphism(kind: str, n: int, indices: Sequence[int] = (),
                   params: Sequence[Param] = ()) -> CubeMorphism:
    """Dispatch by name: involution, scaling, mu, face, projection, pi_v, iota_v."""
    if kind == "involution":
        return involution(n, indices[0])
    if kind == "scaling":
        return scaling(n, indices[0], params[0])
    if kind == "mu":
        if n != 2:
            raise ValueError("mu is defined on the 2-cube")
        return mu()
    if kind == "face":
        return face_map(n, indices[0], indices[1])
    if kind == "projection":
        return projection(n, indices[0])
    if kind == "pi_v":
        return pi_v(indices)
    if kind == "iota_v":
        return iota_v(indices, params)
    raise ValueError(f"unknown morphism kind {kind!r}")


def compose(f: CubeMorphism, g: CubeMorphism) -> CubeMorphism:
    """``f ∘ g``: first g, then f."""
    if f.source_dim != g.target_dim:
        raise ValueError(f"dimension mismatch: {f.source_dim} != {g.target_dim}")
    params = _merge_params(g.params, f.params)
    ring = cube_ring(g.source_dim, params)
    fring = cube_ring(f.source_dim, params)
    assignment = {f"y{k}": c.to_ring(ring) for k, c in enumerate(g.coords, 1)}
    coords = [c.to_ring(fring).substitute(assignment, ring) for c in f.coords]
    return CubeMorphism(g.source_dim, coords, params)


def compose_all(*maps: CubeMorphism) -> CubeMorphism:
    """``maps[0] ∘ maps[1] ∘ ...``."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def equal(f: CubeMorphism, g: CubeMorphism) -> bool:
    if (f.source_dim, f.target_dim) != (g.source_dim, g.target_dim):
        return False
    params = _merge_params(f.params, g.params)
    ring = cube_ring(f.source_dim, params)
    return all(a.to_ring(ring) == b.to_ring(ring) for a, b in zip(f.coords, g.coords))


def eta(ell: int, c: Param) -> CubeMorphism:
    """The maps (y, z) |-> (1-(1-c)(1-z)) y  (ell=0)  and  1-(1-c) y (1-z)  (ell=1)."""
    _check_scalar(c)
    return _eta_raw(ell, c)


def _eta_raw(ell: int, c: Param) -> CubeMorphism:
    ring = cube_ring(2, _param_names([c]))
    y, z = ring.gen("y1"), ring.gen("y2")
    cc = _param_rf(c, ring)
    if ell == 0:
        value = (1 - (1 - cc) * (1 - z)) * y
    elif ell == 1:
        value = 1 - (1 - cc) * y * (1 - z)
    else:
        raise ValueError("ell must be 0 or 1")
    return CubeMorphism(2, [value], ring.params)


def symbolic_point(n: int, stem: str = "c") -> tuple[str, ...]:
    return tuple(f"{stem}{k}" for k in range(1, n + 1))


def h_map(n: int, ell: int, c: Sequence[Param], i: int) -> CubeMorphism:
    """Map from the (n+1)-cube to the n-cube: y_j for j != i, eta_{c_i}^ell(y_i, y_{n+1}) at i."""
    _check_index(i, n)
    if len(c) != n:
        raise ValueError("need one parameter per coordinate")
    ring = cube_ring(n + 1, _param_names(c))
    ys = [as_rational(ring.gen(v), ring) for v in ring.cube]
    e = eta(ell, c[i - 1]).with_params(ring.params)
    inner = CubeMorphism(n + 1, [ys[i - 1], ys[n]], ring.params)
    value = compose(e, inner).coords[0]
    out = ys[:n]
    out[i - 1] = value
    return CubeMorphism(n + 1, out, ring.params)


# -- verification of the identities used by the homotopy construction ---------

ETA_ANCHOR = ("eta boundary identities: eta_c^0(y,0)=c*y, eta_c^0(y,1)=y, eta_c^0(0,z)=0, "
              "eta_c^0(1,z)=1-(1-c)(1-z), eta_c^1(y,0)=1-(1-c)*y, eta_c^1(y,1)=1, "
              "eta_c^1(0,z)=1, eta_c^1(1,z)=1-(1-c)(1-z)")

H_ANCHOR = ("face table of H_{(l),c,i}^{n+1}: composites with the face inclusions "
            "factor through H^n with c/j or through the basic cube maps")


def _eta_table_entries(c: str = "c"):
    ring = cube_ring(1, [c])
    y = as_rational(ring.gen("y1"), ring)
    cc = as_rational(ring.gen(c), ring)
    one = as_rational(ring.one(), ring)
    zero = as_rational(ring.zero(), ring)
    edge = 1 - (1 - cc) * (1 - y)
    # (ell, slot fixed, value, expected): slot 2 is z, slot 1 is y
    return [
        ("eta0(y,0)=c*y", 0, 2, 0, cc * y),
        ("eta0(y,1)=y", 0, 2, 1, y),
        ("eta0(0,z)=0", 0, 1, 0, zero),
        ("eta0(1,z)=1-(1-c)(1-z)", 0, 1, 1, edge),
        ("eta1(y,0)=1-(1-c)y", 1, 2, 0, 1 - (1 - cc) * y),
        ("eta1(y,1)=1", 1, 2, 1, one),
        ("eta1(0,z)=1", 1, 1, 0, one),
        ("eta1(1,z)=1-(1-c)(1-z)", 1, 1, 1, edge),
    ]


def verify_eta_table(eta_impl=None, c: str = "c") -> VerificationReport:
    """Check the eight boundary identities of eta with symbolic c.

    ``eta_impl(ell, c)`` may be supplied to test a different (for example a
    deliberately corrupted) implementation.
    """
    eta_impl = eta_impl or eta
    report = VerificationReport("eta-table", ETA_ANCHOR)
    with report.timed():
        for check_id, ell, slot, value, expected in _eta_table_entries(c):
            restrict = face_map(2, slot, value).with_params([c])
            got = compose(eta_impl(ell, c).with_params([c]), restrict).coords[0]
            report.add(check_id, got == expected, got, expected)
    return report


def _eq_entry(report: VerificationReport, check_id: str, lhs: CubeMorphism,
              rhs: CubeMorphism) -> bool:
    return report.add(check_id, equal(lhs, rhs), lhs, rhs)


def verify_h_face_table(n: int, c_stem: str = "c", h_impl=None) -> VerificationReport:
    """All five cases of the face table of H^{n+1}_{(l),c,i}, symbolic c."""
    if n < 1:
        raise ValueError("n must be at least 1")
    h_impl = h_impl or h_map
    c = symbolic_point(n, c_stem)
    report = VerificationReport("h-faces", H_ANCHOR)
    with report.timed():
        for i in range(1, n + 1):
            for ell in (0, 1):
                H = h_impl(n, ell, c, i)
                for j in range(1, n + 2):
                    for eps in (0, 1):
                        lhs = compose(H, face_map(n + 1, j, eps))
                        tag = f"n={n} i={i} l={ell} j={j} e={eps}"
                        rhs = _h_face_expected(n, ell, c, i, j, eps, h_impl)
                        _eq_entry(report, tag, lhs, rhs)
            # both H maps agree on the face y_i = 1
            h0 = compose(h_impl(n, 0, c, i), face_map(n + 1, i, 1))
            h1 = compose(h_impl(n, 1, c, i), face_map(n + 1, i, 1))
            _eq_entry(report, f"n={n} i={i} H0.iota_i^1=H1.iota_i^1", h0, h1)
    return report


def _h_face_expected(n: int, ell: int, c: Sequence[str], i: int, j: int, eps: int,
                     h_impl) -> CubeMorphism:
    if j <= n and j != i:
        c_less = tuple(ck for k, ck in enumerate(c, 1) if k != j)
        if n == 1:
            raise AssertionError("unreachable: j != i with n = 1 and j <= n")
        inner = h_impl(n - 1, ell, c_less, i - 1 if j < i else i)
        return compose(face_map(n, j, eps), inner)
    if j == i and eps == 0:
        return compose(face_map(n, i, ell), projection(n, n))
    if j == i and eps == 1:
        perm = list(range(1, i)) + [n] + list(range(i, n))
        return compose_all(involution(n, i), scaling(n, i, _one_minus(c[i - 1])),
                           permutation(n, perm), involution(n, n)).with_params(c)
    # j == n + 1
    if ell == 0:
        return (scaling(n, i, c[i - 1]) if eps == 0 else identity(n)).with_params(c)
    if eps == 0:
        return compose(involution(n, i), scaling(n, i, _one_minus(c[i - 1]))).with_params(c)
    return compose(face_map(n, i, 1), projection(n, i)).with_params(c)


def _one_minus(c: Param) -> Param:
    return f"1-({c})" if isinstance(c, str) else 1 - Fraction(c)
