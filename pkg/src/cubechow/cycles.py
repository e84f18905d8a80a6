"""Cycles on Y x (n-cube) as integer combinations of ideal-presented components.

Y is affine m-space, or the open complement U of a closed set presented by an
ideal in the ambient coordinates.  Over such a U every component ideal is
kept saturated with respect to the closed set, so it presents the Zariski
closure in Y x (n-cube) of the component on U.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra import Ideal, Polynomial, Ring, UnsupportedMultiplicity, variety_contained
from .cube import CubeMorphism, Face, faces


class DimensionMismatch(ValueError):
    pass


class ImproperFace(ValueError):
    pass


class UnsupportedMorphism(ValueError):
    pass


@dataclass(frozen=True)
class AmbientContext:
    """Y = affine m-space minus V(closed), times the n-cube."""

    m: int
    n: int
    closed: tuple[str, ...] = ()

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("dimensions must be non-negative")
        # canonical presentation of the closed set
        if self.closed:
            base = Ring.standard(self.m, 0)
            ideal = Ideal.parse(base, self.closed)
            object.__setattr__(self, "closed", tuple(str(g) for g in ideal.basis))

    @property
    def ring(self) -> Ring:
        return Ring.standard(self.m, self.n)

    @property
    def is_open(self) -> bool:
        return bool(self.closed)

    def closed_ideal(self) -> Ideal | None:
        if not self.closed:
            return None
        return Ideal.parse(self.ring, self.closed)

    def with_n(self, n: int) -> "AmbientContext":
        return AmbientContext(self.m, n, self.closed)

    def with_closed(self, closed: Iterable[str]) -> "AmbientContext":
        return AmbientContext(self.m, self.n, tuple(closed))

    def localize(self, ideal: Ideal) -> Ideal:
        """Remove the part of V(ideal) lying over the closed set."""
        closed = self.closed_ideal()
        if closed is None or ideal.is_unit():
            return ideal
        if closed.is_unit():
            return Ideal.unit(self.ring)
        return ideal.saturate_ideal(closed)


@dataclass(frozen=True)
class Component:
    ideal: Ideal
    coef: int
    irreducible: bool = True

    @property
    def key(self) -> tuple[Polynomial, ...]:
        return self.ideal.basis

    @property
    def dim(self) -> int | None:
        return self.ideal.dimension()

    def sort_key(self) -> tuple:
        return tuple(str(g) for g in self.ideal.basis)


@dataclass(frozen=True)
class Cycle:
    context: AmbientContext
    d: int
    components: tuple[Component, ...] = field(default=())

    # -- construction ----------------------------------------------------
    @staticmethod
    def zero(context: AmbientContext, d: int) -> "Cycle":
        return Cycle(context, d, ())

    @staticmethod
    def from_components(context: AmbientContext, d: int,
                        comps: Iterable[Component]) -> "Cycle":
        """Merge components with equal canonical ideals and drop zero coefficients."""
        merged: dict[tuple, list] = {}
        for comp in comps:
            if comp.coef == 0 or comp.ideal.is_unit():
                continue
            entry = merged.setdefault(comp.key, [comp.ideal, 0, True])
            entry[1] += comp.coef
            entry[2] = entry[2] and comp.irreducible
        out = [Component(ideal, coef, irr) for ideal, coef, irr in merged.values() if coef]
        out.sort(key=Component.sort_key)
        return Cycle(context, d, tuple(out))

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def ring(self) -> Ring:
        return self.context.ring

    @property
    def expected_dim(self) -> int:
        return self.d + self.n

    # -- arithmetic -------------------------------------------------------
    def _check_compatible(self, other: "Cycle") -> None:
        if self.context != other.context or self.d != other.d:
            raise ValueError(f"incompatible cycles: {self.context}/{self.d} vs "
                             f"{other.context}/{other.d}")

    def __add__(self, other: "Cycle") -> "Cycle":
        self._check_compatible(other)
        return Cycle.from_components(self.context, self.d, self.components + other.components)

    def __neg__(self) -> "Cycle":
        return self.scale(-1)

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + (-other)

    def scale(self, k: int) -> "Cycle":
        return Cycle.from_components(
            self.context, self.d, [Component(c.ideal, c.coef * k, c.irreducible)
                                   for c in self.components])

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return (self.context == other.context and self.d == other.d
                and [(c.key, c.coef) for c in self.components]
                == [(c.key, c.coef) for c in other.components])

    def __hash__(self) -> int:
        return hash((self.context, self.d, tuple((c.key, c.coef) for c in self.components)))

    # -- printing / serialization --------------------------------------------
    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for k, comp in enumerate(self.components):
            body = "V(" + ", ".join(str(g) for g in comp.ideal.basis) + ")"
            coef = comp.coef
            sign = "-" if coef < 0 else "+"
            mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
            if k == 0:
                parts.append(("-" if coef < 0 else "") + mag + body)
            else:
                parts.append(f" {sign} {mag}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Cycle(m={self.context.m}, n={self.n}, d={self.d}: {self})"

    def to_json(self) -> dict:
        out = {
            "ambient_dim": self.context.m,
            "cube_dim": self.n,
            "d": self.d,
            "components": [{"coef": c.coef,
                            "generators": [str(g) for g in c.ideal.basis],
                            "irreducible": c.irreducible} for c in self.components],
        }
        if self.context.closed:
            out["closed_complement"] = list(self.context.closed)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @staticmethod
    def from_json(data: Mapping, check_dim: bool = True) -> "Cycle":
        context = AmbientContext(int(data["ambient_dim"]), int(data["cube_dim"]),
                                 tuple(data.get("closed_complement", ())))
        comps = [(int(c["coef"]), list(c["generators"]), bool(c.get("irreducible", True)))
                 for c in data.get("components", [])]
        return build_cycle(context, comps, int(data["d"]), check_dim=check_dim)


def build_cycle(context: AmbientContext, comps: Iterable[Sequence], d: int,
                check_dim: bool = True) -> Cycle:
    """Build a cycle from ``(coef, generators[, irreducible])`` triples.

    Generators may be polynomial strings or polynomials of ``context.ring``.
    """
    ring = context.ring
    out = []
    for item in comps:
        coef, gens = item[0], item[1]
        irreducible = bool(item[2]) if len(item) > 2 else True
        polys = [ring.parse_poly(g) if isinstance(g, str) else g.to_ring(ring) for g in gens]
        ideal = context.localize(Ideal(ring, polys))
        if ideal.is_unit():
            raise DimensionMismatch(f"component {gens} is empty on the ambient open set")
        if check_dim and ideal.dimension() != d + context.n:
            raise DimensionMismatch(
                f"dimension mismatch: component {gens} has dimension {ideal.dimension()}, "
                f"expected d + n = {d + context.n}")
        out.append(Component(ideal, int(coef), irreducible))
    return Cycle.from_components(context, d, out)


def point_cycle(values: Sequence, coef: int = 1, m: int = 0) -> Cycle:
    """The point (y_1, ..., y_n) = values in the cube over Y = a point (or m-space fibre)."""
    n = len(values)
    ctx = AmbientContext(m, n)
    gens = [f"y{k} - ({v})" for k, v in enumerate(values, 1)]
    return build_cycle(ctx, [(coef, gens)], -n)


# -- faces and boundary --------------------------------------------------------

def _reindex_face(i: int, eps: int, n: int) -> dict[str, object]:
    assignment: dict[str, object] = {f"y{i}": eps}
    for k in range(i + 1, n + 1):
        assignment[f"y{k}"] = f"y{k - 1}"
    return assignment


def _intersection_cycle(ideal: Ideal, coef: int) -> list[Component]:
    """Associated cycle of the scheme V(ideal), every component of one dimension."""
    if ideal.is_unit():
        return []
    basis = ideal.basis
    if all(g.degree() <= 1 for g in basis):
        return [Component(ideal, coef, True)]
    if ideal.dimension() == 0:
        return [Component(piece, coef * k, False) for piece, k in ideal.point_cycle()]
    if ideal.is_generically_reduced():
        return [Component(ideal, coef, False)]
    raise UnsupportedMultiplicity(
        f"unsupported multiplicity: non-reduced positive-dimensional intersection {ideal}")


def face_ideal(ideal: Ideal, i: int, eps: int, context: AmbientContext) -> Ideal:
    """Pull an ideal of Y x n-cube back along the inclusion of {y_i = eps}."""
    target = context.with_n(context.n - 1)
    assignment = {k: (v if isinstance(v, int) else target.ring.gen(v))
                  for k, v in _reindex_face(i, eps, context.n).items()}
    return target.localize(ideal.substitute(assignment, target.ring))


def face(z: Cycle, i: int, eps: int, reduce_degenerate: bool = True) -> Cycle:
    """The face of z along {y_i = eps}, re-indexed to the (n-1)-cube."""
    n = z.n
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} out of range 1..{n}")
    target = z.context.with_n(n - 1)
    expected = z.d + n - 1
    comps: list[Component] = []
    for comp in z.components:
        j = face_ideal(comp.ideal, i, eps, z.context)
        dim = j.dimension()
        if dim is None:
            continue
        if dim > expected:
            raise ImproperFace(f"improper face: component {comp.ideal} meets y{i}={eps} "
                               f"in dimension {dim} > {expected}")
        comps.extend(_intersection_cycle(j, comp.coef))
    result = Cycle.from_components(target, z.d, comps)
    return reduce_degenerates(result) if reduce_degenerate else result


def boundary(z: Cycle, reduce_degenerate: bool = True) -> Cycle:
    """Sum over i of (-1)^i (face(z, i, 1) - face(z, i, 0))."""
    total = Cycle.zero(z.context.with_n(z.n - 1), z.d)
    for i in range(1, z.n + 1):
        sign = -1 if i % 2 else 1
        total = total + (face(z, i, 1, reduce_degenerate) - face(z, i, 0, reduce_degenerate)).scale(sign)
    return total


# -- degeneracy, admissibility, normalization -------------------------------------

def degenerate_direction(comp: Component | Ideal, n: int | None = None) -> int | None:
    """Index j such that the component is pulled back along the projection forgetting y_j.

    An ideal is extended from the subring without y_j exactly when its reduced
    Gröbner basis does not involve y_j.
    """
    ideal = comp.ideal if isinstance(comp, Component) else comp
    ring = ideal.ring
    used = set()
    for g in ideal.basis:
        used |= g.variables()
    for j, name in enumerate(ring.cube, 1):
        if name not in used:
            return j
    return None


def is_degenerate(comp: Component | Ideal) -> bool:
    return degenerate_direction(comp) is not None


def reduce_degenerates(z: Cycle) -> Cycle:
    """Image of z in the quotient by degenerate cycles."""
    keep = [c for c in z.components if not is_degenerate(c)]
    if len(keep) == len(z.components):
        return z
    return Cycle(z.context, z.d, tuple(keep))


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    component: int | None = None
    face: Face | None = None
    dimension: int | None = None
    expected: int | None = None

    def __bool__(self) -> bool:
        return self.admissible

    def describe(self) -> str:
        if self.admissible:
            return "admissible"
        return (f"component {self.component} meets face {self.face} in dimension "
                f"{self.dimension} > {self.expected}")


def face_intersection(ideal: Ideal, f: Face, context: AmbientContext) -> Ideal:
    ring = context.ring
    gens = [ring.gen(f"y{i}") - e for i, e in f.assignment]
    return context.localize(ideal + gens)


def is_admissible(z: Cycle) -> AdmissibilityResult:
    """Proper intersection with every face; the witness names the first violation."""
    n = z.n
    for idx, comp in enumerate(z.components):
        empty: list[set] = []
        for f in faces(n):
            if f.codim == 0:
                continue
            assign = set(f.assignment)
            if any(e <= assign for e in empty):
                continue
            dim = face_intersection(comp.ideal, f, z.context).dimension()
            if dim is None:
                empty.append(assign)
                continue
            bound = z.d + n - f.codim
            if dim > bound:
                return AdmissibilityResult(False, idx, f, dim, bound)
    return AdmissibilityResult(True)


def codim_one_faces(z: Cycle, reduce_degenerate: bool = True) -> dict[tuple[int, int], Cycle]:
    return {(i, e): face(z, i, e, reduce_degenerate)
            for i in range(1, z.n + 1) for e in (0, 1)}


def is_normalized(z: Cycle) -> bool:
    """All 2n codimension-one faces vanish modulo degenerate cycles."""
    return all(f.is_zero() for f in codim_one_faces(z).values())


def is_normalized_mod(z: Cycle, trivial) -> bool:
    """All codimension-one faces pass the membership test ``trivial(face)``."""
    return all(f.is_zero() or trivial(f) for f in codim_one_faces(z).values())


# -- pullback, support, restriction --------------------------------------------------

def pullback(z: Cycle, f: CubeMorphism, check_dim: bool = True) -> Cycle:
    """Pull z back along a cube morphism (cube factor only; Y is untouched).

    Generators are composed with the coordinate functions, denominators
    cleared and saturated away.  Every resulting component must have the
    dimension expected for a flat map; otherwise the morphism is outside the
    supported class.
    """
    if f.params:
        raise UnsupportedMorphism("pullback needs numeric parameters; specialize first")
    if f.target_dim != z.n:
        raise ValueError(f"morphism target dimension {f.target_dim} != cube dimension {z.n}")
    target = z.context.with_n(f.source_dim)
    ring = target.ring
    coords = [c.to_ring(ring) for c in f.coords]
    assignment = {f"y{k}": c for k, c in enumerate(coords, 1)}
    den = ring.one()
    for c in coords:
        if not c.is_polynomial():
            den = den * c.den
    expected = z.d + f.source_dim
    comps = []
    for comp in z.components:
        gens = [g.substitute(assignment, ring).num for g in comp.ideal.gens]
        ideal = Ideal(ring, gens)
        if not den.is_constant():
            ideal = ideal.saturate(den)
        ideal = target.localize(ideal)
        dim = ideal.dimension()
        if dim is None:
            continue
        if check_dim and dim != expected:
            raise UnsupportedMorphism(
                f"unsupported morphism class: pullback of {comp.ideal} has dimension {dim}, "
                f"expected {expected}")
        iso = f.source_dim == f.target_dim
        comps.append(Component(ideal, comp.coef, comp.irreducible and iso))
    return Cycle.from_components(target, z.d, comps)


def _ambient_ideal(w: Ideal | Iterable[str], ring: Ring) -> Ideal:
    if isinstance(w, Ideal):
        return w.to_ring(ring)
    return Ideal.parse(ring, list(w))


def is_supported_in(z: Cycle, w: Ideal | Iterable[str]) -> bool:
    """Every component lies over V(w), w an ideal in the ambient coordinates."""
    wi = _ambient_ideal(w, z.ring)
    return all(variety_contained(c.ideal, wi) for c in z.components)


def restrict_to_open(z: Cycle, closed: Ideal | Iterable[str]) -> Cycle:
    """Restrict to the complement of V(closed): drop and saturate components."""
    base = Ring.standard(z.context.m, 0)
    closed_i = _ambient_ideal(closed, base)
    current = z.context.closed_ideal()
    if current is not None:
        closed_i = current.to_ring(base) * closed_i
    target = AmbientContext(z.context.m, z.n, tuple(str(g) for g in closed_i.basis))
    wi = closed_i.to_ring(z.ring)
    comps = []
    for c in z.components:
        if variety_contained(c.ideal, wi):
            continue
        comps.append(Component(target.localize(c.ideal), c.coef, c.irreducible))
    return Cycle.from_components(target, z.d, comps)


def closure_from_open(z: Cycle) -> Cycle:
    """The same components regarded as cycles on all of affine m-space."""
    target = AmbientContext(z.context.m, z.n)
    closed = z.context.closed_ideal()
    for c in z.components:
        if closed is not None and variety_contained(c.ideal, closed):
            raise ValueError(f"component {c.ideal} lies inside the removed closed set")
        if closed is not None and c.ideal != c.ideal.saturate_ideal(closed):
            raise ValueError(f"component {c.ideal} is not saturated along the closed set")
    return Cycle.from_components(target, z.d, z.components)
