"""Face blow-up towers over the n-cube, at the level of charts and combinatorics.

A space in the tower is never built as a scheme.  It is a list of
distinguished divisors plus, for each vertex (a set of n divisors meeting in
a point), a chart: n rational functions ``f^v`` on the n-cube cutting out
those divisors near the vertex, with an explicit polynomial inverse.

On the base space the divisors are numbered ``2k-1: y_k = 1`` and
``2k: y_k = 0``; each blow-up appends one exceptional divisor with the next
free id.  Chart slots are always sorted by divisor id.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Ideal, Polynomial, RationalFunction
from .algebra.poly import as_rational
from .cube import (CubeMorphism, compose, cube_ring, equal, identity, involution, projection,
                   vertex_sign)
from .cycles import AmbientContext, Component, Cycle, boundary, is_admissible, reduce_degenerates
from .report import VerificationReport
from .subdivision import NonGeneralParameter, cubical_subdivision


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class Divisor:
    id: int
    tag: str


@dataclass(frozen=True)
class VertexChart:
    """A vertex with its chart ``forward`` (base cube -> chart) and ``inverse``."""

    divisors: tuple[int, ...]
    forward: CubeMorphism
    inverse: CubeMorphism

    @property
    def key(self) -> frozenset[int]:
        return frozenset(self.divisors)

    def slot(self, divisor: int) -> int:
        return self.divisors.index(divisor)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.divisors)) + "}"


def base_divisor_ids(n: int, vertex: Sequence[int]) -> tuple[int, ...]:
    """Divisor ids through a base vertex: 2k-1 where v_k = 1, 2k where v_k = 0."""
    return tuple(2 * k - 1 if e else 2 * k for k, e in enumerate(vertex, 1))


def base_vertex(n: int, ids: Iterable[int]) -> tuple[int, ...] | None:
    """Inverse of :func:`base_divisor_ids`; ``None`` if ids are not a base vertex."""
    ids = set(ids)
    out = []
    for k in range(1, n + 1):
        if 2 * k - 1 in ids and 2 * k not in ids:
            out.append(1)
        elif 2 * k in ids and 2 * k - 1 not in ids:
            out.append(0)
        else:
            return None
    return tuple(out) if len(ids) == n else None


@dataclass
class DistinguishedSpace:
    n: int
    level: int
    divisors: list[Divisor]
    vertices: list[VertexChart]
    centers: list[tuple[int, ...]] = field(default_factory=list)

    # -- combinatorics -----------------------------------------------------
    def vertex(self, ids: Iterable[int]) -> VertexChart:
        key = frozenset(ids)
        for v in self.vertices:
            if v.key == key:
                return v
        raise TowerError(f"no vertex {sorted(key)}")

    def is_face(self, ids: Iterable[int]) -> bool:
        ids = frozenset(ids)
        return any(ids <= v.key for v in self.vertices)

    def faces(self) -> list[frozenset[int]]:
        out = set()
        for v in self.vertices:
            for r in range(self.n + 1):
                for sub in itertools.combinations(sorted(v.key), r):
                    out.add(frozenset(sub))
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def edges(self) -> list[tuple[frozenset[int], VertexChart, VertexChart]]:
        """(edge divisors, v, w) for each (n-1)-face; raises unless it has two vertices."""
        table: dict[frozenset[int], list[VertexChart]] = {}
        for v in self.vertices:
            for sub in itertools.combinations(sorted(v.key), self.n - 1):
                table.setdefault(frozenset(sub), []).append(v)
        out = []
        for e in sorted(table, key=sorted):
            vs = table[e]
            if len(vs) != 2:
                raise TowerError(f"edge {sorted(e)} has {len(vs)} vertices")
            out.append((e, vs[0], vs[1]))
        return out

    def edge_permutation(self, v: VertexChart, w: VertexChart) -> tuple[int, ...]:
        """g(v,w) as a tuple: slot p of v maps to slot g[p] of w (0-based)."""
        common = v.key & w.key
        if len(common) != self.n - 1:
            raise TowerError(f"vertices {v} and {w} are not adjacent")
        (a,) = v.key - common
        (b,) = w.key - common
        g = []
        for d in v.divisors:
            g.append(w.slot(b) if d == a else w.slot(d))
        return tuple(g)

    def vertex_signs(self, flip: Iterable[frozenset[int]] = ()) -> dict[frozenset[int], int]:
        """Signs anchored at surviving base vertices and propagated along edges.

        ``flip`` lists edges whose permutation parity is deliberately inverted
        (harness self-test).
        """
        flip = set(flip)
        adjacency: dict[frozenset[int], list[tuple[frozenset[int], int]]] = {}
        for e, v, w in self.edges():
            s = _perm_sign(self.edge_permutation(v, w))
            if e in flip:
                s = -s
            # eps(v) = -sgn(g(v,w)) eps(w)
            adjacency.setdefault(v.key, []).append((w.key, -s))
            adjacency.setdefault(w.key, []).append((v.key, -s))
        signs: dict[frozenset[int], int] = {}
        for v in self.vertices:
            bv = base_vertex(self.n, v.key)
            if bv is not None:
                signs[v.key] = vertex_sign(bv)
        if not signs:
            raise TowerError("no anchor vertex")
        queue = deque(signs)
        while queue:
            v = queue.popleft()
            for w, factor in adjacency.get(v, []):
                value = factor * signs[v]
                if w not in signs:
                    signs[w] = value
                    queue.append(w)
                elif signs[w] != value:
                    raise TowerError(f"inconsistent signs at edge {sorted(v)}-{sorted(w)}")
        if len(signs) != len(self.vertices):
            raise TowerError("vertex-edge graph is not connected")
        return signs

    # -- blow-up ------------------------------------------------------------
    def blow_up(self, center: Iterable[int]) -> "DistinguishedSpace":
        center = tuple(sorted(set(center)))
        if len(center) < 2:
            raise TowerError("codimension < 2: blowing up a divisor is the identity")
        if not self.is_face(center):
            raise TowerError(f"not a face: {list(center)}")
        new_id = max(d.id for d in self.divisors) + 1
        divisors = self.divisors + [Divisor(new_id, f"E{self.level + 1}")]
        cset = set(center)
        out: list[VertexChart] = []
        for w in self.vertices:
            if not cset <= w.key:
                out.append(w)
                continue
            for i in center:
                out.append(_blow_up_chart(self.n, w, cset, i, new_id))
        return DistinguishedSpace(self.n, self.level + 1, divisors, out, self.centers + [center])

    # -- charts -------------------------------------------------------------
    def verify_charts(self) -> VerificationReport:
        report = VerificationReport("chart-soundness", "forward o inverse = id on every chart")
        ident = identity(self.n)
        for v in self.vertices:
            ok1 = equal(compose(v.forward, v.inverse), ident)
            ok2 = equal(compose(v.inverse, v.forward), ident)
            report.add(f"level {self.level} vertex {v}", ok1 and ok2)
        return report

    def summary(self) -> dict:
        edges = self.edges()
        return {
            "level": self.level,
            "divisors": [{"id": d.id, "tag": d.tag} for d in self.divisors],
            "vertices": [list(v.divisors) for v in self.vertices],
            "edges": [sorted(e) for e, _, _ in edges],
            "signs": {",".join(map(str, sorted(k))): s for k, s in
                      sorted(self.vertex_signs().items(), key=lambda kv: sorted(kv[0]))},
            "charts": {",".join(map(str, v.divisors)): {
                "forward": [str(c) for c in v.forward.coords],
                "inverse": [str(c) for c in v.inverse.coords]} for v in self.vertices},
        }


def _perm_sign(g: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(g)
    for start in range(len(g)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = g[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _blow_up_chart(n: int, w: VertexChart, center: set[int], i: int, new_id: int) -> VertexChart:
    """Chart at the vertex (w minus i) plus E over w, for the blow-up along ``center``."""
    fw = w.forward.coords
    fi = fw[w.slot(i)]
    slots = []
    for d, f in zip(w.divisors, fw):
        if d == i:
            slots.append((new_id, f))
        elif d in center:
            slots.append((d, f / fi))
        else:
            slots.append((d, f))
    slots.sort(key=lambda t: t[0])
    divisors = tuple(d for d, _ in slots)
    forward = CubeMorphism(n, [f for _, f in slots])
    # inverse: chart coordinates t -> old chart coordinates -> base cube
    ring = cube_ring(n)
    t = {d: ring.gen(f"y{k}") for k, d in enumerate(divisors, 1)}
    s = t[new_id]
    old = []
    for d in w.divisors:
        if d == i:
            old.append(s)
        elif d in center:
            old.append(t[d] * s)
        else:
            old.append(t[d])
    inverse = compose(w.inverse, CubeMorphism(n, old))
    return VertexChart(divisors, forward, inverse)


def initial_space(n: int) -> DistinguishedSpace:
    """The n-cube with divisors 2k-1: y_k = 1 and 2k: y_k = 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    divisors = []
    for k in range(1, n + 1):
        divisors.append(Divisor(2 * k - 1, f"y{k}=1"))
        divisors.append(Divisor(2 * k, f"y{k}=0"))
    ring = cube_ring(n)
    vertices = []
    for v in itertools.product((0, 1), repeat=n):
        coords = [1 - ring.gen(f"y{k}") if e else ring.gen(f"y{k}") for k, e in enumerate(v, 1)]
        chart = CubeMorphism(n, coords)
        vertices.append(VertexChart(base_divisor_ids(n, v), chart, chart))
    return DistinguishedSpace(n, 0, divisors, vertices)


@dataclass
class Tower:
    n: int
    steps: list[tuple[int, ...]]
    spaces: list[DistinguishedSpace]

    @staticmethod
    def build(n: int, steps: Iterable[Iterable[int]]) -> "Tower":
        space = initial_space(n)
        spaces = [space]
        clean = []
        for step in steps:
            step = tuple(sorted(step))
            space = space.blow_up(step)
            spaces.append(space)
            clean.append(step)
        return Tower(n, clean, spaces)

    @property
    def top(self) -> DistinguishedSpace:
        return self.spaces[-1]

    @property
    def height(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {"n": self.n, "steps": [list(s) for s in self.steps]}

    @staticmethod
    def from_json(data: Mapping) -> "Tower":
        return Tower.build(int(data["n"]), data.get("steps", []))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def homotopy_tower(self) -> "Tower":
        """The tower over the (n+1)-cube used for the homotopy to level 0.

        Base ids are unchanged, ``2n+1: y_{n+1} = 1`` and ``2n+2: y_{n+1} = 0``
        are new, exceptional ids shift by 2, and every centre gains the
        divisor ``y_{n+1} = 1``.
        """
        n = self.n
        shift = {d.id: (d.id if d.id <= 2 * n else d.id + 2) for d in self.top.divisors}
        steps = [tuple(sorted([shift[d] for d in step] + [2 * n + 1])) for step in self.steps]
        return Tower.build(n + 1, steps)


# -- maps to the base and strict transforms -----------------------------------------

@dataclass
class SignedMap:
    sign: int
    vertex: tuple[int, ...]
    map: CubeMorphism


def phi_component_maps(space: DistinguishedSpace | Tower, c: Sequence) -> list[SignedMap]:
    """For each vertex: chart inverse composed with t_j |-> t_j * f_j^v(c), with its sign."""
    if isinstance(space, Tower):
        space = space.top
    c = [Fraction(v) for v in c]
    if len(c) != space.n:
        raise ValueError(f"need {space.n} parameters")
    point = {f"y{k}": v for k, v in enumerate(c, 1)}
    signs = space.vertex_signs()
    ring = cube_ring(space.n)
    out = []
    for v in space.vertices:
        try:
            values = [f.evaluate(point) for f in v.forward.coords]
        except ZeroDivisionError:
            raise NonGeneralParameter("parameter on divisor image") from None
        if any(x == 0 for x in values):
            raise NonGeneralParameter(f"parameter on divisor image at vertex {v}")
        scale = CubeMorphism(space.n, [ring.gen(f"y{k}") * x for k, x in enumerate(values, 1)])
        out.append(SignedMap(signs[v.key], v.divisors, compose(v.inverse, scale)))
    return out


class ComponentCollapses(ValueError):
    pass


def boundary_product(n: int, ring=None, upto: int | None = None) -> Polynomial:
    """prod_k y_k (1 - y_k) over the first ``upto`` cube coordinates."""
    ring = ring or cube_ring(n)
    out = ring.one()
    for k in range(1, (upto or n) + 1):
        y = ring.gen(f"y{k}")
        out = out * y * (1 - y)
    return out


def strict_transform(z: Cycle, f: CubeMorphism, sign: int = 1,
                     saturate_upto: int | None = None) -> Cycle:
    """Closure of the preimage of z away from the distinguished divisors.

    Generators are pulled back along ``f`` (target: the cube of z), then
    saturated by denominators and by the pullback of the boundary product of
    the first ``saturate_upto`` coordinates of z's cube.
    """
    if f.target_dim != z.n:
        raise ValueError("map target does not match the cycle's cube")
    target = z.context.with_n(f.source_dim)
    ring = target.ring
    coords = [c.to_ring(ring) for c in f.coords]
    assignment = {f"y{k}": c for k, c in enumerate(coords, 1)}
    bad = ring.one()
    for c in coords:
        bad = bad * c.den
    zring = z.ring
    bprod = boundary_product(z.n, zring, saturate_upto)
    pulled_b = bprod.substitute(assignment, ring)
    bad = bad * pulled_b.num * pulled_b.den
    if bad.is_zero():
        raise ComponentCollapses("the map lands inside a distinguished divisor")
    expected = z.d + f.source_dim
    comps = []
    for idx, comp in enumerate(z.components):
        gens = [g.substitute(assignment, ring).num for g in comp.ideal.gens]
        ideal = target.localize(Ideal(ring, gens).saturate(bad))
        if ideal.is_unit():
            raise ComponentCollapses(f"component {idx} ({comp.ideal}) collapses")
        dim = ideal.dimension()
        if dim != expected:
            raise ValueError(f"strict transform of component {idx} has dimension {dim}, "
                             f"expected {expected}")
        comps.append(Component(ideal, comp.coef * sign, False))
    return Cycle.from_components(target, z.d, comps)


@dataclass
class LevelReport:
    cycle: Cycle
    terms: list[tuple[tuple[int, ...], int, Cycle, bool]]
    admissible: bool
    witness: str


def sd_level_M(z: Cycle, tower: Tower | DistinguishedSpace, c: Sequence,
               check: bool = False) -> LevelReport:
    """Signed sum over the vertices of the top space of strict transforms of z."""
    space = tower.top if isinstance(tower, Tower) else tower
    terms = []
    total = Cycle.zero(z.context, z.d)
    for sm in phi_component_maps(space, c):
        t = strict_transform(z, sm.map, sm.sign)
        terms.append((sm.vertex, sm.sign, t, bool(is_admissible(t))))
        total = total + t
    result = is_admissible(total)
    if check and not result:
        raise NonGeneralParameter(f"level subdivision not admissible: {result.describe()}")
    return LevelReport(total, terms, bool(result), result.describe())


@dataclass
class H0Certificate:
    h: Cycle
    lhs: Cycle
    rhs: Cycle
    sd_top: Cycle
    sd_base: Cycle
    passed: bool
    residual: Cycle | None = None

    def to_json(self) -> dict:
        out = {"homotopy": self.h.to_json(), "boundary": str(self.lhs),
               "difference": str(self.rhs), "status": "pass" if self.passed else "fail"}
        if self.residual is not None:
            out["residual"] = str(self.residual)
        return out


def homotopy_h0(z: Cycle, tower: Tower, c_ext: Sequence, swap_ends: bool = False,
                check: bool = True, trivial=None) -> H0Certificate:
    """Homotopy between the level-M and level-0 subdivisions, with boundary certificate.

    The (n+1)-cube tower of :meth:`Tower.homotopy_tower` is evaluated at
    ``c_ext = (c, c_{n+1})``; each chart term is composed with the projection
    forgetting the last coordinate and the resulting strict transforms of z
    are summed with signs and the overall factor (-1)^{n+1}.  ``swap_ends``
    composes with the involution of the last coordinate (self-test).
    With ``trivial`` set, the identity is only required up to a residual
    passing that membership test, as for cycles on an open set whose faces
    extend over Y.
    """
    n = z.n
    c_ext = [Fraction(v) for v in c_ext]
    if len(c_ext) != n + 1:
        raise ValueError(f"need {n + 1} parameters")
    ttower = tower.homotopy_tower()
    pr = projection(n + 1, n + 1)
    total = Cycle.zero(z.context.with_n(n + 1), z.d)
    for sm in phi_component_maps(ttower, c_ext):
        f = compose(pr, sm.map)
        if swap_ends:
            f = compose(f, involution(n + 1, n + 1))
        total = total + strict_transform(z, f, sm.sign, saturate_upto=n)
    h = total if (n + 1) % 2 == 0 else -total
    if check:
        result = is_admissible(h)
        if not result:
            raise NonGeneralParameter(f"homotopy not admissible: {result.describe()}")
    c = c_ext[:n]
    sd_top = sd_level_M(z, tower, c).cycle
    sd_base = cubical_subdivision(z, c, "vertex_sum", check=False)
    lhs = boundary(h)
    rhs = reduce_degenerates(sd_top - sd_base)
    if trivial is None:
        return H0Certificate(h, lhs, rhs, sd_top, sd_base, lhs == rhs)
    residual = lhs - rhs
    return H0Certificate(h, lhs, rhs, sd_top, sd_base, residual.is_zero() or trivial(residual),
                         residual)
