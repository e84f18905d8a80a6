"""Support kernels, the quotient presheaf U -> z_d(Y,n)/G_d(Y-U,n), and Mayer-Vietoris."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Ideal, Ring, variety_contained
from .cycles import Component, Cycle, is_admissible, is_supported_in
from .report import VerificationReport


class GlueError(RuntimeError):
    pass


@dataclass(frozen=True)
class OpenSet:
    """U = affine m-space minus V(closed)."""

    m: int
    closed: tuple[str, ...]

    def __post_init__(self):
        ideal = Ideal.parse(Ring.standard(self.m, 0), self.closed)
        object.__setattr__(self, "closed", tuple(str(g) for g in ideal.basis))

    @staticmethod
    def whole(m: int) -> "OpenSet":
        return OpenSet(m, ("1",))

    @staticmethod
    def empty(m: int) -> "OpenSet":
        return OpenSet(m, ())

    @staticmethod
    def principal(m: int, f: str) -> "OpenSet":
        """D(f) = {f != 0}."""
        return OpenSet(m, (f,))

    def ideal(self, ring: Ring | None = None) -> Ideal:
        ring = ring or Ring.standard(self.m, 0)
        return Ideal.parse(ring, self.closed) if self.closed else Ideal(ring, [])

    def __and__(self, other: "OpenSet") -> "OpenSet":
        # complement of an intersection is the union of complements: ideal product
        prod = self.ideal() * other.ideal()
        return OpenSet(self.m, tuple(str(g) for g in prod.basis))

    def __or__(self, other: "OpenSet") -> "OpenSet":
        total = self.ideal() + other.ideal()
        return OpenSet(self.m, tuple(str(g) for g in total.basis))

    def __le__(self, other: "OpenSet") -> bool:
        """U <= V iff V(I_V) is contained in V(I_U)."""
        return variety_contained(other.ideal(), self.ideal())

    def __str__(self) -> str:
        if self.closed == ("1",):
            return "Y"
        if not self.closed:
            return "{}"
        return "Y - V(" + ", ".join(self.closed) + ")"


def in_kernel(z: Cycle, w: Ideal | Iterable[str]) -> bool:
    """z restricts to zero on Y - V(w), i.e. z is supported over V(w)."""
    return is_supported_in(z, w)


def class_equal(z1: Cycle, z2: Cycle, u: OpenSet) -> bool:
    """Equality in z_d(Y,n)/G_d(Y-U,n)."""
    return in_kernel(z1 - z2, u.closed)


def meets(comp: Component, u: OpenSet) -> bool:
    closed = u.ideal(comp.ideal.ring)
    return not variety_contained(comp.ideal, closed)


def restrict_components(z: Cycle, u: OpenSet) -> Cycle:
    """Closure of z|_U: the components of z that meet U."""
    return Cycle.from_components(z.context, z.d, [c for c in z.components if meets(c, u)])


@dataclass
class GlueResult:
    cycle: Cycle
    delta_u: Cycle
    delta_v: Cycle
    delta_uv: Cycle


def glue(x1: Cycle, x2: Cycle, u: OpenSet, v: OpenSet) -> GlueResult:
    """Glue x1 on U and x2 on V, given that they agree on U and V's overlap.

    Coefficients come from x1 on components meeting U and from x2 on
    components meeting V; the glued cycle is the closure of the result on
    U u V.  The residuals satisfy x~ = x~_U + delta_U = x~_V + delta_V and the
    part of delta_U supported off U u V must vanish.
    """
    both = u & v
    if not in_kernel(x1 - x2, both.closed):
        raise GlueError("precondition violated: x1 - x2 is not supported off U n V")
    union = u | v
    coefs: dict[tuple, list] = {}
    for source, opens in ((x1, u), (x2, v)):
        for comp in source.components:
            if not meets(comp, opens):
                continue
            entry = coefs.setdefault(comp.key, [comp, None])
            if entry[1] is None:
                entry[1] = comp.coef
            elif entry[1] != comp.coef:
                raise GlueError(f"precondition violated: coefficients of {comp.ideal} differ")
    glued = Cycle.from_components(
        x1.context, x1.d, [Component(c.ideal, k, c.irreducible) for c, k in coefs.values()])
    # no component of the glued cycle may live off U u V
    for comp in glued.components:
        if not meets(comp, union):
            raise GlueError(f"component {comp.ideal} is supported off U u V")
    xu = restrict_components(x1, u)
    xv = restrict_components(x2, v)
    delta_u = glued - xu
    delta_v = glued - xv
    if not in_kernel(delta_u, u.closed) or not in_kernel(delta_v, v.closed):
        raise GlueError("residuals are not supported off U and V")
    delta_uv = Cycle.from_components(
        x1.context, x1.d, [c for c in delta_u.components if not meets(c, union)])
    if not delta_uv.is_zero():
        raise GlueError(f"residual supported off U u V is nonzero: {delta_uv}")
    if not is_admissible(glued):
        raise GlueError("inadmissible glue")
    return GlueResult(glued, delta_u, delta_v, delta_uv)


MV_ANCHOR = ("Mayer-Vietoris for S_n: 0 -> S(U u V) -> S(U) + S(V) -> S(U n V) -> 0 "
             "with S_n(U) = z_d(Y,n)/G_d(Y-U,n)")


def _subset_sums(corpus: Sequence[Cycle], limit: int | None = None) -> list[Cycle]:
    out = []
    for r in range(len(corpus) + 1):
        for idx in itertools.combinations(range(len(corpus)), r):
            z = Cycle.zero(corpus[0].context, corpus[0].d)
            for k in idx:
                z = z + corpus[k]
            out.append(z)
    return out[:limit] if limit else out


def mv_check(u: OpenSet, v: OpenSet, corpus: Sequence[Cycle]) -> VerificationReport:
    """Exactness of the Mayer-Vietoris sequence on sums of corpus cycles."""
    report = VerificationReport("mv-exactness", MV_ANCHOR)
    with report.timed():
        union, both = u | v, u & v
        sums = _subset_sums(corpus)
        for k, z in enumerate(sums):
            # delta_1 delta_0 = 0
            report.add(f"d1.d0=0 sum#{k}", class_equal(z, z, both))
            # delta_0 injective: zero on U and on V forces zero on U u V
            zero_u = in_kernel(z, u.closed)
            zero_v = in_kernel(z, v.closed)
            if zero_u and zero_v:
                report.add(f"d0 injective sum#{k}", in_kernel(z, union.closed))
            # delta_1 surjective: (z, 0) maps to z on U n V
            zero = Cycle.zero(z.context, z.d)
            report.add(f"d1 surjective sum#{k}", class_equal(z - zero, z, both))
        glued = 0
        for a, b in itertools.product(range(len(sums)), repeat=2):
            x1, x2 = sums[a], sums[b]
            if not in_kernel(x1 - x2, both.closed):
                continue
            try:
                g = glue(x1, x2, u, v)
                ok = class_equal(g.cycle, x1, u) and class_equal(g.cycle, x2, v)
                report.add(f"ker d1 in im d0 ({a},{b})", ok, g.cycle)
            except GlueError as exc:
                report.add(f"ker d1 in im d0 ({a},{b})", False, detail=str(exc))
            glued += 1
        report.add("kernel pairs exercised", glued > 0, detail=f"{glued} pairs")
    return report


def kernel_intersection_law(z: Cycle, w1: Sequence[str], w2: Sequence[str]) -> bool:
    """in_kernel(W1) and in_kernel(W2) iff in_kernel(W1 n W2), W1 n W2 = V(I1 + I2)."""
    return (in_kernel(z, w1) and in_kernel(z, w2)) == in_kernel(z, list(w1) + list(w2))
