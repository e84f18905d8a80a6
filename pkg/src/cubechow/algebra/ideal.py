"""Ideals of a polynomial ring: dimension, saturation, elimination, radicals."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import univariate as U
from .groebner import MonomialOrder, default_order, groebner_basis, normal_form
from .poly import Exponent, Polynomial, Ring, as_rational


class UnsupportedMultiplicity(ValueError):
    """A positive-dimensional non-reduced intersection was met."""


def _fresh_name(ring: Ring, stem: str) -> str:
    name = stem
    k = 0
    while name in ring:
        k += 1
        name = f"{stem}{k}"
    return name


class Ideal:
    """Finitely generated ideal with a lazily computed reduced Gröbner basis."""

    __slots__ = ("ring", "gens", "_bases", "_dim")

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        clean = []
        for g in gens:
            g = as_rational(g, ring)
            if not g.is_polynomial():
                raise ValueError(f"ideal generator {g} is not a polynomial")
            if not g.num.is_zero():
                clean.append(g.num)
        self.gens = tuple(clean)
        self._bases: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._dim: object = ...

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse_poly(t) for t in texts])

    # -- Gröbner data -----------------------------------------------------
    def groebner(self, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        order = order or default_order(self.ring)
        if order not in self._bases:
            self._bases[order] = groebner_basis(self.gens, order, self.ring)
        return self._bases[order]

    @property
    def basis(self) -> tuple[Polynomial, ...]:
        return self.groebner()

    def is_unit(self) -> bool:
        b = self.basis
        return len(b) == 1 and b[0].is_constant()

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.basis, default_order(self.ring))

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ring, self.basis))

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.basis) + ">"

    def __repr__(self) -> str:
        return f"Ideal({self})"

    # -- ideal arithmetic -------------------------------------------------
    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        more = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.gens + tuple(more))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def intersect(self, other: "Ideal") -> "Ideal":
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        t = _fresh_name(self.ring, "t_int")
        big = self.ring.extend(ambient=[t])
        tt = big.gen(t)
        gens = [tt * f.to_ring(big) for f in self.gens]
        gens += [(1 - tt) * g.to_ring(big) for g in other.gens]
        return Ideal(big, gens).eliminate([t]).to_ring(self.ring)

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.basis])

    def substitute(self, assignment: Mapping[str, object], target: Ring | None = None) -> "Ideal":
        """Image under substitution; denominators of each generator are cleared."""
        target = target or self.ring
        return Ideal(target, [g.substitute(assignment, target).num for g in self.gens])

    # -- geometry ---------------------------------------------------------
    def _geometric_positions(self) -> list[int]:
        return list(range(self.ring.nvars - len(self.ring.params)))

    def dimension(self) -> int | None:
        """Krull dimension of V(I) over Q(params); ``None`` when V(I) is empty."""
        if self._dim is ...:
            self._dim = self._compute_dimension()
        return self._dim  # type: ignore[return-value]

    def _compute_dimension(self) -> int | None:
        pos = self._geometric_positions()
        leads = []
        for g in self.basis:
            lm = g.leading_exponent(default_order(self.ring).key())
            support = frozenset(k for k in pos if lm[k])
            if not support:
                return None
            leads.append(support)
        for size in range(len(pos), -1, -1):
            for subset in itertools.combinations(pos, size):
                s = set(subset)
                if all(not lead <= s for lead in leads):
                    return size
        return 0

    def eliminate(self, names: Iterable[str]) -> "Ideal":
        """``I ∩ Q[remaining variables]`` expressed in the same ring."""
        names = [v for v in self.ring.names if v in set(names)]
        if not names:
            return self
        rest = [v for v in self.ring.names if v not in names and v not in self.ring.params]
        params = [v for v in self.ring.params if v not in names]
        work = Ring(names + rest, (), params)
        order = MonomialOrder.block(len(names), len(rest), len(params))
        idx = [work.index(v) for v in names]
        basis = groebner_basis([g.to_ring(work) for g in self.gens], order, work)
        kept = [g for g in basis if not any(e[k] for e in g.terms for k in idx)]
        return Ideal(self.ring, [g.to_ring(self.ring) for g in kept])

    def saturate(self, f: Polynomial) -> "Ideal":
        """``I : f^∞`` via ``(I + <1 - t f>) ∩ Q[x]``."""
        if f.is_zero():
            raise ValueError("cannot saturate by zero")
        if f.is_constant() or self.is_unit():
            return self
        t = _fresh_name(self.ring, "t_sat")
        big = self.ring.extend(ambient=[t])
        gens = [g.to_ring(big) for g in self.basis] + [1 - big.gen(t) * f.to_ring(big)]
        return Ideal(big, gens).eliminate([t]).to_ring(self.ring)

    def saturate_ideal(self, other: "Ideal") -> "Ideal":
        """``I : J^∞`` as the intersection of the saturations by generators of J."""
        if other.is_zero():
            return Ideal.unit(self.ring)
        result = None
        for g in other.basis:
            s = self.saturate(g)
            result = s if result is None else result.intersect(s)
        return result

    def radical_contains(self, g: Polynomial) -> bool:
        """``g ∈ √I`` via ``1 ∈ I + <1 - t g>``."""
        if self.contains(g):
            return True
        t = _fresh_name(self.ring, "t_rad")
        big = self.ring.extend(ambient=[t])
        gens = [h.to_ring(big) for h in self.basis] + [1 - big.gen(t) * g.to_ring(big)]
        return Ideal(big, gens).is_unit()

    # -- zero-dimensional quotients ----------------------------------------
    def is_zero_dimensional(self) -> bool:
        return self.dimension() == 0

    def standard_monomials(self) -> list[Exponent]:
        if self.ring.params:
            raise ValueError("standard monomials need a parameter-free ring")
        if self.dimension() != 0:
            raise ValueError("quotient is not finite dimensional")
        key = default_order(self.ring).key()
        leads = [g.leading_exponent(key) for g in self.basis]
        nv = self.ring.nvars
        start = (0,) * nv
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for e in frontier:
                for k in range(nv):
                    f = list(e)
                    f[k] += 1
                    f = tuple(f)
                    if f in seen or any(all(a <= b for a, b in zip(lm, f)) for lm in leads):
                        continue
                    seen.add(f)
                    nxt.append(f)
            frontier = nxt
        return sorted(seen, key=key)

    def length(self) -> int:
        """Dimension of the quotient ring as a Q-vector space (zero-dimensional only)."""
        if self.is_unit():
            return 0
        return len(self.standard_monomials())

    def multiplication_matrix(self, f: Polynomial) -> list[list[Fraction]]:
        basis = self.standard_monomials()
        where = {e: k for k, e in enumerate(basis)}
        cols = []
        for e in basis:
            mono = Polynomial(self.ring, {e: Fraction(1)}, _trusted=True)
            nf = self.reduce(f * mono)
            col = [Fraction(0)] * len(basis)
            for t, c in nf.terms.items():
                col[where[t]] = c
            cols.append(col)
        n = len(basis)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def characteristic_polynomial(self, f: Polynomial) -> U.UPoly:
        return charpoly(self.multiplication_matrix(f))

    def zero_dim_radical(self) -> "Ideal":
        """Radical of a zero-dimensional ideal (squarefree parts of eliminants)."""
        extra = []
        for v in self.ring.names:
            chi = self.characteristic_polynomial(self.ring.gen(v))
            extra.append(_upoly_at(U.squarefree_part(chi), self.ring.gen(v)))
        return self + extra

    def point_cycle(self, seed: int = 0) -> list[tuple["Ideal", int]]:
        """Split a zero-dimensional scheme into reduced pieces of equal multiplicity.

        Returns ``[(R_k, k), ...]`` where ``R_k`` is the radical ideal of the
        points whose local length is ``k``.  Multiplication by a generic
        linear form separates the points; its characteristic polynomial is
        ``prod_p (T - l(p))^{len_p}`` and a squarefree decomposition groups
        the points by length without factoring.
        """
        if self.is_unit():
            return []
        radical = self.zero_dim_radical()
        total = self.length()
        npoints = radical.length()
        if total == npoints:
            return [(self, 1)]
        rng = random.Random(seed)
        for _ in range(64):
            form = sum((rng.randint(-9, 9) * self.ring.gen(v) for v in self.ring.names),
                       self.ring.zero())
            chi = self.characteristic_polynomial(form)
            if U.degree(U.squarefree_part(chi)) != npoints:
                continue
            groups = U.squarefree_decomposition(chi)
            return [(radical + [_upoly_at(q, form)], k) for k, q in sorted(groups.items())]
        raise RuntimeError("failed to find a separating linear form")

    def is_generically_reduced(self, seed: int = 0) -> bool:
        """True when I is reduced at the generic point of every top-dimensional component."""
        d = self.dimension()
        if d is None:
            return True
        if d == 0:
            return self.length() == self.zero_dim_radical().length()
        rng = random.Random(seed)
        names = [self.ring.names[k] for k in self._geometric_positions()]
        for _ in range(64):
            forms = []
            for _ in range(d):
                form = sum((rng.randint(-9, 9) * self.ring.gen(v) for v in names),
                           self.ring.const(rng.randint(-9, 9)))
                forms.append(form)
            sliced = self + forms
            if sliced.dimension() != 0:
                continue
            return sliced.length() == sliced.zero_dim_radical().length()
        raise RuntimeError("failed to find a generic slice")


def _upoly_at(q: U.UPoly, f: Polynomial) -> Polynomial:
    out = f.ring.zero()
    for c in reversed(q):
        out = out * f + c
    return out


def charpoly(a: Sequence[Sequence[Fraction]]) -> U.UPoly:
    """Faddeev-LeVerrier: coefficients of det(T I - A), constant term first."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        tr = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def variety_contained(iz: Ideal, iw: Ideal) -> bool:
    """``V(I_Z) ⊆ V(I_W)``: every generator of I_W lies in the radical of I_Z."""
    if iz.is_unit():
        return True
    return all(iz.radical_contains(g) for g in iw.gens)


def ideal_dimension(ideal: Ideal) -> int | None:
    return ideal.dimension()


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    return ideal.saturate(f)


def eliminate(ideal: Ideal, names: Iterable[str]) -> Ideal:
    return ideal.eliminate(names)


def substitute(p: Polynomial, assignment: Mapping[str, object], target: Ring | None = None):
    return p.substitute(assignment, target)
