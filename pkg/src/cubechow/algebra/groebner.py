"""Buchberger's algorithm with the normal selection strategy.

Bases are computed on bare ``{exponent: Fraction}`` dictionaries and cached
per (ring, order, generator set).  Returned bases are reduced, monic and
sorted by decreasing leading monomial, hence canonical for a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .poly import Exponent, Polynomial, Ring, grevlex_key

Terms = dict[Exponent, Fraction]


@dataclass(frozen=True)
class MonomialOrder:
    """Product of graded reverse lexicographic orders on consecutive blocks.

    ``blocks`` lists block sizes from the most significant block; ``None``
    means a single block spanning every variable.  Pure lex is the order with
    every block of size one.
    """

    blocks: tuple[int, ...] | None = None

    @staticmethod
    def grevlex() -> "MonomialOrder":
        return MonomialOrder(None)

    @staticmethod
    def lex(nvars: int) -> "MonomialOrder":
        return MonomialOrder((1,) * nvars)

    @staticmethod
    def block(*sizes: int) -> "MonomialOrder":
        return MonomialOrder(tuple(s for s in sizes if s))

    def key(self) -> Callable[[Exponent], tuple]:
        if self.blocks is None or len(self.blocks) == 1:
            return grevlex_key
        cuts = []
        start = 0
        for size in self.blocks:
            cuts.append((start, start + size))
            start += size

        def key(e: Exponent) -> tuple:
            return tuple(grevlex_key(e[a:b]) for a, b in cuts) + (grevlex_key(e[start:]),)

        return key


def default_order(ring: Ring) -> MonomialOrder:
    """grevlex, with formal parameters in a separate least-significant block."""
    if ring.params:
        return MonomialOrder.block(ring.nvars - len(ring.params), len(ring.params))
    return MonomialOrder.grevlex()


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def reduce_terms(f: Terms, basis: Sequence[tuple[Exponent, Terms]], key) -> Terms:
    """Full reduction of ``f`` by a list of monic (leading exponent, terms)."""
    f = dict(f)
    rem: Terms = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for e, gc in g.items():
                    if e == lm:
                        continue
                    t = tuple(x + y for x, y in zip(e, q))
                    v = f.get(t, 0) - c * gc
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
    return rem


def _monic(f: Terms, key) -> tuple[Exponent, Terms]:
    lm = max(f, key=key)
    lc = f[lm]
    if lc != 1:
        f = {e: c / lc for e, c in f.items()}
    return lm, f


def _spoly(lm1: Exponent, f1: Terms, lm2: Exponent, f2: Terms) -> Terms:
    lcm = _lcm(lm1, lm2)
    q1 = tuple(x - y for x, y in zip(lcm, lm1))
    q2 = tuple(x - y for x, y in zip(lcm, lm2))
    out: Terms = {}
    for e, c in f1.items():
        out[tuple(x + y for x, y in zip(e, q1))] = c
    for e, c in f2.items():
        t = tuple(x + y for x, y in zip(e, q2))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def buchberger(polys: Sequence[Terms], nvars: int, order: MonomialOrder) -> list[Terms]:
    """Reduced Gröbner basis of the ideal spanned by ``polys``."""
    key = order.key()
    unit = {(0,) * nvars: Fraction(1)}
    G: list[tuple[Exponent, Terms]] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: Terms) -> None:
        G.append(_monic(h, key))
        j = len(G) - 1
        pairs.update((i, j) for i in range(j))

    for p in polys:
        if p:
            h = reduce_terms(p, G, key)
            if h:
                if not any(h_e for h_e in max(h, key=key)):
                    return [unit]
                add(h)

    def pair_key(p: tuple[int, int]):
        return (key(_lcm(G[p[0]][0], G[p[1]][0])), -p[1], -p[0])

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lmi, fi = G[i]
        lmj, fj = G[j]
        if _coprime(lmi, lmj):
            continue
        lcm = _lcm(lmi, lmj)
        chain = False
        for k, (lmk, _) in enumerate(G):
            if k in (i, j) or not _divides(lmk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        h = reduce_terms(_spoly(lmi, fi, lmj, fj), G, key)
        if h:
            if not any(max(h, key=key)):
                return [unit]
            add(h)

    # minimalize then interreduce
    lms = [lm for lm, _ in G]
    keep = []
    for idx, lm in enumerate(lms):
        redundant = False
        for jdx, other in enumerate(lms):
            if jdx == idx or not _divides(other, lm):
                continue
            if other != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append(G[idx])
    reduced = []
    for idx, (lm, f) in enumerate(keep):
        others = [g for jdx, g in enumerate(keep) if jdx != idx]
        tail = {e: c for e, c in f.items() if e != lm}
        tail = reduce_terms(tail, others, key)
        tail[lm] = Fraction(1)
        reduced.append((lm, tail))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return [f for _, f in reduced]


@lru_cache(maxsize=8192)
def _cached_basis(ring: Ring, order: MonomialOrder,
                  gens: frozenset[Polynomial]) -> tuple[Polynomial, ...]:
    terms = sorted((dict(g.terms) for g in gens), key=lambda t: len(t))
    basis = buchberger(terms, ring.nvars, order)
    return tuple(Polynomial(ring, f, _trusted=True) for f in basis)


def groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
                   ring: Ring | None = None) -> tuple[Polynomial, ...]:
    """Reduced Gröbner basis; ``()`` for the zero ideal, ``(1,)`` for the unit ideal."""
    nonzero = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if not nonzero:
        return ()
    order = order or default_order(ring)
    return _cached_basis(ring, order, frozenset(nonzero))


def normal_form(p: Polynomial, basis: Sequence[Polynomial],
                order: MonomialOrder | None = None) -> Polynomial:
    order = order or default_order(p.ring)
    key = order.key()
    lead = [(max(g.terms, key=key), g.terms) for g in basis]
    return Polynomial(p.ring, reduce_terms(p.terms, lead, key), _trusted=True)
