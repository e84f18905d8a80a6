"""Dense univariate polynomials over Q as coefficient lists (constant term first)."""

from __future__ import annotations

from fractions import Fraction

UPoly = list[Fraction]


def trim(p: UPoly) -> UPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: UPoly) -> int:
    return len(trim(p)) - 1


def monic(p: UPoly) -> UPoly:
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def derivative(p: UPoly) -> UPoly:
    return trim([k * p[k] for k in range(1, len(p))])


def divmod_poly(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for k, c in enumerate(b):
            r[k + shift] -= f * c
        r = trim(r)
    return trim(q), r


def gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def squarefree_decomposition(p: UPoly) -> dict[int, UPoly]:
    """Yun's algorithm: ``p = lc * prod q_k^k`` with pairwise coprime squarefree ``q_k``."""
    p = monic(p)
    out: dict[int, UPoly] = {}
    if degree(p) <= 0:
        return out
    a0 = gcd(p, derivative(p))
    b = divmod_poly(p, a0)[0]
    c = divmod_poly(derivative(p), a0)[0]
    d = _sub(c, derivative(b))
    k = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out[k] = monic(a)
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = _sub(c, derivative(b))
        k += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(p)
    if degree(p) <= 0:
        return monic(p)
    return monic(divmod_poly(p, gcd(p, derivative(p)))[0])


def _sub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return trim([x - y for x, y in zip(a, b)])
