"""Exact multivariate polynomials and rational functions over Q.

A :class:`Ring` fixes an ordered list of variable names split into three
blocks: ambient coordinates ``x1..xm``, cube coordinates ``y1..yn`` and formal
parameters (transcendental constants such as ``c1, c2``).  Polynomials are
sparse maps from exponent tuples to :class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class UndefinedSubstitution(ZeroDivisionError):
    """A substitution produced an identically zero denominator."""


class Ring:
    """Ordered variable context, see the module docstring for the blocks."""

    __slots__ = ("ambient", "cube", "params", "names", "_index", "_hash")

    def __init__(self, ambient: Iterable[str] = (), cube: Iterable[str] = (),
                 params: Iterable[str] = ()):
        self.ambient = tuple(ambient)
        self.cube = tuple(cube)
        self.params = tuple(params)
        self.names = self.ambient + self.cube + self.params
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")
        self._index = {name: k for k, name in enumerate(self.names)}
        self._hash = hash((self.ambient, self.cube, self.params))

    @classmethod
    def standard(cls, m: int = 0, n: int = 0, params: Iterable[str] = ()) -> "Ring":
        return cls([f"x{i}" for i in range(1, m + 1)],
                   [f"y{i}" for i in range(1, n + 1)], params)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.ambient)

    @property
    def n(self) -> int:
        return len(self.cube)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in ring {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)}, _trusted=True)

    def gens(self, names: Iterable[str]) -> list["Polynomial"]:
        return [self.gen(v) for v in names]

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial(self, {}, _trusted=True)
        return Polynomial(self, {(0,) * self.nvars: c}, _trusted=True)

    def zero(self) -> "Polynomial":
        return self.const(0)

    def one(self) -> "Polynomial":
        return self.const(1)

    def extend(self, ambient: Iterable[str] = (), cube: Iterable[str] = (),
               params: Iterable[str] = ()) -> "Ring":
        return Ring(self.ambient + tuple(ambient), self.cube + tuple(cube),
                    self.params + tuple(params))

    def parse(self, text: str) -> "RationalFunction":
        return parse(text, self)

    def parse_poly(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Ring) and self._hash == other._hash
                and self.ambient == other.ambient and self.cube == other.cube
                and self.params == other.params)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Ring(ambient={self.ambient}, cube={self.cube}, params={self.params})"


def grevlex_key(e: Exponent):
    return (sum(e), tuple(-a for a in reversed(e)))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, Scalar] | None = None,
                 *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            clean = {}
            for e, c in (terms or {}).items():
                if len(e) != ring.nvars:
                    raise ValueError("exponent length does not match ring")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
            self.terms = clean
        self._hash = None

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return RationalFunction(self) / other

    def __rtruediv__(self, other):
        return RationalFunction(self.ring.const(other)) / self

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        k = self.ring.index(var)
        return max(e[k] for e in self.terms)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for k, a in enumerate(e):
                if a:
                    used.add(self.ring.names[k])
        return used

    def leading_exponent(self, key=grevlex_key) -> Exponent:
        return max(self.terms, key=key)

    def leading_coefficient(self, key=grevlex_key) -> Fraction:
        return self.terms[self.leading_exponent(key)]

    def monic(self, key=grevlex_key) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(key))

    def primitive_integer(self) -> "Polynomial":
        """Positive-leading scalar multiple with coprime integer coefficients."""
        if not self.terms:
            return self
        from math import gcd, lcm
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(c.numerator for c in self.terms.values()))
        p = self.scale(Fraction(den, num))
        return -p if p.leading_coefficient() < 0 else p

    # -- evaluation and substitution -----------------------------------
    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        values = [Fraction(point[name]) if self._uses(k) else Fraction(0)
                  for k, name in enumerate(self.ring.names)]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for k, a in enumerate(e):
                if a:
                    t *= values[k] ** a
            total += t
        return total

    def _uses(self, k: int) -> bool:
        return any(e[k] for e in self.terms)

    def compose(self, values: Sequence["Polynomial"], target: Ring) -> "Polynomial":
        """Substitute ``values[k]`` for the k-th variable; result lives in ``target``."""
        if len(values) != self.ring.nvars:
            raise ValueError("need one value per variable")
        powers: list[dict[int, Polynomial]] = [{0: target.one()} for _ in values]

        def power(k: int, a: int) -> Polynomial:
            cache = powers[k]
            if a not in cache:
                cache[a] = power(k, a - 1) * values[k]
            return cache[a]

        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for k, a in enumerate(e):
                if a:
                    t = t * power(k, a)
            for e2, c2 in t.terms.items():
                v = out.get(e2, 0) + c2
                if v:
                    out[e2] = v
                else:
                    out.pop(e2, None)
        return Polynomial(target, out, _trusted=True)

    def substitute(self, assignment: Mapping[str, "RationalFunction | Polynomial | Scalar"],
                   target: Ring | None = None) -> "RationalFunction":
        """Replace assigned variables by rational functions in ``target``.

        Unassigned variables are mapped to the same-named variable of ``target``
        (which defaults to this ring).
        """
        target = target or self.ring
        nums: list[Polynomial] = []
        dens: list[Polynomial] = []
        for name in self.ring.names:
            if name in assignment:
                r = as_rational(assignment[name], target)
            else:
                r = RationalFunction(target.gen(name))
            nums.append(r.num)
            dens.append(r.den)
        return substitute_fractions(self, nums, dens, target)

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-embed into a ring that contains every variable actually used."""
        if ring == self.ring:
            return self
        idx = [ring.index(name) if self._uses(k) else None
               for k, name in enumerate(self.ring.names)]
        out = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for k, a in enumerate(e):
                if a:
                    new[idx[k]] = a
            out[tuple(new)] = c
        return Polynomial(ring, out, _trusted=True)

    def rename(self, mapping: Mapping[str, str], ring: Ring) -> "Polynomial":
        """Rename variables (monomial-wise) into ``ring``."""
        idx = [ring.index(mapping.get(name, name)) if self._uses(k) else None
               for k, name in enumerate(self.ring.names)]
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for k, a in enumerate(e):
                if a:
                    new[idx[k]] += a
            t = tuple(new)
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return Polynomial(ring, out, _trusted=True)

    def derivative(self, var: str) -> "Polynomial":
        k = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                new = list(e)
                new[k] -= 1
                out[tuple(new)] = c * e[k]
        return Polynomial(self.ring, out, _trusted=True)

    # -- printing -------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial | None:
    """Return ``a / b`` if ``b`` divides ``a`` exactly, else ``None``."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.terms:
        return a
    lb = b.leading_exponent()
    cb = b.terms[lb]
    rest = a.terms.copy()
    quotient: dict[Exponent, Fraction] = {}
    while rest:
        la = max(rest, key=grevlex_key)
        if any(x < y for x, y in zip(la, lb)):
            return None
        q = tuple(x - y for x, y in zip(la, lb))
        qc = rest[la] / cb
        quotient[q] = qc
        for e, c in b.terms.items():
            t = _add_exp(e, q)
            v = rest.get(t, 0) - qc * c
            if v:
                rest[t] = v
            else:
                rest.pop(t, None)
    return Polynomial(a.ring, quotient, _trusted=True)


def substitute_fractions(p: Polynomial, nums: Sequence[Polynomial],
                         dens: Sequence[Polynomial], target: Ring) -> "RationalFunction":
    """Evaluate ``p`` at ``nums[k]/dens[k]`` with a common denominator.

    Each monomial is multiplied by ``dens[k] ** (D_k - a_k)`` where ``D_k`` is
    the degree of ``p`` in variable ``k``; the common denominator is the
    product of ``dens[k] ** D_k``.  Denominator factors are then cancelled
    while they divide the numerator exactly.
    """
    for d in dens:
        if d.is_zero():
            raise UndefinedSubstitution("undefined substitution: zero denominator")
    if not p.terms:
        return RationalFunction(target.zero())
    nv = p.ring.nvars
    top = [max(e[k] for e in p.terms) for k in range(nv)]
    nontrivial = [k for k in range(nv) if top[k] and not (dens[k].is_constant()
                                                         and dens[k].constant_value() == 1)]
    if not nontrivial:
        return RationalFunction(p.compose(nums, target))

    cache: dict[tuple[int, int, int], Polynomial] = {}

    def pw(kind: int, k: int, a: int) -> Polynomial:
        key = (kind, k, a)
        if key not in cache:
            base = nums[k] if kind == 0 else dens[k]
            cache[key] = target.one() if a == 0 else pw(kind, k, a - 1) * base
        return cache[key]

    num = target.zero()
    for e, c in p.terms.items():
        t = target.const(c)
        for k, a in enumerate(e):
            if a:
                t = t * pw(0, k, a)
            if k in nontrivial and top[k] - a:
                t = t * pw(1, k, top[k] - a)
        num = num + t
    den_factors = [(dens[k], top[k]) for k in nontrivial]
    scalar = Fraction(1)
    den_poly = target.one()
    for d, a in den_factors:
        if d.is_constant():
            scalar *= d.constant_value() ** a
            continue
        while a:
            q = divide_exact(num, d)
            if q is None:
                break
            num = q
            a -= 1
        if a:
            den_poly = den_poly * d ** a
    if scalar != 1:
        num = num.scale(1 / scalar)
    return RationalFunction(num, den_poly)


class RationalFunction:
    """Quotient of polynomials, normalized to a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = num.ring.one()
        if den.ring != num.ring:
            raise ValueError("numerator and denominator in different rings")
        if den.is_zero():
            raise UndefinedSubstitution("undefined substitution: zero denominator")
        if den.is_constant():
            num = num.scale(1 / den.constant_value())
            den = num.ring.one()
        else:
            lc = den.leading_coefficient()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
            q = divide_exact(num, den)
            if q is not None:
                num, den = q, num.ring.one()
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.ring.const(other))
        return NotImplemented

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise UndefinedSubstitution("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.ring.one()) / (self ** (-k))
        return RationalFunction(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring == other.ring and self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        # Only well defined when both sides are in lowest terms; used for polynomials.
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def substitute(self, assignment, target: Ring | None = None) -> "RationalFunction":
        return self.num.substitute(assignment, target) / self.den.substitute(assignment, target)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise UndefinedSubstitution("denominator vanishes at point")
        return self.num.evaluate(point) / d

    def to_ring(self, ring: Ring) -> "RationalFunction":
        return RationalFunction(self.num.to_ring(ring), self.den.to_ring(ring))

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_polynomial(self.num)
        num = format_polynomial(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({format_polynomial(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def as_rational(value, ring: Ring) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value if value.ring == ring else value.to_ring(ring)
    if isinstance(value, Polynomial):
        return RationalFunction(value if value.ring == ring else value.to_ring(ring))
    if isinstance(value, (int, Fraction)):
        return RationalFunction(ring.const(value))
    if isinstance(value, str):
        return parse(value, ring)
    raise TypeError(f"cannot interpret {value!r} as a rational function")


# -- printing -----------------------------------------------------------------

def _format_monomial(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for k, a in enumerate(e):
        if a == 1:
            parts.append(names[k])
        elif a:
            parts.append(f"{names[k]}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=grevlex_key, reverse=True):
        c = p.terms[e]
        mono = _format_monomial(e, p.ring.names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- parsing ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> RationalFunction:
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * int(val))
        return base

    def atom(self) -> RationalFunction:
        kind, val = self.take()
        if kind == "num":
            return RationalFunction(self.ring.const(int(val)))
        if kind == "name":
            if val not in self.ring:
                raise ParseError(f"unknown variable {val!r}")
            return RationalFunction(self.ring.gen(val))
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str, ring: Ring) -> RationalFunction:
    """Parse a rational-function expression in the variables of ``ring``."""
    return _Parser(text, ring).parse()


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    r = parse(text, ring)
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return r.num
