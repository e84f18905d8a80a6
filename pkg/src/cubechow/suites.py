"""Named verification suites, one per identity of the cycle calculus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import Ideal
from .blowup import (ComponentCollapses, Tower, TowerError, homotopy_h0, initial_space,
                     phi_component_maps, sd_level_M)
from .cube import (compose, compose_all, equal, eta, face_map, involution, mu, pi_v, iota_v,
                   scaling, vertex_sign, vertices, verify_eta_table, verify_h_face_table)
from .cycles import (AmbientContext, Cycle, boundary, build_cycle, codim_one_faces, face,
                     is_admissible, is_normalized_mod, pullback, restrict_to_open)
from .fixtures import Corpus, hand_chart_ideal
from .report import VerificationReport
from .sheaf import OpenSet, class_equal, in_kernel, kernel_intersection_law, mv_check
from .subdivision import (NonGeneralParameter, bidivision, cubical_subdivision, extends_over,
                          phi_chain, phi_homotopy, random_points, sample_general_position,
                          subdivision_maps)


@dataclass
class Options:
    seed: int = 0
    random: int = 100
    max_n: int = 4
    samples: int = 3


@dataclass
class Suite:
    name: str
    anchor: str
    run: Callable[[Corpus, Options], VerificationReport]


SUITES: dict[str, Suite] = {}


def suite(name: str, anchor: str):
    def register(fn):
        if not anchor:
            raise ValueError(f"suite {name} has no anchor")
        SUITES[name] = Suite(name, anchor, fn)
        return fn
    return register


def run_suite(name: str, corpus: Corpus | None = None,
              options: Options | None = None) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    s = SUITES[name]
    if not s.anchor:
        raise RuntimeError(f"refusing to run suite {name} without an anchor")
    report = VerificationReport(name, s.anchor)
    with report.timed():
        inner = s.run(corpus or Corpus(), options or Options())
        report.extend(inner)
    return report


def _sample_points(z: Cycle, opts: Options, count: int, homotopy: bool = True):
    points = []
    seed = opts.seed
    while len(points) < count:
        c = sample_general_position(z, seed, homotopy=homotopy)
        if c not in points:
            points.append(c)
        seed += 1
    return points


def _fmt(c) -> str:
    return "(" + ",".join(str(v) for v in c) + ")"


# -- morphism tables -------------------------------------------------------------

@suite("eta-table", "boundary values of eta_c^0(y,z) = (1-(1-c)(1-z))y and "
                    "eta_c^1(y,z) = 1-(1-c)y(1-z) on the four edges of the square")
def _eta(corpus: Corpus, opts: Options) -> VerificationReport:
    return verify_eta_table()


@suite("h-faces", "faces of H_{(l),c,i}^{n+1} = (y_1,..,eta_{c_i}^l(y_i,y_{n+1}),..,y_n); "
                  "flatness factorizations of eta through tau, sigma, mu; cubical face relations")
def _h_faces(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("h-faces", SUITES["h-faces"].anchor)
    for n in range(1, opts.max_n + 1):
        report.extend(verify_h_face_table(n))
    report.add("eta0 = mu.tau2.sigma_{1-c,2}.tau2",
               equal(eta(0, "c"), compose_all(mu(), involution(2, 2), scaling(2, 2, "1-c"),
                                              involution(2, 2))))
    report.add("eta1 = tau1.mu.sigma_{1-c,1}.tau2",
               equal(eta(1, "c"), compose_all(involution(1, 1), mu(), scaling(2, 1, "1-c"),
                                              involution(2, 2))))
    for n in range(2, opts.max_n + 1):
        ok = True
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                for e in (0, 1):
                    for dlt in (0, 1):
                        lhs = compose(face_map(n, j, dlt), face_map(n - 1, i, e))
                        rhs = compose(face_map(n, i, e), face_map(n - 1, j - 1, dlt))
                        ok = ok and equal(lhs, rhs)
        report.add(f"cubical relation i<j, n={n}", ok)
    return report


# -- bi-division and subdivision -------------------------------------------------

@suite("bidiv-homotopy", "boundary of phi_{c,i}(Z) = (-1)^{n+1}(H_0^* Z - H_1^* Z) "
                         "equals Z - delta_{c_i,i}(Z) for normalized Z")
def _bidiv_homotopy(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("bidiv-homotopy", "")
    for fx in corpus.cycles():
        if not fx.normalized:
            continue
        for c in _sample_points(fx.cycle, opts, opts.samples):
            for i in range(1, fx.cycle.n + 1):
                cert = phi_homotopy(fx.cycle, i, c)
                report.add(f"{fx.id} i={i} c={_fmt(c)}", cert.passed, cert.lhs, cert.rhs)
    # self-test: without the sign the identity must break (n even)
    z = corpus.cycle("point-2-3").cycle
    c = _sample_points(z, opts, 1)[0]
    broken = phi_homotopy(z, 1, c, sign=False)
    report.add("self-test: dropping the sign breaks the identity", not broken.passed)
    return report


@suite("delta-preserves-normal", "all 2n codimension-one faces of delta_{c_i,i}(Z) "
                                 "vanish when those of Z do")
def _delta_normal(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("delta-preserves-normal", "")
    for fx in corpus.cycles():
        if not fx.normalized:
            continue
        for c in _sample_points(fx.cycle, opts, opts.samples):
            for i in range(1, fx.cycle.n + 1):
                w = bidivision(fx.cycle, i, c[i - 1])
                faces = codim_one_faces(w)
                bad = [k for k, f in faces.items() if not f.is_zero()]
                report.add(f"{fx.id} i={i} c={_fmt(c)}", not bad, detail=None if not bad else
                           f"nonzero faces {bad}")
    return report


@suite("sd-two-forms", "sd_c(Z) = delta_{c_n,n}...delta_{c_1,1}(Z) equals "
                       "sum_v eps(v) (pi_v iota_v)^*(Z)")
def _sd_forms(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("sd-two-forms", "")
    for fx in corpus.cycles():
        if fx.cycle.n > 3:
            continue
        if fx.admissible:
            points = _sample_points(fx.cycle, opts, opts.samples, homotopy=False)
        else:
            # both forms are pullbacks along isomorphisms, so they still compare
            points = [p for _, p in zip(range(opts.samples), random_points(fx.cycle.n, opts.seed))]
        for c in points:
            a = cubical_subdivision(fx.cycle, c, "iterated", check=fx.admissible)
            b = cubical_subdivision(fx.cycle, c, "vertex_sum", check=fx.admissible)
            report.add(f"{fx.id} c={_fmt(c)}", a == b, a, b)
    for n in (1, 2, 3):
        maps = subdivision_maps([Fraction(1, 3)] * n)
        report.add(f"vertex sum n={n}: 2^n terms, signs sum to 0",
                   len(maps) == 2 ** n and sum(s for s, _, _ in maps) == 0)
    return report


@suite("sd-chain", "boundary of phi_n(Z) = sum_k phi_{c,k}(delta_{k-1}..delta_1 Z) "
                   "equals Z - sd_c(Z), with trivial faces at every stage")
def _sd_chain(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("sd-chain", "")
    for fx in corpus.cycles():
        if not fx.normalized:
            continue
        for c in _sample_points(fx.cycle, opts, opts.samples):
            _, cert = phi_chain(fx.cycle, c)
            report.add(f"{fx.id} c={_fmt(c)}", cert.passed, cert.lhs, cert.rhs)
    return report


# -- boundary and involutions --------------------------------------------------------

def random_linear_cycle(rng: random.Random, max_n: int = 3) -> Cycle:
    """Random admissible cycle whose components are affine-linear subspaces."""
    while True:
        n = rng.randint(2, max_n)
        m = rng.randint(0, 1)
        r = rng.randint(1, n)
        ctx = AmbientContext(m, n)
        names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, n + 1)]
        comps = []
        for _ in range(rng.randint(1, 3)):
            gens = []
            for _ in range(r):
                terms = [f"({rng.randint(-4, 4)})*{v}" for v in names]
                terms.append(f"({Fraction(rng.randint(-9, 9), rng.randint(1, 4))})")
                gens.append(" + ".join(terms))
            coef = rng.choice([-2, -1, 1, 1, 2, 3])
            comps.append((coef, gens))
        try:
            z = build_cycle(ctx, comps, m - r)
        except ValueError:
            continue
        if not z.is_zero() and is_admissible(z):
            return z


@suite("boundary-squared", "boundary = sum_i (-1)^i (face_i^1 - face_i^0) squares to zero")
def _boundary_squared(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("boundary-squared", "")
    for fx in corpus.cycles():
        if fx.admissible and fx.cycle.n >= 2:
            dd = boundary(boundary(fx.cycle, False), False)
            report.add(f"fixture {fx.id}", dd.is_zero(), dd, "0")
    rng = random.Random(opts.seed)
    for k in range(opts.random):
        z = random_linear_cycle(rng)
        dd = boundary(boundary(z, False), False)
        report.add(f"random#{k} n={z.n} m={z.context.m}", dd.is_zero(), dd, "0")
    return report


@suite("involution-admissible", "tau_j^* preserves admissibility and swaps the faces "
                                "y_j = 0 and y_j = 1; mu^* maps z_d(-,1) to z_d(-,2)")
def _involution(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("involution-admissible", "")
    for fx in corpus.cycles():
        z = fx.cycle
        adm = bool(is_admissible(z))
        for j in range(1, z.n + 1):
            t = pullback(z, involution(z.n, j))
            report.add(f"{fx.id} tau_{j} admissibility", bool(is_admissible(t)) == adm)
            if adm:
                ok = face(t, j, 0) == face(z, j, 1) and face(t, j, 1) == face(z, j, 0)
                report.add(f"{fx.id} tau_{j} swaps faces", ok)
        if adm and z.n == 1:
            report.add(f"{fx.id} mu^* admissible", bool(is_admissible(pullback(z, mu()))))
    return report


# -- towers --------------------------------------------------------------------------

@suite("signs-recurrence", "vertex signs with eps(v) = -sgn(g(v,w)) eps(w) along edges, "
                           "eps(v) = (-1)^m on the cube; two vertices on every edge")
def _signs(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("signs-recurrence", "")
    for n in (1, 2, 3):
        s0 = initial_space(n)
        signs = s0.vertex_signs()
        ok = all(signs[frozenset(v.divisors)] == vertex_sign(_vertex_of(v.divisors))
                 for v in s0.vertices)
        report.add(f"level 0 signs = (-1)^m, n={n}", ok)
    for tf in corpus.towers():
        top = tf.tower.top
        for key, want in tf.expect.items():
            got = {"divisors": len(top.divisors), "vertices": len(top.vertices),
                   "edges": len(top.edges())}[key]
            report.add(f"{tf.id}: {key} = {want}", got == want, got, want)
        for space in tf.tower.spaces:
            try:
                space.edges()
                space.vertex_signs()
                report.add(f"{tf.id} level {space.level}: edges and signs consistent", True)
            except TowerError as exc:
                report.add(f"{tf.id} level {space.level}: edges and signs consistent", False,
                           detail=str(exc))
            report.add(f"{tf.id} level {space.level}: charts invert",
                       space.verify_charts().passed)
            inv_ok = all(_is_inverse(space.edge_permutation(v, w), space.edge_permutation(w, v))
                         for _, v, w in space.edges())
            report.add(f"{tf.id} level {space.level}: g(v,w) = g(w,v)^-1", inv_ok)
    pent = corpus.tower("pentagon").tower.top
    edge = pent.edges()[0][0]
    try:
        pent.vertex_signs(flip=[edge])
        report.add("self-test: flipped parity is detected", False)
    except TowerError:
        report.add("self-test: flipped parity is detected", True)
    return report


def _vertex_of(divisors) -> tuple[int, ...]:
    return tuple(1 if d % 2 else 0 for d in sorted(divisors))


def _is_inverse(g, h) -> bool:
    return all(h[g[p]] == p for p in range(len(g)))


# -- sheaf ---------------------------------------------------------------------------

@suite("mv-exactness", "0 -> S(U u V) -> S(U) + S(V) -> S(U n V) -> 0 for "
                       "S(U) = z_d(Y,n)/G_d(Y-U,n), and G_d(W1) n G_d(W2) = G_d(W1 n W2)")
def _mv(corpus: Corpus, opts: Options) -> VerificationReport:
    data = corpus.mv_points()
    m = int(data["ambient_dim"])
    cycles = [Cycle.from_json(c) for c in data["cycles"]]
    u = OpenSet(m, tuple(data["U"]))
    v = OpenSet(m, tuple(data["V"]))
    report = mv_check(u, v, cycles)
    whole = OpenSet.whole(m)
    report.extend(mv_check(whole, whole, cycles[:2]), "U=V=Y: ")
    for a in cycles:
        for b in cycles:
            report.add("classes over Y are cycles",
                       class_equal(a, b, whole) == (a == b))
    rng = random.Random(opts.seed)
    roots = [0, 1, 2, -1, 3]
    for k in range(opts.random // 4 or 1):
        w1 = [" * ".join(f"(x1 - ({r}))" for r in rng.sample(roots, rng.randint(1, 3)))]
        w2 = [" * ".join(f"(x1 - ({r}))" for r in rng.sample(roots, rng.randint(1, 3)))]
        z = Cycle.zero(cycles[0].context, cycles[0].d)
        for c in rng.sample(cycles, rng.randint(1, len(cycles))):
            z = z + c.scale(rng.choice([1, -1, 2]))
        report.add(f"kernel intersection law #{k}", kernel_intersection_law(z, w1, w2))
    return report


# -- level-M subdivision -------------------------------------------------------------

def sample_h0_point(z: Cycle, tower: Tower, seed: int, budget: int = 40):
    for _, c in zip(range(budget), random_points(z.n + 1, seed)):
        try:
            cert = homotopy_h0(z, tower, c)
        except (NonGeneralParameter, ComponentCollapses):
            continue
        return c, cert
    raise NonGeneralParameter("no general point found for the homotopy")


@suite("h0-boundary", "boundary of H_0(c')^!(pr^* Z) equals sd_c^M(Z) - sd_c^0(Z) "
                      "modulo degenerate cycles")
def _h0(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("h0-boundary", "")
    z = corpus.cycle("point-2-3").cycle
    for tid in ("trivial-square", "pentagon", "demo-vertex", "hexagon"):
        tower = corpus.tower(tid).tower
        c, cert = sample_h0_point(z, tower, opts.seed)
        report.add(f"point-2-3 {tid} c'={_fmt(c)}", cert.passed, cert.lhs, cert.rhs)
        if tid == "trivial-square":
            report.add("trivial tower: boundary vanishes", cert.lhs.is_zero())
    tower = corpus.tower("pentagon").tower
    c, _ = sample_h0_point(z, tower, opts.seed)
    swapped = homotopy_h0(z, tower, c, swap_ends=True, check=False)
    report.add("self-test: swapping the ends of y_{n+1} breaks the identity", not swapped.passed)
    return report


@suite("localization-demo", "the closure of a cycle admissible on U = {x1 != 0} has an "
                            "admissible level-M subdivision sd_c^M over Y after a face blow-up "
                            "tower, with sd_c^0 = sd_c and the homotopies certified on U")
def _localization(corpus: Corpus, opts: Options) -> VerificationReport:
    report = VerificationReport("localization-demo", "")
    demo = corpus.demo()
    zbar = Cycle.from_json(demo["cycle"])
    m, n = zbar.context.m, zbar.n
    verdict = is_admissible(zbar)
    bad = demo["bad_face"]
    ok = (not verdict and [list(p) for p in verdict.face.assignment] == bad["assignment"]
          and verdict.dimension == bad["dimension"] and verdict.expected == bad["bound"])
    report.add("closure inadmissible at {y1=0,y2=0} with excess dimension", ok,
               verdict.describe(), bad)
    zu = restrict_to_open(zbar, demo["open_closed"])
    report.add("restriction to x1 != 0 admissible", bool(is_admissible(zu)))
    tower = Tower.from_json(demo["tower"])
    level0 = Tower.build(n, [])
    # sd at level 0 agrees with the vertex-sum subdivision on admissible fixtures
    for fx in corpus.cycles():
        if fx.admissible and fx.cycle.n == 2:
            c = _sample_points(fx.cycle, opts, 1, homotopy=False)[0]
            a = sd_level_M(fx.cycle, level0, c).cycle
            b = cubical_subdivision(fx.cycle, c, "vertex_sum")
            report.add(f"sd level 0 = sd_c on {fx.id}", a == b, a, b)
    # general point for the demo: level-M sum admissible and the homotopy on U admissible
    trivial = extends_over()
    report.add("faces on U extend over Y", is_normalized_mod(zu, trivial))
    chosen = None
    for _, c in zip(range(40), random_points(n + 1, opts.seed)):
        try:
            top = sd_level_M(zbar, tower, c[:n], check=True)
            cert = homotopy_h0(zu, tower, c, trivial=trivial)
        except (NonGeneralParameter, ComponentCollapses):
            continue
        chosen = (c, top, cert)
        break
    if chosen is None:
        report.add("general point for the demo", False, detail="budget exhausted")
        return report
    c, top, cert = chosen
    low = sd_level_M(zbar, level0, c[:n])
    report.add("level-0 subdivision of the closure inadmissible", not low.admissible,
               detail=low.witness)
    terms = {tuple(v): (s, t, adm) for v, s, t, adm in top.terms}
    for chart in demo["charts"]:
        v = tuple(chart["vertex"])
        sign, term, adm = terms[v]
        hand = hand_chart_ideal(chart["generators"], demo["params"], c[:n], m, n)
        got = [comp.ideal for comp in term.components]
        match = len(got) == 1 and got[0] == hand and sign == chart["sign"]
        report.add(f"chart {list(v)} matches hand computation", match, got[0] if got else None,
                   hand)
        report.add(f"chart {list(v)} admissibility = {chart['admissible']}",
                   adm == chart["admissible"])
    hand0 = hand_chart_ideal(demo["level0_vertex_00"]["generators"], demo["params"], c[:n], m, n)
    zero_term = [t for v, s, t, adm in low.terms if tuple(v) == (2, 4)][0]
    report.add("level-0 corner chart matches hand computation",
               zero_term.components[0].ideal == hand0
               and bool(is_admissible(zero_term)) == demo["level0_vertex_00"]["admissible"])
    report.add("level-M subdivision of the closure admissible on Y", top.admissible,
               detail=top.witness)
    report.add(f"homotopy certificate on U modulo cycles extending over Y, c'={_fmt(c)}",
               cert.passed, cert.lhs, cert.rhs, detail=f"residual {cert.residual}")
    for i in range(1, n + 1):
        hc = phi_homotopy(zu, i, c[:n], trivial=trivial)
        report.add(f"bi-division homotopy on U modulo extendable faces, i={i}", hc.passed,
                   hc.lhs, hc.rhs)
    return report
