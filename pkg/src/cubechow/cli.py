"""Command-line front end for the verification suites and the cycle operations."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import ParseError, UnsupportedMultiplicity
from .blowup import ComponentCollapses, Tower, TowerError, sd_level_M
from .cycles import (Cycle, DimensionMismatch, ImproperFace, UnsupportedMorphism, boundary,
                     closure_from_open, face, is_admissible, is_normalized, restrict_to_open)
from .fixtures import Corpus
from .sheaf import GlueError, OpenSet, glue, mv_check
from .subdivision import (BudgetExhausted, NonGeneralParameter, NotNormalized, bidivision,
                          cubical_subdivision, phi_chain, random_points,
                          sample_general_position)
from .suites import SUITES, Options, run_suite, sample_h0_point

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def _load_cycle(path: str) -> Cycle:
    return Cycle.from_json(_read_json(path))


def _load_tower(spec: str, corpus: Corpus) -> Tower:
    if Path(spec).exists():
        return Tower.from_json(_read_json(spec))
    try:
        return corpus.tower(spec).tower
    except KeyError:
        raise UsageError(f"{spec} is neither a tower file nor a tower fixture id") from None


def _parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}") from exc


def _verdict(z: Cycle) -> dict:
    result = is_admissible(z)
    return {"admissible": bool(result), "witness": result.describe()}


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _options(args) -> Options:
    return Options(seed=args.seed, random=args.random, max_n=args.max_n, samples=args.samples)


# -- verify --------------------------------------------------------------------------

def _run_one(name: str, corpus_dir: str | None, options: Options):
    return run_suite(name, Corpus(corpus_dir), options)


def cmd_verify(args) -> int:
    if args.list:
        for name, s in SUITES.items():
            print(f"{name}: {s.anchor}")
        return EXIT_PASS
    if args.suite is None:
        raise UsageError("verify needs a suite name, 'all', or --list")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    options = _options(args)
    if len(names) > 1 and args.jobs > 1:
        # each suite seeds its own sampler, so order of completion does not matter
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run_one, names, [args.corpus] * len(names),
                                    [options] * len(names)))
    else:
        reports = [_run_one(name, args.corpus, options) for name in names]
    if args.json:
        body = [r.to_dict(include_time=args.time) for r in reports]
        print(json.dumps(body[0] if len(body) == 1 else body, indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.render() for r in reports))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


# -- cycle ---------------------------------------------------------------------------

def cmd_cycle(args) -> int:
    z = _load_cycle(args.file)
    if args.action == "check":
        info = {"cycle": z.to_json(), "canonical": str(z), **_verdict(z)}
        if info["admissible"]:
            info["normalized"] = is_normalized(z)
        text = f"{z}\n{info['witness']}"
        if "normalized" in info:
            text += f"\nnormalized: {info['normalized']}"
        _emit(args, info, text)
        return EXIT_PASS if info["admissible"] else EXIT_FAIL
    if args.action == "face":
        if args.index is None or args.eps is None:
            raise UsageError("cycle face needs --index and --eps")
        w = face(z, args.index, args.eps)
    else:
        w = boundary(z)
    _emit(args, {"cycle": w.to_json(), "canonical": str(w)}, str(w))
    return EXIT_PASS


# -- subdivide -----------------------------------------------------------------------

def cmd_subdivide(args) -> int:
    z = _load_cycle(args.cycle)
    if args.point:
        c = _parse_point(args.point)
    else:
        c = sample_general_position(z, args.seed, homotopy=args.certify)
    w = cubical_subdivision(z, c, args.form)
    payload: dict[str, Any] = {"point": [str(v) for v in c], "cycle": w.to_json()}
    text = f"c = ({', '.join(map(str, c))})\n{w}"
    code = EXIT_PASS
    if args.certify:
        _, cert = phi_chain(z, c)
        payload["certificate"] = cert.to_json()
        text += f"\ncertificate: {'pass' if cert.passed else 'fail'}"
        code = EXIT_PASS if cert.passed else EXIT_FAIL
    _emit(args, payload, text)
    return code


# -- tower ---------------------------------------------------------------------------

def cmd_tower(args) -> int:
    corpus = Corpus(args.corpus)
    tower = _load_tower(args.spec, corpus)
    if args.action == "build":
        levels = [s.summary() for s in tower.spaces]
        charts_ok = all(s.verify_charts().passed for s in tower.spaces)
        payload = {"tower": tower.to_json(), "levels": levels, "charts_invert": charts_ok}
        top = tower.top
        text = (f"{len(tower.spaces) - 1} blow-ups: {len(top.divisors)} divisors, "
                f"{len(top.vertices)} vertices, {len(top.edges())} edges\n"
                f"signs: {levels[-1]['signs']}\ncharts invert: {charts_ok}")
        _emit(args, payload, text)
        return EXIT_PASS if charts_ok else EXIT_FAIL
    if args.cycle is None:
        raise UsageError("tower apply needs --cycle")
    z = _load_cycle(args.cycle)
    n = z.n
    if args.certify_h0:
        c_ext, cert = sample_h0_point(z, tower, args.seed)
        c = c_ext[:n]
    else:
        c = None
        for _, p in zip(range(50), random_points(n, args.seed)):
            try:
                sd_level_M(z, tower, p)
            except (NonGeneralParameter, ComponentCollapses):
                continue
            c = p
            break
        if c is None:
            raise BudgetExhausted("no general point found")
    level = sd_level_M(z, tower, c)
    payload = {"point": [str(v) for v in c], "cycle": level.cycle.to_json(),
               "admissible": level.admissible, "witness": level.witness,
               "terms": [{"vertex": list(v), "sign": s, "cycle": str(t), "admissible": a}
                         for v, s, t, a in level.terms]}
    text = [f"c = ({', '.join(map(str, c))})", str(level.cycle), level.witness]
    code = EXIT_PASS
    if args.certify_h0:
        payload["point_h0"] = [str(v) for v in c_ext]
        payload["h0"] = cert.to_json()
        text.append(f"H0 certificate: {'pass' if cert.passed else 'fail'}")
        code = EXIT_PASS if cert.passed else EXIT_FAIL
    _emit(args, payload, "\n".join(text))
    return code


# -- sheaf ---------------------------------------------------------------------------

def cmd_mv(args) -> int:
    if args.corpus_file:
        data = _read_json(args.corpus_file)
    else:
        data = Corpus(args.corpus).mv_points()
    m = args.ambient if args.ambient is not None else int(data["ambient_dim"])
    cycles = [Cycle.from_json(c) for c in data["cycles"]]
    if any(z.context.m != m for z in cycles):
        raise UsageError(f"corpus cycles do not live over affine {m}-space")
    u = OpenSet(m, tuple(args.U or data["U"]))
    v = OpenSet(m, tuple(args.V or data["V"]))
    report = mv_check(u, v, cycles)
    if args.json:
        print(report.to_json())
    else:
        print(f"U = {u}, V = {v}\n{report.render()}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_glue(args) -> int:
    x1, x2 = _load_cycle(args.x1), _load_cycle(args.x2)
    m = x1.context.m
    try:
        result = glue(x1, x2, OpenSet(m, tuple(args.U)), OpenSet(m, tuple(args.V)))
    except GlueError as exc:
        _emit(args, {"status": "fail", "reason": str(exc)}, f"glue failed: {exc}")
        return EXIT_FAIL
    payload = {"status": "pass", "cycle": result.cycle.to_json(),
               "delta_u": str(result.delta_u), "delta_v": str(result.delta_v)}
    _emit(args, payload, f"{result.cycle}\ndelta_U: {result.delta_u}\n"
                         f"delta_V: {result.delta_v}")
    return EXIT_PASS


# -- pipeline ------------------------------------------------------------------------

def _step(z: Cycle, step: str, args, corpus: Corpus) -> Cycle:
    name, *rest = step.split(":")
    if name == "face":
        i, eps = rest
        return face(z, int(i), int(eps))
    if name == "boundary":
        return boundary(z)
    if name == "bidiv":
        i, c = rest
        return bidivision(z, int(i), Fraction(c))
    if name == "subdivide":
        form = rest[0] if rest else "iterated"
        c = _parse_point(rest[1]) if len(rest) > 1 else sample_general_position(
            z, args.seed, homotopy=False)
        return cubical_subdivision(z, c, form)
    if name == "tower-apply":
        if not rest:
            raise UsageError("tower-apply needs a tower file or fixture id")
        tower = _load_tower(":".join(rest), corpus)
        for _, c in zip(range(50), random_points(z.n, args.seed)):
            try:
                return sd_level_M(z, tower, c).cycle
            except (NonGeneralParameter, ComponentCollapses):
                continue
        raise BudgetExhausted("no general point for tower-apply")
    if name == "restrict":
        if not rest:
            raise UsageError("restrict needs closed-set generators")
        return restrict_to_open(z, rest[0].split(","))
    if name == "close":
        return closure_from_open(z)
    raise UsageError(f"unknown pipeline step {name!r}")


def cmd_pipeline(args) -> int:
    corpus = Corpus(args.corpus)
    z = _load_cycle(args.cycle)
    record = [{"step": "input", "cycle": z.to_json(), "canonical": str(z), **_verdict(z)}]
    lines = [f"input: {z}  [{record[0]['witness']}]"]
    for step in args.steps:
        try:
            z = _step(z, step, args, corpus)
        except (ValueError, ArithmeticError, TowerError, BudgetExhausted) as exc:
            record.append({"step": step, "error": str(exc)})
            lines.append(f"{step}: aborted: {exc}")
            _emit(args, {"steps": record, "status": "fail"}, "\n".join(lines))
            return EXIT_FAIL
        entry = {"step": step, "cycle": z.to_json(), "canonical": str(z), **_verdict(z)}
        record.append(entry)
        lines.append(f"{step}: {z}  [{entry['witness']}]")
    _emit(args, {"steps": record, "status": "pass"}, "\n".join(lines))
    return EXIT_PASS


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for every sampler stream")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print JSON instead of text")
    common.add_argument("--corpus", metavar="DIR", default=argparse.SUPPRESS,
                        help="fixture directory instead of the bundled corpus")

    p = argparse.ArgumentParser(prog="cubechow", parents=[common],
                                description="Exact cubical higher Chow cycle calculus.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", nargs="?", help=f"one of {', '.join(SUITES)}, or 'all'")
    v.add_argument("--list", action="store_true", help="list suites with their anchors")
    v.add_argument("--random", type=int, default=100, help="randomized cases per suite")
    v.add_argument("--max-n", type=int, default=4, help="largest cube dimension for tables")
    v.add_argument("--samples", type=int, default=3, help="general points per fixture")
    v.add_argument("--jobs", type=int, default=1, help="run suites in parallel")
    v.add_argument("--time", action="store_true", help="include wall time in JSON")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cycle", parents=[common], help="check a cycle or take faces")
    c.add_argument("action", choices=["check", "face", "boundary"])
    c.add_argument("file")
    c.add_argument("--index", type=int)
    c.add_argument("--eps", type=int, choices=[0, 1])
    c.set_defaults(func=cmd_cycle)

    s = sub.add_parser("subdivide", parents=[common], help="cubical subdivision at a general point")
    s.add_argument("--cycle", required=True)
    s.add_argument("--form", choices=["iterated", "vertex"], default="iterated")
    s.add_argument("--point", help="comma-separated point instead of sampling")
    s.add_argument("--certify", action="store_true", help="attach the chain certificate")
    s.set_defaults(func=cmd_subdivide)

    t = sub.add_parser("tower", parents=[common], help="face blow-up towers")
    t.add_argument("action", choices=["build", "apply"])
    t.add_argument("--spec", required=True, help="tower JSON file or fixture id")
    t.add_argument("--cycle")
    t.add_argument("--certify-h0", action="store_true")
    t.set_defaults(func=cmd_tower)

    m = sub.add_parser("mv", parents=[common], help="Mayer-Vietoris exactness")
    m.add_argument("action", choices=["demo"])
    m.add_argument("--ambient", type=int)
    m.add_argument("--corpus-file", "--cycles", dest="corpus_file",
                   help="JSON with ambient_dim, U, V and cycles")
    m.add_argument("--U", nargs="+", help="generators of the complement of U")
    m.add_argument("--V", nargs="+", help="generators of the complement of V")
    m.set_defaults(func=cmd_mv)

    g = sub.add_parser("glue", parents=[common], help="glue sections on U and V")
    g.add_argument("x1")
    g.add_argument("x2")
    g.add_argument("--U", nargs="+", required=True)
    g.add_argument("--V", nargs="+", required=True)
    g.set_defaults(func=cmd_glue)

    pl = sub.add_parser("pipeline", parents=[common], help="chain cycle operations")
    pl.add_argument("--cycle", required=True)
    pl.add_argument("--steps", nargs="*", default=[],
                    help="face:i:e boundary bidiv:i:c subdivide[:form[:c]] "
                         "tower-apply:SPEC restrict:f,g close")
    pl.set_defaults(func=cmd_pipeline)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("json", False), ("corpus", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (UsageError, ParseError, KeyError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonGeneralParameter, NotNormalized, BudgetExhausted, ImproperFace,
            UnsupportedMorphism, UnsupportedMultiplicity, TowerError, GlueError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
