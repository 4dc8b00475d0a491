"""Command line driver.

Everything is controlled by flags; there are no config files and no
environment variables.  Output goes to stdout, diagnostics to stderr.
Exit status: 0 on success, 1 when a verification subcommand finds a
failing check, 2 on usage or domain errors.  Identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from fractions import Fraction

from .bruhat import MinorSpec, WordSpec, delta_G, delta_L
from .cluster import SeedMatrix, seed_matrix
from .crystal import (
    CrystalConfig,
    DemazureSpec,
    component,
    demazure,
    demazure_polynomial,
    graph_to_dot,
    graph_to_json,
    tau_render,
    tau_render_poly,
)
from .errors import CrystalMinorError
from .laurent import mono_to_json, parse_monomial, poly_to_json
from .paths import (
    PathSpec,
    closed_form_sum,
    d1_closed_form,
    enumerate_paths,
    label,
    path_sum,
    paths_dot,
    paths_json,
)
from .verify import CHECKS, phi_word_check


def _letters(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}: expected comma separated integers")


def _fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse {text!r}: expected comma separated rationals")


def _word(args) -> WordSpec:
    return WordSpec.from_letters(args.r, _letters(args.word))


def _render_poly(r: int, poly, form: str) -> str:
    if form == "tau":
        return tau_render_poly(CrystalConfig(r), poly)
    if form == "json":
        return poly_to_json(poly)
    return str(poly)


def _run_minor(args) -> int:
    w = _word(args)
    ms = MinorSpec(w, args.k)
    if (args.a is None) != (args.t is None):
        raise ValueError("--a and --t must be given together")
    if args.a is not None:
        a = _fractions(args.a)
        tvals = _fractions(args.t)
        if len(tvals) != w.n:
            raise ValueError(f"--t needs {w.n} values, got {len(tvals)}")
        t = {w.position_var(k): tvals[k - 1] for k in range(1, w.n + 1)}
        print(delta_G(ms, a, t))
        return 0
    print(_render_poly(args.r, delta_L(ms), args.format))
    return 0


def _graph_text(cfg: CrystalConfig, g, form: str) -> str:
    lines = [f"nodes {g.node_count()} edges {g.edge_count()}"]
    for k, node in enumerate(g.nodes):
        name = tau_render(cfg, node.monomial) if form == "tau" else str(node.monomial)
        lines.append(f"{k} {name}")
    for src, color, dst in g.edges:
        lines.append(f"{src} -{color}-> {dst}")
    return "\n".join(lines)


def _run_component(args) -> int:
    cfg = CrystalConfig(args.r)
    g = component(cfg, parse_monomial(args.seed), cap=args.cap)
    if args.format == "dot":
        print(graph_to_dot(g))
    elif args.format == "json":
        print(graph_to_json(g))
    else:
        print(_graph_text(cfg, g, args.format))
    return 0


def _demazure_spec(args) -> DemazureSpec:
    return DemazureSpec(
        word=_letters(args.word), sign=args.sign, seed=parse_monomial(args.seed)
    )


def _run_demazure(args) -> int:
    cfg = CrystalConfig(args.r)
    members = demazure(cfg, _demazure_spec(args), cap=args.cap)
    if args.format == "json":
        print(json.dumps([mono_to_json(m) for m in members], separators=(",", ":")))
        return 0
    for m in members:
        print(tau_render(cfg, m) if args.format == "tau" else str(m))
    return 0


def _run_polynomial(args) -> int:
    cfg = CrystalConfig(args.r)
    poly = demazure_polynomial(cfg, _demazure_spec(args), cap=args.cap)
    print(_render_poly(args.r, poly, args.format))
    return 0


def _path_spec(args) -> PathSpec:
    return PathSpec(args.d, args.m, args.mprime)


def _run_paths_enum(args) -> int:
    spec = _path_spec(args)
    if args.format == "json":
        print(paths_json(spec, args.r))
        return 0
    if args.format == "dot":
        print(paths_dot(spec, args.r))
        return 0
    cfg = CrystalConfig(args.r)
    for p in enumerate_paths(spec):
        route = "->".join(
            f"({spec.m - s};{','.join(map(str, row))})" for s, row in enumerate(p.rows)
        )
        print(f"{route}  {tau_render(cfg, label(spec, p, args.r))}")
    return 0


def _run_paths_sum(args) -> int:
    spec = _path_spec(args)
    print(_render_poly(args.r, path_sum(spec, args.r), args.format))
    return 0


def _run_paths_closed(args) -> int:
    spec = _path_spec(args)
    poly = closed_form_sum(spec, args.r)
    if spec.d == 1 and d1_closed_form(spec.m, spec.mprime, args.r) != poly:
        print("error: width-one cross check failed", file=sys.stderr)
        return 1
    print(_render_poly(args.r, poly, args.format))
    return 0


def _matrix_text(sm: SeedMatrix) -> str:
    lines = [
        "rows " + ",".join(map(str, sm.rows)),
        "cols " + ",".join(map(str, sm.cols)),
    ]
    width = max(
        (len(str(x)) for row in sm.entries for x in row), default=1
    )
    label_width = max(len(str(k)) for k in sm.rows)
    for k, row in zip(sm.rows, sm.entries):
        cells = " ".join(f"{x:>{width}}" for x in row)
        lines.append(f"{k:>{label_width}} {cells}")
    return "\n".join(lines)


def _run_bmatrix(args) -> int:
    sm = seed_matrix(_word(args))
    print(sm.to_json() if args.format == "json" else _matrix_text(sm))
    return 0


def _run_mutate(args) -> int:
    sm = seed_matrix(_word(args))
    for k in _letters(args.k):
        sm = sm.mutate(k)
    print(sm.to_json() if args.format == "json" else _matrix_text(sm))
    return 0


def _run_phi_check(args) -> int:
    res = phi_word_check(_word(args), args.samples, args.seed)
    print(res.summary())
    return 0 if res.passed else 1


def _run_verify(args) -> int:
    kwargs = {}
    if args.max_r is not None:
        kwargs["max_r"] = args.max_r
    if args.max_dim is not None:
        kwargs["max_dim"] = args.max_dim
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.seed is not None:
        kwargs["seed"] = args.seed
    fn = CHECKS[args.check]
    allowed = set(inspect.signature(fn).parameters)
    for key in kwargs:
        if key not in allowed:
            raise ValueError(f"--{key.replace('_', '-')} does not apply to {args.check}")
    res = fn(**kwargs)
    for line in res.lines:
        print(line)
    print(res.summary())
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystalminor",
        description="Exact minors, crystals and lattice paths on staircase words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minor", help="minor of the cell matrix at one position")
    p.add_argument("--r", type=int, required=True, help="rank")
    p.add_argument("--word", required=True, help="comma separated letters")
    p.add_argument("--k", type=int, required=True, help="position, 1-based")
    p.add_argument("--format", choices=("tau", "json", "y"), default="tau")
    p.add_argument("--a", help="torus diagonal, r+1 rationals (with --t: numeric minor)")
    p.add_argument("--t", help="position values, n rationals")
    p.set_defaults(func=_run_minor)

    crystal = sub.add_parser("crystal", help="crystal components and Demazure sets")
    csub = crystal.add_subparsers(dest="subcommand", required=True)

    p = csub.add_parser("component", help="connected component of a seed monomial")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", required=True, help="seed monomial, e.g. Y[-1,3] or 1/Y[2,2]")
    p.add_argument("--cap", type=int, default=10000, help="node cap for the search")
    p.add_argument("--format", choices=("tau", "y", "json", "dot"), default="tau")
    p.set_defaults(func=_run_component)

    for name, func, helptext in (
        ("demazure", _run_demazure, "members of a Demazure subset"),
        ("polynomial", _run_polynomial, "sum of a Demazure subset"),
    ):
        p = csub.add_parser(name, help=helptext)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--word", required=True, help="generating word, consumed right to left")
        p.add_argument("--sign", choices=("plus", "minus"), default="minus")
        p.add_argument("--seed", required=True, help="seed monomial")
        p.add_argument("--cap", type=int, default=10000)
        choices = ("tau", "json") if name == "demazure" else ("tau", "json", "y")
        p.add_argument("--format", choices=choices, default="tau")
        p.set_defaults(func=func)

    paths = sub.add_parser("paths", help="lattice paths and their sums")
    psub = paths.add_subparsers(dest="subcommand", required=True)

    for name, func, formats, helptext in (
        ("enum", _run_paths_enum, ("tau", "json", "dot"), "list all paths with labels"),
        ("sum", _run_paths_sum, ("tau", "json", "y"), "sum of all path labels"),
        ("closed-form", _run_paths_closed, ("tau", "json", "y"), "label sum via the closed form"),
    ):
        p = psub.add_parser(name, help=helptext)
        p.add_argument("--d", type=int, required=True, help="path width")
        p.add_argument("--m", type=int, required=True, help="number of steps")
        p.add_argument("--mprime", type=int, required=True, help="total shift")
        p.add_argument("--r", type=int, required=True, help="rank for labels")
        p.add_argument("--format", choices=formats, default="tau")
        p.set_defaults(func=func)

    seed = sub.add_parser("seed", help="exchange matrices on double words")
    ssub = seed.add_subparsers(dest="subcommand", required=True)

    p = ssub.add_parser("bmatrix", help="seed matrix of a word")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_run_bmatrix)

    p = ssub.add_parser("mutate", help="mutate the seed matrix at one or more directions")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--k", required=True, help="mutation directions, comma separated labels")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_run_mutate)

    phi = sub.add_parser("phi", help="coordinate change between cell parametrizations")
    phisub = phi.add_subparsers(dest="subcommand", required=True)

    p = phisub.add_parser("check", help="factorization identity on random samples")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=20260817)
    p.set_defaults(func=_run_phi_check)

    p = sub.add_parser("verify", help="named cross-module identity sweeps")
    p.add_argument("check", choices=tuple(CHECKS))
    p.add_argument("--max-r", type=int, default=None, dest="max_r")
    p.add_argument("--max-dim", type=int, default=None, dest="max_dim")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_run_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (CrystalMinorError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
