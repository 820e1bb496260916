"""Command-line front end.

Subcommands: bound (closed-form formulas), gen (synthetic data), project,
margin, mc (Monte Carlo experiments), repro (one-shot CSV reproduction of
the reference experiments). Datasets pipe through stdin/stdout in the CSV
and JSON formats of :mod:`rpmargin.serialize`. Exit codes: 0 success,
2 usage or validation error, 3 runtime/I-O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, serialize
from .data import BINARY, MULTICLASS, LinearWitness
from .datasets import (
    binary_from_two_class,
    counterexample_square,
    mc_separability_1d,
    parallel_hyperplanes,
    random_pair_with_cosine,
    separability_probability_1d,
)
from .margin import binary_margin, multiclass_margin, multiclass_margin_unnormalised
from .montecarlo import (
    TrialConfig,
    _pair_curves,
    mix_seed,
    reject_angle,
    reject_inner,
    reject_margin,
    verify_angle_interval,
    verify_mean,
    verify_norm_tail,
)
from .projection import GAUSSIAN, SIGN_COIN, new_projection, project_dataset

# Reference experiment parameters (the repro subcommand).
PAPER_DIM = 300
PAPER_N_GRID = tuple(range(30, 301, 30))
PAPER_TRIALS = 2000
PAPER_EPSILONS = (0.1, 0.3)
ACUTE_COSINES = (0.827, 0.527)
OBTUSE_COSINES = (-0.062, -0.0165)

FIG3_DIM = 100
FIG3_CLASSES = 3
FIG3_PER_CLASS = 5
FIG3_TRIALS = 100
FIG3_GAP = 1.0
FIG3_SPREAD = 0.1

COUNTEREXAMPLE_STRETCHES = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
COUNTEREXAMPLE_DIRECTIONS = 100_000

_FAMILY = {"gaussian": GAUSSIAN, "sign": SIGN_COIN}


def _parse_grid(text: str) -> tuple[int, ...]:
    """Parse an n grid: "a:b:step" (inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid ranges look like a:b:step, got {text!r}")
        a, b, step = (int(p) for p in parts)
        if step < 1:
            raise ValueError("grid step must be positive")
        return tuple(range(a, b + 1, step))
    return tuple(int(p) for p in text.split(","))


def _parse_vector_flag(text: str):
    return [float(v) for v in text.split(",")]


def _write_output(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as f:
            f.write(text)


def _add_normalised_flags(p: argparse.ArgumentParser):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--normalised", dest="normalised", action="store_true", default=True)
    group.add_argument("--unnormalised", dest="normalised", action="store_false")


# ---------------------------------------------------------------- bound

def _require(args, names: list[str], kind: str):
    missing = [n for n in names if getattr(args, n.strip("-").replace("-", "_")) is None]
    if missing:
        raise ValueError(f"bound {kind} requires {', '.join(missing)}")


def cmd_bound(args) -> int:
    kind = args.kind
    if kind == "tail":
        _require(args, ["--n", "--eps"], kind)
        print(serialize.fmt(bounds.tail_success_prob(args.n, args.eps)))
    elif kind == "chi2":
        _require(args, ["--n", "--eps"], kind)
        tails = bounds.chi2_tails(args.n, args.eps)
        print(serialize.fmt(tails.lower), serialize.fmt(tails.upper))
    elif kind == "angle-interval":
        _require(args, ["--gamma", "--eps"], kind)
        interval, tail = bounds.angle_distortion_interval(args.gamma, args.eps)
        print(
            serialize.fmt(interval.lo),
            serialize.fmt(interval.hi),
            serialize.fmt(tail.count),
            serialize.fmt(tail.rate),
        )
    elif kind == "min-dim-binary":
        _require(args, ["--eps", "--delta", "--m"], kind)
        print(bounds.min_dim_binary(args.eps, args.delta, args.m))
    elif kind == "min-dim-multiclass":
        _require(args, ["--eps", "--delta", "--m", "--L"], kind)
        print(bounds.min_dim_multiclass(args.eps, args.delta, args.m, args.L))
    elif kind == "min-dim-oneparam":
        _require(args, ["--eps", "--delta", "--m", "--L"], kind)
        print(bounds.min_dim_oneparam(args.eps, args.delta, args.m, args.L))
    elif kind == "margin-binary":
        _require(args, ["--gamma", "--eps"], kind)
        _print_projected_margin(bounds.projected_margin_binary(args.gamma, args.eps))
    elif kind == "margin-multiclass":
        _require(args, ["--gamma", "--eps"], kind)
        _print_projected_margin(bounds.projected_margin_multiclass(args.gamma, args.eps))
    elif kind == "margin-oneparam":
        _require(args, ["--gamma", "--eps", "--L"], kind)
        _print_projected_margin(bounds.projected_margin_oneparam(args.gamma, args.eps, args.L))
    elif kind == "balcan":
        _require(args, ["--gamma", "--rho", "--delta"], kind)
        print(serialize.fmt(bounds.balcan_min_dim(args.gamma, args.rho, args.delta, args.c)))
    else:
        raise ValueError(f"unknown bound kind {kind!r}")
    return 0


def _print_projected_margin(pm: bounds.ProjectedMargin):
    print(serialize.fmt(pm.value))
    if not pm.guaranteed_separable:
        print("note: bound is not positive; separability of the projected data is not guaranteed", file=sys.stderr)


# ------------------------------------------------------------------ gen

def cmd_gen(args) -> int:
    if args.what == "square":
        sys.stdout.write(serialize.dataset_to_csv(counterexample_square(args.stretch)))
    elif args.what == "pair":
        pair = random_pair_with_cosine(args.d, args.cosine, args.seed)
        sys.stdout.write(serialize.pair_to_csv(pair))
    elif args.what == "hyperplanes":
        gm = parallel_hyperplanes(args.L, args.per_class, args.d, args.gap, args.spread, args.seed)
        sys.stdout.write(serialize.generated_to_json(gm))
    else:
        raise ValueError(f"unknown generator {args.what!r}")
    return 0


# -------------------------------------------------------------- project

def cmd_project(args) -> int:
    dataset = serialize.dataset_from_csv(sys.stdin.read())
    if args.d is not None and args.d != dataset.dim:
        raise ValueError(f"dimension mismatch: --d {args.d} but the dataset has dimension {dataset.dim}")
    R = new_projection(args.n, dataset.dim, _FAMILY[args.family], args.seed)
    sys.stdout.write(serialize.dataset_to_csv(project_dataset(R, dataset)))
    return 0


# --------------------------------------------------------------- margin

def cmd_margin(args) -> int:
    text = sys.stdin.read()
    witness = None
    if text.lstrip().startswith("{"):
        dataset, witness, _ = serialize.dataset_from_json(text)
    else:
        dataset = serialize.dataset_from_csv(text)
    if args.witness is not None:
        witness = LinearWitness.binary(_parse_vector_flag(args.witness))
    if witness is None:
        raise ValueError("no witness: pass --witness or embed one in a JSON document")

    if witness.kind == BINARY and dataset.kind == BINARY:
        value = binary_margin(dataset, witness.vector, args.normalised)
    elif witness.kind == MULTICLASS and dataset.kind == MULTICLASS:
        measure = multiclass_margin if args.normalised else multiclass_margin_unnormalised
        value = measure(dataset, witness)
    else:
        raise ValueError(
            f"cannot evaluate a {witness.kind} witness against a {dataset.kind} dataset here"
        )
    print(serialize.fmt(value))
    return 0


# ------------------------------------------------------------------- mc

def cmd_mc(args) -> int:
    if args.stat == "mean":
        w, x = serialize.pair_from_csv(sys.stdin.read())
        est = verify_mean((w, x), args.n_single, args.trials, args.seed)
        text = "sample_mean,standard_error\n" + f"{serialize.fmt(est.sample_mean)},{serialize.fmt(est.standard_error)}\n"
        _write_output(text, args.out)
        return 0

    cfg = TrialConfig(args.n, args.eps, args.trials, args.seed, _FAMILY[args.family])
    if args.stat == "angle":
        curve = reject_angle(serialize.pair_from_csv(sys.stdin.read()), cfg)
        series = f"P1_eps{args.eps:g}"
    elif args.stat == "inner":
        curve = reject_inner(serialize.pair_from_csv(sys.stdin.read()), cfg)
        series = f"P2_eps{args.eps:g}"
    elif args.stat == "eq4":
        curve = verify_angle_interval(serialize.pair_from_csv(sys.stdin.read()), cfg)
        series = f"angle_interval_eps{args.eps:g}"
    elif args.stat == "norm":
        curve = verify_norm_tail(serialize.vector_from_csv(sys.stdin.read()), cfg)
        series = f"norm_eps{args.eps:g}"
    elif args.stat == "margin":
        dataset, witness, _ = serialize.dataset_from_json(sys.stdin.read())
        if witness is None:
            raise ValueError("mc margin needs a JSON document with an embedded witness")
        curve = reject_margin((dataset, witness), cfg, normalised=args.normalised)
        tag = "normalised" if args.normalised else "unnormalised"
        series = f"margin_{witness.kind}_{tag}_eps{args.eps:g}"
    else:
        raise ValueError(f"unknown mc statistic {args.stat!r}")
    _write_output(serialize.curves_to_csv([(series, curve)]), args.out)
    return 0


# ---------------------------------------------------------------- repro

def _fig2_csv(stat: str, cosines, seed: int) -> str:
    pairs = [random_pair_with_cosine(PAPER_DIM, cos, seed + i) for i, cos in enumerate(cosines)]
    by_key = _pair_curves(pairs, PAPER_N_GRID, PAPER_TRIALS, seed, PAPER_EPSILONS, stat)
    curves = []
    for i, cos in enumerate(cosines):
        for eps in PAPER_EPSILONS:
            curves.append((f"cos{cos:g}_eps{eps:g}", by_key[(i, eps)]))
    return serialize.curves_to_csv(curves)


def _fig3_csv(seed: int) -> str:
    gm = parallel_hyperplanes(FIG3_CLASSES, FIG3_PER_CLASS, FIG3_DIM, FIG3_GAP, FIG3_SPREAD, seed)
    gm_two = parallel_hyperplanes(2, FIG3_PER_CLASS, FIG3_DIM, FIG3_GAP, FIG3_SPREAD, seed + 1)
    binary_dataset, binary_witness = binary_from_two_class(gm_two)
    curves = []
    for eps in PAPER_EPSILONS:
        cfg = TrialConfig(PAPER_N_GRID, eps, FIG3_TRIALS, seed)
        for normalised in (True, False):
            tag = "normalised" if normalised else "unnormalised"
            curves.append(
                (f"binary_{tag}_eps{eps:g}", reject_margin((binary_dataset, binary_witness), cfg, normalised))
            )
            curves.append((f"multiclass_{tag}_eps{eps:g}", reject_margin(gm, cfg, normalised)))
    return serialize.curves_to_csv(curves)


def _counterexample_csv(seed: int) -> str:
    lines = [serialize.COUNTEREXAMPLE_HEADER]
    for i, s in enumerate(COUNTEREXAMPLE_STRETCHES):
        analytic = separability_probability_1d(s)
        mc = mc_separability_1d(s, COUNTEREXAMPLE_DIRECTIONS, seed=mix_seed(seed, i, 0))
        lines.append(
            f"{serialize.fmt(s)},{serialize.fmt(analytic)},{serialize.fmt(mc)},{COUNTEREXAMPLE_DIRECTIONS}"
        )
    return "\n".join(lines) + "\n"


def cmd_repro(args) -> int:
    figure = args.figure
    if figure == "fig2a":
        text = _fig2_csv("angle", ACUTE_COSINES, args.seed)
    elif figure == "fig2b":
        text = _fig2_csv("inner", ACUTE_COSINES, args.seed)
    elif figure == "fig2c":
        text = _fig2_csv("angle", OBTUSE_COSINES, args.seed)
    elif figure == "fig2d":
        text = _fig2_csv("inner", OBTUSE_COSINES, args.seed)
    elif figure == "fig3":
        text = _fig3_csv(args.seed)
    elif figure == "counterexample":
        text = _counterexample_csv(args.seed)
    else:
        raise ValueError(f"unknown figure {figure!r}")
    _write_output(text, args.out)
    return 0


# --------------------------------------------------------------- parser

def _apply_spec_defaults(args, parser: argparse.ArgumentParser):
    """Fill unset flags from a JSON spec document (flags win)."""
    if getattr(args, "spec", None) is None:
        return
    with open(args.spec) as f:
        spec = json.load(f)
    if not isinstance(spec, dict):
        raise ValueError("--spec must hold a JSON object of flag values")
    defaults = {a.dest for a in parser._actions}
    for key, value in spec.items():
        dest = key.replace("-", "_")
        if dest not in defaults:
            raise ValueError(f"unknown spec field {key!r}")
        if parser.get_default(dest) == getattr(args, dest):
            setattr(args, dest, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpmargin",
        description="Margins, bounds and Monte Carlo experiments for Gaussian random projection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate a closed-form bound")
    p_bound.add_argument(
        "kind",
        choices=[
            "tail", "chi2", "angle-interval", "min-dim-binary", "min-dim-multiclass",
            "min-dim-oneparam", "margin-binary", "margin-multiclass", "margin-oneparam", "balcan",
        ],
    )
    p_bound.add_argument("--n", type=int)
    p_bound.add_argument("--eps", type=float)
    p_bound.add_argument("--gamma", type=float)
    p_bound.add_argument("--delta", type=float)
    p_bound.add_argument("--m", type=int)
    p_bound.add_argument("--L", type=int, dest="L")
    p_bound.add_argument("--rho", type=float)
    p_bound.add_argument("--c", type=float, default=1.0)
    p_bound.set_defaults(func=cmd_bound)

    p_gen = sub.add_parser("gen", help="generate synthetic data on stdout")
    gen_sub = p_gen.add_subparsers(dest="what", required=True)
    g_square = gen_sub.add_parser("square", help="the 4-point stretched square (CSV)")
    g_square.add_argument("--stretch", type=float, default=1.0)
    g_pair = gen_sub.add_parser("pair", help="a controlled-cosine vector pair (CSV)")
    g_pair.add_argument("--d", type=int, required=True)
    g_pair.add_argument("--cosine", type=float, required=True)
    g_pair.add_argument("--seed", type=int, default=0)
    g_hyper = gen_sub.add_parser("hyperplanes", help="parallel-hyperplane multiclass data (JSON)")
    g_hyper.add_argument("--L", type=int, required=True, dest="L")
    g_hyper.add_argument("--per-class", type=int, default=5)
    g_hyper.add_argument("--d", type=int, required=True)
    g_hyper.add_argument("--gap", type=float, default=1.0)
    g_hyper.add_argument("--spread", type=float, default=0.1)
    g_hyper.add_argument("--seed", type=int, default=0)
    p_gen.set_defaults(func=cmd_gen)

    p_project = sub.add_parser("project", help="project a CSV dataset from stdin")
    p_project.add_argument("--n", type=int, required=True)
    p_project.add_argument("--d", type=int, help="expected input dimension (validated)")
    p_project.add_argument("--seed", type=int, default=0)
    p_project.add_argument("--family", choices=sorted(_FAMILY), default="gaussian")
    p_project.set_defaults(func=cmd_project)

    p_margin = sub.add_parser("margin", help="measure a margin for a dataset on stdin")
    p_margin.add_argument("--witness", help="comma-separated binary witness vector")
    _add_normalised_flags(p_margin)
    p_margin.set_defaults(func=cmd_margin)

    p_mc = sub.add_parser("mc", help="Monte Carlo rejection experiments")
    p_mc.add_argument("stat", choices=["angle", "inner", "margin", "norm", "eq4", "mean"])
    p_mc.add_argument("--eps", type=float, default=0.1)
    p_mc.add_argument("--trials", type=int, default=2000)
    p_mc.add_argument("--n", type=_parse_grid, default=PAPER_N_GRID, help="grid a:b:step or comma list")
    p_mc.add_argument("--n-single", type=int, default=50, help="projection dimension for mc mean")
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--family", choices=sorted(_FAMILY), default="gaussian")
    p_mc.add_argument("--out", help="output path (default: stdout)")
    p_mc.add_argument("--spec", help="JSON file of flag defaults")
    _add_normalised_flags(p_mc)
    p_mc.set_defaults(func=cmd_mc)

    p_repro = sub.add_parser("repro", help="reproduce a reference experiment as CSV")
    p_repro.add_argument("figure", choices=["fig2a", "fig2b", "fig2c", "fig2d", "fig3", "counterexample"])
    p_repro.add_argument("--seed", type=int, default=0)
    p_repro.add_argument("--out", help="output path (default: stdout)")
    p_repro.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "mc":
            _apply_spec_defaults(args, parser)
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
