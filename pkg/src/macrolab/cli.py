"""Command-line entry points.

Subcommands: `state` evaluates both measures for a named state, `scan` runs a
configured experiment, `bounds` emits the overlap-capped macroscopicity
curves, `version` prints the package version.  Exit codes: 0 success, 2 usage
error (argparse), 1 runtime failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, geometric, harness, macroscopicity
from .config import set_dense_cap
from .states import SymmetricState, bell_product, dicke, ghz, ghz_ones, xi_state

_KINDS = ("ghz", "w", "dicke", "bell-product", "xi", "ghz-ones")


def _add_common(parser):
    parser.add_argument("--dense-cap", type=int, default=None, metavar="N",
                        help="override the dense-representation qubit cap")


def build_parser():
    top = argparse.ArgumentParser(prog="macrolab",
                                  description="macroscopicity and geometric entanglement of pure qubit states")
    sub = top.add_subparsers(dest="command", required=True)

    st = sub.add_parser("state", help="evaluate one named state")
    st.add_argument("--kind", required=True, choices=_KINDS)
    st.add_argument("--n", type=int, required=True, help="qubit count (first block for ghz-ones)")
    st.add_argument("--k", type=int, default=None,
                    help="excitations for dicke, second block size for ghz-ones")
    st.add_argument("--theta", type=float, default=None, help="xi family angle in [0, pi/4]")
    st.add_argument("--epsilon", type=float, default=None, help="xi family angle in [0, pi]")
    st.add_argument("--restarts", type=int, default=None)
    st.add_argument("--tol", type=float, default=1e-10)
    _add_common(st)

    sc = sub.add_parser("scan", help="run an experiment from a config file or flags")
    sc.add_argument("--config", default=None, help="JSON config (overrides the other flags)")
    sc.add_argument("--experiment", choices=harness.EXPERIMENTS, default=None)
    sc.add_argument("--n", default=None, help="comma-separated qubit counts")
    sc.add_argument("--k", default=None, help="comma-separated gate schedules (e.g. 1,n,n^2)")
    sc.add_argument("--samples", type=int, default=1)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--restarts", type=int, default=None)
    sc.add_argument("--tol", type=float, default=1e-10)
    sc.add_argument("--exact-cutoff", type=int, default=14)
    sc.add_argument("--no-eg", action="store_true", help="skip geometric entanglement")
    sc.add_argument("--out", default=None, help="row output path (default stdout)")
    sc.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(sc)

    bd = sub.add_parser("bounds", help="emit maximal-macroscopicity curves over an overlap grid")
    bd.add_argument("--mode", choices=("general", "symmetric", "both"), default="both")
    bd.add_argument("--n", required=True, help="comma-separated qubit counts")
    bd.add_argument("--eta-grid", type=int, default=64, help="grid points per curve")
    bd.add_argument("--out", default=None, help="output path (default stdout)")
    _add_common(bd)

    sub.add_parser("version", help="print the package version")
    return top


def _int_list(text, flag):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from exc


def _state_from_args(args):
    kind = args.kind
    if kind == "ghz":
        return ghz(args.n)
    if kind == "w":
        return dicke(args.n, 1)
    if kind == "dicke":
        if args.k is None:
            raise ValueError("dicke needs --k (number of excitations)")
        return dicke(args.n, args.k)
    if kind == "bell-product":
        return bell_product(args.n)
    if kind == "xi":
        if args.theta is None or args.epsilon is None:
            raise ValueError("xi needs --theta and --epsilon")
        return xi_state(args.n, args.theta, args.epsilon)
    if args.k is None:
        raise ValueError("ghz-ones needs --k (size of the |1...1> block)")
    return ghz_ones(args.n, args.k)


def _run_state(args):
    state = _state_from_args(args)
    if isinstance(state, SymmetricState):
        res = macroscopicity.macroscopicity_symmetric(state)
        geo = geometric.geometric_entanglement_symmetric(state, tol=max(args.tol, 1e-14))
    else:
        res = macroscopicity.macroscopicity_exact(state, restarts=args.restarts, tol=args.tol)
        geo = geometric.geometric_entanglement(state, restarts=args.restarts, tol=args.tol)
    print(f"m_tilde={res.m_tilde:.12g}")
    print(f"m_norm={res.m_norm:.12g}")
    print(f"e_g={geo.e_g:.12g}")
    return 0


def _run_scan(args):
    if args.config is not None:
        cfg = harness.load_config(args.config)
        if args.out is not None:
            cfg = harness.ExperimentConfig(**{**cfg.__dict__, "output_path": args.out})
    else:
        if args.experiment is None or args.n is None:
            raise ValueError("scan needs --config, or --experiment plus --n")
        k_values = tuple(args.k.split(",")) if args.k else (0,)
        cfg = harness.ExperimentConfig(
            experiment=args.experiment,
            n_values=_int_list(args.n, "--n"),
            k_values=k_values,
            samples=args.samples,
            seed=args.seed,
            restarts=args.restarts,
            tol=args.tol,
            exact_cutoff=args.exact_cutoff,
            compute_eg=not args.no_eg,
            output_path=args.out,
            output_format=args.format,
        )
    rows, stats = harness.run_experiment(cfg)
    text = harness.emit(rows, cfg.output_format, cfg.output_path)
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        with open(cfg.output_path + ".stats.json", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(harness.stats_to_json(stats))
        for s in stats:
            mean = "-" if s.mean_m_norm is None else f"{s.mean_m_norm:.4f}"
            eg = "-" if s.mean_e_g is None else f"{s.mean_e_g:.4f}"
            print(f"{s.ensemble} n={s.n} k={s.k} count={s.count} mean_m_norm={mean} mean_e_g={eg}")
    return 0


def _run_bounds(args):
    modes = ("general", "symmetric") if args.mode == "both" else (args.mode,)
    text = harness.emit_bounds_curves(modes, _int_list(args.n, "--n"), args.eta_grid, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "dense_cap", None) is not None:
            set_dense_cap(args.dense_cap)
        if args.command == "state":
            return _run_state(args)
        if args.command == "scan":
            return _run_scan(args)
        if args.command == "bounds":
            return _run_bounds(args)
        print(f"macrolab {__version__}")
        return 0
    except (OSError, ValueError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
