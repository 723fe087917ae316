"""Command-line entry point.

Commands:
  simulate    closed-loop run of one experiment, CSV log + JSON summary
  envelope    force and torque envelope sweeps
  condmap     condition-number map of the allocation matrix
  efficiency  hover efficiency sweep

Exit codes: 0 success, 1 usage error, 2 configuration error,
3 numerical failure. All outputs are deterministic: re-running a
command reproduces byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import condition_map, force_envelope, hover_sweep, torque_envelope
from .config import ConfigError, load_run_config
from .simulation import SimulationDiverged, simulate, tracking_summary
from .trajectories import (
    make_cartwheel,
    make_flip,
    make_hover,
    make_rotation,
    make_singular_translation,
    make_translation,
)

EXPERIMENTS = ("translation", "rotation", "flip", "singular-translation", "cartwheel", "hover")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(prog="omnidyn", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_dirs=False):
        p.add_argument("--config", metavar="PATH", help="JSON run configuration")
        p.add_argument("--out", metavar="DIR", default=".", help="output directory")
        if n_dirs:
            p.add_argument("--n-dirs", type=int, metavar="N",
                           help="number of sweep directions (default from config)")

    p_sim = sub.add_parser("simulate", help="run one closed-loop experiment")
    common(p_sim)
    p_sim.add_argument("--experiment", metavar="NAME", required=True,
                       help=f"one of: {', '.join(EXPERIMENTS)}")

    p_env = sub.add_parser("envelope", help="force/torque envelope sweeps")
    common(p_env, n_dirs=True)

    p_cond = sub.add_parser("condmap", help="allocation condition-number map")
    common(p_cond, n_dirs=True)
    p_cond.add_argument("--biased", action="store_true",
                        help="apply the singularity tilt bias before evaluating")

    p_eff = sub.add_parser("efficiency", help="hover efficiency sweep")
    common(p_eff, n_dirs=True)

    return parser


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _make_trajectory(name, run_config):
    if name == "translation":
        return make_translation()
    if name == "rotation":
        return make_rotation()
    if name == "flip":
        return make_flip()
    if name == "singular-translation":
        return make_singular_translation(run_config.vehicle)
    if name == "cartwheel":
        return make_cartwheel()
    if name == "hover":
        return make_hover()
    raise KeyError(name)


def _cmd_simulate(args, cfg, out_dir):
    if args.experiment not in EXPERIMENTS:
        print(f"omnidyn: error: unknown experiment '{args.experiment}' "
              f"(choose from {', '.join(EXPERIMENTS)})", file=sys.stderr)
        return 1
    trajectory = _make_trajectory(args.experiment, cfg)
    try:
        log = simulate(trajectory, cfg.vehicle, cfg.gains, cfg.singularity, cfg.sim)
    except SimulationDiverged as exc:
        print(f"omnidyn: numerical failure: {exc}", file=sys.stderr)
        return 3
    name = args.experiment
    log.to_csv(os.path.join(out_dir, f"{name}_log.csv"))
    summary = tracking_summary(log)
    _write_json(os.path.join(out_dir, f"{name}_summary.json"), summary.as_dict())
    return 0


def _cmd_envelope(args, cfg, out_dir):
    n = args.n_dirs or cfg.n_dirs
    for fname, sweep in (("force_envelope.csv", force_envelope),
                         ("torque_envelope.csv", torque_envelope)):
        samples = sweep(cfg.vehicle, n)
        _write_csv(os.path.join(out_dir, fname), ["dx", "dy", "dz", "radius"],
                   [[*s.direction, s.radius] for s in samples])
    return 0


def _cmd_condmap(args, cfg, out_dir):
    n = args.n_dirs or cfg.n_dirs
    samples = condition_map(cfg.vehicle, n, biased=args.biased, sing_params=cfg.singularity)
    fname = "condmap_biased.csv" if args.biased else "condmap_unbiased.csv"
    _write_csv(os.path.join(out_dir, fname), ["dx", "dy", "dz", "log10_cond"],
               [[*s.direction, s.log10_cond] for s in samples])
    return 0


def _cmd_efficiency(args, cfg, out_dir):
    n = args.n_dirs or cfg.n_dirs
    records = hover_sweep(cfg.vehicle, n)
    _write_csv(os.path.join(out_dir, "efficiency.csv"),
               ["dx", "dy", "dz", "eta_P", "eta_f", "total_power"],
               [[*r.direction, r.eta_P, r.eta_f, r.total_power] for r in records])
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = load_run_config(args.config)
    except ConfigError as exc:
        print(f"omnidyn: config error: {exc}", file=sys.stderr)
        return 2

    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)

    handlers = {
        "simulate": _cmd_simulate,
        "envelope": _cmd_envelope,
        "condmap": _cmd_condmap,
        "efficiency": _cmd_efficiency,
    }
    try:
        status = handlers[args.command](args, cfg, out_dir)
    except (FloatingPointError, ArithmeticError, RuntimeError) as exc:
        print(f"omnidyn: numerical failure: {exc}", file=sys.stderr)
        return 3
    if status == 0:
        _write_json(os.path.join(out_dir, "effective_config.json"), cfg.effective_dict())
    return status


if __name__ == "__main__":
    raise SystemExit(main())
