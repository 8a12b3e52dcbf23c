"""Command line front end: analyze, certify, simulate, equilibrium.

Exit codes: 0 success (certified where applicable), 2 valid input whose
network fails the certification or equilibrium hypotheses, 1 any error.
JSON documents carry ``"schema": "crn-cert/1"``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from .certify import OverallStatus, certify
from .dynamics import (
    MASS_ACTION,
    HypothesesError,
    IntegrationError,
    ConvergenceError,
    find_equilibrium,
    lyapunov,
    persistence_margin,
    simulate,
    write_trajectory_csv,
)
from .network import ParseError, parse_network_file
from .siphons import EnumerationCapError, minimal_semi_locking_sets
from .structure import structure_report

SCHEMA = "crn-cert/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CERTIFIED = 2


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _parse_vector(text: str, m: int, flag: str) -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise ValueError(f"{flag} must be a comma-separated list of numbers") from None
    if values.shape != (m,):
        raise ValueError(f"{flag} has {values.size} entries, network has {m} species")
    return values


def cmd_analyze(args: argparse.Namespace) -> int:
    net = parse_network_file(args.file)
    report = structure_report(net)
    catalog = minimal_semi_locking_sets(net)
    doc = {
        "schema": SCHEMA,
        "structure": report.to_json_dict(),
        "siphons": catalog.to_json_list(net.species_names),
    }
    _emit(_json_text(doc), args.out)
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    net = parse_network_file(args.file)
    cert = certify(net)
    doc = {"schema": SCHEMA, **cert.to_json_dict()}
    _emit(_json_text(doc), args.out)
    return EXIT_OK if cert.overall is OverallStatus.GLOBALLY_STABLE else EXIT_NOT_CERTIFIED


def cmd_simulate(args: argparse.Namespace) -> int:
    net = parse_network_file(args.file)
    m = net.num_species
    if args.x0:
        x0 = _parse_vector(args.x0, m, "--x0")
        if np.any(x0 <= 0):
            raise ValueError("--x0 must be entrywise positive")
    else:
        rng = np.random.default_rng(args.seed)
        x0 = rng.uniform(0.5, 1.5, size=m)

    report = structure_report(net)
    x_ref = None
    if report.weakly_reversible and report.deficiency == 0:
        x_ref = find_equilibrium(net, x0).x_bar
    traj = simulate(net, MASS_ACTION, x0, args.t_end, rtol=args.rtol, atol=args.atol, x_ref=x_ref)

    final_v = float(traj.lyapunov[-1]) if traj.lyapunov is not None else float("nan")
    margin = persistence_margin(traj)
    if args.json:
        # JSON summary on stdout; the full CSV only lands in --out.
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                write_trajectory_csv(traj, net.species_names, fh)
        doc = {
            "schema": SCHEMA,
            "t_end": args.t_end,
            "steps": len(traj),
            "final_state": [float(v) for v in traj.states[-1]],
            "final_V": final_v,
            "persistence_margin": margin,
            "max_conservation_residual": float(traj.conservation_residual.max()),
        }
        sys.stdout.write(_json_text(doc))
        return EXIT_OK
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_trajectory_csv(traj, net.species_names, fh)
    else:
        write_trajectory_csv(traj, net.species_names, sys.stdout)
    print(f"persistence_margin={margin!r} final_V={final_v!r}", file=sys.stderr)
    return EXIT_OK


def cmd_equilibrium(args: argparse.Namespace) -> int:
    net = parse_network_file(args.file)
    m = net.num_species
    if not args.c:
        raise ValueError("--c (class anchor, comma-separated, positive) is required")
    c = _parse_vector(args.c, m, "--c")
    try:
        result = find_equilibrium(net, c)
    except HypothesesError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_NOT_CERTIFIED
    v_value, _ = lyapunov(result.class_anchor, result.x_bar)
    doc = {"schema": SCHEMA, **result.to_json_dict(), "lyapunov_at_anchor": v_value}
    _emit(_json_text(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crn-cert",
        description="Analyze, certify and simulate mass-action reaction networks (.crn files)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="input .crn network file")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument(
            "--json",
            action="store_true",
            help="JSON output (default for analyze/certify/equilibrium; "
            "for simulate, a JSON summary replaces the CSV on stdout)",
        )
        p.set_defaults(handler=handler)
        return p

    add("analyze", cmd_analyze, "structure report and minimal semi-locking sets (JSON)")
    add("certify", cmd_certify, "global-stability certificate (JSON; exit 0 iff certified)")

    p_sim = add("simulate", cmd_simulate, "integrate the ODE and emit a trajectory CSV")
    p_sim.add_argument("--x0", help="initial state, comma-separated positive values")
    p_sim.add_argument("--t-end", type=float, default=50.0, dest="t_end")
    p_sim.add_argument("--rtol", type=float, default=1e-8)
    p_sim.add_argument("--atol", type=float, default=1e-10)
    p_sim.add_argument("--seed", type=int, default=0, help="seed for a random x0 when --x0 is absent")

    p_eq = add("equilibrium", cmd_equilibrium, "class equilibrium for an anchor point (JSON)")
    p_eq.add_argument("--c", help="class anchor, comma-separated positive values")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (
        ValueError,
        EnumerationCapError,
        IntegrationError,
        ConvergenceError,
        OSError,
        ArithmeticError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
