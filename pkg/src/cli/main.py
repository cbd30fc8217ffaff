"""
Command-line interface.

Usage:
    python engel.py classify --t 0,0,1,1,0,1
    python engel.py classify --family V --params T1=2,T2=1,T3=0
    python engel.py build --family III --params T3=1,T4=1,T6=1
    python engel.py frame --structure structure.json
    python engel.py flow --t 0,0,1,1,0,1 --h0 0.6,0.8,0.1,0.2 --t-max 10 --out csv
    python engel.py integrals --t 0,0,1,1,0,1 --h0 1,0,1,0 --type1 0,1
    python engel.py conjugate --t 0,0,0,1,0,4 --horizon 5
    python engel.py conjugate --profile profile.csv --horizon 1
    python engel.py verdict --t 0,0,0,1,0,4 --tau 2
    python engel.py sweep --config sweep.json

Negative leading values need the ``--t=-1,0,...`` form.

Exit codes: 0 success, 1 usage error, 2 domain error (reported as JSON on
standard output). Environment: ENGEL_TOL overrides the global tolerance.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional, TextIO

import numpy as np
from dotenv import load_dotenv

from .. import SPEC_VERSION, __version__
from ..abnormal.jacobi import (
    conjugate_shoot,
    conjugate_times_const,
    delta_const,
    delta_profile,
    is_strict,
    is_strict_profile,
)
from ..abnormal.models import CoefficientProfile
from ..abnormal.verdict import minimality_verdict
from ..algebra.brackets import derived_constants, structure_constants_from_T
from ..algebra.frame import canonical_frame, growth_vector, levi_kernel
from ..algebra.loader import load_structure
from ..algebra.models import EngelConstants
from ..classify.diagnosis import diagnose_type3
from ..classify.families import FamilyTag, build_family, classify, is_type3
from ..classify.restrictions import jacobi_restrictions
from ..errors import EngelError
from ..flow.hamiltonian import integrate
from ..flow.integrals import (
    center_momentum,
    conservation_report,
    hamiltonian,
    independence_matrix,
    integral_G,
    type1_constants,
    type1_integrals,
)
from ..flow.integrators import time_grid
from ..flow.models import IntegratorConfig, VerticalState
from .reports import dumps, error_report, frame_to_csv, parse_float_list, parse_params, trajectory_frame
from .sweep import load_sweep_config, run_sweep

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("classify", "build", "frame", "flow", "integrals", "conjugate", "verdict", "sweep")


class UsageError(Exception):
    """Bad command-line usage."""


class EngelArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on usage errors."""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    """Resolved global options of one invocation."""

    subcommand: str
    seed: int = 0
    output: str = "json"
    verbose: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"Unknown subcommand {self.subcommand!r}")
        if self.output not in ("json", "csv"):
            raise UsageError(f"Unknown output format {self.output!r}")


def _add_constants_source(parser: argparse.ArgumentParser, allow_profile: bool = False) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--t', help='Invariants T1..T6, comma-separated')
    group.add_argument('--family', help='Family I..V (with --params)')
    if allow_profile:
        group.add_argument('--profile', help='CSV file with columns t,T2,T6[,T4]')
    parser.add_argument('--params', default='', help='Free parameters, e.g. T1=2,T2=1,T3=0')


def _add_integrator_options(parser: argparse.ArgumentParser, step_default: float = 1e-3) -> None:
    parser.add_argument('--step', type=float, default=step_default, help='Integration step (default: %(default)s)')
    parser.add_argument('--method', default='rk4', choices=['rk4', 'rk45'], help='Integrator (default: rk4)')


def build_parser() -> EngelArgumentParser:
    """Build the argument parser with all subcommands."""
    parser = EngelArgumentParser(
        prog='engel',
        description='Left-invariant sub-Riemannian Engel structures: frames, classification, flows and conjugate points',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__} (spec {SPEC_VERSION})')
    parser.add_argument('--verbose', action='store_true', help='Log debug output to stderr')
    parser.add_argument('--seed', type=int, default=0, help='Seed for randomized sweeps (default: 0)')

    sub = parser.add_subparsers(dest='subcommand', parser_class=EngelArgumentParser)
    sub.required = True

    p = sub.add_parser('classify', help='Classify invariants into families I..V')
    _add_constants_source(p)

    p = sub.add_parser('build', help='Build the invariants of a family member')
    p.add_argument('--family', required=True, help='Family I..V')
    p.add_argument('--params', default='', help='Free parameters, e.g. T3=1,T4=1,T6=1')

    p = sub.add_parser('frame', help='Extract the canonical frame from a structure file')
    p.add_argument('--structure', required=True, help='JSON structure file')

    p = sub.add_parser('flow', help='Integrate the normal vertical flow')
    _add_constants_source(p)
    p.add_argument('--h0', required=True, help='Initial covector h1,h2,h3,h4')
    p.add_argument('--t-max', type=float, default=10.0, help='Final time (default: 10)')
    _add_integrator_options(p)
    p.add_argument('--out', default='json', choices=['json', 'csv'], help='Output format (default: json)')

    p = sub.add_parser('integrals', help='Evaluate first integrals at a covector')
    _add_constants_source(p)
    p.add_argument('--h0', required=True, help='Covector h1,h2,h3,h4')
    p.add_argument('--type1', help='Integer pair n,m for the family-I polynomial integrals')

    p = sub.add_parser('conjugate', help='Conjugate times along the abnormal geodesic')
    _add_constants_source(p, allow_profile=True)
    p.add_argument('--horizon', type=float, required=True, help='End of the search interval')
    _add_integrator_options(p)

    p = sub.add_parser('verdict', help='Minimality verdict for the abnormal geodesic on [0, tau]')
    _add_constants_source(p, allow_profile=True)
    p.add_argument('--tau', type=float, required=True, help='Length of the segment')
    _add_integrator_options(p)

    p = sub.add_parser('sweep', help='Batch conservation sweep from a JSON config')
    p.add_argument('--config', required=True, help='Sweep config file')
    p.add_argument('--workers', type=int, help='Worker threads (default: config or 4)')

    return parser


def _constants(args) -> EngelConstants:
    if args.t is not None:
        return EngelConstants.from_sequence(parse_float_list(args.t, 6, "T"))
    return build_family(FamilyTag.parse(args.family), parse_params(args.params))


def _h0(args) -> VerticalState:
    return VerticalState.from_sequence(parse_float_list(args.h0, 4, "h0"))


def _integrator(args, t_max: float) -> IntegratorConfig:
    return IntegratorConfig(method=args.method, step=min(args.step, t_max / 2), t_max=t_max)


def _families_or_none(T: EngelConstants) -> Optional[List[str]]:
    try:
        return [tag.value for tag in classify(T)]
    except EngelError:
        return None


def cmd_classify(args, config: RunConfig) -> dict:
    T = _constants(args)
    residuals = jacobi_restrictions(T)
    families = classify(T)
    diagnosis = diagnose_type3(T).to_dict() if FamilyTag.III in families else None
    return {
        "constants": T.as_dict(),
        "families": [tag.value for tag in families],
        "residuals": residuals,
        "diagnosis": diagnosis,
        "strict": is_strict(T),
    }


def cmd_build(args, config: RunConfig) -> dict:
    tag = FamilyTag.parse(args.family)
    T = build_family(tag, parse_params(args.params))
    return {
        "family": tag.value,
        "constants": T.as_dict(),
        "residuals": jacobi_restrictions(T),
        "families": [t.value for t in classify(T)],
    }


def cmd_frame(args, config: RunConfig) -> dict:
    table, dist = load_structure(args.structure)
    growth = growth_vector(table, dist)
    frame = canonical_frame(table, dist)
    T = frame.constants
    return {
        "growth_vector": list(growth),
        "kernel": levi_kernel(table, dist),
        "brackets": [
            {"i": i, "j": j, "k": k, "value": value}
            for (i, j, k), value in table.nonzero_entries().items()
        ],
        "frame": {f"x{i + 1}": vec for i, vec in enumerate(frame.vectors())},
        "constants": T.as_dict(),
        "derived_constants": derived_constants(T)._asdict(),
        "families": _families_or_none(T),
    }


def cmd_flow(args, config: RunConfig):
    T = _constants(args)
    traj = integrate(T, _h0(args), _integrator(args, args.t_max))
    if config.output == "csv":
        return frame_to_csv(trajectory_frame(T, traj))
    return {
        "constants": T.as_dict(),
        "h0": traj.state_at(0).as_array(),
        "samples": len(traj),
        "t_final": traj.times[-1],
        "final_state": traj.state_at(-1).as_array(),
        "drifts": conservation_report(T, traj),
    }


def cmd_integrals(args, config: RunConfig) -> dict:
    T = _constants(args)
    h = _h0(args)
    structure_constants_from_T(T)
    report = {
        "constants": T.as_dict(),
        "h": h.as_array(),
        "H": hamiltonian(h),
        "right_momenta_at_identity": -h.as_array(),
    }
    if is_type3(T):
        h4p = center_momentum(T, h)
        witness = independence_matrix(T, h, h4p)
        report.update({
            "h4p": h4p,
            "G": integral_G(T, h),
            "independence_minor": witness.minor_det,
            "h1_h3_cubed": h.h1 * h.h3 ** 3,
        })
    if args.type1:
        n, m = parse_float_list(args.type1, 2, "type1")
        f1, f2 = type1_integrals(n, m, h)
        n, m = int(n), int(m)
        report["type1"] = {"n": n, "m": m, "constants": type1_constants(n, m).as_dict(), "F1": f1, "F2": f2}
    return report


def _profile_or_constants(args):
    if getattr(args, "profile", None):
        return CoefficientProfile.from_csv(args.profile)
    T = _constants(args)
    structure_constants_from_T(T)
    return T


def cmd_conjugate(args, config: RunConfig) -> dict:
    subject = _profile_or_constants(args)
    cfg = _integrator(args, args.horizon)
    verdict = minimality_verdict(subject, args.horizon, cfg)

    if isinstance(subject, EngelConstants):
        return {
            "delta": delta_const(subject),
            "strict": is_strict(subject),
            "conjugate_times": conjugate_times_const(subject, args.horizon),
            "verdict": verdict.verdict,
        }

    grid = time_grid(args.horizon, cfg.step)
    deltas = [delta_profile(subject, t) for t in grid]
    return {
        "delta": {"min": float(np.min(deltas)), "max": float(np.max(deltas))},
        "strict": is_strict_profile(subject, grid),
        "conjugate_times": conjugate_shoot(subject, args.horizon, cfg),
        "verdict": verdict.verdict,
    }


def cmd_verdict(args, config: RunConfig) -> dict:
    subject = _profile_or_constants(args)
    return minimality_verdict(subject, args.tau, _integrator(args, args.tau)).to_dict()


def cmd_sweep(args, config: RunConfig) -> dict:
    sweep_config = load_sweep_config(args.config)
    rows = run_sweep(sweep_config, seed=config.seed, workers=args.workers)
    return {"seed": config.seed, "count": len(rows), "rows": rows}


HANDLERS = {
    "classify": cmd_classify,
    "build": cmd_build,
    "frame": cmd_frame,
    "flow": cmd_flow,
    "integrals": cmd_integrals,
    "conjugate": cmd_conjugate,
    "verdict": cmd_verdict,
    "sweep": cmd_sweep,
}


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run one CLI invocation.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
        stdout: Stream for the report (default: sys.stdout)

    Returns:
        Exit code: 0 success, 1 usage error, 2 domain error
    """
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(
            subcommand=args.subcommand,
            seed=args.seed,
            output=getattr(args, "out", "json"),
            verbose=args.verbose,
        )
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    _configure_logging(config.verbose)

    try:
        result = HANDLERS[config.subcommand](args, config)
    except EngelError as e:
        logger.info(f"{config.subcommand} failed with {e.code}: {e.message}")
        print(dumps(error_report(e)), file=out)
        return 2
    except FileNotFoundError as e:
        print(dumps({"error": {"code": "FileNotFoundError", "message": str(e), "details": {}}}), file=out)
        return 2

    if isinstance(result, str):
        out.write(result)
    else:
        print(dumps(result), file=out)
    return 0


def main() -> None:
    """Console entry point."""
    load_dotenv()
    sys.exit(run())
