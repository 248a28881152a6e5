"""Command-line front end.

Subcommands build state files, turn them into phase-space grids, apply the
one-photon operations, check the identity residual, emit figure data and run
the verification suites. Every command is deterministic given its flags.

Exit codes: 0 success, 1 failed assertion or degenerate input, 2 usage or
configuration error.
"""

import argparse
import math
import os
import sys

from . import io as sqio
from .errors import (ConfigurationError, DegenerateInputError, DomainError,
                     GeometryError, TruncationError)
from .fock import (FockVector, coherent_state, quadrature_moments,
                   squeezed_vacuum, suggested_truncation)
from .gaussian import AngularAverageSpec, GaussianWignerSpec, squeeze_parameter
from .phasespace import (GridGeometry, default_geometry, identity_residual,
                         photon_outcomes, policy_extent, rasterize, renormalize,
                         wigner_from_density)
from .verify import SUITE_NAMES, SuiteConfig, figure_data, run_suite

_FORMATS_HELP = """\
file formats:
  state JSON      {"format": "fock-v1", "trunc": N, "amps": [[re, im], ...]}
                  {"format": "gauss-v1", "components": [{"weight": w,
                    "theta": t, "sigma_x": sx, "sigma_p": sp}, ...]}
                  {"format": "angavg-v1", "sigma_x": sx}
  grid CSV        header "# wigner-grid-v1 x0 dx nx p0 dp np", then nx*np
                  rows "x,p,value"; 17 significant digits throughout, so a
                  reloaded grid is bit-identical
  report JSON     {"suite": name, "cases": [{"label", "measured", "bound",
                  "pass"}, ...], "artifacts": [paths]}

The environment variable SQVAC_OUT names the default output directory;
explicit -o flags win.
"""


def _default_dir() -> str:
    return os.environ.get("SQVAC_OUT", ".")


def _resolve_out(out, default_name: str) -> str:
    return out if out else os.path.join(_default_dir(), default_name)


def _require(value, flag: str, kind: str):
    if value is None:
        raise ConfigurationError(f"state kind {kind!r} requires {flag}")
    return value


def _build_state(args):
    kind = args.kind
    theta = args.theta if args.theta is not None else 0.0
    if kind == "pure":
        return GaussianWignerSpec.pure_state(_require(args.sigma_x, "--sigma-x", kind), theta)
    if kind == "impure":
        return GaussianWignerSpec.single(_require(args.sigma_x, "--sigma-x", kind),
                                         _require(args.sigma_p, "--sigma-p", kind), theta)
    if kind == "mixture":
        theta2 = args.theta2 if args.theta2 is not None else math.pi / 4.0
        return GaussianWignerSpec.two_angle_mixture(
            args.weight, theta, theta2, _require(args.sigma_x, "--sigma-x", kind))
    if kind == "angular-average":
        return AngularAverageSpec(_require(args.sigma_x, "--sigma-x", kind))
    if kind == "squeezed":
        if args.z is not None:
            z = args.z
        else:
            z = squeeze_parameter(_require(args.sigma_x, "--z or --sigma-x", kind))
        return squeezed_vacuum(z, args.trunc)
    if kind == "coherent":
        return coherent_state(_require(args.alpha, "--alpha", kind), args.trunc or 40)
    raise ConfigurationError(f"unknown state kind {kind!r}")


def _cmd_state(args) -> int:
    state = _build_state(args)
    path = _resolve_out(args.out, f"{args.kind}.json")
    sqio.save_state(path, state)
    print(path)
    return 0


def _square_geometry(extent_flag, points_flag, base_extent) -> GridGeometry:
    extent = extent_flag if extent_flag is not None else base_extent
    if points_flag is not None:
        points = points_flag
    else:
        points = 257 if extent <= 18.0 else 513
    return GridGeometry.square(extent, points)


def _grid_from_state(state, args):
    if isinstance(state, FockVector):
        if args.extent is None and args.points is None:
            return wigner_from_density(state)
        x2, p2 = quadrature_moments(state)
        base = policy_extent(math.sqrt(2.0 * x2), math.sqrt(2.0 * p2))
        return wigner_from_density(state, _square_geometry(args.extent, args.points, base))
    geometry = default_geometry(state)
    if args.extent is not None or args.points is not None:
        geometry = _square_geometry(args.extent, args.points, geometry.extent_x)
    return rasterize(state, geometry)


def _grid_comments(args) -> list:
    comments = [f"cmd: {args.command}"]
    if getattr(args, "seed", None) is not None:
        comments.append(f"seed {args.seed}")
    return comments


def _cmd_wigner(args) -> int:
    grid = _grid_from_state(sqio.load_state(args.state), args)
    path = _resolve_out(args.out, "wigner.csv")
    sqio.save_grid(path, grid, _grid_comments(args))
    print(path)
    return 0


def _cmd_outcome(args) -> int:
    if args.grid:
        grid, _ = sqio.load_grid(args.grid)
    elif args.state:
        grid = _grid_from_state(sqio.load_state(args.state), args)
    else:
        raise ConfigurationError(f"{args.command} needs --grid or --state")
    added, subtracted = photon_outcomes(grid)
    ratio = added.integral() / subtracted.integral()
    outcome = renormalize(added if args.command == "add" else subtracted)
    path = _resolve_out(args.out, f"{args.command}.csv")
    sqio.save_grid(path, outcome, _grid_comments(args))
    print(path)
    print(f"R_used={ratio:.17g}")
    return 0


def _cmd_residual(args) -> int:
    grid, _ = sqio.load_grid(args.grid)
    check = identity_residual(grid, args.ratio)
    print(f"residual={check.residual:.17g}")
    print(f"R_used={check.ratio_used:.17g}")
    print(f"added_integral={check.added_integral:.17g}")
    print(f"subtracted_integral={check.subtracted_integral:.17g}")
    return 0


def _cmd_figure(args) -> int:
    out_dir = args.out if args.out else _default_dir()
    for path in figure_data(args.which, out_dir, seed=args.seed):
        print(path)
    return 0


def _parse_tolerances(pairs) -> dict:
    tols = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep:
            raise ConfigurationError(f"--tol expects NAME=VALUE, got {pair!r}")
        try:
            tols[name] = float(value)
        except ValueError:
            raise ConfigurationError(f"--tol {name}: {value!r} is not a number") from None
    return tols


def _cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    cfg = SuiteConfig(tolerances=_parse_tolerances(args.tol), trunc=args.trunc)
    out_dir = args.out if args.out else _default_dir()
    os.makedirs(out_dir, exist_ok=True)
    any_failed = False
    for name in names:
        report = run_suite(name, cfg)
        sqio.save_report(os.path.join(out_dir, f"verify_{name}.json"), report.to_obj())
        if report.passed:
            print(f"{name}: PASS ({len(report.cases)} cases)")
        else:
            any_failed = True
            print(f"{name}: FAIL ({len(report.failures)}/{len(report.cases)} cases)")
            for case in report.failures:
                print(f"  {case.label}: measured={case.measured:.6g} "
                      f"bound={case.bound:.6g}")
    return 1 if any_failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqvac",
        description="One-photon addition and subtraction on squeezed vacuum "
                    "states, with cross-representation verification.",
        epilog=_FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("state", help="write a state file")
    ps.add_argument("--kind", required=True,
                    choices=("pure", "impure", "mixture", "angular-average",
                             "squeezed", "coherent"))
    ps.add_argument("--sigma-x", type=float, dest="sigma_x")
    ps.add_argument("--sigma-p", type=float, dest="sigma_p")
    ps.add_argument("--theta", type=float)
    ps.add_argument("--theta2", type=float, help="second mixture angle (default pi/4)")
    ps.add_argument("--weight", type=float, default=0.5,
                    help="first-component weight for mixtures")
    ps.add_argument("--z", type=float, help="squeeze parameter for fock states")
    ps.add_argument("--alpha", type=float, help="coherent displacement")
    ps.add_argument("--trunc", type=int, help="number-basis size")
    ps.add_argument("-o", "--out")
    ps.set_defaults(func=_cmd_state)

    pw = sub.add_parser("wigner", help="state file -> grid CSV")
    pw.add_argument("--state", required=True)
    pw.add_argument("--extent", type=float)
    pw.add_argument("--points", type=int)
    pw.add_argument("--seed", type=int, help="recorded in the header; unused")
    pw.add_argument("-o", "--out")
    pw.set_defaults(func=_cmd_wigner)

    for name, help_text in (("add", "renormalized photon-added outcome"),
                            ("sub", "renormalized photon-subtracted outcome")):
        po = sub.add_parser(name, help=help_text)
        po.add_argument("--grid")
        po.add_argument("--state")
        po.add_argument("--extent", type=float)
        po.add_argument("--points", type=int)
        po.add_argument("--seed", type=int, help="recorded in the header; unused")
        po.add_argument("-o", "--out")
        po.set_defaults(func=_cmd_outcome)

    pr = sub.add_parser("residual", help="identity residual of a grid")
    pr.add_argument("--grid", required=True)
    pr.add_argument("--ratio", type=float,
                    help="norm ratio to use instead of integral(A)/integral(S)")
    pr.set_defaults(func=_cmd_residual)

    pf = sub.add_parser("figure", help="emit data files for a reference figure")
    pf.add_argument("which", choices=("fig1", "fig2", "fig3"))
    pf.add_argument("--seed", type=int, help="recorded in headers; unused")
    pf.add_argument("-o", "--out", help="output directory")
    pf.set_defaults(func=_cmd_figure)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    pv.add_argument("--trunc", type=int)
    pv.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="override a suite tolerance")
    pv.add_argument("-o", "--out", help="output directory for reports")
    pv.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (DegenerateInputError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, DomainError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
