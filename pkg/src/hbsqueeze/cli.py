"""Command-line front end.

    hbsqueeze figure fig5 --out fig5.csv
    hbsqueeze sweep --B 0.1 1 10 --n 0.5 1 --format json --out forces.json
    hbsqueeze point --B 1 --n 0.5 --eps 0.1 --r 0.5 --z 0.2

Exit status: 0 on success, 2 on a parameter error, 3 on a solver failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import DomainError, ParameterError, SolverError
from .figures import FIGURE_IDS, SweepSpec, dump_csv, emit, run_figure, run_sweep
from .numerics import QUAD_TOL, ROOT_TOL, tolerances, with_overrides
from .params import FluidParams, validate

log = logging.getLogger("hbsqueeze")

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_SOLVER = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-root", type=float, default=None, help="absolute tolerance of root solves")
    parser.add_argument("--tol-quad", type=float, default=None, help="relative tolerance of quadratures")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output file (default: stdout for csv/json)")
    parser.add_argument("--format", choices=("csv", "json", "svg"), default=None,
                        help="output format (default: from --out suffix, else csv)")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--B", type=float, nargs="+", default=None, help="Bingham numbers")
    parser.add_argument("--n", type=float, nargs="+", default=None, help="power-law indices")
    parser.add_argument("--eps", type=float, default=0.1, help="aspect ratio (default 0.1)")
    parser.add_argument("--r-grid", type=int, default=50, help="radial samples (default 50)")
    parser.add_argument("--z-grid", type=int, default=21, help="vertical samples (default 21)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hbsqueeze", description=__doc__.split("\n")[0] or None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="generate a figure dataset")
    fig.add_argument("figure_id", choices=FIGURE_IDS)
    _add_grid(fig)
    _add_output(fig)
    _add_common(fig)

    sweep = sub.add_parser("sweep", help="force breakdown over a (B, n) grid")
    _add_grid(sweep)
    _add_output(sweep)
    _add_common(sweep)

    point = sub.add_parser("point", help="evaluate the solution at one radius (and height)")
    point.add_argument("--B", type=float, required=True)
    point.add_argument("--n", type=float, required=True)
    point.add_argument("--eps", type=float, default=0.1)
    point.add_argument("--Re", type=float, default=0.0)
    point.add_argument("--r", type=float, required=True)
    point.add_argument("--z", type=float, default=None)
    point.add_argument("--out", default=None)
    _add_common(point)
    return parser


def _tolerances(args):
    root = with_overrides(ROOT_TOL, abs_tol=args.tol_root)
    quad = with_overrides(QUAD_TOL, rel_tol=args.tol_quad)
    return root, quad


def _spec(args) -> SweepSpec:
    root, quad = _tolerances(args)
    return SweepSpec(
        B_values=tuple(args.B or ()),
        n_values=tuple(args.n or ()),
        eps=args.eps,
        r_grid=args.r_grid,
        z_grid=args.z_grid,
        root_tol=root,
        quad_tol=quad,
    )


def _write(dataset, args) -> None:
    fmt = args.format
    if fmt is None:
        suffix = (args.out or "").rsplit(".", 1)[-1].lower()
        fmt = suffix if suffix in ("csv", "json", "svg") else "csv"
    if args.out is None:
        if fmt == "svg":
            raise ParameterError("svg output needs --out")
        if fmt == "json":
            sys.stdout.write(json.dumps(dataset.to_dict(), indent=1) + "\n")
        else:
            dump_csv(dataset, sys.stdout)
        return
    emit(dataset, fmt, args.out)
    log.info("wrote %s", args.out)


def _point(args) -> dict:
    from .first_order import coefficients, find_r0, p1_of_r, plate_stress, plate_stress_series, R_MIN, sample_field
    from .force import total_force
    from .leading_order import plug_velocity, pressure_zero
    from .yield_surface import z0_of_r

    p = validate(FluidParams(B=args.B, n=args.n, eps=args.eps, Re=args.Re))
    root, quad = _tolerances(args)
    with tolerances(root=root, quad=quad):
        r = args.r
        out = {"params": p.as_dict(), "r": r, "z0": z0_of_r(p, r), "u0": plug_velocity(p, r)}
        forces = total_force(p)
        out["force"] = forces.as_dict()
        out["r0"] = find_r0(p)
        if r > R_MIN:
            c = coefficients(p, r)
            p1 = p1_of_r(p, r)
            out.update(eta=c.eta, g=c.g, p1_prime=c.p1_prime, p1=p1,
                       p0=pressure_zero(p, r, forces.p_R), plate_stress=plate_stress(p, r))
            if args.z is not None:
                s = sample_field(p, r, args.z, p1)
                out["field"] = {k: getattr(s, k) for k in
                                ("z", "region", "u0_val", "u1_val", "tau_rz0", "tau_rz1", "p0_prime_val", "p1_val")}
        elif r > 0:
            tau0, tau1 = plate_stress_series(p, r)
            out["plate_series"] = {"tau_rz0": tau0, "tau_rz1": tau1}
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "figure":
            _write(run_figure(_spec(args), args.figure_id), args)
        elif args.command == "sweep":
            _write(run_sweep(_spec(args)), args)
        else:
            text = json.dumps(_point(args), indent=1)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
    except (ParameterError, DomainError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
