"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
import argparse
import io
import sys

import numpy as np

from qigeo import geometry, matrix_file, states
from qigeo.charts import chi_chart, xi_chart
from qigeo.gns import GnsSpace
from qigeo.matrix_file import MatrixFileError
from qigeo.verify import CHECKS, PROFILES, ReportRow, run_suite


class UsageError(Exception):
    pass


def _density(path):
    return matrix_file.load(path, expect=("density",))[1]


def _emit(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_divergence(args):
    d = states.umegaki_divergence(_density(args.sigma), _density(args.tau))
    _emit(f"{d:.12f}\n", args.out)
    return 0


def cmd_metric(args):
    rho, sigma, tau = (_density(p) for p in (args.rho, args.sigma, args.tau))
    if args.method == "integral":
        g = geometry.bogoliubov_metric(rho, sigma, tau)
    elif args.method == "superop":
        g = geometry.metric_via_G(rho, sigma, tau)
    else:
        g = geometry.metric_fd(rho, sigma, tau, args.step)
    _emit(f"{g:.12g}\n", args.out)
    return 0


def _chart_residual(chart, center, rho_t, rho0, rho1, t):
    space = GnsSpace(center)
    K0, K1, Kt = (chart(space, s) for s in (rho0, rho1, rho_t))
    return (Kt - ((1 - t) * K0 + t * K1)).op_norm()


def geodesic_table(rho0, rho1, kind="exponential", grid=11):
    """CSV text tabulating a mixture or exponential geodesic on ``grid`` points.

    The ``chart_residual`` column measures how far the path is from being a
    straight line in the chart centred at ``ρ_0``: the ξ-chart for mixture
    paths, the χ-chart for exponential paths.
    """
    if grid < 2:
        raise UsageError("--grid must be at least 2")
    n = rho0.dim
    header = ["t"] + [f"eig{i}" for i in range(n)]
    if kind == "exponential":
        header += ["zeta", "zeta_dot", "zeta_ddot"]
        arc = geometry.ExponentialArc(rho0, rho1)
    header += ["D_t_0", "D_t_1", "chart_residual"]
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for t in np.linspace(0.0, 1.0, grid):
        t = float(t)
        if kind == "exponential":
            rho_t, z = geometry.exp_geodesic(arc, t)
            zd, zdd = geometry.zeta_derivatives(arc, t)
            extra = [z, zd, zdd]
            chart = chi_chart
        else:
            rho_t = geometry.mixture_geodesic(rho0, rho1, t)
            extra = []
            chart = xi_chart
        row = [t, *rho_t.spectral.eigenvalues, *extra,
               states.umegaki_divergence(rho_t, rho0), states.umegaki_divergence(rho_t, rho1),
               _chart_residual(chart, rho0, rho_t, rho0, rho1, t)]
        buf.write(",".join(f"{x:.12g}" for x in row) + "\n")
    return buf.getvalue()


def cmd_geodesic(args):
    _emit(geodesic_table(_density(args.rho0), _density(args.rho1), args.kind, args.grid), args.out)
    return 0


def cmd_thermal(args):
    H = matrix_file.load(args.hamiltonian, expect=("hamiltonian", "hermitian"))[1]
    rho = states.thermal_state(H, args.beta)
    _emit(matrix_file.dumps(rho, "density"), args.out)
    return 0


def cmd_verify(args):
    try:
        dims = [int(d) for d in args.dims.split(",") if d.strip()]
    except ValueError:
        raise UsageError(f"--dims must be a comma-separated list of integers, got {args.dims!r}")
    if not dims or min(dims) < 2:
        raise UsageError("--dims entries must be integers >= 2")
    if args.seeds < 1:
        raise UsageError("--seeds must be positive")
    if args.inject_failure is not None and args.inject_failure not in CHECKS:
        raise UsageError(f"unknown check {args.inject_failure!r}")
    rows = run_suite(dims, args.seeds, args.tol_profile, args.seed, args.inject_failure)
    text = ",".join(ReportRow.HEADER) + "\n" + "".join(r.as_csv() + "\n" for r in rows)
    _emit(text, args.out)
    failed = sorted({r.check_name for r in rows if not r.passed})
    for name in failed:
        print(f"FAILED: {name}", file=sys.stderr)
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="qigeo", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="64-bit master seed (verify)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divergence", help="Umegaki relative entropy D(sigma||tau)")
    p.add_argument("sigma")
    p.add_argument("tau")
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("metric", help="Bogoliubov metric g_{sigma,tau}(rho)")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("--method", choices=("integral", "superop", "fd"), default="integral")
    p.add_argument("--step", type=float, default=1e-4, help="finite-difference step (fd)")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("geodesic", help="tabulate a geodesic as CSV")
    p.add_argument("rho0")
    p.add_argument("rho1")
    p.add_argument("--kind", choices=("mixture", "exponential"), default="exponential")
    p.add_argument("--grid", type=int, default=11)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("thermal", help="Gibbs state of a Hamiltonian file")
    p.add_argument("hamiltonian")
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_thermal)

    p = sub.add_parser("verify", help="run the property-check suite")
    p.add_argument("--dims", default="2,3,4")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--tol-profile", choices=PROFILES, default="strict")
    p.add_argument("--inject-failure", metavar="CHECK", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    # accept the global options after the subcommand as well
    for action in list(sub.choices.values()):
        action.add_argument("--out", dest="out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        action.add_argument("--seed", dest="seed", type=int, default=argparse.SUPPRESS,
                            help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (MatrixFileError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
