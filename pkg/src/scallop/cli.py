"""Command-line interface: synthesize, plan, sweep, and simulate cycle controls.

Subcommands: min-time | lq | sweep | simulate. Every synthesized solution
is re-simulated through the relay and the hybrid integrator before the
command exits 0; a simulation that misses its predicted displacement exits
2, usage and domain errors exit 1. Outputs are deterministic CSV/JSON plus
self-contained SVG plots whose points mirror the CSV rows.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import lq as lq_mod
from . import mintime, planner
from .dynamics import FluidRegime, SwimmerParams
from .errors import ScallopError, UnattainableTargetError
from .profiles import ControlProfile, CostSpec, concatenate, cost
from .simulator import DEFAULT_STEP, simulate, verify

_PAPER_THETA0 = math.pi / 6.0
_FORMATS = ("csv", "json", "svg")


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--params", metavar="FILE", help="swimmer parameters as a flat key-value file")
    sp.add_argument("--eps", type=float, default=0.1, help="relay threshold / control bound (default 0.1)")
    sp.add_argument("--out", metavar="DIR", default=".", help="output directory (default: current)")
    sp.add_argument(
        "--format",
        default="csv,json,svg",
        help="comma-separated subset of csv,json,svg (default all)",
    )
    sp.add_argument("--degrees", action="store_true", help="interpret angle flags in degrees")
    sp.add_argument("--h", type=float, default=DEFAULT_STEP, help="integrator step (default 1e-4)")
    sp.add_argument(
        "--verify-tol",
        type=float,
        default=1e-6,
        help="relative displacement tolerance for the exit-0 verification (default 1e-6)",
    )


def _add_angles(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--theta0", type=float, default=None, help="cycle base angle (default pi/6)")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta1", type=float, help="switching angle")
    group.add_argument("--dx", type=float, help="displacement target (magnitude honored in the realizable direction)")
    sp.add_argument(
        "--cycles",
        type=int,
        default=0,
        help="number of repeated cycles; 0 picks the fewest that attain --dx (default 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scallop",
        description="Synthesize and simulate regime-switching swimmer cycles.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    mt = sub.add_parser("min-time", help="minimum-time cycle synthesis")
    _add_common(mt)
    _add_angles(mt)
    mt.add_argument("--u0", type=float, default=0.0, help="boundary control value for the ramped family")
    mt.add_argument("--k", type=float, default=None, help="also emit the continuous ramp approximation for this k")

    lqp = sub.add_parser("lq", help="quadratic-cost cycle synthesis")
    _add_common(lqp)
    _add_angles(lqp)
    lqp.add_argument("--A", type=float, default=1.0, help="weight on u^2 (default 1)")
    lqp.add_argument("--B", type=float, default=0.0, help="weight on theta^2 (default 0)")
    lqp.add_argument("--u0", type=float, default=0.0, help="boundary control value for the ramped family")
    lqp.add_argument("--k", type=float, default=None, help="also emit the continuous ramp approximation for this k")

    sw = sub.add_parser("sweep", help="cost of splitting a displacement over n cycles")
    _add_common(sw)
    sw.add_argument("--theta0", type=float, default=None, help="cycle base angle (default pi/6)")
    sw.add_argument("--dx", type=float, default=10.0, help="total displacement (default 10)")
    sw.add_argument("--A", type=float, default=1.0, help="weight on u^2 (default 1)")
    sw.add_argument("--B", type=float, default=0.0, help="weight on theta^2 (default 0)")
    sw.add_argument("--n-max", type=int, default=30, help="largest cycle count (default 30)")

    sim = sub.add_parser("simulate", help="integrate a stored control profile")
    _add_common(sim)
    sim.add_argument("--profile", metavar="FILE", required=True, help="control profile JSON")
    sim.add_argument("--theta0", type=float, default=None, help="initial valve angle (default pi/6)")
    sim.add_argument("--x0", type=float, default=0.0, help="initial position (default 0)")
    sim.add_argument("--w0", type=int, default=2, choices=(1, 2), help="initial regime (default 2, ideal)")
    sim.add_argument("--expected-dx", type=float, default=None, help="verify the displacement against this value")
    return ap


def _angle(value: float | None, degrees: bool, default: float) -> float:
    if value is None:
        return default
    return math.radians(value) if degrees else value


def _load_params(args) -> SwimmerParams:
    if args.params:
        return SwimmerParams.from_file(args.params)
    return SwimmerParams.default()


def _formats(args) -> set[str]:
    chosen = {f.strip() for f in args.format.split(",") if f.strip()}
    bad = chosen - set(_FORMATS)
    if bad:
        raise ValueError(f"unknown output format(s) {sorted(bad)}; choose from {_FORMATS}")
    return chosen


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str) -> None:
    path.write_text(text)
    print(f"wrote {path}")


def _svg_plot(xs, ys, xlabel: str, ylabel: str, title: str) -> str:
    """Minimal static SVG: axes, ticks, polyline, and one marker per point."""
    width, height, margin = 640, 480, 64.0
    pts = [(float(x), float(y)) for x, y in zip(xs, ys) if math.isfinite(float(x)) and math.isfinite(float(y))]
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="24" text-anchor="middle">{title}</text>',
    ]
    if pts:
        x_lo, x_hi = min(p[0] for p in pts), max(p[0] for p in pts)
        y_lo, y_hi = min(p[1] for p in pts), max(p[1] for p in pts)
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if y_hi == y_lo:
            y_hi = y_lo + 1.0

        def sx(v: float) -> float:
            return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

        def sy(v: float) -> float:
            return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

        body.append(
            f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
            f'y2="{height - margin}" stroke="black"/>'
        )
        body.append(
            f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>'
        )
        for i in range(5):
            fx = x_lo + (x_hi - x_lo) * i / 4
            fy = y_lo + (y_hi - y_lo) * i / 4
            body.append(
                f'<text x="{sx(fx)}" y="{height - margin + 20}" text-anchor="middle">{fx:.6g}</text>'
            )
            body.append(
                f'<text x="{margin - 8}" y="{sy(fy) + 4}" text-anchor="end">{fy:.6g}</text>'
            )
        body.append(
            f'<text x="{width / 2}" y="{height - 16}" text-anchor="middle">{xlabel}</text>'
        )
        body.append(
            f'<text x="16" y="{height / 2}" text-anchor="middle" '
            f'transform="rotate(-90 16 {height / 2})">{ylabel}</text>'
        )
        poly = " ".join(f"{sx(px)},{sy(py)}" for px, py in pts)
        body.append(f'<polyline points="{poly}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>')
        if len(pts) <= 200:
            for px, py in pts:
                body.append(
                    f'<circle cx="{sx(px)}" cy="{sy(py)}" r="2.5" fill="#1f5fa8" '
                    f'data-x="{px!r}" data-y="{py!r}"/>'
                )
    body.append("</svg>")
    return "\n".join(body) + "\n"


def _resolve_cycle(args, p: SwimmerParams):
    """Turn (--theta1 | --dx [, --cycles]) into (theta1, n, expected_total_dx)."""
    degrees = args.degrees
    theta0 = _angle(args.theta0, degrees, _PAPER_THETA0)
    if args.theta1 is not None:
        theta1 = _angle(args.theta1, degrees, None)
        n = max(1, args.cycles)
        expected = n * planner.cycle_displacement(theta0, theta1, p)
        return theta0, theta1, n, expected
    if args.cycles > 0:
        plan = planner.plan_cycles(args.dx, theta0, p, args.eps, max_cycles=args.cycles)
        if plan.n != args.cycles:
            # honor the explicit count: split the request evenly across it
            share = plan.dx_total / args.cycles
            sign = 1.0 if plan.theta1 >= theta0 else -1.0
            theta1 = planner.solve_switch_angle(share * sign, theta0, p)
            return theta0, theta1, args.cycles, plan.dx_total
        return theta0, plan.theta1, plan.n, plan.dx_total
    plan = planner.plan_cycles(args.dx, theta0, p, args.eps)
    return theta0, plan.theta1, plan.n, plan.dx_total


def _simulate_and_verify(profile, p, theta0, expected_dx, args, out, fmts, stem="trajectory"):
    traj = simulate(profile, p, 0.0, theta0, FluidRegime.IDEAL, h=args.h)
    tol = args.verify_tol * max(1.0, abs(expected_dx))
    report = verify(traj, expected_dx, tol)
    if "csv" in fmts:
        _write(out / f"{stem}.csv", traj.to_csv())
        _write(out / "events.csv", traj.events_csv())
    if "svg" in fmts:
        _write(out / f"{stem}_theta.svg", _svg_plot(traj.t, traj.theta, "t", "theta", "valve angle"))
        _write(out / f"{stem}_x.svg", _svg_plot(traj.t, traj.x, "t", "x", "swimmer position"))
    print(report.summary())
    return report


def _run_min_time(args) -> int:
    p = _load_params(args)
    fmts = _formats(args)
    out = _outdir(args)
    theta0, theta1, n, expected = _resolve_cycle(args, p)
    sol = mintime.synthesize(theta0, theta1, args.eps)
    profile = concatenate([sol.profile] * n) if n > 1 else sol.profile
    doc = sol.to_dict()
    doc.update(cycles=n, expected_dx=expected, total_time=profile.t_final)
    if "json" in fmts:
        _write(out / "solution.json", json.dumps(doc, sort_keys=True) + "\n")
        _write(out / "profile.json", profile.to_json() + "\n")
    if args.k is not None:
        ap = mintime.approximate(theta0, theta1, args.eps, args.u0, args.k)
        if "json" in fmts:
            _write(out / "approx_solution.json", ap.to_json() + "\n")
        rows = mintime.convergence_report(
            theta0, theta1, args.eps, args.u0, [args.k * m for m in (1, 2, 4, 8, 16)]
        )
        if "csv" in fmts:
            _write(out / "convergence.csv", mintime.convergence_csv(rows))
    report = _simulate_and_verify(profile, p, theta0, expected, args, out, fmts)
    return 0 if report.passed else 2


def _run_lq(args) -> int:
    p = _load_params(args)
    fmts = _formats(args)
    out = _outdir(args)
    theta0, theta1, n, expected = _resolve_cycle(args, p)
    sol = lq_mod.synthesize_lq(theta0, theta1, args.eps, args.A, args.B)
    profile = concatenate([sol.profile] * n) if n > 1 else sol.profile
    doc = sol.to_dict()
    doc.update(cycles=n, expected_dx=expected, total_time=profile.t_final)
    if args.B == 0.0:
        same = sol.profile.segments == mintime.synthesize(theta0, theta1, args.eps).profile.segments
        doc.update(b_zero_equivalent_to_min_time=bool(same))
    if "json" in fmts:
        _write(out / "solution.json", json.dumps(doc, sort_keys=True) + "\n")
        _write(out / "profile.json", profile.to_json() + "\n")
    if args.k is not None:
        ap = lq_mod.approximate_lq(theta0, theta1, args.eps, args.A, args.B, args.u0, args.k)
        if "json" in fmts:
            _write(out / "approx_solution.json", ap.to_json() + "\n")
    report = _simulate_and_verify(profile, p, theta0, expected, args, out, fmts)
    return 0 if report.passed else 2


def _run_sweep(args) -> int:
    p = _load_params(args)
    fmts = _formats(args)
    out = _outdir(args)
    theta0 = _angle(args.theta0, args.degrees, _PAPER_THETA0)
    # honor the requested magnitude in whichever direction the fluid allows
    plan = planner.plan_cycles(args.dx, theta0, p, args.eps, max_cycles=args.n_max)
    dx_signed = plan.dx_total
    spec = CostSpec(args.A, args.B, 0.0) if (args.A or args.B) else CostSpec(0.0, 0.0, 1.0)
    rows = planner.sweep(dx_signed, theta0, p, args.eps, spec, args.n_max, on_unattainable="nan")
    finite = [r for r in rows if math.isfinite(r.J_n)]
    if not finite:
        raise UnattainableTargetError(args.dx, *planner.attainable_range(theta0, p))
    if "csv" in fmts:
        _write(out / "sweep.csv", planner.sweep_csv(rows))
    if "svg" in fmts:
        ns = [r.n for r in finite]
        _write(
            out / "sweep_time.svg",
            _svg_plot(ns, [r.total_time for r in finite], "n", "total time", "time to swim the distance vs cycle count"),
        )
        _write(
            out / "sweep_cost.svg",
            _svg_plot(ns, [r.J_n for r in finite], "n", "J_n", "total cost vs cycle count"),
        )
    best = min(finite, key=lambda r: r.J_n)
    j1 = rows[0].J_n
    if math.isfinite(j1):
        bound = j1 + 1.0
        print(f"min_n J^n = {best.J_n!r} at n={best.n}; bound J^1 + 1 = {bound!r}; min <= bound: {best.J_n <= bound}")
    else:
        print(f"min_n J^n = {best.J_n!r} at n={best.n}; n=1 infeasible for this displacement, bound J^1 + 1 vacuous")
    # verification: re-simulate the cheapest row's cycle and check its share
    sol = mintime.synthesize(theta0, best.theta1, args.eps)
    traj = simulate(sol.profile, p, 0.0, theta0, FluidRegime.IDEAL, h=args.h)
    share = dx_signed / best.n
    tol = args.verify_tol * max(1.0, abs(share))
    report = verify(traj, share, tol)
    print(report.summary())
    return 0 if report.passed else 2


def _run_simulate(args) -> int:
    p = _load_params(args)
    fmts = _formats(args)
    out = _outdir(args)
    theta0 = _angle(args.theta0, args.degrees, _PAPER_THETA0)
    profile = ControlProfile.from_json(Path(args.profile).read_text())
    traj = simulate(profile, p, args.x0, theta0, FluidRegime(args.w0), h=args.h)
    if "csv" in fmts:
        _write(out / "trajectory.csv", traj.to_csv())
        _write(out / "events.csv", traj.events_csv())
    if "svg" in fmts:
        _write(out / "trajectory_theta.svg", _svg_plot(traj.t, traj.theta, "t", "theta", "valve angle"))
        _write(out / "trajectory_x.svg", _svg_plot(traj.t, traj.x, "t", "x", "swimmer position"))
    if args.expected_dx is not None:
        tol = args.verify_tol * max(1.0, abs(args.expected_dx))
        report = verify(traj, args.expected_dx, tol)
        print(report.summary())
        return 0 if report.passed else 2
    print(
        f"displacement {traj.displacement!r} over t_final={traj.t_final!r} "
        f"with {len(traj.switch_events)} switches"
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the domain-error code
        return 0 if exc.code in (0, None) else 1
    handlers = {
        "min-time": _run_min_time,
        "lq": _run_lq,
        "sweep": _run_sweep,
        "simulate": _run_simulate,
    }
    try:
        return handlers[args.command](args)
    except (ScallopError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
