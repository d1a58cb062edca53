"""Approximate the bang-bang cycle with continuous piecewise-linear ramps.

The exact minimum-time control jumps at the relay threshold. A family of
continuous ramp controls indexed by a slope parameter k approaches it:
the extra final time, the L1 control distance, and the sup angle gap all
shrink like 1/k.
"""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from scallop.mintime import approximate, convergence_report, synthesize
from scallop.profiles import eval_u


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta0", type=float, default=math.pi / 3)
    ap.add_argument("--theta1", type=float, default=math.pi / 6)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--u0", type=float, default=0.0)
    ap.add_argument("--out", default="demos/out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    exact = synthesize(args.theta0, args.theta1, args.eps)
    ks = [10, 20, 40, 80, 160]
    rows = convergence_report(args.theta0, args.theta1, args.eps, args.u0, ks)
    print("k    t_f_gap      l1_gap       sup_theta_gap")
    for r in rows:
        print(f"{r.k:<4d} {r.t_f_gap:<12.6g} {r.l1_gap:<12.6g} {r.sup_theta_gap:<12.6g}")

    fig, (ax_u, ax_gap) = plt.subplots(1, 2, figsize=(11, 4))
    ts = np.linspace(0.0, exact.t_f, 2000)
    ax_u.plot(ts, eval_u(exact.profile, ts), "k-", lw=2, label="exact bang-bang")
    for k in (10, 40, 160):
        approx = approximate(args.theta0, args.theta1, args.eps, args.u0, k)
        ta = np.linspace(0.0, approx.profile.t_final, 2000)
        ax_u.plot(ta, eval_u(approx.profile, ta), lw=1, label=f"ramp k={k}")
    ax_u.set_xlabel("t")
    ax_u.set_ylabel("u(t)")
    ax_u.legend()
    ax_u.set_title("Continuous ramps closing on the bang-bang control")

    ax_gap.loglog([r.k for r in rows], [r.t_f_gap for r in rows], "o-", label="t_f gap")
    ax_gap.loglog([r.k for r in rows], [r.l1_gap for r in rows], "s-", label="L1 gap")
    ax_gap.loglog([r.k for r in rows], [r.sup_theta_gap for r in rows], "^-", label="sup theta gap")
    ax_gap.set_xlabel("k")
    ax_gap.legend()
    ax_gap.set_title("All gaps decay like 1/k")
    fig.tight_layout()
    fig.savefig(out / "continuous_approximation.png", dpi=150)
    print(f"wrote {out}/continuous_approximation.png")


if __name__ == "__main__":
    main()
