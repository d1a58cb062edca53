"""Synthesize the energy-optimal stroke under a quadratic running cost.

With cost A u^2 + B theta^2 the optimal cycle saturates at the control
bound while the angle is large and then relaxes along an exponential
arc. The demo prints the closed-form times and cost and checks the
stationarity identity u = -theta / rho on the exponential tail.
"""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from scallop.lq import synthesize_lq
from scallop.profiles import ThetaPath, eval_u


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta0", type=float, default=0.05)
    ap.add_argument("--theta1", type=float, default=0.5)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--A", type=float, default=1.0)
    ap.add_argument("--B", type=float, default=1.0)
    ap.add_argument("--out", default="demos/out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    sol = synthesize_lq(args.theta0, args.theta1, args.eps, args.A, args.B)
    print(f"case {sol.case_label}")
    print(f"declared times: t1={sol.t1}, t2={sol.t2}, t_f={sol.t_f}")
    print(f"realized times: t2={sol.t2_realized}, t_f={sol.t_f_realized}")
    print(f"cost = {sol.cost}")

    prof = sol.profile
    path = ThetaPath(prof, args.theta0)
    ts = np.linspace(0.0, prof.t_final, 4000)
    us = eval_u(prof, ts)
    thetas = path.eval(ts)

    # On the exponential arc u = -p/(2A) with p = 2 sqrt(A B) theta,
    # hence u = -theta / rho with rho = sqrt(A / B).
    rho = math.sqrt(args.A / args.B)
    tail_start = prof.segments[-1].t0
    tail = ts > tail_start + 1e-9
    resid = np.max(np.abs(us[tail] + thetas[tail] / rho)) if tail.any() else 0.0
    print(f"stationarity residual on tail: {resid:.3e}")

    fig, (ax_u, ax_th) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax_u.plot(ts, us)
    ax_u.axhline(-args.eps, color="gray", ls="--", lw=1)
    ax_u.set_ylabel("u(t)")
    ax_u.set_title("Saturated legs then exponential relaxation")
    ax_th.plot(ts, thetas)
    ax_th.set_ylabel("theta(t)")
    ax_th.set_xlabel("t")
    for ax in (ax_u, ax_th):
        ax.axvline(tail_start, color="crimson", ls=":", lw=1)
    fig.tight_layout()
    fig.savefig(out / "quadratic_cost_synthesis.png", dpi=150)
    print(f"wrote {out}/quadratic_cost_synthesis.png")


if __name__ == "__main__":
    main()
