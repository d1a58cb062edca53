"""Trade switching count against stroke amplitude for a fixed travel target.

Splitting a displacement target over n cycles shrinks the per-cycle
stroke but pays a unit penalty per extra switching. The sweep shows the
combined cost is minimized at the smallest feasible n, while total
travel time keeps growing with n.
"""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from scallop import SwimmerParams
from scallop.planner import plan_cycles, sweep
from scallop.profiles import CostSpec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dx", type=float, default=10.0)
    ap.add_argument("--theta0", type=float, default=math.pi / 6)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--out", default="demos/out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    p = SwimmerParams.default()
    plan = plan_cycles(args.dx, args.theta0, p, args.eps)
    dx_total = plan.dx_total
    print(f"requested |dx| = {abs(args.dx)}, realizable target dx = {dx_total}")

    spec = CostSpec(A=1.0, B=0.0)
    rows = sweep(dx_total, args.theta0, p, args.eps, spec, args.n_max, on_unattainable="nan")
    feasible = [r for r in rows if not math.isnan(r.J_n)]
    best = min(feasible, key=lambda r: r.J_n)
    print(f"{'n':>3} {'theta1':>10} {'total_time':>12} {'J_n':>10}")
    for r in rows[:8]:
        if math.isnan(r.J_n):
            print(f"{r.n:>3} {'-':>10} {'-':>12} {'-':>10}")
        else:
            print(f"{r.n:>3} {r.theta1:>10.6f} {r.total_time:>12.4f} {r.J_n:>10.6f}")
    print(f"minimum J_n = {best.J_n} at n = {best.n}")

    ns = [r.n for r in feasible]
    fig, (ax_j, ax_t) = plt.subplots(1, 2, figsize=(11, 4))
    ax_j.plot(ns, [r.J_n for r in feasible], "o-")
    ax_j.axvline(best.n, color="crimson", ls=":", lw=1)
    ax_j.set_xlabel("cycles n")
    ax_j.set_ylabel("J_n")
    ax_j.set_title("Energy plus switching penalty")
    ax_t.plot(ns, [r.total_time for r in feasible], "s-")
    ax_t.set_xlabel("cycles n")
    ax_t.set_ylabel("total time")
    ax_t.set_title("Total travel time grows with n")
    fig.tight_layout()
    fig.savefig(out / "switch_count_sweep.png", dpi=150)
    print(f"wrote {out}/switch_count_sweep.png")


if __name__ == "__main__":
    main()
