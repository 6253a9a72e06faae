#!/usr/bin/env python3
"""Simplex vs. lattice-oracle gap on random Model 1 / Model 2 instances.

    python scripts/oracle_experiment.py [--instances 200] [--step 0.005] [--seed 5]

Prints, per model, how many instances were solved and the distribution of
gap / (step * max|c| * n), which should stay in [0, 1].
"""

import argparse
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests"))
from instances import model_one, model_two  # noqa: E402

from icvar.crisp import build_model1, build_model2  # noqa: E402
from icvar.simplex import grid_oracle, is_feasible, solve  # noqa: E402


def run(make, build, maximize, count, step, rng, n, k):
    ratios, skipped, infeasible = [], 0, 0
    for _ in range(count):
        problem = build(make(rng, n=n, k=k))
        sol, ref = solve(problem), grid_oracle(problem, step)
        if not (sol.optimal and ref.optimal):
            skipped += 1
            continue
        infeasible += not is_feasible(problem, sol.weights, 1e-9)
        bound = step * float(np.max(np.abs(problem.objective))) * problem.n
        gap = sol.objective - ref.objective if maximize else ref.objective - sol.objective
        ratios.append(gap / bound if bound > 0 else 0.0)
    return np.array(ratios), skipped, infeasible


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--step", type=float, default=0.005)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--k", type=int, default=2)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    for name, make, build, maximize in (("model 1", model_one, build_model1, True),
                                        ("model 2", model_two, build_model2, False)):
        t0 = time.perf_counter()
        r, skipped, infeasible = run(make, build, maximize, args.instances, args.step, rng, args.n, args.k)
        print(f"{name}: {r.size} solved, {skipped} skipped, {infeasible} infeasible, {time.perf_counter() - t0:.1f}s")
        if r.size:
            q = np.quantile(r, [0, 0.5, 0.9, 1])
            print(f"  gap/bound min {q[0]:.3g}  median {q[1]:.3g}  p90 {q[2]:.3g}  max {q[3]:.3g}")


if __name__ == "__main__":
    main()
