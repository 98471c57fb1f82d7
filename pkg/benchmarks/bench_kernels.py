#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy reference.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from phasekit._kernels import HAVE_COMPILED, _ref

if HAVE_COMPILED:
    from phasekit._kernels import _fast


def timeit(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_relax(mod, repeat):
    rng = np.random.default_rng(0)
    ta = rng.uniform(-math.pi, math.pi, size=67)
    tb = rng.uniform(-math.pi, math.pi, size=67)

    def run():
        for g in (0.2, 0.5, 0.8):
            for j in (-0.5, 0.0, 0.5):
                mod.mf_relax_batch(1.0, 1.0, g, j, ta, tb)

    return timeit(run, repeat)


def bench_xapply(mod, repeat, n_sites=16):
    xap = mod.make_chain_xapply(n_sites)
    rng = np.random.default_rng(1)
    v = rng.standard_normal(1 << n_sites)

    def run():
        for _ in range(20):
            xap(v)

    return timeit(run, repeat)


def bench_quad(mod, repeat):
    def run():
        for gam in np.linspace(0.05, 1.0, 40):
            mod.ff_energy_quad(0.5, float(gam))

    return timeit(run, repeat)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rows = [("mf_relax_batch (9 param sets x 67 starts)", bench_relax),
            ("chain_xapply (20 matvecs, N=16)", bench_xapply),
            ("ff_energy_quad (40 integrals)", bench_quad)]

    print(f"compiled extension available: {HAVE_COMPILED}")
    header = f"{'kernel':<45}{'numpy ref':>12}"
    if HAVE_COMPILED:
        header += f"{'compiled':>12}{'speedup':>9}"
    print(header)
    for name, bench in rows:
        t_ref = bench(_ref, args.repeat)
        line = f"{name:<45}{t_ref * 1e3:>10.1f}ms"
        if HAVE_COMPILED:
            t_fast = bench(_fast, args.repeat)
            line += f"{t_fast * 1e3:>10.1f}ms{t_ref / t_fast:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
