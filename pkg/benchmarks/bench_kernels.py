"""Compare the pure-NumPy and compiled step kernels on the built-in models.

Times one full right-hand-side kernel evaluation (driving forces, fluxes,
and rate assembly) per call, which is the inner loop of every integrator
step.  Run as::

    python benchmarks/bench_kernels.py [--repeats 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bciphs import _kernels_py
from bciphs.brackets import co_energy, eval_gammas
from bciphs.models import MODEL_BUILDERS
from bciphs.structure import Grid, sample_states

try:
    from bciphs import _kernels_cy
except ImportError:
    _kernels_cy = None


def _prepare(model, N):
    grid = Grid(0.0, 1.0, N)
    state = sample_states(model.tc, grid, np.random.default_rng(0))
    ce = co_energy(state, model.tc)
    gam0, gam1, gams = eval_gammas(state, model.tc, ce)
    sm = model.sm
    return (ce.dHdx, ce.dHds, gam0, gam1, gams, sm.P0, sm.P1, sm.G0, sm.G1, sm.gs, grid.dz, 1.0)


def _time_backend(kernels, args, repeats):
    def once():
        b0, R0, d1, b1, R1, bs, rs, Fx, w = kernels.forces_and_fluxes(*args)
        kernels.assemble_rates(
            args[0], args[1], R0, b0, R1, d1, rs, bs, Fx, w, args[5], args[7], args[9], args[10]
        )

    for _ in range(max(10, repeats // 20)):
        once()
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            once()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=2000, help="kernel calls per timing pass")
    parser.add_argument("--sizes", type=int, nargs="+", default=[101, 401], help="grid sizes")
    opts = parser.parse_args()

    if _kernels_cy is None:
        print("compiled kernels not built; showing the NumPy backend only")

    header = f"{'model':<24}{'N':>6}{'numpy us':>12}{'compiled us':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, builder in MODEL_BUILDERS.items():
        model = builder()
        for N in opts.sizes:
            args = _prepare(model, N)
            t_py = _time_backend(_kernels_py, args, opts.repeats)
            if _kernels_cy is None:
                print(f"{name:<24}{N:>6}{t_py * 1e6:>12.2f}{'-':>14}{'-':>10}")
                continue
            t_cy = _time_backend(_kernels_cy, args, opts.repeats)
            print(f"{name:<24}{N:>6}{t_py * 1e6:>12.2f}{t_cy * 1e6:>14.2f}{t_py / t_cy:>10.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
