"""Compiled kernel core vs pure-numpy fallback.

Run after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py

Reports per-call times for the kernel primitives over quadrature-node-sized
arrays and one end-to-end efficiency evaluation per backend.
"""
from __future__ import annotations

import math
import os
import subprocess
import sys
import time

import numpy as np

from levylab import _kernels_py as pk

try:
    from levylab import _fastkern as fk
except ImportError:
    fk = None


def per_call(fn, *args, repeat: int = 7, inner: int = 200) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_primitives() -> None:
    print(f"{'kernel':34s} {'n':>8s} {'numpy':>12s} {'compiled':>12s} {'speedup':>8s}")
    for n in (31, 1000, 100000):
        xi = np.geomspace(1e-6, 50.0, n)
        u = 6.28 * xi
        cases = [
            ("sigma", (u,)),
            ("theta", (u,)),
            ("interval_weight", (xi, 1.0, 4.0)),
            ("eff_integrand_interval", (xi, 6.28, 1.0, 1.0, 4.0)),
            ("dgs_integrand_interval", (xi, 6.28, 1.0, 1.0, 4.0, -1.7)),
        ]
        for name, args in cases:
            t_py = per_call(getattr(pk, name), *args)
            if fk is None:
                print(f"{name:34s} {n:8d} {t_py*1e6:10.2f}us {'-':>12s} {'-':>8s}")
                continue
            t_c = per_call(getattr(fk, name), *args)
            print(f"{name:34s} {n:8d} {t_py*1e6:10.2f}us {t_c*1e6:10.2f}us "
                  f"{t_py/t_c:7.2f}x")


def bench_end_to_end() -> None:
    code = (
        "import time; from levylab import kernels, functionals as F, spectra as sp;"
        "from levylab.functionals import EfficiencyQuery as EQ;"
        "prey = sp.uniform_prey(sp.interval(-1,1));"
        "F.eval_efficiency(EQ(prey, 0.5, 1.0));"  # warm up
        "t0=time.perf_counter();"
        "[F.eval_efficiency(EQ(prey, s, 1.0)) for s in"
        " [0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9]*4];"
        "print(kernels.BACKEND, (time.perf_counter()-t0)/36)"
    )
    for env_extra in ({}, {"LEVYLAB_PURE_PYTHON": "1"}):
        env = dict(os.environ, **env_extra)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True).stdout.strip()
        backend, t = out.split()
        print(f"end-to-end eval_efficiency [{backend:8s}]: {float(t)*1e3:8.3f} ms/call")


if __name__ == "__main__":
    bench_primitives()
    print()
    bench_end_to_end()
