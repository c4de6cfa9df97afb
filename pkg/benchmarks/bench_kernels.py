"""Benchmark: compiled quantile kernel versus the pure-Python twin.

Times the scalar hot paths (t and chi-square quantile inversions), the
batched per-replication t quantile used by the Monte Carlo harness, and one
end-to-end error-rate simulation under each backend. Run from the repo root:

    python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from reactest import _qkern_py as pure

try:
    from reactest import _qkern_c as compiled
except ImportError:
    compiled = None


def bench(label, fn, repeat=5):
    best = min(timeit_once(fn) for _ in range(repeat))
    print(f"  {label:34s} {best * 1e3:10.2f} ms")
    return best


def timeit_once(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def kernel_workloads(mod):
    rng = np.random.default_rng(0)
    ps = rng.uniform(0.001, 0.999, 2000)
    dfs = rng.uniform(1.0, 300.0, 2000)
    ks = rng.uniform(0.5, 60.0, 2000)
    batch_dfs = rng.uniform(2.0, 200.0, 100_000)
    out = np.empty_like(batch_dfs)
    return {
        "t_ppf x2000 (scalar)": lambda: [mod.t_ppf(p, d) for p, d in zip(ps, dfs)],
        "chi2_ppf x2000 (scalar)": lambda: [mod.chi2_ppf(p, k) for p, k in zip(ps, ks)],
        "t_ppf_fill x100k (batch)": lambda: mod.t_ppf_fill(0.975, batch_dfs, out),
    }


def simulation_timing(env_value):
    """One 10k-replication error-rate run in a subprocess pinned to a backend."""
    code = (
        "import time; from reactest import Scenario, simulate_error_rates; "
        "import reactest; "
        "t0=time.perf_counter(); "
        "simulate_error_rates(Scenario((0.5,0.0),(1.0,1.0),(30,30),0.5,0.05), 10000, 1); "
        "print(reactest.KERNEL_BACKEND, time.perf_counter()-t0)"
    )
    env = dict(os.environ)
    if env_value:
        env["REACTEST_PURE"] = "1"
    else:
        env.pop("REACTEST_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    if compiled is None:
        print("compiled kernel not built; showing pure backend only")
    backends = [("pure", pure)] + ([("compiled", compiled)] if compiled else [])
    results = {}
    for name, mod in backends:
        print(f"{name} backend:")
        results[name] = {
            label: bench(label, fn) for label, fn in kernel_workloads(mod).items()
        }
    if compiled is not None:
        print("speedups (pure / compiled):")
        for label in results["pure"]:
            ratio = results["pure"][label] / results["compiled"][label]
            print(f"  {label:34s} {ratio:8.1f}x")
        print("end-to-end 10k-rep error-rate simulation:")
        for force_pure in (False, True):
            backend, seconds = simulation_timing(force_pure)
            print(f"  {backend:10s} {seconds * 1e3:10.1f} ms")


if __name__ == "__main__":
    main()
