"""Compare the compiled term kernels with the pure-Python fallback.

Kernel timings call both modules directly on the same inputs.  Workload
timings run a realistic job in a subprocess, once per backend, because the
backend is chosen at import.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import os
import subprocess
import sys
import timeit

from keyvariety.algebra import _kernels_py
from keyvariety.extension import extended_equations, phi, theorem_solution

WORKLOADS = {
    "kernel check, symbolic": (
        "from keyvariety.extension import *\n"
        "d = theorem_solution(symbolic=True)\n"
        "assert all(verify_kernel(e, d) for e in extended_equations(d))"),
    "membership solve": (
        "from keyvariety.extension import *\n"
        "d = theorem_solution(2, 3)\n"
        "assert solve_membership(residual_in_M(residuals(d).K), d).found"),
    "uniqueness suite": (
        "from keyvariety.suites import run_suites\n"
        "assert run_suites(['uniqueness']).ok"),
}


def kernel_inputs():
    data = theorem_solution(symbolic=True)
    pm = phi(data)
    e1, _ = extended_equations(data)
    z1 = pm.image("z1")
    big = (z1 * z1).packed_terms()
    return {"mul (symbolic z1^2 by z1)": ("mul_terms", big, z1.packed_terms()),
            "mul (extended equation squared)": ("mul_terms", e1.packed_terms(), e1.packed_terms())}


def bench_kernels(repeat):
    try:
        from keyvariety.algebra import _kernels as compiled
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'kernel':36s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, (fn, a, b) in kernel_inputs().items():
        times = []
        for mod in (_kernels_py, compiled):
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(a, b), number=1, repeat=repeat)))
        print(f"{label:36s} {times[0]:10.4f} {times[1]:10.4f} {times[0] / times[1]:8.2f}")


def run_workload(code, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["KEYVARIETY_PURE_PYTHON"] = "1"
    else:
        env.pop("KEYVARIETY_PURE_PYTHON", None)
    timer = (f"import time, keyvariety\n"
             f"best = None\n"
             f"for _ in range({repeat}):\n"
             f"    t = time.perf_counter()\n"
             + "".join(f"    {line}\n" for line in code.splitlines()) +
             f"    e = time.perf_counter() - t\n"
             f"    best = e if best is None else min(best, e)\n"
             f"print(keyvariety.BACKEND, best)")
    out = subprocess.run([sys.executable, "-c", timer], env=env, capture_output=True,
                         text=True, check=True)
    backend, best = out.stdout.split()
    return backend, float(best)


def bench_workloads(repeat):
    print(f"\n{'workload':36s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, code in WORKLOADS.items():
        (b0, t0), (b1, t1) = run_workload(code, True, repeat), run_workload(code, False, repeat)
        note = "" if b1 == "cython" else "  (compiled backend unavailable)"
        print(f"{label:36s} {t0:10.4f} {t1:10.4f} {t0 / t1:8.2f}{note}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.repeat)
    bench_workloads(max(1, args.repeat // 2))


if __name__ == "__main__":
    main()
