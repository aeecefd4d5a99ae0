"""Benchmark the compiled Gauss-Kronrod kernel core against the pure-Python
fallback.

Two measurements:

1. kernel-level: the adaptive integrals behind density normalization,
   moments, and CDF evaluation, timed through both backends in-process,
   with agreement asserted to 1e-12;
2. end-to-end: a full 81-point constant-force curve sweep through the CLI in
   a subprocess, with and without MFBS_PURE_PYTHON=1 (includes interpreter
   startup, reported separately).

Run:  python benchmarks/bench_backends.py
"""

import os
import subprocess
import sys
import tempfile
import time

import numpy as np

from mfbs._gk import GK15
from mfbs._kernels import BRACKET_GAUSS, GAUSS, GAUSS_SCALED, GAUSS_SHIFT, WELL, fallback

try:
    from mfbs._kernels import _gkcore
except ImportError:
    _gkcore = None

if _gkcore is not None:
    _gkcore.set_rule(
        np.ascontiguousarray(GK15.nodes),
        np.ascontiguousarray(GK15.weights_kronrod),
        np.ascontiguousarray(GK15.weights_gauss_embedded),
    )

BATTERY = [
    ("baseline normalization", GAUSS, (), 0, -12.0, 12.0),
    ("baseline cdf tail", GAUSS, (), 0, 0.525, 12.0),
    ("shifted gaussian moment", GAUSS_SHIFT, (3.0,), 2, -15.0, 9.0),
    ("scaled gaussian moment", GAUSS_SCALED, (2.0,), 2, -9.0, 9.0),
    ("cubic bracket normalization", BRACKET_GAUSS, (1.0, -0.1, 0.0, -1.0 / 60.0), 0, -12.0, 12.0),
    ("quartic bracket moment", BRACKET_GAUSS, (1.0, 0.0, -0.075, 0.0, -0.0125), 2, -12.0, 12.0),
    ("well cdf", WELL, (1.0,), 0, -1.0, 0.4),
]

TOLS = (1e-10, 1e-9, 60)


def run_compiled_once() -> list[float]:
    out = []
    for _, code, params, power, lo, hi in BATTERY:
        value, err, status, bad = _gkcore.integrate_kernel(
            code, np.ascontiguousarray(params, dtype=float), power, lo, hi, *TOLS
        )
        assert status == 0
        out.append(value)
    return out


def run_fallback_once() -> list[float]:
    return [
        fallback.integrate_kernel(code, params, power, lo, hi, *TOLS)
        for _, code, params, power, lo, hi in BATTERY
    ]


def time_loop(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(5):
        start = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - start) / repeats)
    return best


def bench_kernels() -> None:
    if _gkcore is None:
        print("compiled backend unavailable; kernel-level comparison skipped")
        return
    compiled_values = run_compiled_once()
    fallback_values = run_fallback_once()
    worst = max(abs(a - b) for a, b in zip(compiled_values, fallback_values))
    assert worst <= 1e-12, f"backend disagreement {worst:.3e}"
    print(f"backend agreement: max |compiled - python| = {worst:.2e} over {len(BATTERY)} integrals")

    t_compiled = time_loop(run_compiled_once, 50)
    t_fallback = time_loop(run_fallback_once, 5)
    per_c = 1e6 * t_compiled / len(BATTERY)
    per_f = 1e6 * t_fallback / len(BATTERY)
    print(f"{'integral battery':<32} {'compiled':>12} {'python':>12} {'speedup':>9}")
    print(f"{'per adaptive integral':<32} {per_c:>10.1f}us {per_f:>10.1f}us {per_f / per_c:>8.1f}x")


def _timed_curve(steps: int, force_pure: str) -> tuple[float, str]:
    env = dict(os.environ)
    env["MFBS_PURE_PYTHON"] = force_pure
    with tempfile.NamedTemporaryFile(suffix=".csv", delete=False) as tmp:
        path = tmp.name
    argv = [
        sys.executable, "-m", "mfbs.cli", "curve", "--model", "constant", "--k", "0",
        "--param-min", "0", "--param-max", "4", "--steps", str(steps), "--out", path,
    ]
    start = time.perf_counter()
    subprocess.run(argv, env=env, check=True)
    elapsed = time.perf_counter() - start
    with open(path) as fh:
        content = fh.read()
    os.unlink(path)
    return elapsed, content


def bench_end_to_end(steps: int = 1601) -> None:
    # subtract a 2-point run to remove interpreter/import startup
    timings = {}
    outputs = {}
    for label, force_pure in (("compiled", ""), ("python", "1")):
        startup, _ = _timed_curve(2, force_pure)
        full, content = _timed_curve(steps, force_pure)
        timings[label] = max(full - startup, 1e-9)
        outputs[label] = content
    a = np.array([[float(v) for v in line.split(",")] for line in outputs["compiled"].splitlines()[1:]])
    b = np.array([[float(v) for v in line.split(",")] for line in outputs["python"].splitlines()[1:]])
    print(f"curve agreement: max |compiled - python| = {np.max(np.abs(a - b)):.2e}")
    label = f"{steps}-point curve via CLI"
    print(
        f"{label:<32} {timings['compiled']:>10.2f}s  {timings['python']:>10.2f}s "
        f"{timings['python'] / timings['compiled']:>8.1f}x   (startup-corrected)"
    )


if __name__ == "__main__":
    bench_kernels()
    bench_end_to_end()
