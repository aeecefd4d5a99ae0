"""Pure NumPy kernel evaluation, routed through the generic adaptive engine."""

from __future__ import annotations

import numpy as np


def kernel_callable(code: int, params: tuple[float, ...], power: int):
    from . import BRACKET_GAUSS, GAUSS, GAUSS_SCALED, GAUSS_SHIFT, WELL

    if code == GAUSS:
        base = lambda x: np.exp(-0.5 * x * x)
    elif code == GAUSS_SHIFT:
        s = params[0]
        base = lambda x: np.exp(-0.5 * (x + s) ** 2)
    elif code == GAUSS_SCALED:
        lw = params[0]
        base = lambda x: np.exp(-0.5 * lw * x * x)
    elif code == BRACKET_GAUSS:
        desc = np.asarray(params, dtype=float)[::-1]  # np.polyval wants descending
        base = lambda x: np.polyval(desc, x) ** 2 * np.exp(-0.5 * x * x)
    elif code == WELL:
        a = params[0]
        base = lambda x: np.sin(np.pi * (x + a) / (2.0 * a)) ** 2
    else:
        raise ValueError(f"unknown kernel code {code}")
    if power == 0:
        return base
    return lambda x: x**power * base(x)


def integrate_kernel(code, params, power, lo, hi, abs_tol, rel_tol, max_subdivisions):
    from ..quadrature import Interval, QuadratureConfig, integrate

    f = kernel_callable(code, tuple(params), power)
    cutoff = max(12.0, abs(lo), abs(hi))  # keep truncation a no-op for finite bounds
    cfg = QuadratureConfig(
        abs_tol=abs_tol,
        rel_tol=rel_tol,
        tail_cutoff=cutoff,
        max_subdivisions=max_subdivisions,
    )
    return integrate(f, Interval(lo, hi), cfg)
