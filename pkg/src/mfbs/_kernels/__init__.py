"""Backend selection for the tagged-kernel integration hot path.

The compiled Cython extension is preferred; a NumPy implementation layered
on the generic adaptive engine is the fallback.  Setting the environment
variable ``MFBS_PURE_PYTHON=1`` forces the fallback (used by the benchmark
to compare both).  Both backends implement the same G7/K15 panel rule and
worst-panel refinement and agree to ~1e-14.
"""

from __future__ import annotations

import os

import numpy as np

from .._gk import GK15

GAUSS = 0
GAUSS_SHIFT = 1
GAUSS_SCALED = 2
BRACKET_GAUSS = 3
WELL = 4

_FORCE_PURE = os.environ.get("MFBS_PURE_PYTHON", "") not in ("", "0")

_compiled = None
if not _FORCE_PURE:
    try:
        from . import _gkcore as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

if _compiled is not None:
    _compiled.set_rule(
        np.ascontiguousarray(GK15.nodes),
        np.ascontiguousarray(GK15.weights_kronrod),
        np.ascontiguousarray(GK15.weights_gauss_embedded),
    )


def backend_name() -> str:
    return "compiled" if _compiled is not None else "python"


def kernel_values(code: int, params, x):
    """Evaluate the unnormalized kernel at ``x`` (scalar or ndarray)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if _compiled is not None:
        out = _compiled.kernel_values(
            code, np.ascontiguousarray(params, dtype=float), np.ascontiguousarray(xs)
        )
    else:
        from .fallback import kernel_callable

        out = kernel_callable(code, tuple(params), 0)(xs)
    return out if np.ndim(x) else float(out[0])


def integrate_kernel(
    code: int,
    params,
    power: int,
    lo: float,
    hi: float,
    abs_tol: float,
    rel_tol: float,
    max_subdivisions: int,
) -> float:
    """Adaptive integral of x**power * kernel over [lo, hi]."""
    if _compiled is not None:
        from ..quadrature import QuadratureError

        value, err, status, bad = _compiled.integrate_kernel(
            code,
            np.ascontiguousarray(params, dtype=float),
            power,
            lo,
            hi,
            abs_tol,
            rel_tol,
            max_subdivisions,
        )
        if status == 0:
            return value
        if status == 2:
            raise QuadratureError(
                f"integrand returned a non-finite value at x = {bad!r}", abscissa=bad
            )
        raise QuadratureError(
            f"no convergence after {max_subdivisions} subdivisions: "
            f"estimate {value!r} with error bound {err!r}",
            best_estimate=value,
            error_bound=err,
        )
    from .fallback import integrate_kernel as _fallback_integrate

    return _fallback_integrate(code, params, power, lo, hi, abs_tol, rel_tol, max_subdivisions)
