"""Compiled and pure-Python kernel backends must agree."""

import math
import os

import numpy as np
import pytest

from mfbs import _kernels
from mfbs._kernels import BRACKET_GAUSS, GAUSS, GAUSS_SCALED, GAUSS_SHIFT, WELL, fallback
from mfbs.quadrature import QuadratureError

CASES = [
    (GAUSS, (), 0, -12.0, 12.0),
    (GAUSS, (), 2, -12.0, 12.0),
    (GAUSS_SHIFT, (3.0,), 0, -15.0, 9.0),
    (GAUSS_SHIFT, (3.0,), 1, -15.0, 9.0),
    (GAUSS_SCALED, (2.0,), 0, -9.0, 9.0),
    (GAUSS_SCALED, (2.0,), 2, -9.0, 9.0),
    (BRACKET_GAUSS, (1.0, -0.1, 0.0, -0.0166), 0, -12.0, 12.0),
    (BRACKET_GAUSS, (1.0, 0.0, -0.075, 0.0, -0.0125), 2, -12.0, 12.0),
    (WELL, (1.0,), 0, -1.0, 1.0),
    (WELL, (0.3,), 2, -0.3, 0.3),
    (GAUSS, (), 0, -12.0, 0.525),
    (GAUSS_SHIFT, (8.0,), 0, 0.275, 4.0),
]


def _force_compiled_present():
    if _kernels.backend_name() != "compiled":
        pytest.skip("compiled backend not available in this environment")


def test_backend_is_compiled_by_default():
    if os.environ.get("MFBS_PURE_PYTHON", "") not in ("", "0"):
        pytest.skip("pure-python backend forced via environment")
    assert _kernels.backend_name() == "compiled"


@pytest.mark.parametrize("code,params,power,lo,hi", CASES)
def test_integrals_agree_between_backends(code, params, power, lo, hi):
    _force_compiled_present()
    compiled = _kernels.integrate_kernel(code, params, power, lo, hi, 1e-10, 1e-9, 60)
    pure = fallback.integrate_kernel(code, params, power, lo, hi, 1e-10, 1e-9, 60)
    assert compiled == pytest.approx(pure, abs=1e-12, rel=1e-12)


@pytest.mark.parametrize("code,params", [(c, p) for c, p, _, _, _ in CASES[::2]])
def test_kernel_values_agree(code, params):
    _force_compiled_present()
    xs = np.linspace(-3.0, 3.0, 101)
    compiled = _kernels.kernel_values(code, params, xs)
    pure = fallback.kernel_callable(code, tuple(params), 0)(xs)
    assert np.max(np.abs(compiled - pure)) <= 1e-15


def test_scalar_kernel_values():
    value = _kernels.kernel_values(GAUSS, (), 0.0)
    assert value == pytest.approx(1.0, abs=0)


def test_compiled_determinism():
    _force_compiled_present()
    args = (BRACKET_GAUSS, (1.0, -0.1, 0.0, -0.0166), 0, -12.0, 12.0, 1e-10, 1e-9, 60)
    assert _kernels.integrate_kernel(*args) == _kernels.integrate_kernel(*args)


def test_non_convergence_raises_same_error_type():
    for integrate in (_kernels.integrate_kernel, fallback.integrate_kernel):
        with pytest.raises(QuadratureError) as exc_info:
            integrate(GAUSS, (), 0, -12.0, 12.0, 1e-300, 1e-300, 10)
        err = exc_info.value
        assert err.best_estimate == pytest.approx(math.sqrt(2 * math.pi), rel=1e-6)
        assert err.error_bound is not None and err.error_bound > 0
