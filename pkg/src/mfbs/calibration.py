"""Implied market-force parameter: inverts the pricing map on a bracket.

Analogous to implied volatility: given an observed price, recover the
coupling that reproduces it.  Bracketing (Brent) root finding is used since
the forward price is smooth, cheap, and derivative-free robustness beats
Newton here.  Non-monotone families (the quartic) require the caller to
supply a bracket inside one monotone branch; otherwise either the
no-sign-change error or a root on either branch is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .densities import ForceModel
from .pricing import OptionSpec, price
from .quadrature import QuadratureConfig

__all__ = ["CalibrationRequest", "CalibrationError", "implied_param"]


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CalibrationRequest:
    family: Callable[[float], ForceModel]
    spec: OptionSpec
    target_price: float
    bracket: tuple[float, float]
    tol: float = 1e-8

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo < hi:
            raise ValueError(f"bracket requires lo < hi, got {self.bracket}")
        if not (math.isfinite(self.target_price) and self.target_price > 0):
            raise ValueError(f"target price must be finite and > 0, got {self.target_price}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


def implied_param(req: CalibrationRequest, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Coupling whose model price matches the target within the residual tol.

    Requires the bracket endpoints to straddle the target price; raises
    :class:`CalibrationError` reporting both endpoint prices otherwise.
    """
    lo, hi = req.bracket

    def residual(c: float) -> float:
        return price(req.family(c), req.spec, cfg).price - req.target_price

    bound = req.tol * max(1.0, req.target_price)
    r_lo = residual(lo)
    r_hi = residual(hi)
    # an endpoint already satisfying the residual contract is a solution;
    # this covers targets generated at a bracket boundary up to float noise
    if abs(r_lo) <= bound and abs(r_lo) <= abs(r_hi):
        return lo
    if abs(r_hi) <= bound:
        return hi
    if r_lo * r_hi > 0:
        raise CalibrationError(
            f"target {req.target_price} not bracketed: price({lo}) = "
            f"{r_lo + req.target_price}, price({hi}) = {r_hi + req.target_price}"
        )

    root = float(brentq(residual, lo, hi, xtol=1e-13, rtol=8.9e-16, maxiter=200))
    achieved = abs(residual(root))
    if achieved > bound:
        raise CalibrationError(
            f"residual {achieved:.3e} exceeds tolerance {bound:.3e} at coupling {root!r}"
        )
    return root
