"""Normalized return densities for each market-force family.

Each family deforms the baseline standard-normal return density through the
ground state of a force-perturbed oscillator:

* ``Baseline``          -- no force; standard normal.
* ``ConstantForce``     -- constant force of strength k; the density is the
                           baseline translated to -x_k with x_k = 2k.
* ``LinearForce``       -- restoring force -2*lambda*x; Gaussian with
                           variance 1/sqrt(1 + lambda) (lambda in units of
                           the oscillator frequency).
* ``CubicPotential``    -- potential term beta*x^3, first-order corrected
                           ground state (beta in level-spacing units).
* ``QuarticPotential``  -- potential term gamma*x^4, likewise.
* ``QuantumWell``       -- hard walls at +-a; density (1/a) sin^2(pi(x+a)/2a).
* ``PolynomialPerturbation`` -- arbitrary polynomial force via the same
                           first-order machinery as the named families.

Printed closed-form prefactors are never trusted: every density is
renormalized numerically, and moments (hence sigma_qm) come from quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import _kernels, perturbation
from .perturbation import HBAR_OMEGA, GuardError
from .quadrature import Interval, QuadratureConfig, TaggedKernel, integrate_tagged

__all__ = [
    "Baseline",
    "ConstantForce",
    "LinearForce",
    "CubicPotential",
    "QuarticPotential",
    "QuantumWell",
    "PolynomialPerturbation",
    "ForceModel",
    "Density",
    "GuardError",
    "BETA_GUARD",
    "GAMMA_GUARD",
    "build_density",
    "density_at",
    "cdf",
    "moments",
    "bracket_expansion",
]

BETA_GUARD = 0.3
GAMMA_GUARD = 0.2


@dataclass(frozen=True)
class Baseline:
    pass


@dataclass(frozen=True)
class ConstantForce:
    k: float  # force strength in level-spacing units; density shift x_k = 2k

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k >= 0):
            raise ValueError(f"ConstantForce requires k >= 0, got {self.k}")

    @property
    def x_k(self) -> float:
        return 2.0 * self.k


@dataclass(frozen=True)
class LinearForce:
    lam: float  # in units of the oscillator frequency

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise ValueError(f"LinearForce requires lambda >= 0, got {self.lam}")

    @property
    def lambda_omega(self) -> float:
        return math.sqrt(1.0 + self.lam)


@dataclass(frozen=True)
class CubicPotential:
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ValueError(f"CubicPotential requires finite beta, got {self.beta}")


@dataclass(frozen=True)
class QuarticPotential:
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"QuarticPotential requires finite gamma, got {self.gamma}")


@dataclass(frozen=True)
class QuantumWell:
    a: float  # half-width of the hard-wall band

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"QuantumWell requires a > 0, got {self.a}")


@dataclass(frozen=True)
class PolynomialPerturbation:
    coeffs: tuple[tuple[int, float], ...]  # (power, coupling) pairs

    def __post_init__(self):
        norm = tuple((int(p), float(c)) for p, c in self.coeffs)
        for p, c in norm:
            if not 1 <= p <= perturbation.MAX_POWER:
                raise ValueError(
                    f"polynomial powers must be integers in [1, {perturbation.MAX_POWER}], got {p}"
                )
            if not math.isfinite(c):
                raise ValueError(f"polynomial coupling for power {p} is not finite")
        object.__setattr__(self, "coeffs", norm)


ForceModel = Union[
    Baseline,
    ConstantForce,
    LinearForce,
    CubicPotential,
    QuarticPotential,
    QuantumWell,
    PolynomialPerturbation,
]


@dataclass(frozen=True)
class Density:
    """Immutable normalized density: evaluation kernel plus cached moments.

    ``norm`` is the numeric constant making ``norm * kernel`` integrate to 1;
    ``c`` reports it in the wavefunction convention (pdf = C^2 * kernel /
    sqrt(2*pi)), so the baseline has C = 1 exactly.
    """

    model: ForceModel
    support: Interval
    window: tuple[float, float]  # finite window carrying all mass to ~1e-15
    kernel: TaggedKernel
    norm: float
    c: float
    mean: float
    variance: float
    sigma_qm: float
    cfg: QuadratureConfig

    def pdf(self, x):
        vals = self.norm * _kernels.kernel_values(self.kernel.code, self.kernel.params, x)
        if isinstance(self.model, QuantumWell):
            a = self.model.a
            xs = np.asarray(x, dtype=float)
            inside = (np.abs(xs) < a).astype(float)
            vals = vals * inside if np.ndim(x) else vals * float(inside)
        return vals

    def cdf(self, t: float) -> float:
        lo, hi = self.window
        if t <= self.support.lo or t <= lo:
            return 0.0
        if t >= self.support.hi or t >= hi:
            return 1.0
        # integrate the short side so saturated values stay accurate to ~1e-16
        if t <= self.mean:
            val = self.norm * integrate_tagged(self.kernel, Interval(lo, t), self._quad_cfg())
        else:
            val = 1.0 - self.norm * integrate_tagged(self.kernel, Interval(t, hi), self._quad_cfg())
        return min(1.0, max(0.0, val))

    def sf(self, t: float) -> float:
        """Survival function 1 - cdf(t), at full relative precision in the
        upper tail (where cdf values quantize against 1.0)."""
        lo, hi = self.window
        if t <= self.support.lo or t <= lo:
            return 1.0
        if t >= self.support.hi or t >= hi:
            return 0.0
        if t >= self.mean:
            val = self.norm * integrate_tagged(self.kernel, Interval(t, hi), self._quad_cfg())
        else:
            val = 1.0 - self.norm * integrate_tagged(self.kernel, Interval(lo, t), self._quad_cfg())
        return min(1.0, max(0.0, val))

    def moments(self) -> tuple[float, float, float]:
        return self.mean, self.variance, self.sigma_qm

    def _quad_cfg(self) -> QuadratureConfig:
        lo, hi = self.window
        cutoff = max(self.cfg.tail_cutoff, abs(lo), abs(hi))
        return QuadratureConfig(
            abs_tol=self.cfg.abs_tol,
            rel_tol=self.cfg.rel_tol,
            tail_cutoff=cutoff,
            max_subdivisions=self.cfg.max_subdivisions,
        )


def bracket_expansion(model: ForceModel) -> perturbation.PerturbationExpansion:
    """Corrected ground-state expansion backing a perturbative family.

    The dimensionless family coupling multiplies x^p in units of the level
    spacing, so the raw Hamiltonian coefficient is coupling * hbar_omega.
    """
    if isinstance(model, CubicPotential):
        raw = [(3, model.beta * HBAR_OMEGA)]
    elif isinstance(model, QuarticPotential):
        raw = [(4, model.gamma * HBAR_OMEGA)]
    elif isinstance(model, PolynomialPerturbation):
        raw = [(p, c * HBAR_OMEGA) for p, c in model.coeffs]
    else:
        raise TypeError(f"model {model!r} has no perturbative bracket")
    return perturbation.corrected_ground_state(raw)


def _check_guards(model: ForceModel) -> None:
    if isinstance(model, CubicPotential) and abs(model.beta) > BETA_GUARD:
        raise GuardError(
            f"cubic coupling |beta| = {abs(model.beta)} exceeds the guard {BETA_GUARD}"
        )
    if isinstance(model, QuarticPotential) and abs(model.gamma) > GAMMA_GUARD:
        raise GuardError(
            f"quartic coupling |gamma| = {abs(model.gamma)} exceeds the guard {GAMMA_GUARD}"
        )


@lru_cache(maxsize=256)
def _build_cached(model: ForceModel, cfg: QuadratureConfig) -> Density:
    tc = cfg.tail_cutoff
    support = Interval(-math.inf, math.inf)
    if isinstance(model, Baseline):
        kernel = TaggedKernel(_kernels.GAUSS, ())
        window = (-tc, tc)
    elif isinstance(model, ConstantForce):
        kernel = TaggedKernel(_kernels.GAUSS_SHIFT, (model.x_k,))
        window = (-model.x_k - tc, -model.x_k + tc)
    elif isinstance(model, LinearForce):
        lw = model.lambda_omega
        kernel = TaggedKernel(_kernels.GAUSS_SCALED, (lw,))
        half = tc / math.sqrt(lw)
        window = (-half, half)
    elif isinstance(model, (CubicPotential, QuarticPotential, PolynomialPerturbation)):
        _check_guards(model)
        coeffs = bracket_expansion(model).bracket_coefficients()
        kernel = TaggedKernel(_kernels.BRACKET_GAUSS, coeffs)
        window = (-tc, tc)
    elif isinstance(model, QuantumWell):
        kernel = TaggedKernel(_kernels.WELL, (model.a,))
        support = Interval(-model.a, model.a)
        window = (-model.a, model.a)
    else:
        raise TypeError(f"unknown force model {model!r}")

    quad_cfg = QuadratureConfig(
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        tail_cutoff=max(tc, abs(window[0]), abs(window[1])),
        max_subdivisions=cfg.max_subdivisions,
    )
    iv = Interval(window[0], window[1])
    z = integrate_tagged(kernel, iv, quad_cfg)
    if not (math.isfinite(z) and z > 0):
        raise GuardError(f"kernel for {model!r} is not normalizable (integral {z!r})")
    m1 = integrate_tagged(TaggedKernel(kernel.code, kernel.params, 1), iv, quad_cfg) / z
    m2 = integrate_tagged(TaggedKernel(kernel.code, kernel.params, 2), iv, quad_cfg) / z
    variance = m2 - m1 * m1
    if not variance > 0:
        raise GuardError(f"density for {model!r} has non-positive variance {variance!r}")

    norm = 1.0 / z
    return Density(
        model=model,
        support=support,
        window=window,
        kernel=kernel,
        norm=norm,
        c=math.sqrt(norm * math.sqrt(2.0 * math.pi)),
        mean=m1,
        variance=variance,
        sigma_qm=math.sqrt(variance),
        cfg=cfg,
    )


def build_density(model: ForceModel, cfg: QuadratureConfig = QuadratureConfig()) -> Density:
    """Construct the normalized density for ``model``.

    Normalization, mean, and variance are recomputed numerically; printed
    closed-form prefactors are never trusted.  Raises :class:`GuardError` for
    couplings beyond the perturbative trust region or non-normalizable
    kernels.
    """
    return _build_cached(model, cfg)


def density_at(d: Density, x):
    """Normalized density value(s) at ``x``; exactly 0 outside the support."""
    return d.pdf(x)


def cdf(d: Density, t: float) -> float:
    """P(X <= t) for the model density; clamps to 0/1 outside the support."""
    return d.cdf(t)


def moments(d: Density) -> tuple[float, float, float]:
    """(mean, variance, sigma_qm), all computed by quadrature at build time."""
    return d.moments()
