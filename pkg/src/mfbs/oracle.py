"""Independent finite-difference ground-state solver.

Discretizes H = -(1/2) d^2/dx^2 + V(x) with second-order central differences
and Dirichlet walls, then extracts the lowest eigenpair of the symmetric
tridiagonal system.  Serves as the brute-force check on every analytic or
perturbative density in the package: it shares no code with the quadrature
or perturbation paths.

Units follow the rest of the package (hbar = 1, m = 1, omega = 1/2), so the
harmonic baseline is V = x^2/8 with ground energy 1/4 and a standard-normal
ground-state density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .densities import (
    Baseline,
    ConstantForce,
    CubicPotential,
    Density,
    ForceModel,
    LinearForce,
    PolynomialPerturbation,
    QuantumWell,
    QuarticPotential,
)
from .perturbation import HBAR_OMEGA

__all__ = [
    "GridSpec",
    "PotentialSpec",
    "GroundState",
    "OracleError",
    "solve_ground_state",
    "compare_density",
    "oracle_potential",
]

RESIDUAL_TOL = 1e-10  # relative to the matrix scale
SIGN_AMPLITUDE_FLOOR = 1e-8  # relative amplitude below which signs are noise


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    half_width: float = 12.0
    points: int = 4001

    def __post_init__(self):
        if not self.half_width >= 8:
            raise ValueError(f"half_width must be >= 8, got {self.half_width}")
        if self.points < 801 or self.points % 2 == 0:
            raise ValueError(f"points must be odd and >= 801, got {self.points}")


@dataclass(frozen=True)
class PotentialSpec:
    """Harmonic baseline (x^2/8) or hard walls, plus a polynomial term.

    ``perturbation`` holds (power, coefficient) pairs with raw coefficients
    in the package energy units.
    """

    harmonic: bool = True
    wall_half_width: float | None = None
    perturbation: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        if self.harmonic and self.wall_half_width is not None:
            raise ValueError("harmonic baseline and hard walls are mutually exclusive")
        if not self.harmonic and self.wall_half_width is None:
            raise ValueError("need either the harmonic baseline or a wall half-width")
        if self.wall_half_width is not None and not self.wall_half_width > 0:
            raise ValueError(f"wall half-width must be > 0, got {self.wall_half_width}")
        object.__setattr__(
            self, "perturbation", tuple((int(p), float(c)) for p, c in self.perturbation)
        )

    def values(self, x: np.ndarray) -> np.ndarray:
        v = 0.125 * x * x if self.harmonic else np.zeros_like(x)
        for p, c in self.perturbation:
            v = v + c * x**p
        return v


@dataclass(frozen=True)
class GroundState:
    energy: float
    grid: np.ndarray
    density: np.ndarray  # trapezoid-normalized, zero on the Dirichlet walls


def _nodeless(vec: np.ndarray) -> bool:
    scale = np.max(np.abs(vec))
    sig = vec[np.abs(vec) > SIGN_AMPLITUDE_FLOOR * scale]
    return bool(np.all(sig > 0) or np.all(sig < 0))


def solve_ground_state(
    pot: PotentialSpec,
    grid: GridSpec = GridSpec(),
    selection: str = "lowest",
) -> GroundState:
    """Ground state of the discretized Hamiltonian.

    ``selection="lowest"`` returns the smallest eigenpair and errors if its
    eigenvector changes sign in the interior (a discretization failure).
    ``selection="overlap"`` instead returns, among the lowest eigenpairs, the
    one with maximal overlap with the unperturbed Gaussian ground state; this
    extracts the metastable oscillator-like state when an odd-power
    perturbation makes the potential unbounded below inside the box.
    """
    if selection not in ("lowest", "overlap"):
        raise ValueError(f"unknown selection policy {selection!r}")
    half = pot.wall_half_width if pot.wall_half_width is not None else grid.half_width
    xs = np.linspace(-half, half, grid.points)
    h = xs[1] - xs[0]
    xi = xs[1:-1]
    diag = 1.0 / h**2 + pot.values(xi)
    off = np.full(xi.size - 1, -0.5 / h**2)

    n_states = 1 if selection == "lowest" else min(16, xi.size - 1)
    try:
        w, v = eigh_tridiagonal(
            diag, off, select="i", select_range=(0, n_states - 1), check_finite=False
        )
    except Exception as exc:  # pragma: no cover - LAPACK failure surface
        raise OracleError(f"eigensolver did not converge: {exc}") from exc

    if selection == "lowest":
        idx = 0
    else:
        reference = np.exp(-0.25 * xi * xi)
        idx = int(np.argmax(np.abs(v.T @ reference)))
    energy = float(w[idx])
    vec = v[:, idx]

    # residual check: contract is the eigenpair tolerance, not the method
    hv = diag * vec
    hv[:-1] += off * vec[1:]
    hv[1:] += off * vec[:-1]
    scale = float(np.max(np.abs(diag)) + 2.0 * abs(off[0]))
    residual = float(np.linalg.norm(hv - energy * vec) / scale)
    if residual > RESIDUAL_TOL:
        raise OracleError(f"eigenpair residual {residual:.2e} exceeds {RESIDUAL_TOL}")

    if selection == "lowest" and not _nodeless(vec):
        raise OracleError(
            "ground-state eigenvector changes sign in the interior; "
            "discretization failure"
        )

    dens = np.zeros_like(xs)
    dens[1:-1] = vec**2
    dens /= np.trapezoid(dens, xs)
    return GroundState(energy=energy, grid=xs, density=dens)


def compare_density(gs: GroundState, d: Density) -> tuple[float, float]:
    """(L1, Linf) distance between the oracle density and a model density."""
    model_vals = np.asarray(d.pdf(gs.grid), dtype=float)
    diff = np.abs(gs.density - model_vals)
    return float(np.trapezoid(diff, gs.grid)), float(np.max(diff))


def oracle_potential(model: ForceModel) -> PotentialSpec:
    """PotentialSpec whose exact ground state corresponds to ``model``.

    Dimensionless family couplings multiply x^p in units of the level
    spacing, so raw Hamiltonian coefficients are coupling * hbar_omega.
    The linear-force map keeps the same convention but note that the family
    density itself is defined by its closed form, not by this potential.
    """
    hw = float(HBAR_OMEGA)
    if isinstance(model, Baseline):
        return PotentialSpec()
    if isinstance(model, ConstantForce):
        return PotentialSpec(perturbation=((1, model.k * hw),))
    if isinstance(model, LinearForce):
        return PotentialSpec(perturbation=((2, model.lam * hw),))
    if isinstance(model, CubicPotential):
        return PotentialSpec(perturbation=((3, model.beta * hw),))
    if isinstance(model, QuarticPotential):
        return PotentialSpec(perturbation=((4, model.gamma * hw),))
    if isinstance(model, PolynomialPerturbation):
        return PotentialSpec(perturbation=tuple((p, c * hw) for p, c in model.coeffs))
    if isinstance(model, QuantumWell):
        return PotentialSpec(harmonic=False, wall_half_width=model.a)
    raise TypeError(f"unknown force model {model!r}")
