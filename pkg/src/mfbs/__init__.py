"""Option pricing under market-force deformations of the Black-Scholes
return density, with an independent finite-difference oracle validating
every approximate density."""

from ._kernels import backend_name
from .calibration import CalibrationError, CalibrationRequest, implied_param
from .densities import (
    Baseline,
    ConstantForce,
    CubicPotential,
    Density,
    ForceModel,
    GuardError,
    LinearForce,
    PolynomialPerturbation,
    QuantumWell,
    QuarticPotential,
    build_density,
    cdf,
    density_at,
    moments,
)
from .oracle import (
    GridSpec,
    GroundState,
    OracleError,
    PotentialSpec,
    compare_density,
    oracle_potential,
    solve_ground_state,
)
from .perturbation import (
    OscillatorBasis,
    PerturbationExpansion,
    corrected_ground_state,
    matrix_element,
    perturbed_energy,
)
from .pricing import (
    CurvePoint,
    OptionSpec,
    PriceResult,
    bs_closed_form,
    effective_sigma,
    price,
    price_curve,
)
from .quadrature import Interval, QuadratureConfig, QuadratureError, integrate

__version__ = "0.1.0"

__all__ = [
    "backend_name",
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
    "build_density",
    "density_at",
    "cdf",
    "moments",
    "OscillatorBasis",
    "PerturbationExpansion",
    "matrix_element",
    "corrected_ground_state",
    "perturbed_energy",
    "GridSpec",
    "PotentialSpec",
    "GroundState",
    "OracleError",
    "solve_ground_state",
    "compare_density",
    "oracle_potential",
    "OptionSpec",
    "PriceResult",
    "CurvePoint",
    "bs_closed_form",
    "effective_sigma",
    "price",
    "price_curve",
    "CalibrationRequest",
    "CalibrationError",
    "implied_param",
    "Interval",
    "QuadratureConfig",
    "QuadratureError",
    "integrate",
    "__version__",
]
