"""Validation battery: oracle cross-checks, invariant suites, and the
acceptance criteria, each reported as a named PASS/FAIL check.

The battery is shared by the ``validate`` CLI subcommand and the acceptance
test module.  Tolerances for oracle checks scale with the grid spacing
squared (second-order scheme), so coarser grids still pass with the looser
documented bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from . import densities, oracle, perturbation
from .calibration import CalibrationRequest, implied_param
from .densities import (
    Baseline,
    ConstantForce,
    CubicPotential,
    GuardError,
    LinearForce,
    PolynomialPerturbation,
    QuantumWell,
    QuarticPotential,
    build_density,
)
from .pricing import OptionSpec, bs_closed_form, price, price_curve
from .quadrature import QuadratureConfig

__all__ = ["CheckResult", "run_battery", "run_family_check", "FIG_SPEC", "MODEL_BUILDERS"]

FIG_SPEC = OptionSpec(s0=20.0, strike=20.0, rate=0.10, sigma=0.25, maturity=1.0, kind="call")
PRICE_FLOOR = 20.0 * (1.0 - math.exp(-0.10))  # S0 - K e^{-rT} for the reference spec

MODEL_BUILDERS = {
    "constant": ConstantForce,
    "linear": LinearForce,
    "cubic": CubicPotential,
    "quartic": QuarticPotential,
    "well": QuantumWell,
}

_EVEN_FAMILIES = (
    Baseline(),
    LinearForce(1.0),
    QuarticPotential(0.05),
    QuantumWell(1.0),
)
_ALL_SAMPLE_MODELS = _EVEN_FAMILIES + (
    ConstantForce(1.5),
    CubicPotential(0.1),
    PolynomialPerturbation(((3, 0.05), (4, 0.02))),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _grid_scale(grid_points: int) -> float:
    # tolerance scaling for the second-order scheme relative to the default grid
    return ((4001 - 1) / (grid_points - 1)) ** 2


def _simpson_pdf_integral(d: densities.Density, n: int = 32769) -> float:
    from scipy.integrate import simpson

    lo, hi = d.window
    xs = np.linspace(lo, hi, n)
    return float(simpson(d.pdf(xs), x=xs))


def _family_l1(coupling: float, family, grid_points: int, selection: str) -> float:
    model = family(coupling)
    gs = oracle.solve_ground_state(
        oracle.oracle_potential(model),
        oracle.GridSpec(points=grid_points),
        selection=selection,
    )
    l1, _ = oracle.compare_density(gs, build_density(model))
    return l1


# --- oracle and invariant checks -------------------------------------------------


def check_harmonic_energy(grid_points: int) -> CheckResult:
    gs = oracle.solve_ground_state(oracle.PotentialSpec(), oracle.GridSpec(points=grid_points))
    tol = 1e-6 * _grid_scale(grid_points)
    err = abs(gs.energy - 0.25)
    return _result(
        "harmonic-oscillator-ground-energy", err <= tol, f"|E0 - 0.25| = {err:.3e} (tol {tol:.1e})"
    )


def check_well_energy(grid_points: int) -> CheckResult:
    gs = oracle.solve_ground_state(
        oracle.PotentialSpec(harmonic=False, wall_half_width=1.0),
        oracle.GridSpec(points=grid_points),
    )
    exact = math.pi**2 / 8.0
    tol = 1e-4 * _grid_scale(grid_points)
    err = abs(gs.energy - exact)
    return _result(
        "hard-wall-ground-energy", err <= tol, f"|E0 - pi^2/8| = {err:.3e} (tol {tol:.1e})"
    )


def check_grid_convergence(grid_points: int) -> CheckResult:
    fine = 2 * (grid_points - 1) + 1  # halves the spacing of the requested grid
    e_coarse = oracle.solve_ground_state(
        oracle.PotentialSpec(), oracle.GridSpec(points=grid_points)
    ).energy
    e_fine = oracle.solve_ground_state(
        oracle.PotentialSpec(), oracle.GridSpec(points=fine)
    ).energy
    ratio = abs(e_coarse - 0.25) / abs(e_fine - 0.25)
    return _result(
        "grid-convergence-order",
        3.0 <= ratio <= 5.0,
        f"halving-error ratio = {ratio:.3f} (expected ~4)",
    )


def check_baseline_density_match(grid_points: int) -> CheckResult:
    gs = oracle.solve_ground_state(oracle.PotentialSpec(), oracle.GridSpec(points=grid_points))
    l1, linf = oracle.compare_density(gs, build_density(Baseline()))
    tol_linf = 1e-6 * _grid_scale(grid_points)
    return _result(
        "baseline-density-oracle-match",
        linf <= tol_linf,
        f"linf = {linf:.3e} (tol {tol_linf:.1e}), l1 = {l1:.3e}",
    )


def check_well_density_match(grid_points: int) -> CheckResult:
    gs = oracle.solve_ground_state(
        oracle.PotentialSpec(harmonic=False, wall_half_width=1.0),
        oracle.GridSpec(points=grid_points),
    )
    l1, _ = oracle.compare_density(gs, build_density(QuantumWell(1.0)))
    tol = 1e-5 * _grid_scale(grid_points)
    return _result("well-density-oracle-match", l1 <= tol, f"l1 = {l1:.3e} (tol {tol:.1e})")


def check_cubic_scaling(grid_points: int) -> CheckResult:
    base, doubled = 0.005, 0.01
    l1_base = _family_l1(base, CubicPotential, grid_points, "lowest")
    l1_double = _family_l1(doubled, CubicPotential, grid_points, "lowest")
    ratio = l1_double / l1_base
    return _result(
        "cubic-density-error-scaling",
        3.0 <= ratio <= 5.0,
        f"l1({doubled})/l1({base}) = {ratio:.3f} (quadratic expected)",
    )


def check_quartic_scaling(grid_points: int) -> CheckResult:
    base, doubled = 0.005, 0.01
    l1_base = _family_l1(base, QuarticPotential, grid_points, "lowest")
    l1_double = _family_l1(doubled, QuarticPotential, grid_points, "lowest")
    ratio = l1_double / l1_base
    return _result(
        "quartic-density-error-scaling",
        3.0 <= ratio <= 5.0,
        f"l1({doubled})/l1({base}) = {ratio:.3f} (quadratic expected)",
    )


def check_normalization_suite() -> CheckResult:
    worst = 0.0
    for model in _ALL_SAMPLE_MODELS:
        d = build_density(model)
        worst = max(worst, abs(_simpson_pdf_integral(d) - 1.0))
    return _result(
        "density-normalization-suite", worst <= 1e-8, f"max |integral - 1| = {worst:.3e}"
    )


def check_cdf_suite() -> CheckResult:
    problems = []
    for model in _ALL_SAMPLE_MODELS:
        d = build_density(model)
        lo, hi = d.window
        ts = np.linspace(lo - 0.5, hi + 0.5, 1000)
        vals = np.array([d.cdf(float(t)) for t in ts])
        if np.any(np.diff(vals) < 0):
            problems.append(f"{model}: non-monotone cdf")
        if not (d.cdf(lo - 1.0) == 0.0 and d.cdf(hi + 1.0) == 1.0):
            problems.append(f"{model}: cdf limits wrong")
    for model in _EVEN_FAMILIES:
        d = build_density(model)
        for t in np.linspace(0.0, min(d.window[1], 6.0), 25):
            gap = abs(d.cdf(float(t)) + d.cdf(float(-t)) - 1.0)
            if gap > 2e-8:
                problems.append(f"{model}: parity gap {gap:.2e} at t={t:.2f}")
                break
    return _result("cdf-suite", not problems, "; ".join(problems) or "monotone, limits, parity ok")


def check_pricing_parity() -> CheckResult:
    worst = 0.0
    for model in _EVEN_FAMILIES:
        call = price(model, FIG_SPEC).price
        put_spec = OptionSpec(
            s0=FIG_SPEC.s0,
            strike=FIG_SPEC.strike,
            rate=FIG_SPEC.rate,
            sigma=FIG_SPEC.sigma,
            maturity=FIG_SPEC.maturity,
            kind="put",
        )
        put = price(model, put_spec).price
        worst = max(worst, abs(call - put - PRICE_FLOOR))
    return _result(
        "pricing-parity-suite", worst <= 2e-6, f"max |c - p - (S0 - Ke^-rT)| = {worst:.3e}"
    )


def check_d_relation() -> CheckResult:
    worst = 0.0
    for model in _ALL_SAMPLE_MODELS:
        r = price(model, FIG_SPEC)
        worst = max(
            worst, abs(r.d_minus - (r.d_plus - r.sigma_eff * math.sqrt(FIG_SPEC.maturity)))
        )
    return _result("d-relation", worst <= 1e-12, f"max |d- - (d+ - sigma_eff sqrt(T))| = {worst:.2e}")


def check_constant_force_curve() -> CheckResult:
    grid = np.linspace(0.0, 4.0, 81)  # x_k = 2k in [0, 8]
    pts = price_curve(ConstantForce, grid, FIG_SPEC)
    prices = np.array([p.result.price for p in pts])
    strictly_down = bool(np.all(np.diff(prices) < 0))
    end_err = abs(prices[-1] - PRICE_FLOOR)
    return _result(
        "constant-force-monotone-curve",
        strictly_down and end_err <= 5e-3,
        f"strictly decreasing: {strictly_down}, |p(x_k=8) - floor| = {end_err:.2e}",
    )


def check_linear_below_baseline() -> CheckResult:
    base = bs_closed_form(FIG_SPEC).price
    lams = np.linspace(0.1, 2.0, 20)
    prices = [price(LinearForce(float(l)), FIG_SPEC).price for l in lams]
    ok = all(p < base for p in prices)
    return _result(
        "linear-force-below-baseline", ok, f"max price = {max(prices):.6f} vs baseline {base:.6f}"
    )


def check_well_floor() -> CheckResult:
    avals = np.linspace(0.1, 3.0, 59)
    prices = [price(QuantumWell(float(a)), FIG_SPEC).price for a in avals]
    never_below = all(p >= PRICE_FLOOR - 1e-6 for p in prices)
    small_a_ok = all(
        abs(price(QuantumWell(a), FIG_SPEC).price - PRICE_FLOOR) <= 1e-3 for a in (0.1, 0.15, 0.2)
    )
    return _result(
        "well-floor-and-plateau",
        never_below and small_a_ok,
        f"min price = {min(prices):.6f} (floor {PRICE_FLOOR:.6f}), plateau ok: {small_a_ok}",
    )


def check_quartic_minimum() -> CheckResult:
    grid = np.linspace(0.01, 0.12, 23)
    pts = price_curve(QuarticPotential, grid, FIG_SPEC)
    prices = np.array([p.result.price for p in pts])
    imin = int(np.argmin(prices))
    interior = 0 < imin < len(grid) - 1
    return _result(
        "quartic-price-minimum",
        interior,
        f"interior minimum at gamma = {grid[imin]:.4f}, price = {prices[imin]:.6f}",
    )


def check_calibration_roundtrip() -> CheckResult:
    cases = [
        (ConstantForce, 1.0, (0.2, 2.5)),
        (LinearForce, 0.8, (0.1, 1.8)),
        (QuantumWell, 1.6, (1.1, 2.2)),
    ]
    worst = 0.0
    for family, true_c, bracket in cases:
        target = price(family(true_c), FIG_SPEC).price
        req = CalibrationRequest(
            family=family, spec=FIG_SPEC, target_price=target, bracket=bracket
        )
        worst = max(worst, abs(implied_param(req) - true_c))
    return _result("calibration-round-trip", worst <= 1e-6, f"max |c* - c| = {worst:.2e}")


# --- acceptance criteria, implemented literally -----------------------------------


def acceptance_1_bs_reduction() -> list[CheckResult]:
    reference = bs_closed_form(FIG_SPEC).price
    zero_models = (
        ConstantForce(0.0),
        LinearForce(0.0),
        CubicPotential(0.0),
        QuarticPotential(0.0),
        PolynomialPerturbation(()),
    )
    worst = max(abs(price(m, FIG_SPEC).price - reference) for m in zero_models)
    out = [
        _result(
            "acceptance-1a-zero-coupling-reduction",
            worst <= 1e-6,
            f"max |price - closed form| = {worst:.3e} (tol 1e-6)",
        )
    ]

    well_gap = abs(price(QuantumWell(12.0), FIG_SPEC).price - reference)
    out.append(
        _result(
            "acceptance-1b-wide-well-reduction",
            well_gap <= 1e-6,
            f"|price(a=12) - closed form| = {well_gap:.3e} (tol 1e-6); the hard-wall "
            "sin^2 density does not tend to a Gaussian as a grows, so this gap is "
            "structural (known divergence; see README)",
        )
    )

    d = build_density(Baseline())
    r = bs_closed_form(FIG_SPEC)
    quad_gap = max(
        abs(d.cdf(r.d_plus) - r.n_d_plus), abs(d.cdf(r.d_minus) - r.n_d_minus)
    )
    out.append(
        _result(
            "acceptance-1c-closed-form-oracle",
            quad_gap <= 1e-10,
            f"max |quadrature CDF - erf CDF| at d+- = {quad_gap:.3e} (tol 1e-10)",
        )
    )
    return out


def acceptance_2_constant_force() -> list[CheckResult]:
    r = check_constant_force_curve()
    return [_result("acceptance-2-constant-force", r.passed, r.detail)]


def acceptance_3_linear_force() -> list[CheckResult]:
    worst = 0.0
    for lam in np.linspace(0.0, 2.0, 21):
        d = build_density(LinearForce(float(lam)))
        worst = max(worst, abs(d.sigma_qm**2 - 1.0 / math.sqrt(1.0 + lam)))
    sig_ok = worst <= 1e-6
    below = check_linear_below_baseline()
    return [
        _result(
            "acceptance-3-linear-force",
            sig_ok and below.passed,
            f"max |sigma_qm^2 - 1/lambda_omega| = {worst:.2e} (tol 1e-6); {below.detail}",
        )
    ]


def acceptance_4_quantum_well() -> list[CheckResult]:
    avals = np.linspace(0.1, 3.0, 59)
    prices = np.array([price(QuantumWell(float(a)), FIG_SPEC).price for a in avals])
    diffs = np.diff(prices)
    nondecreasing = bool(np.all(diffs >= -1e-9))
    worst_drop = float(diffs.min())
    drop_at = float(avals[1:][int(np.argmin(diffs))])
    floor = check_well_floor()
    return [
        _result(
            "acceptance-4a-well-floor",
            floor.passed,
            floor.detail,
        ),
        _result(
            "acceptance-4b-well-nondecreasing",
            nondecreasing,
            f"min step = {worst_drop:.3e} at a = {drop_at:.2f}; the literal substitution "
            "scheme has a price maximum near a ~= 2.25 (known divergence; see README)",
        ),
    ]


def acceptance_5_perturbation_validation(grid_points: int = 4001) -> list[CheckResult]:
    out = []
    levels = {}
    for name, family, selection in (
        ("cubic", CubicPotential, "overlap"),  # metastable at this coupling: resonance extraction
        ("quartic", QuarticPotential, "lowest"),
    ):
        l1_05 = _family_l1(0.05, family, grid_points, selection)
        l1_10 = _family_l1(0.10, family, grid_points, selection)
        levels[name] = (l1_05, l1_10)
        out.append(
            _result(
                f"acceptance-5-{name}-l1-at-0.05",
                l1_05 <= 5e-3,
                f"l1 = {l1_05:.3e} (tol 5e-3); first-order error at this coupling is "
                "dominated by second-order terms (known divergence; see README)",
            )
        )
        ratio = l1_10 / l1_05
        out.append(
            _result(
                f"acceptance-5-{name}-doubling",
                3.0 <= ratio <= 5.0,
                f"l1(0.10)/l1(0.05) = {ratio:.3f} (expected [3, 5]; quadratic scaling "
                "holds only for couplings <= ~0.01, see cubic/quartic-density-error-scaling)",
            )
        )
    return out


def acceptance_6_oracle_exactness(grid_points: int = 4001) -> list[CheckResult]:
    a = check_harmonic_energy(grid_points)
    b = check_well_energy(grid_points)
    c = check_grid_convergence(grid_points)
    return [
        _result("acceptance-6a-harmonic-energy", a.passed, a.detail),
        _result("acceptance-6b-well-energy", b.passed, b.detail),
        _result("acceptance-6c-grid-halving", c.passed, c.detail),
    ]


def acceptance_7_bracket_fixtures() -> list[CheckResult]:
    x, beta, gamma = sp.symbols("x beta gamma")
    hw = perturbation.HBAR_OMEGA

    cubic = perturbation.corrected_ground_state([(3, beta * hw)]).bracket
    cubic_expected = sp.expand(1 - beta * (x**3 / 3 + x / 2))
    cubic_diff = sp.expand(cubic - cubic_expected)
    cubic_ok = cubic_diff == 0
    cubic_detail = (
        "regenerated exactly"
        if cubic_ok
        else (
            f"x^3 coefficient {sp.Poly(cubic, x).coeff_monomial(x**3)} matches -beta/3; "
            f"x coefficient is {sp.Poly(cubic, x).coeff_monomial(x)} not -beta/2 "
            "(first-order theory gives -2*beta; known divergence, see README)"
        )
    )

    quartic = perturbation.corrected_ground_state([(4, gamma * hw)]).bracket
    quartic_expected = sp.expand(1 - gamma * (x**4 - 9) / (4 * sp.sqrt(2)))
    quartic_ok = sp.expand(quartic - quartic_expected) == 0
    quartic_detail = (
        "regenerated exactly"
        if quartic_ok
        else (
            f"first-order theory gives {sp.collect(quartic, x)}, not "
            "1 - gamma*(x^4 - 9)/(4*sqrt(2)) (known divergence; see README)"
        )
    )
    return [
        _result("acceptance-7a-cubic-bracket-printed-form", cubic_ok, cubic_detail),
        _result("acceptance-7b-quartic-bracket-printed-form", quartic_ok, quartic_detail),
    ]


def acceptance_8_invariant_suites() -> list[CheckResult]:
    checks = [
        check_normalization_suite(),
        check_cdf_suite(),
        check_pricing_parity(),
        check_d_relation(),
    ]
    return [_result(f"acceptance-8-{c.name}", c.passed, c.detail) for c in checks]


def acceptance_9_calibration() -> list[CheckResult]:
    cases = [
        ("constant", ConstantForce, (0.25, 0.6, 1.0, 1.5, 2.0), (0.05, 2.5)),
        ("linear", LinearForce, (0.2, 0.5, 0.9, 1.3, 1.7), (0.05, 1.9)),
        ("well", QuantumWell, (1.15, 1.4, 1.6, 1.85, 2.1), (1.1, 2.2)),
    ]
    out = []
    for name, family, couplings, bracket in cases:
        worst = 0.0
        for c in couplings:
            target = price(family(c), FIG_SPEC).price
            req = CalibrationRequest(
                family=family, spec=FIG_SPEC, target_price=target, bracket=bracket
            )
            worst = max(worst, abs(implied_param(req) - c))
        out.append(
            _result(
                f"acceptance-9-roundtrip-{name}",
                worst <= 1e-6,
                f"max |c* - c| over 5 couplings = {worst:.2e} (tol 1e-6)",
            )
        )
    return out


def acceptance_10_quartic_minimum() -> list[CheckResult]:
    r = check_quartic_minimum()
    return [
        _result(
            "acceptance-10-quartic-minimum",
            r.passed,
            r.detail + "; location reported, not pinned",
        )
    ]


def run_battery(grid_points: int = 4001) -> list[CheckResult]:
    """Full battery: property checks plus the literal acceptance criteria."""
    results: list[CheckResult] = [
        check_harmonic_energy(grid_points),
        check_well_energy(grid_points),
        check_grid_convergence(grid_points),
        check_baseline_density_match(grid_points),
        check_well_density_match(grid_points),
        check_cubic_scaling(grid_points),
        check_quartic_scaling(grid_points),
        check_normalization_suite(),
        check_cdf_suite(),
        check_pricing_parity(),
        check_d_relation(),
        check_constant_force_curve(),
        check_linear_below_baseline(),
        check_well_floor(),
        check_quartic_minimum(),
        check_calibration_roundtrip(),
    ]
    results += acceptance_1_bs_reduction()
    results += acceptance_2_constant_force()
    results += acceptance_3_linear_force()
    results += acceptance_4_quantum_well()
    results += acceptance_5_perturbation_validation(grid_points)
    results += acceptance_6_oracle_exactness(grid_points)
    results += acceptance_7_bracket_fixtures()
    results += acceptance_8_invariant_suites()
    results += acceptance_9_calibration()
    results += acceptance_10_quartic_minimum()
    return results


def run_family_check(family: str, coupling: float) -> list[CheckResult]:
    """Guard, normalization, and moment sanity for one family/coupling."""
    if family not in MODEL_BUILDERS:
        return [_result("family-check", False, f"unknown family {family!r}")]
    try:
        model = MODEL_BUILDERS[family](coupling)
        d = build_density(model)
    except (GuardError, ValueError) as exc:
        return [_result(f"{family}-guard", False, str(exc))]
    gap = abs(_simpson_pdf_integral(d) - 1.0)
    ok = gap <= 1e-8 and d.sigma_qm > 0
    return [
        _result(f"{family}-guard", True, f"coupling {coupling} within guards"),
        _result(
            f"{family}-density",
            ok,
            f"|integral - 1| = {gap:.3e}, sigma_qm = {d.sigma_qm:.6f}",
        ),
    ]
