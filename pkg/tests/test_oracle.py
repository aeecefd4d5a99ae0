"""Finite-difference solver exactness and its agreement with model densities."""

import math

import numpy as np
import pytest

from mfbs.densities import (
    Baseline,
    CubicPotential,
    QuantumWell,
    QuarticPotential,
    build_density,
)
from mfbs.oracle import (
    GridSpec,
    OracleError,
    PotentialSpec,
    compare_density,
    oracle_potential,
    solve_ground_state,
)


def test_harmonic_ground_energy_at_defaults():
    gs = solve_ground_state(PotentialSpec())
    assert gs.energy == pytest.approx(0.25, abs=1e-6)


def test_harmonic_density_matches_standard_normal_pointwise():
    gs = solve_ground_state(PotentialSpec())
    exact = np.exp(-0.5 * gs.grid**2) / math.sqrt(2 * math.pi)
    assert np.max(np.abs(gs.density - exact)) <= 1e-6


def test_hard_wall_ground_energy():
    gs = solve_ground_state(PotentialSpec(harmonic=False, wall_half_width=1.0))
    assert gs.energy == pytest.approx(math.pi**2 / 8.0, abs=1e-4)


def test_hard_wall_energy_scales_with_width():
    a = 2.0
    gs = solve_ground_state(PotentialSpec(harmonic=False, wall_half_width=a))
    assert gs.energy == pytest.approx(math.pi**2 / (8.0 * a * a), abs=1e-4)


def test_quartic_energy_near_first_order_prediction():
    gamma_raw = 0.05
    gs = solve_ground_state(PotentialSpec(perturbation=((4, gamma_raw),)))
    # first-order prediction 0.25 + 3*gamma; deviation is O(gamma^2) with a
    # sizable constant (asymptotic series), bounded empirically by 40*gamma^2
    assert abs(gs.energy - (0.25 + 3 * gamma_raw)) <= 40 * gamma_raw**2


def test_grid_halving_reduces_energy_error_fourfold():
    for pot, exact in (
        (PotentialSpec(), 0.25),
        (PotentialSpec(harmonic=False, wall_half_width=1.0), math.pi**2 / 8.0),
    ):
        coarse = solve_ground_state(pot, GridSpec(points=2001)).energy
        fine = solve_ground_state(pot, GridSpec(points=4001)).energy
        ratio = abs(coarse - exact) / abs(fine - exact)
        assert 3.2 <= ratio <= 4.8


def test_variational_bound_for_quartic():
    gs = solve_ground_state(PotentialSpec(perturbation=((4, 0.05),)))
    assert gs.energy >= 0.25


def test_even_potentials_give_symmetric_densities():
    for pot in (PotentialSpec(), PotentialSpec(perturbation=((4, 0.02),))):
        gs = solve_ground_state(pot)
        assert np.max(np.abs(gs.density - gs.density[::-1])) <= 1e-9


def test_density_is_normalized_on_grid():
    gs = solve_ground_state(PotentialSpec())
    assert np.trapezoid(gs.density, gs.grid) == pytest.approx(1.0, abs=1e-9)
    assert np.all(gs.density >= 0.0)


def test_baseline_density_comparison():
    gs = solve_ground_state(PotentialSpec(), GridSpec(points=6001))
    l1, linf = compare_density(gs, build_density(Baseline()))
    assert l1 <= 1e-6
    assert linf <= 1e-6


def test_well_density_comparison():
    gs = solve_ground_state(PotentialSpec(harmonic=False, wall_half_width=1.0))
    l1, _ = compare_density(gs, build_density(QuantumWell(1.0)))
    assert l1 <= 1e-5


@pytest.mark.parametrize("family,base", [(CubicPotential, 0.005), (QuarticPotential, 0.005)])
def test_perturbative_error_scales_quadratically(family, base):
    def l1_at(c):
        model = family(c)
        gs = solve_ground_state(oracle_potential(model))
        l1, _ = compare_density(gs, build_density(model))
        return l1

    ratio = l1_at(2 * base) / l1_at(base)
    assert 3.0 <= ratio <= 5.0


def test_overlap_selection_extracts_metastable_state():
    # family coupling 0.05 makes the cubic potential unbounded below inside
    # the box: the lowest eigenvector localizes at the wall, and the
    # oscillator-like state must be selected by overlap instead
    pot = oracle_potential(CubicPotential(0.05))
    wall_state = solve_ground_state(pot, selection="lowest")
    assert wall_state.energy < 0.0
    resonance = solve_ground_state(pot, selection="overlap")
    assert resonance.energy == pytest.approx(0.25, abs=0.05)
    l1, _ = compare_density(resonance, build_density(CubicPotential(0.05)))
    assert l1 < 0.5  # sanity: same bulk shape; accuracy is probed elsewhere


def test_constant_and_linear_forces_against_closed_forms():
    # validated against shifted/rescaled Gaussian closed forms, not the oracle
    d_const = build_density(__import__("mfbs").ConstantForce(1.0))
    xs = np.linspace(-8, 4, 800)
    expected = np.exp(-0.5 * (xs + 2.0) ** 2) / math.sqrt(2 * math.pi)
    assert np.max(np.abs(d_const.pdf(xs) - expected)) < 1e-10

    lam = 1.0
    lw = math.sqrt(1 + lam)
    d_lin = build_density(__import__("mfbs").LinearForce(lam))
    xs = np.linspace(-6, 6, 800)
    expected = np.sqrt(lw / (2 * math.pi)) * np.exp(-0.5 * lw * xs**2)
    assert np.max(np.abs(d_lin.pdf(xs) - expected)) < 1e-10


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(half_width=6.0)
    with pytest.raises(ValueError):
        GridSpec(points=800)
    with pytest.raises(ValueError):
        GridSpec(points=799)


def test_potential_validation():
    with pytest.raises(ValueError):
        PotentialSpec(harmonic=True, wall_half_width=1.0)
    with pytest.raises(ValueError):
        PotentialSpec(harmonic=False, wall_half_width=None)
    with pytest.raises(ValueError):
        PotentialSpec(harmonic=False, wall_half_width=-2.0)


def test_selection_validation():
    with pytest.raises(ValueError):
        solve_ground_state(PotentialSpec(), selection="weird")


def test_interior_sign_change_is_rejected(monkeypatch):
    import mfbs.oracle as oracle_module

    def fake_eigh(diag, off, **kwargs):
        n = diag.size
        vec = np.full((n, 1), 1.0 / math.sqrt(n))
        vec[n // 3, 0] *= -1.0  # interior sign flip at meaningful amplitude
        return np.array([0.1]), vec

    monkeypatch.setattr(oracle_module, "eigh_tridiagonal", fake_eigh)
    monkeypatch.setattr(oracle_module, "RESIDUAL_TOL", math.inf)
    with pytest.raises(OracleError, match="sign"):
        solve_ground_state(PotentialSpec())
