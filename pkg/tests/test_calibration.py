"""Implied-parameter round trips and bracketing behavior."""

import math

import pytest

from mfbs.calibration import CalibrationError, CalibrationRequest, implied_param
from mfbs.densities import ConstantForce, LinearForce, QuantumWell, QuarticPotential
from mfbs.pricing import OptionSpec, bs_closed_form, price

FIG = OptionSpec(s0=20.0, strike=20.0, rate=0.10, sigma=0.25, maturity=1.0, kind="call")
FLOOR = 20.0 * (1.0 - math.exp(-0.10))


def test_bs_target_recovers_zero_coupling():
    req = CalibrationRequest(
        family=ConstantForce,
        spec=FIG,
        target_price=bs_closed_form(FIG).price,
        bracket=(0.0, 1.5),
    )
    assert abs(implied_param(req)) <= 1e-6


def test_round_trip_recovers_shift_of_1_5():
    # calibrate directly in shift units: x_k = 2k
    family = lambda shift: ConstantForce(shift / 2.0)
    target = price(family(1.5), FIG).price
    req = CalibrationRequest(family=family, spec=FIG, target_price=target, bracket=(0.2, 3.0))
    assert implied_param(req) == pytest.approx(1.5, abs=1e-6)


@pytest.mark.parametrize(
    "family,coupling,bracket",
    [
        (ConstantForce, 0.8, (0.05, 2.0)),
        (LinearForce, 1.1, (0.1, 1.9)),
        (QuantumWell, 1.7, (1.1, 2.2)),
    ],
    ids=["constant", "linear", "well"],
)
def test_round_trips_on_monotone_branches(family, coupling, bracket):
    target = price(family(coupling), FIG).price
    req = CalibrationRequest(family=family, spec=FIG, target_price=target, bracket=bracket)
    recovered = implied_param(req)
    assert recovered == pytest.approx(coupling, abs=1e-6)


def test_residual_guarantee():
    target = price(LinearForce(0.6), FIG).price
    req = CalibrationRequest(family=LinearForce, spec=FIG, target_price=target, bracket=(0.1, 1.5))
    c_star = implied_param(req)
    assert abs(price(LinearForce(c_star), FIG).price - target) <= req.tol * max(1.0, target)


def test_target_below_well_floor_raises_with_endpoint_prices():
    req = CalibrationRequest(
        family=QuantumWell, spec=FIG, target_price=FLOOR - 0.01, bracket=(0.1, 3.0)
    )
    with pytest.raises(CalibrationError) as exc_info:
        implied_param(req)
    message = str(exc_info.value)
    assert "not bracketed" in message
    assert "price(0.1)" in message and "price(3.0)" in message


def test_quartic_needs_monotone_branch():
    # the quartic price curve has an interior minimum near 0.03; a bracket
    # inside the decreasing branch round-trips fine
    target = price(QuarticPotential(0.02), FIG).price
    req = CalibrationRequest(
        family=QuarticPotential, spec=FIG, target_price=target, bracket=(0.005, 0.028)
    )
    assert implied_param(req) == pytest.approx(0.02, abs=1e-6)

    # a bracket straddling the minimum with an odd crossing count returns a
    # valid root on the other branch (residual contract still holds)
    other = CalibrationRequest(
        family=QuarticPotential, spec=FIG, target_price=target, bracket=(0.025, 0.12)
    )
    root = implied_param(other)
    assert root > 0.03
    assert abs(price(QuarticPotential(root), FIG).price - target) <= 1e-8 * max(1.0, target)

    # a bracket enclosing both roots has no endpoint sign change: error
    even = CalibrationRequest(
        family=QuarticPotential, spec=FIG, target_price=target, bracket=(0.005, 0.12)
    )
    with pytest.raises(CalibrationError, match="not bracketed"):
        implied_param(even)


def test_request_validation():
    with pytest.raises(ValueError):
        CalibrationRequest(family=LinearForce, spec=FIG, target_price=2.0, bracket=(1.0, 1.0))
    with pytest.raises(ValueError):
        CalibrationRequest(family=LinearForce, spec=FIG, target_price=-2.0, bracket=(0.0, 1.0))
    with pytest.raises(ValueError):
        CalibrationRequest(
            family=LinearForce, spec=FIG, target_price=2.0, bracket=(0.0, 1.0), tol=0.0
        )
