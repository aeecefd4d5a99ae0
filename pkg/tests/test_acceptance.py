"""Acceptance gate: every criterion runs at its stated tolerance and prints
one PASS/FAIL line.

Four sub-criteria assert properties that the model family, as defined by its
own closed forms and first-order machinery, cannot satisfy; they are
implemented literally and left red rather than loosened.  Each failing test's
docstring carries the quantitative analysis:

* wide hard-wall well vs. closed form (criterion 1): the sin^2 density does
  not tend to a Gaussian as the half-width grows, so its price cannot
  converge to the closed form.
* well curve monotonicity to a = 3 (criterion 4): the literal substitution
  scheme has a price maximum near a ~= 2.25.
* perturbative density error at coupling 0.05 (criterion 5): the quadratic
  error coefficient is ~20-90 in these units, so the measured L1 gaps at
  coupling 0.05 are 0.056 (quartic) and 0.135 (cubic, metastable regime)
  against the 5e-3 tolerance, and the 0.05 -> 0.10 doubling ratios leave
  [3, 5] (quadratic scaling holds for couplings <= ~0.01, where the module
  property tests verify it).
* printed bracket fixtures (criterion 7): the first-order machinery yields
  1 - b(x^3/3 + 2x) and 1 - g(x^4 + 6x^2 - 9)/4; only the cubic x^3
  coefficient matches the printed forms.
"""

import pytest

from mfbs import validation


def _report_and_assert(results):
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    failed = [r for r in results if not r.passed]
    assert not failed, "; ".join(f"{r.name}: {r.detail}" for r in failed)


@pytest.fixture(scope="module")
def criterion_1():
    return validation.acceptance_1_bs_reduction()


@pytest.fixture(scope="module")
def criterion_4():
    return validation.acceptance_4_quantum_well()


@pytest.fixture(scope="module")
def criterion_5():
    return validation.acceptance_5_perturbation_validation()


@pytest.fixture(scope="module")
def criterion_7():
    return validation.acceptance_7_bracket_fixtures()


def test_criterion_1a_zero_coupling_reduction(criterion_1):
    _report_and_assert([r for r in criterion_1 if r.name.endswith("zero-coupling-reduction")])


def test_criterion_1b_wide_well_reduction(criterion_1):
    """Known divergence: the hard-wall sin^2 density at a = 12 is flat at
    scale 1/a, nowhere near the standard normal, so its price misses the
    closed form by ~0.31."""
    _report_and_assert([r for r in criterion_1 if r.name.endswith("wide-well-reduction")])


def test_criterion_1c_closed_form_oracle(criterion_1):
    _report_and_assert([r for r in criterion_1 if r.name.endswith("closed-form-oracle")])


def test_criterion_2_constant_force():
    _report_and_assert(validation.acceptance_2_constant_force())


def test_criterion_3_linear_force():
    _report_and_assert(validation.acceptance_3_linear_force())


def test_criterion_4a_well_floor(criterion_4):
    _report_and_assert([r for r in criterion_4 if r.name.endswith("well-floor")])


def test_criterion_4b_well_nondecreasing(criterion_4):
    """Known divergence: under the literal substitution scheme the well price
    peaks near a ~= 2.25 and declines by ~0.04 by a = 3."""
    _report_and_assert([r for r in criterion_4 if r.name.endswith("well-nondecreasing")])


def test_criterion_5_cubic_level(criterion_5):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_5 if r.name == "acceptance-5-cubic-l1-at-0.05"])


def test_criterion_5_cubic_doubling(criterion_5):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_5 if r.name == "acceptance-5-cubic-doubling"])


def test_criterion_5_quartic_level(criterion_5):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_5 if r.name == "acceptance-5-quartic-l1-at-0.05"])


def test_criterion_5_quartic_doubling(criterion_5):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_5 if r.name == "acceptance-5-quartic-doubling"])


def test_criterion_6_oracle_exactness():
    _report_and_assert(validation.acceptance_6_oracle_exactness())


def test_criterion_7a_cubic_bracket(criterion_7):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_7 if "cubic" in r.name])


def test_criterion_7b_quartic_bracket(criterion_7):
    """Known divergence: see module docstring."""
    _report_and_assert([r for r in criterion_7 if "quartic" in r.name])


def test_criterion_8_invariant_suites():
    _report_and_assert(validation.acceptance_8_invariant_suites())


def test_criterion_9_calibration_round_trips():
    _report_and_assert(validation.acceptance_9_calibration())


def test_criterion_10_quartic_minimum():
    _report_and_assert(validation.acceptance_10_quartic_minimum())
