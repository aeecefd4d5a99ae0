"""Gauss-Kronrod (7, 15) rule pair, generated from first principles.

The 15-point Kronrod extension of 7-point Gauss-Legendre shares the 7 Gauss
nodes, so a single batch of 15 integrand evaluations yields both a degree-22
exact estimate (K15) and an embedded degree-13 estimate (G7) whose difference
serves as the per-panel error estimate.

Rather than transcribing published node tables, the rule is derived here:
the 8 added nodes are the roots of the degree-8 Stieltjes polynomial E8,
fixed by orthogonality of P7*E8 to all polynomials of degree <= 7 under the
Legendre weight.  The linear system for E8 is solved in exact rational
arithmetic; only root polishing and the weight solve use floats.  The test
suite verifies the defining properties (degree-22 exactness, embedded Gauss
subset) at machine precision.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = ["GK15", "GaussKronrodRule", "gauss_kronrod_15"]


def _legendre_p7() -> dict[int, Fraction]:
    # P7(x) = (429 x^7 - 693 x^5 + 315 x^3 - 35 x) / 16
    return {
        7: Fraction(429, 16),
        5: Fraction(-693, 16),
        3: Fraction(315, 16),
        1: Fraction(-35, 16),
    }


def _monomial_moment(n: int) -> Fraction:
    # integral of x^n over [-1, 1]
    return Fraction(2, n + 1) if n % 2 == 0 else Fraction(0)


def _solve_fraction_system(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(m[r][col]))
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _stieltjes_e8_coefficients() -> dict[int, Fraction]:
    """Coefficients of E8(x) = x^8 + c6 x^6 + c4 x^4 + c2 x^2 + c0.

    Orthogonality of P7*E8 to x^k for k = 0..7 reduces, by parity, to four
    rational equations in (c6, c4, c2, c0).
    """
    p7 = _legendre_p7()
    odd_k = [1, 3, 5, 7]
    unknown_powers = [6, 4, 2, 0]
    a = [
        [sum(p7[j] * _monomial_moment(j + i + k) for j in p7) for i in unknown_powers]
        for k in odd_k
    ]
    b = [-sum(p7[j] * _monomial_moment(j + 8 + k) for j in p7) for k in odd_k]
    sol = _solve_fraction_system(a, b)
    return dict(zip(unknown_powers, sol))


class GaussKronrodRule:
    """Node/weight data for the embedded G7/K15 pair on [-1, 1]."""

    __slots__ = ("nodes", "weights_kronrod", "weights_gauss_embedded")

    def __init__(self, nodes: np.ndarray, wk: np.ndarray, wg_embedded: np.ndarray):
        self.nodes = nodes
        self.weights_kronrod = wk
        # zero-padded to length 15; nonzero only at the Gauss-node positions
        self.weights_gauss_embedded = wg_embedded

    def apply(self, f, a: float, b: float) -> tuple[float, float]:
        """Evaluate one panel; returns (K15 value, |K15 - G7| error estimate).

        ``f`` must accept an ndarray of abscissae.
        """
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        fx = np.asarray(f(c + h * self.nodes), dtype=float)
        vk = h * float(self.weights_kronrod @ fx)
        vg = h * float(self.weights_gauss_embedded @ fx)
        return vk, abs(vk - vg)


def gauss_kronrod_15() -> GaussKronrodRule:
    coeffs = _stieltjes_e8_coefficients()
    # E8 is even: roots come as +-sqrt(y) with y a root of the quartic below.
    ycoef = [1.0, float(coeffs[6]), float(coeffs[4]), float(coeffs[2]), float(coeffs[0])]
    y = np.sort(np.roots(ycoef).real)
    dycoef = [4.0, 3.0 * ycoef[1], 2.0 * ycoef[2], ycoef[3]]
    for _ in range(3):  # Newton polish to machine precision
        py = np.polyval(ycoef, y)
        dpy = np.polyval(dycoef, y)
        y = y - py / dpy

    xg, wg = np.polynomial.legendre.leggauss(7)
    nodes = np.sort(np.concatenate([xg, np.sqrt(y), -np.sqrt(y)]))

    # Kronrod weights from exactness on the Legendre basis P0..P14.
    vander = np.polynomial.legendre.legvander(nodes, 14).T
    rhs = np.zeros(15)
    rhs[0] = 2.0
    wk = np.linalg.solve(vander, rhs)

    wg_embedded = np.zeros(15)
    for g, w in zip(xg, wg):
        idx = int(np.argmin(np.abs(nodes - g)))
        wg_embedded[idx] = w
    return GaussKronrodRule(nodes, wk, wg_embedded)


GK15 = gauss_kronrod_15()
