# src/algebra/hilbert.py
"""
Truncated Hilbert series of S_eps, A_eps = S_eps/(f) and their Koszul duals.

Series are integer numpy vectors of length D+1 (coefficients of t^0..t^D).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
from scipy.special import comb

from src.algebra.skewpoly import SignSystem, monomials, quotient_basis

LOGGER = logging.getLogger(__name__)


# ===== Power series helpers =====

def poly_series(coefficients: List[int], D: int) -> np.ndarray:
    out = np.zeros(D + 1, dtype=np.int64)
    for d, c in enumerate(coefficients[: D + 1]):
        out[d] = c
    return out


def series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    D = len(a) - 1
    return np.convolve(a, b)[: D + 1]


def series_inverse(a: np.ndarray) -> np.ndarray:
    """1/a for a series with constant term ±1."""
    if a[0] not in (1, -1):
        raise ValueError("series inverse needs a unit constant term")
    D = len(a) - 1
    inv = np.zeros(D + 1, dtype=np.int64)
    inv[0] = a[0]
    for d in range(1, D + 1):
        inv[d] = -a[0] * int(np.dot(a[1 : d + 1], inv[d - 1 :: -1][:d]))
    return inv


def at_minus_t(a: np.ndarray) -> np.ndarray:
    signs = np.where(np.arange(len(a)) % 2 == 0, 1, -1)
    return a * signs


def binomial_power(n: int, D: int, sign: int = 1) -> np.ndarray:
    """(1 + sign*t)^n truncated."""
    return poly_series([comb(n, k, exact=True) * sign ** k for k in range(n + 1)], D)


def geometric(D: int, step: int = 1) -> np.ndarray:
    """1/(1 - t^step)."""
    out = np.zeros(D + 1, dtype=np.int64)
    out[::step] = 1
    return out


# ===== Named series =====

def hilbert_S(n: int, D: int) -> np.ndarray:
    """H_S = (1-t)^(-n): dim S_d = C(n+d-1, d)."""
    return np.array([comb(n + d - 1, d, exact=True) for d in range(D + 1)], dtype=np.int64)


def hilbert_A(n: int, D: int) -> np.ndarray:
    """H_A = H_S * (1 - t^2)."""
    return series_mul(hilbert_S(n, D), poly_series([1, 0, -1], D))


def hilbert_A_dual(n: int, D: int) -> np.ndarray:
    """H_{A^!}(t) = 1 / H_A(-t)."""
    return series_inverse(at_minus_t(hilbert_A(n, D)))


def hilbert_dagger_dual(n: int, D: int) -> np.ndarray:
    """Koszul dual of A^dagger = S[u; -1]/(f + u^2), computed as 1 / H_{A^dagger}(-t)."""
    return series_inverse(at_minus_t(hilbert_A(n + 1, D)))


@dataclass
class HilbertReport:
    n: int
    max_degree: int
    series: Dict[str, List[int]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "series": self.series,
            "failures": self.failures,
            "ok": self.ok,
        }


def _compare(report: HilbertReport, label: str, got: np.ndarray, expected: np.ndarray) -> None:
    for d, (g, e) in enumerate(zip(got.tolist(), expected.tolist())):
        if g != e:
            report.failures.append(f"{label}: coefficient of t^{d} is {g}, expected {e}")


def hilbert_checks(n: int, D: int) -> HilbertReport:
    """
    Check the closed forms of the Hilbert series coefficientwise up to degree D.

    Args:
        n: number of variables (>= 1)
        D: truncation degree (>= 0)

    Returns:
        HilbertReport listing the computed series and every mismatching coefficient
    """
    if n < 1 or D < 0:
        raise ValueError(f"hilbert_checks needs n >= 1 and D >= 0, got n={n}, D={D}")
    report = HilbertReport(n=n, max_degree=D)

    h_s = hilbert_S(n, D)
    h_a = hilbert_A(n, D)
    h_a_dual = hilbert_A_dual(n, D)
    h_s_dual = series_inverse(at_minus_t(h_s))
    h_dagger_dual = hilbert_dagger_dual(n, D)

    # 1. dimension counts by enumeration
    ctx = SignSystem.constant(n, -1)
    _compare(report, "dim S_d", np.array([len(monomials(n, d)) for d in range(D + 1)]), h_s)
    _compare(report, "dim A_d", np.array([len(quotient_basis(ctx, d)) for d in range(D + 1)]), h_a)

    # 2. closed forms
    _compare(report, "H_{S^!} = (1+t)^n", h_s_dual, binomial_power(n, D))
    _compare(report, "H_{A^!} = (1+t)^n/(1-t^2)", h_a_dual, series_mul(binomial_power(n, D), geometric(D, 2)))
    _compare(report, "H_{(A+)^!} = (1+t)^n/(1-t)", h_dagger_dual, series_mul(binomial_power(n, D), geometric(D)))
    # A^![u]/(u^2 - w) has the same series as (A^dagger)^!
    _compare(report, "H_{A^![u]/(u^2-w)}", series_mul(h_a_dual, poly_series([1, 1], D)), h_dagger_dual)

    # 3. Koszul identity H_A(t) H_{A^!}(-t) = 1
    _compare(report, "H_A(t)H_{A^!}(-t)", series_mul(h_a, at_minus_t(h_a_dual)), poly_series([1], D))

    # 4. multiplication by w is bijective in high even degree: dim C(A) = 2^(n-1)
    even_degrees = [d for d in range(n, D + 1) if d % 2 == 0]
    if even_degrees:
        d = even_degrees[0]
        if int(h_a_dual[d]) != 2 ** (n - 1):
            report.failures.append(f"dim C(A): A^!_{d} has dimension {int(h_a_dual[d])}, expected {2 ** (n - 1)}")

    report.series = {
        "H_S": h_s.tolist(),
        "H_A": h_a.tolist(),
        "H_A_dual": h_a_dual.tolist(),
        "H_S_dual": h_s_dual.tolist(),
        "H_dagger_dual": h_dagger_dual.tolist(),
    }
    LOGGER.debug("hilbert_checks n=%d D=%d failures=%d", n, D, len(report.failures))
    return report
