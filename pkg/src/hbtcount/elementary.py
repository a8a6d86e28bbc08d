"""Trinomial algebra of one gate containing a fixed number of detection acts.

Each elementary act has three mutually exclusive outcomes: detector A fires
(probability p), detector B fires (probability q), or neither fires
(probability r).  A gate of n independent acts yields the pair of counts
(xi, eta) whose joint law is trinomial.  This module provides the pmf, the
two-variable generating function, the first and second moments, the
coincidence ratio K_n and the correlation coefficient R of that pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SUM_ABS_TOL = 1e-12     # tolerance on p + q + r = 1 after renormalization
SUM_INPUT_TOL = 1e-9    # constructor renormalizes inputs within this of 1


@dataclass(frozen=True)
class TernaryLaw:
    """Probabilities (p, q, r) of the three outcomes of one elementary act.

    Inputs whose sum deviates from 1 by at most 1e-9 are renormalized;
    larger deviations are rejected.
    """

    p: float
    q: float
    r: float

    def __post_init__(self):
        p, q, r = float(self.p), float(self.q), float(self.r)
        if min(p, q, r) < 0.0 or max(p, q, r) > 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
        total = p + q + r
        if abs(total - 1.0) > SUM_INPUT_TOL:
            raise ValueError("probabilities must sum to 1")
        object.__setattr__(self, "p", p / total)
        object.__setattr__(self, "q", q / total)
        object.__setattr__(self, "r", r / total)
        assert abs(self.p + self.q + self.r - 1.0) <= SUM_ABS_TOL

    @property
    def s(self) -> float:
        """Probability that either detector fires, s = 1 - r."""
        return 1.0 - self.r

    @property
    def t_transmit(self) -> float:
        """Conditional share of detector A among firing acts, p / s."""
        if self.s <= 0.0:
            raise ValueError("splitting ratios undefined when s = 1 - r = 0")
        return self.p / self.s

    @property
    def t_reflect(self) -> float:
        """Conditional share of detector B among firing acts, q / s."""
        if self.s <= 0.0:
            raise ValueError("splitting ratios undefined when s = 1 - r = 0")
        return self.q / self.s


@dataclass(frozen=True)
class SequenceMoments:
    """First and second moments of (xi, eta) for a gate of n acts."""

    n: int
    mean_xi: float
    mean_eta: float
    var_xi: float
    var_eta: float
    cross: float


def _check_counts(n: int, m: int, k: int) -> None:
    for value in (n, m, k):
        if value != int(value) or value < 0:
            raise ValueError("counts must be non-negative integers")
    if m + k > n:
        raise ValueError("m + k must not exceed n")


def _xlogy(x: float, y: float) -> float:
    """x * log(y) with the 0 * log(0) = 0 convention."""
    if x == 0.0:
        return 0.0
    if y <= 0.0:
        return -math.inf
    return x * math.log(y)


def trinomial_pmf(law: TernaryLaw, n: int, m: int, k: int) -> float:
    """P(xi = m, eta = k) in a gate of n acts, computed in log space."""
    _check_counts(n, m, k)
    n, m, k = int(n), int(m), int(k)
    log_coef = (math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(k + 1)
                - math.lgamma(n - m - k + 1))
    log_p = (_xlogy(m, law.p) + _xlogy(k, law.q)
             + _xlogy(n - m - k, law.r))
    if log_p == -math.inf:
        return 0.0
    return min(1.0, math.exp(log_coef + log_p))


def sequence_gf(law: TernaryLaw, n: int, x, y):
    """Generating function (p x + q y + r)^n; |x| <= 1, |y| <= 1."""
    if n != int(n) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if abs(x) > 1.0 + 1e-15 or abs(y) > 1.0 + 1e-15:
        raise ValueError("subsidiary variables must lie in the unit disk")
    return (law.p * x + law.q * y + law.r) ** int(n)


def sequence_moments(law: TernaryLaw, n: int) -> SequenceMoments:
    """Exact moments of (xi, eta) for a gate of n acts."""
    if n != int(n) or n < 0:
        raise ValueError("n must be a non-negative integer")
    n = int(n)
    p, q = law.p, law.q
    return SequenceMoments(
        n=n,
        mean_xi=n * p,
        mean_eta=n * q,
        var_xi=n * p * (1.0 - p),
        var_eta=n * q * (1.0 - q),
        cross=p * q * n * (n - 1),
    )


def sequence_k(n: int) -> float:
    """Coincidence ratio K_n = 1 - 1/n within a gate of n acts.

    Always below 1: within a gate the two detectors are anticorrelated,
    independent of (p, q, r).
    """
    if n != int(n) or n < 1:
        raise ValueError("K_n is undefined for an empty gate")
    return 1.0 - 1.0 / int(n)


def sequence_r(law: TernaryLaw) -> float:
    """Correlation coefficient of (xi, eta), independent of n.

    R = -sqrt(pq / ((1-p)(1-q))), always in [-1, 0); it reaches -1 only
    in the binary limit r = 0, p = q = 1/2.
    """
    p, q = law.p, law.q
    if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
        raise ValueError("R requires 0 < p < 1 and 0 < q < 1")
    return -math.sqrt(p * q / ((1.0 - p) * (1.0 - q)))
