"""Series-level observables: moments of the counts accumulated over a whole
run, the coincidence ratio K, the correlation coefficient R, thermal closed
forms, energy fluctuations, the maximum-contrast condition, entropy change
and the dip-contrast ratio Z.

A series mixes gates of random occupancy n (drawn from a SourceLaw) with
the trinomial detection algebra of `elementary`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elementary import TernaryLaw
from .errors import DomainError
from .sources import SourceLaw, source_factorial_moments


@dataclass(frozen=True)
class SeriesMoments:
    """Moments and normalized correlations of the per-gate counts (xi, eta).

    r_coeff follows the convention R = sqrt(pq / ((1-p)(1-q))) * (F - 1):
    the within-gate prefactor carrying the sign of the occupancy excess
    noise.  The exact covariance-based correlation is exposed separately
    by `exact_correlation`, since the two differ once the source variance
    contributes to the count variances.
    """

    mean_xi: float
    var_xi: float
    mean_eta: float
    var_eta: float
    cross: float
    k_ratio: float
    r_coeff: float
    fano: float
    mandel_q: float


def _ratio_prefactor(law: TernaryLaw) -> float:
    p, q = law.p, law.q
    if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
        raise ValueError("correlation requires 0 < p < 1 and 0 < q < 1")
    return math.sqrt(p * q / ((1.0 - p) * (1.0 - q)))


def series_moments(law: TernaryLaw, src: SourceLaw) -> SeriesMoments:
    """Analytic series observables for a detection law and a source law."""
    fm = source_factorial_moments(src)
    if fm.mean <= 0.0:
        raise ValueError("series ratios require a positive mean occupancy")
    p, q = law.p, law.q
    mean_xi = p * fm.mean
    mean_eta = q * fm.mean
    # second moments from <xi^2> = p(1-p)<n> + p^2 <n^2>
    var_xi = p * (1.0 - p) * fm.mean + p * p * fm.second - mean_xi * mean_xi
    var_eta = q * (1.0 - q) * fm.mean + q * q * fm.second - mean_eta * mean_eta
    cross = p * q * fm.factorial2
    k_ratio = 1.0 + (fm.fano - 1.0) / fm.mean
    r_coeff = _ratio_prefactor(law) * (fm.fano - 1.0)
    return SeriesMoments(mean_xi=mean_xi, var_xi=var_xi,
                         mean_eta=mean_eta, var_eta=var_eta,
                         cross=cross, k_ratio=k_ratio, r_coeff=r_coeff,
                         fano=fm.fano, mandel_q=fm.mandel_q)


def exact_correlation(law: TernaryLaw, src: SourceLaw) -> float:
    """Pearson correlation of (xi, eta), cov / (sigma_xi * sigma_eta).

    This is the quantity a sample correlation coefficient estimates; it
    coincides with SeriesMoments.r_coeff only when the count variances
    reduce to their within-gate parts.
    """
    sm = series_moments(law, src)
    cov = sm.cross - sm.mean_xi * sm.mean_eta
    return cov / math.sqrt(sm.var_xi * sm.var_eta)


def thermal_k(statistics: str, modes: float, polarized: bool) -> float:
    """Closed-form coincidence ratio for thermal sources.

    Bosons: 1 + 1/M (polarized) or 1 + 1/(2M); fermions: 1 - 1/M or
    1 - 1/(2M).  Real-valued M >= 1 (>= 1/2 for unpolarized bosons'
    formal domain) is accepted for plotting mode sweeps.
    """
    if statistics not in ("boson", "fermion"):
        raise ValueError("statistics must be 'boson' or 'fermion'")
    if modes <= 0.0:
        raise ValueError("mode count must be positive")
    order = modes if polarized else 2.0 * modes
    if statistics == "boson":
        return 1.0 + 1.0 / order
    if order < 1.0:
        raise ValueError("fermion K would be negative for this mode count")
    return 1.0 - 1.0 / order


def energy_fluctuation(statistics: str, mean_energy: float, quantum: float,
                       modes: float) -> float:
    """Energy variance of one detector channel.

    Bosons: h*nu*E + E^2/M (particle plus wave-interference term);
    fermions: h*nu*E - E^2/M, valid while E/M <= h*nu.
    """
    if statistics not in ("boson", "fermion"):
        raise ValueError("statistics must be 'boson' or 'fermion'")
    if mean_energy <= 0.0 or quantum <= 0.0 or modes <= 0.0:
        raise ValueError("mean energy, quantum and mode count must be positive")
    if statistics == "boson":
        return quantum * mean_energy + mean_energy ** 2 / modes
    if mean_energy / modes > quantum * (1.0 + 1e-12):
        raise ValueError("fermion occupancy bound violated: E/M exceeds h*nu")
    return quantum * mean_energy - mean_energy ** 2 / modes


def max_contrast_pump(mean_detected: float) -> float:
    """No-loss fraction s = 2/(1 + <n>) at which R reaches 1 for T = 1/2."""
    if mean_detected <= 1.0:
        raise ValueError("maximum contrast requires a mean occupancy above 1")
    return 2.0 / (1.0 + mean_detected)


def entropy_change(mean: float) -> float:
    """Entropy change (1+<n>)ln(1+<n>) - <n>ln<n> in units of k_B."""
    if mean <= 0.0:
        raise DomainError("entropy change requires a positive mean")
    return (1.0 + mean) * math.log1p(mean) - mean * math.log(mean)


def contrast_z(n_background: float, n_coincidence: float) -> float:
    """Relative dip size Z = N_bg / (N_bg - N_c); equals M (polarized) or 2M."""
    if n_coincidence < 0.0 or n_background <= n_coincidence:
        raise ValueError("requires N_bg > N_c >= 0")
    return n_background / (n_background - n_coincidence)
