"""Gate-occupancy distributions for coherent, thermal-boson and
thermal-fermion sources at arbitrary polarization.

Each source is reduced to one or two primitive components:

* a Poisson law (coherent excitation of M modes),
* a negative binomial law of order N (thermal bosons, N = M polarized,
  N = 2M unpolarized, two order-M components for partial polarization),
* a binomial law of order N (thermal fermions, same order bookkeeping).

The pmf of a two-component source is the explicit finite convolution of
the component pmfs.  All pmfs are evaluated in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

KINDS = (
    "coherent",
    "boson-polarized",
    "boson-partial",
    "boson-unpolarized",
    "fermion-polarized",
    "fermion-partial",
    "fermion-unpolarized",
)

TRUNCATION_MASS = 1.0 - 1e-10
TRUNCATION_CAP = 10 ** 6


@dataclass(frozen=True)
class SourceLaw:
    """Occupancy law {W_n} for the number of quanta arriving in one gate.

    modes is the number of relevant spatial modes M; nbar the mean
    occupation per mode; polarization the degree of polarization, used by
    the partial kinds only.
    """

    kind: str
    modes: int = 1
    nbar: float = 1.0
    polarization: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown source kind: {self.kind!r}")
        if self.modes != int(self.modes) or self.modes < 1:
            raise ValueError("modes must be a positive integer")
        object.__setattr__(self, "modes", int(self.modes))
        if not self.nbar > 0.0:
            raise ValueError("nbar must be positive")
        if self.kind.endswith("partial"):
            if self.polarization is None:
                raise ValueError("partial kinds require a polarization degree")
            if not 0.0 <= self.polarization <= 1.0:
                raise ValueError("polarization must lie in [0, 1]")
        elif self.polarization is not None:
            raise ValueError("polarization applies to partial kinds only")
        if self.kind.startswith("fermion"):
            if self.nbar > 1.0:
                raise ValueError("fermion occupancy per mode cannot exceed 1")

    # -- component decomposition ------------------------------------------

    def _components(self) -> list[tuple]:
        """Primitive components ('poisson', mean) | ('nb', N, b) | ('binom', N, a)."""
        m, nb = self.modes, self.nbar
        if self.kind == "coherent":
            return [("poisson", nb * m)]
        if self.kind == "boson-polarized":
            return [("nb", m, nb / (1.0 + nb))]
        if self.kind == "boson-unpolarized":
            return [("nb", 2 * m, nb / (2.0 + nb))]
        if self.kind == "boson-partial":
            n1 = 0.5 * nb * (1.0 + self.polarization)
            n2 = 0.5 * nb * (1.0 - self.polarization)
            comps = [("nb", m, n1 / (1.0 + n1))]
            if n2 > 0.0:
                comps.append(("nb", m, n2 / (1.0 + n2)))
            return comps
        if self.kind == "fermion-polarized":
            return [("binom", m, nb)]
        if self.kind == "fermion-unpolarized":
            return [("binom", 2 * m, 0.5 * nb)]
        # fermion-partial
        n1 = 0.5 * nb * (1.0 + self.polarization)
        n2 = 0.5 * nb * (1.0 - self.polarization)
        comps = [("binom", m, n1)]
        if n2 > 0.0:
            comps.append(("binom", m, n2))
        return comps

    @property
    def max_count(self) -> int | None:
        """Largest n with nonzero weight, or None for unbounded support."""
        bound = 0
        for comp in self._components():
            if comp[0] == "binom":
                bound += comp[1]
            else:
                return None
        return bound


@dataclass(frozen=True)
class FactorialMoments:
    """Low-order moments of the occupancy: <n>, <n^2>, <n(n-1)>, Fano, Mandel Q."""

    mean: float
    second: float
    factorial2: float
    fano: float
    mandel_q: float


# -- primitive component pmf / pgf / moments ------------------------------


def _component_log_pmf(comp: tuple, n: int) -> float:
    if comp[0] == "poisson":
        mean = comp[1]
        return n * math.log(mean) - mean - math.lgamma(n + 1)
    if comp[0] == "nb":
        order, b = comp[1], comp[2]
        return (math.lgamma(order + n) - math.lgamma(order)
                - math.lgamma(n + 1)
                + order * math.log1p(-b) + (n * math.log(b) if n else 0.0))
    order, a = comp[1], comp[2]  # binom
    if n > order:
        return -math.inf
    out = math.lgamma(order + 1) - math.lgamma(n + 1) - math.lgamma(order - n + 1)
    if n:
        if a == 0.0:
            return -math.inf
        out += n * math.log(a)
    if order - n:
        if a == 1.0:
            return -math.inf
        out += (order - n) * math.log1p(-a)
    return out


def _component_pmf(comp: tuple, n: int) -> float:
    lp = _component_log_pmf(comp, n)
    return 0.0 if lp == -math.inf else math.exp(lp)


def _component_pgf(comp: tuple, z: float) -> float:
    if comp[0] == "poisson":
        return math.exp(comp[1] * (z - 1.0))
    if comp[0] == "nb":
        order, b = comp[1], comp[2]
        if b * z >= 1.0:
            raise DomainError("boson pgf requires b*z < 1")
        return ((1.0 - b) / (1.0 - b * z)) ** order
    order, a = comp[1], comp[2]
    return (1.0 + a * (z - 1.0)) ** order


def _component_mean_f2(comp: tuple) -> tuple[float, float]:
    """(mean, <n(n-1)>) of one primitive component."""
    if comp[0] == "poisson":
        mean = comp[1]
        return mean, mean * mean
    if comp[0] == "nb":
        order, b = comp[1], comp[2]
        per_mode = b / (1.0 - b)
        return order * per_mode, order * (order + 1) * per_mode * per_mode
    order, a = comp[1], comp[2]
    return order * a, order * (order - 1) * a * a


# -- public operations -----------------------------------------------------


def source_pmf(src: SourceLaw, n: int) -> float:
    """Weight W_n that exactly n quanta arrive in one gate."""
    if n != int(n) or n < 0:
        raise ValueError("n must be a non-negative integer")
    n = int(n)
    comps = src._components()
    if len(comps) == 1:
        return _component_pmf(comps[0], n)
    a, b = comps
    return sum(_component_pmf(a, k) * _component_pmf(b, n - k)
               for k in range(n + 1))


def source_pgf(src: SourceLaw, z: float) -> float:
    """Probability generating function Phi(z) = sum W_n z^n."""
    out = 1.0
    for comp in src._components():
        out *= _component_pgf(comp, z)
    return out


def source_factorial_moments(src: SourceLaw) -> FactorialMoments:
    """Analytic <n>, <n^2>, <n(n-1)>, Fano factor and Mandel Q."""
    comps = src._components()
    mean = 0.0
    f2 = 0.0
    means = []
    for comp in comps:
        m, c2 = _component_mean_f2(comp)
        means.append(m)
        mean += m
        f2 += c2
    if len(comps) == 2:
        f2 += 2.0 * means[0] * means[1]
    second = f2 + mean
    var = second - mean * mean
    fano = var / mean
    return FactorialMoments(mean=mean, second=second, factorial2=f2,
                            fano=fano, mandel_q=fano - 1.0)


def support_cutoff(src: SourceLaw, mass: float = TRUNCATION_MASS) -> int:
    """Smallest n* whose cumulative weight reaches `mass` (capped at 1e6)."""
    bound = src.max_count
    if bound is not None:
        return bound
    total = 0.0
    for n in range(TRUNCATION_CAP + 1):
        total += source_pmf(src, n)
        if total >= mass:
            return n
    return TRUNCATION_CAP


def poisson_tv_distance(src: SourceLaw) -> float:
    """Total-variation distance between {W_n} and a Poisson law of equal mean.

    Goes to zero in the many-mode, low-occupancy limit at fixed total mean.
    """
    mean = source_factorial_moments(src).mean
    poisson = SourceLaw("coherent", modes=1, nbar=mean)
    cutoff = max(support_cutoff(src), support_cutoff(poisson))
    return 0.5 * sum(abs(source_pmf(src, n) - _component_pmf(("poisson", mean), n))
                     for n in range(cutoff + 1))
