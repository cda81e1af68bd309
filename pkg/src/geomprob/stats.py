"""Streaming moments, chi-square machinery and goodness-of-fit containers.

The standard error comes from single-pass Welford accumulation merged in
fixed order, so estimates are bit-reproducible under any partitioning into
batches or workers.  Chi-square tail thresholds are computed here from a
series / continued-fraction evaluation of the regularized incomplete gamma
function, keeping the runtime free of statistics dependencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class RunningStats:
    """Welford accumulator: count, mean and sum of squared deviations."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add_batch(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        k = values.size
        if k == 0:
            return
        batch_mean = float(values.mean())
        batch_m2 = float(((values - batch_mean) ** 2).sum())
        self._merge_moments(k, batch_mean, batch_m2)

    def merge(self, other: "RunningStats") -> None:
        self._merge_moments(other.count, other.mean, other.m2)

    def _merge_moments(self, k: int, mean: float, m2: float) -> None:
        if k == 0:
            return
        total = self.count + k
        delta = mean - self.mean
        self.mean += delta * k / total
        self.m2 += m2 + delta * delta * self.count * k / total
        self.count = total

    @property
    def variance(self) -> float:
        if self.count < 2:
            return float("nan")
        return self.m2 / (self.count - 1)

    @property
    def std_error(self) -> float:
        if self.count < 2:
            return float("nan")
        return math.sqrt(max(0.0, self.variance / self.count))


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate with its provenance."""

    experiment: str
    mean: float
    std_error: float
    n: int
    ci95: tuple[float, float]
    seed: int
    workers: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("an estimate needs at least 2 samples")
        if not self.std_error >= 0.0:
            raise ValueError("standard error must be nonnegative")

    @classmethod
    def from_stats(
        cls, experiment: str, stats: RunningStats, seed: int, workers: int
    ) -> "Estimate":
        half = 1.96 * stats.std_error
        return cls(
            experiment=experiment,
            mean=stats.mean,
            std_error=stats.std_error,
            n=stats.count,
            ci95=(stats.mean - half, stats.mean + half),
            seed=seed,
            workers=workers,
        )

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "mean": self.mean,
            "std_error": self.std_error,
            "n": self.n,
            "ci95": list(self.ci95),
            "seed": self.seed,
            "workers": self.workers,
        }


# ---------------------------------------------------------------------------
# regularized incomplete gamma and chi-square tails
# ---------------------------------------------------------------------------

_GAMMA_TOL = 1e-14
_GAMMA_MAX_ITER = 10_000


def regularized_gamma_p(a: float, x: float) -> float:
    """P(a, x): series for x < a + 1, continued fraction otherwise."""
    if a <= 0.0 or x < 0.0:
        raise ValueError("regularized_gamma_p needs a > 0 and x >= 0")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_continued_fraction(a, x)


def _gamma_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_GAMMA_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _GAMMA_TOL:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_continued_fraction(a: float, x: float) -> float:
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_TOL:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def chi2_cdf(x: float, dof: int) -> float:
    if dof < 1:
        raise ValueError("chi2_cdf needs dof >= 1")
    if x <= 0.0:
        return 0.0
    return regularized_gamma_p(dof / 2.0, x / 2.0)


def chi2_ppf(q: float, dof: int) -> float:
    """Quantile of the chi-square distribution by bisection."""
    if not 0.0 < q < 1.0:
        raise ValueError("chi2_ppf needs 0 < q < 1")
    lo = 0.0
    hi = dof + 10.0 * math.sqrt(2.0 * dof) + 10.0
    while chi2_cdf(hi, dof) < q:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_cdf(mid, dof) < q:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def ks_statistic(samples: np.ndarray, cdf) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a callable CDF."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("ks_statistic needs at least one sample")
    f = np.asarray(cdf(x), dtype=float)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


@dataclass(frozen=True)
class HistogramGof:
    """Binned empirical density with chi-square statistic against an analytic law."""

    name: str
    support: tuple[float, float]
    edges: np.ndarray = field(repr=False)
    observed: np.ndarray = field(repr=False)
    expected: np.ndarray = field(repr=False)
    chi2: float
    dof: int
    threshold_99: float
    passed: bool
    n: int
    seed: int
    workers: int
    resampled: int = 0

    @classmethod
    def from_counts(
        cls,
        name: str,
        support: tuple[float, float],
        edges: np.ndarray,
        observed: np.ndarray,
        bin_probabilities: np.ndarray,
        seed: int,
        workers: int,
        resampled: int = 0,
    ) -> "HistogramGof":
        observed = np.asarray(observed, dtype=np.int64)
        n = int(observed.sum())
        expected = n * np.asarray(bin_probabilities, dtype=float)
        chi2 = float((((observed - expected) ** 2) / expected).sum())
        dof = observed.size - 1
        threshold = chi2_ppf(0.99, dof)
        return cls(
            name=name,
            support=support,
            edges=np.asarray(edges, dtype=float),
            observed=observed,
            expected=expected,
            chi2=chi2,
            dof=dof,
            threshold_99=threshold,
            passed=chi2 < threshold,
            n=n,
            seed=seed,
            workers=workers,
            resampled=resampled,
        )

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "support": list(self.support),
            "edges": [float(e) for e in self.edges],
            "observed": [int(o) for o in self.observed],
            "expected": [float(e) for e in self.expected],
            "chi2": self.chi2,
            "dof": self.dof,
            "threshold": self.threshold_99,
            "passed": self.passed,
            "n": self.n,
            "seed": self.seed,
            "workers": self.workers,
            "resampled": self.resampled,
        }
