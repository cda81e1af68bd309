"""Exact rational-times-pi-power arithmetic and closed-form constants.

Every reference value of the laboratory is represented exactly as
(num/den) * pi**(half_power/2) with arbitrary-precision integers, so that
identities such as the half-integer duplication formula or the binomial
form of the expected-simplex ratio v(B^(n-1)) can be checked with integer
equality rather than in floating point.  Quantities that are sums of two
different pi powers (e.g. the planar convex-position probability
1 - 35/(12 pi^2)) are held as a PiSum of such terms.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class PiRational:
    """Exact value (num/den) * pi**(half_power/2), always in lowest terms."""

    num: int
    den: int = 1
    half_power: int = 0

    def __post_init__(self) -> None:
        num, den, hp = self.num, self.den, self.half_power
        if den == 0:
            raise ZeroDivisionError("PiRational with zero denominator")
        if den < 0:
            num, den = -num, -den
        if num == 0:
            den, hp = 1, 0
        else:
            g = math.gcd(abs(num), den)
            num //= g
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "half_power", hp)

    def __float__(self) -> float:
        # num/den can exceed float range long before the pi power rebalances
        # it, so fold the exponent in via logarithms for large integers.
        if abs(self.num) < 2**52 and self.den < 2**52:
            return self.num / self.den * math.pi ** (self.half_power / 2.0)
        sign = 1.0 if self.num > 0 else -1.0
        log = (
            math.log(abs(self.num))
            - math.log(self.den)
            + 0.5 * self.half_power * math.log(math.pi)
        )
        return sign * math.exp(log)

    def __mul__(self, other: "PiRational") -> "PiRational":
        return PiRational(
            self.num * other.num, self.den * other.den, self.half_power + other.half_power
        )

    def __truediv__(self, other: "PiRational") -> "PiRational":
        if other.num == 0:
            raise ZeroDivisionError("division by zero PiRational")
        return PiRational(
            self.num * other.den, self.den * other.num, self.half_power - other.half_power
        )

    def __pow__(self, k: int) -> "PiRational":
        if k == 0:
            return PiRational(1)
        if k < 0:
            return PiRational(1) / self ** (-k)
        return PiRational(self.num**k, self.den**k, self.half_power * k)

    def __neg__(self) -> "PiRational":
        return PiRational(-self.num, self.den, self.half_power)

    def __add__(self, other):
        if isinstance(other, PiSum):
            return other + self
        if not isinstance(other, PiRational):
            return NotImplemented
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        if self.half_power == other.half_power:
            return PiRational(
                self.num * other.den + other.num * self.den,
                self.den * other.den,
                self.half_power,
            )
        return PiSum((self, other))

    def __sub__(self, other):
        return self + (-other)

    def __str__(self) -> str:
        frac = f"{self.num}" if self.den == 1 else f"{self.num}/{self.den}"
        if self.half_power == 0 or self.num == 0:
            return frac
        if self.half_power == 2:
            return f"{frac}*pi"
        if self.half_power % 2 == 0:
            return f"{frac}*pi^{self.half_power // 2}"
        return f"{frac}*pi^({self.half_power}/2)"

    def as_dict(self) -> dict:
        return {
            "num": self.num,
            "den": self.den,
            "pi_half_power": self.half_power,
            "value": float(self),
            "text": str(self),
        }


@dataclass(frozen=True)
class PiSum:
    """Sum of PiRational terms with pairwise distinct pi powers."""

    terms: tuple[PiRational, ...]

    def __post_init__(self) -> None:
        merged: dict[int, PiRational] = {}
        for t in self.terms:
            if t.half_power in merged:
                combined = merged[t.half_power] + t
                if not isinstance(combined, PiRational):
                    raise AssertionError("same-power terms must combine")
                merged[t.half_power] = combined
            else:
                merged[t.half_power] = t
        kept = tuple(
            sorted((t for t in merged.values() if t.num != 0), key=lambda t: t.half_power)
        )
        object.__setattr__(self, "terms", kept)

    def __float__(self) -> float:
        return math.fsum(float(t) for t in self.terms)

    def __add__(self, other):
        if isinstance(other, PiRational):
            return PiSum(self.terms + (other,)).collapse()
        if isinstance(other, PiSum):
            return PiSum(self.terms + other.terms).collapse()
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, PiRational):
            return self + (-other)
        if isinstance(other, PiSum):
            return self + PiSum(tuple(-t for t in other.terms))
        return NotImplemented

    def collapse(self):
        """Return a plain PiRational when at most one term survives."""
        if not self.terms:
            return PiRational(0)
        if len(self.terms) == 1:
            return self.terms[0]
        return self

    def __str__(self) -> str:
        parts = [str(t) for t in self.terms]
        return " + ".join(parts).replace("+ -", "- ")

    def as_dict(self) -> dict:
        return {
            "terms": [t.as_dict() for t in self.terms],
            "value": float(self),
            "text": str(self),
        }


ExactValue = PiRational | PiSum

ONE = PiRational(1)


def half_integer_factorial(two_k: int) -> PiRational:
    """(two_k/2)! for integer and half-integer arguments, two_k >= -1.

    Integer case is the ordinary factorial; the half-integer case uses the
    duplication identity (m - 1/2)! = sqrt(pi) (2m)! / (2^(2m) m!), whose
    base case is (-1/2)! = sqrt(pi).
    """
    if two_k < -1:
        raise ValueError(f"half_integer_factorial needs two_k >= -1, got {two_k}")
    if two_k % 2 == 0:
        return PiRational(math.factorial(two_k // 2))
    m = (two_k + 1) // 2
    return PiRational(math.factorial(2 * m), 2 ** (2 * m) * math.factorial(m), 1)


def unit_ball_volume(n: int) -> PiRational:
    """Volume of the n-dimensional unit ball: pi^(n/2) / (n/2)!."""
    if n < 1:
        raise ValueError(f"unit_ball_volume needs n >= 1, got {n}")
    return PiRational(1, 1, n) / half_integer_factorial(n)


def half_ball_integral(n: int) -> PiRational:
    """Exact value of the moment integral over [0, 1] of (1 - p^2)^((n-1)/2).

    Equals beta_n / (2 beta_{n-1}) with beta_0 = 1; this is the
    normalization constant of every secant-offset density below.
    """
    if n < 1:
        raise ValueError(f"half_ball_integral needs n >= 1, got {n}")
    beta_prev = ONE if n == 1 else unit_ball_volume(n - 1)
    return unit_ball_volume(n) / (PiRational(2) * beta_prev)


def half_integer_binomial(n: int) -> PiRational:
    """Central binomial C(n, n/2) for odd n, via half-integer factorials."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"half_integer_binomial needs odd n >= 1, got {n}")
    half = half_integer_factorial(n)
    return PiRational(math.factorial(n)) / (half * half)


def central_binomial(n: int) -> PiRational:
    """C(n, n/2) for any n >= 1; exact pi power appears for odd n."""
    if n % 2 == 0:
        return PiRational(math.comb(n, n // 2))
    return half_integer_binomial(n)


def kingman_v(n: int) -> PiRational:
    """Normalized expected simplex volume v(B^(n-1)) for the unit ball.

    v(B^(n-1)) = C(n, n/2)^n * C(n^2, n^2/2)^(-1) * 2^(1-n); even n gives a
    pure rational, odd n carries pi^(1-n).
    """
    if n < 2:
        raise ValueError(f"kingman_v needs n >= 2, got {n}")
    return central_binomial(n) ** n / central_binomial(n * n) / PiRational(2 ** (n - 1))


def sylvester_probability(d: int) -> ExactValue:
    """Probability that d+2 uniform points in the unit d-ball are in convex position."""
    if d not in (1, 2, 3):
        raise ValueError(f"sylvester_probability supports d in {{1, 2, 3}}, got {d}")
    return PiRational(1) - PiRational(d + 2) * kingman_v(d + 1)


@dataclass(frozen=True)
class DensityLaw:
    """Analytic probability density on an interval, used for GOF expectations."""

    name: str
    support: tuple[float, float]
    pdf: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def bin_probabilities(self, edges: np.ndarray) -> np.ndarray:
        """Integral of the density over each bin, by adaptive quadrature."""
        edges = np.asarray(edges, dtype=float)
        probs = np.empty(edges.size - 1)
        for i in range(edges.size - 1):
            probs[i], _ = adaptive_simpson(
                lambda x: float(self.pdf(np.asarray(x))), edges[i], edges[i + 1]
            )
        return probs

    def normalization_defect(self) -> float:
        lo, hi = self.support
        total, _ = adaptive_simpson(lambda x: float(self.pdf(np.asarray(x))), lo, hi)
        return abs(total - 1.0)

    def mean(self) -> float:
        lo, hi = self.support
        value, _ = adaptive_simpson(
            lambda x: x * float(self.pdf(np.asarray(x))), lo, hi
        )
        return value


def secant_offset_density(dim: int) -> DensityLaw:
    """Density of the offset |p| of the flat spanned by dim uniform points in B^dim.

    The law is (1 - p^2)^((dim^2 - 1)/2) normalized by the half-ball moment
    integral: 16/(3 pi) (1-h^2)^(3/2) in the plane, (315/128)(1-p^2)^4 for
    planes in space, and (1-p^2)^(15/2) / (beta_16 / (2 beta_15)) for
    hyperplanes in four dimensions.
    """
    if dim not in (2, 3, 4):
        raise ValueError(f"secant_offset_density supports dim in {{2, 3, 4}}, got {dim}")
    exponent = (dim * dim - 1) / 2.0
    scale = 1.0 / float(half_ball_integral(dim * dim))

    def pdf(p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return scale * np.clip(1.0 - p * p, 0.0, None) ** exponent

    return DensityLaw(name=f"secant-offset-{dim}d", support=(0.0, 1.0), pdf=pdf)


def max_radius_density() -> DensityLaw:
    """Density 6 c^5 of the largest of three radial distances in the unit disk."""

    def pdf(c: np.ndarray) -> np.ndarray:
        c = np.asarray(c, dtype=float)
        return 6.0 * c**5

    return DensityLaw(name="max-radius", support=(0.0, 1.0), pdf=pdf)


def disk_radius_density() -> DensityLaw:
    """Density 2 r of the radial distance of one uniform point in the unit disk."""

    def pdf(r: np.ndarray) -> np.ndarray:
        return 2.0 * np.asarray(r, dtype=float)

    return DensityLaw(name="disk-radius", support=(0.0, 1.0), pdf=pdf)


def reference_constants() -> dict[str, ExactValue]:
    """Named exact expectations reproduced by the Monte Carlo estimators."""
    return {
        "center_triangle": PiRational(4, 9, -2),
        "boundary_triangle": PiRational(35, 36, -2),
        "disk_triangle": PiRational(35, 48, -2),
        "offcut": PiRational(35, 72, -2) + PiRational(1, 3, 2),
        "unit_interval_distance": PiRational(1, 3),
    }


def constants_table() -> dict[str, ExactValue]:
    """Everything the constants report emits: references, volumes, ratios."""
    table: dict[str, ExactValue] = dict(reference_constants())
    for n in range(1, 6):
        table[f"beta_{n}"] = unit_ball_volume(n)
    table["half_ball_integral_9"] = half_ball_integral(9)
    table["half_ball_integral_16"] = half_ball_integral(16)
    for n in (2, 3, 4):
        table[f"v_b{n - 1}"] = kingman_v(n)
    for d in (1, 2, 3):
        table[f"sylvester_{d}d"] = sylvester_probability(d)
    # E[r] for two uniform disk points: with I_n = 2 pi 2^n * half-ball
    # moment(n+1), the chain J_1 = I_4/6 and E[r] = J_1/A^2 collapses to
    # (16/3) * half_ball_integral(5) / pi.
    table["mean_distance_disk"] = PiRational(16, 3, -2) * half_ball_integral(5)
    return table
