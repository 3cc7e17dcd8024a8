"""Boolean functions on {0..N-1}, their means, and measures on the function space.

The domain size is always a power of two, N = 2**n.  Means are kept as exact
rationals k/N so that integrality decisions downstream never suffer from
float noise.  Two probability measures on the set of Boolean functions are
supported: uniform over the 2**N functions ("p1") and uniform over the N+1
attainable means ("p2").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

__all__ = [
    "BooleanFunction",
    "Measure",
    "SigmaValue",
    "sigma_of",
    "class_weight",
    "class_weights",
    "first_moment",
]

# Below this, min(k, N-k) is small enough that exact big-integer binomials
# are cheap; above it the log-space Stirling form is accurate to ~1e-15.
_EXACT_TAIL = 64


class Measure(Enum):
    """Probability measure on the set of Boolean functions with domain size N."""

    UNIFORM_FUNCTIONS = "p1"  # every function has weight 2**-N
    UNIFORM_MEANS = "p2"      # every mean class k/N has weight 1/(N+1)


@dataclass(frozen=True)
class BooleanFunction:
    """A function f: {0..2**n - 1} -> {0, 1}, stored as its value table."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"qubit count must be >= 0, got {self.n}")
        if len(self.values) != 1 << self.n:
            raise ValueError(
                f"value table must have length 2**{self.n} = {1 << self.n}, "
                f"got {len(self.values)}"
            )
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("value table entries must be 0 or 1")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def mean(self) -> Fraction:
        """Arithmetic mean of the table, as the exact rational popcount/N."""
        return Fraction(sum(self.values), self.N)

    @classmethod
    def from_mean(cls, n: int, k: int) -> "BooleanFunction":
        """Canonical function with mean k/2**n: the first k points map to 1.

        Every quantity in this package depends on f only through its mean,
        so enumerating k stands in for enumerating all 2**N functions.
        """
        N = 1 << n
        if not 0 <= k <= N:
            raise ValueError(f"k must be in [0, {N}], got {k}")
        return cls(n, (1,) * k + (0,) * (N - k))

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BooleanFunction":
        """Parse the serialized table: hex for N >= 4, one '0'/'1' per point below.

        Hex strings carry the most significant nibble first, i.e. the bit for
        point i is bit N-1-i of the encoded integer.  A leading "0x" and
        uppercase digits are accepted.
        """
        N = 1 << n
        if N < 4:
            if len(text) != N or any(c not in "01" for c in text):
                raise ValueError(f"expected {N} binary digits, got {text!r}")
            return cls(n, tuple(int(c) for c in text))
        body = text[2:] if text[:2].lower() == "0x" else text
        if len(body) != N // 4:
            raise ValueError(
                f"expected {N // 4} hex digits for n={n}, got {len(body)}"
            )
        try:
            word = int(body, 16)
        except ValueError:
            raise ValueError(f"malformed hex table {text!r}") from None
        return cls(n, tuple((word >> (N - 1 - i)) & 1 for i in range(N)))

    def to_hex(self) -> str:
        """Serialize the table (lowercase hex, or raw bits for N < 4)."""
        if self.N < 4:
            return "".join(str(v) for v in self.values)
        word = 0
        for v in self.values:
            word = (word << 1) | v
        return format(word, f"0{self.N // 4}x")

    def table(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int8)


@dataclass(frozen=True)
class SigmaValue:
    """The mean a together with its angle theta = arcsin(sqrt(a)) and
    the rescaled angle sigma = M*theta/pi in [0, M/2]."""

    sigma: float
    theta: float
    a: Fraction | float


def sigma_of(a: Fraction | float, M: int) -> SigmaValue:
    """Map a mean a in [0,1] to its sigma value for parameter M >= 1.

    sigma is strictly increasing in a, with sigma(0) = 0 and sigma(1) = M/2.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    x = float(a)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"mean must lie in [0, 1], got {a}")
    theta = math.asin(math.sqrt(x))
    return SigmaValue(sigma=M * theta / math.pi, theta=theta, a=a)


def _stirling_tail(x: np.ndarray) -> np.ndarray:
    # Remainder J(x) in ln x! = x ln x - x + ln(2 pi x)/2 + J(x); three terms
    # leave an error below 1/(1680*64**7) ~ 1e-16 for x >= 64.
    x2 = x * x
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * x2)) / x2) / x


def _log_weights_stirling(N: int, ks: np.ndarray) -> np.ndarray:
    """ln(C(N,k) * 2**-N) for 64 <= k <= N-64, without cancellation.

    A direct lgamma difference loses ~1e-9 absolute at N = 2**20, which would
    break the 1e-12 weight-sum contract; writing the exponent through
    log1p(+-t) with t = 2k/N - 1 keeps each weight accurate to ~1e-15.
    """
    ks = np.asarray(ks, dtype=np.float64)
    t = (2.0 * ks - N) / N
    gap = -0.5 * ((1.0 + t) * np.log1p(t) + (1.0 - t) * np.log1p(-t))
    base = N * gap - 0.5 * np.log(0.5 * math.pi * N * (1.0 - t * t))
    return base + _stirling_tail(np.float64(N)) - _stirling_tail(ks) - _stirling_tail(N - ks)


def _weight_uniform_functions(N: int, k: int) -> float:
    if min(k, N - k) < _EXACT_TAIL:
        return float(Fraction(math.comb(N, k), 1 << N))
    return float(np.exp(_log_weights_stirling(N, np.array([k], dtype=np.float64))[0]))


def class_weight(measure: Measure, k: int, N: int) -> float:
    """Total weight of the mean class {f : mean(f) = k/N} under the measure."""
    if not 0 <= k <= N:
        raise ValueError(f"k must be in [0, {N}], got {k}")
    if measure is Measure.UNIFORM_MEANS:
        return 1.0 / (N + 1)
    return _weight_uniform_functions(N, k)


def class_weights(measure: Measure, N: int) -> np.ndarray:
    """All N+1 class weights at once; sums to 1 within 1e-12 up to N = 2**20."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if measure is Measure.UNIFORM_MEANS:
        return np.full(N + 1, 1.0 / (N + 1))
    w = np.empty(N + 1)
    edge = min(_EXACT_TAIL, (N + 2) // 2)
    for k in range(edge):
        w[k] = w[N - k] = float(Fraction(math.comb(N, k), 1 << N))
    if N + 1 > 2 * edge:
        mid = np.arange(edge, N + 1 - edge, dtype=np.float64)
        w[edge : N + 1 - edge] = np.exp(_log_weights_stirling(N, mid))
    return w


def first_moment(measure: Measure, N: int) -> float:
    """First central moment of the mean, E|a - 1/2|, under the measure.

    For the uniform-function measure this is the closed form
    2**-N * C(N-1, (N-1)/2) for odd N and 2**-(N+1) * C(N, N/2) for even N;
    it decays like 1/sqrt(2 pi N).  For the uniform-mean measure the direct
    sum is used; it tends to 1/4.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if measure is Measure.UNIFORM_MEANS:
        ks = np.arange(N + 1, dtype=np.float64)
        return float(np.abs(0.5 - ks / N).sum() / (N + 1))
    if N % 2 == 1:
        return 0.5 * _weight_uniform_functions(N - 1, (N - 1) // 2)
    return 0.5 * _weight_uniform_functions(N, N // 2)
