"""Probabilistic error functionals and the analytic bounds they obey.

The level error of a mean a at probability p is the smallest radius alpha
such that outcomes within alpha of a carry mass at least p.  Maximizing over
all means k/N gives the worst-case functional; weighting by a measure on the
function space gives the average-case one.  The v / C(p) calculus expresses
the sharp worst-case constants, and the divisible-by-4 upper bound and
non-divisible lower bound govern the average case under the uniform-function
measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .boolfn import Measure, class_weights
from .closedform import dirichlet_kernel_sq, outcome_probabilities, output_grid

__all__ = [
    "EIGHT_OVER_PI_SQ",
    "FOUR_OVER_PI_SQ",
    "LEVEL_SLACK",
    "Setting",
    "ErrorRecord",
    "UPPER_BOUND_REFS",
    "LOWER_BOUND_REFS",
    "error_at_level",
    "level_errors",
    "worst_probabilistic_error",
    "avg_probabilistic_error",
    "v_func",
    "v_inverse",
    "c_bound",
    "g_func",
    "h_func",
    "w_func",
    "wa4_upper_bound",
    "wan4_lower_bound",
    "queries_for_epsilon",
]

EIGHT_OVER_PI_SQ = 8.0 / math.pi**2  # largest probability the one-run bounds reach
FOUR_OVER_PI_SQ = 4.0 / math.pi**2

# Cumulative mass is compared against p - LEVEL_SLACK so that boundary cases
# (mass exactly p, e.g. a = 1/2 with 4 | M) are not lost to summation noise.
LEVEL_SLACK = 1e-12

# Rows per chunk when sweeping all means k/N, sized to keep the (rows, M)
# work arrays around tens of megabytes.
_CHUNK_CELLS = 1 << 21


class Setting(Enum):
    WORST_PROBABILISTIC = "worst"
    AVG_PROBABILISTIC = "avg"


UPPER_BOUND_REFS = frozenset({"ImprovedCor", "GlobalCor", "WA4"})
LOWER_BOUND_REFS = frozenset({"WAn4"})


@dataclass
class ErrorRecord:
    """One computed error value with the analytic bound that applies to it."""

    M: int
    N: int
    p: float
    setting: Setting
    measure: Measure | None
    value: float
    bound: float | None
    bound_ref: str | None

    @property
    def bound_holds(self) -> bool | None:
        """Whether value respects the attached bound (None when no bound)."""
        if self.bound is None:
            return None
        if self.bound_ref in LOWER_BOUND_REFS:
            return self.value >= self.bound
        return self.value <= self.bound * (1.0 + 1e-12) + 1e-300


def _validate_p(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"probability level must lie in (0, 1], got {p}")


def level_errors(means, M: int, ps: Sequence[float]) -> np.ndarray:
    """Level errors for many means and levels at once; shape (len(ps), len(means)).

    For each mean: sort outcomes by |abar(j) - a|, accumulate probability in
    that order, and report the distance at which the running mass first
    reaches p - LEVEL_SLACK.  Equidistant outcomes enter as a group by
    construction, since the crossing distance already admits the whole group.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    for p in ps:
        _validate_p(p)
    means = np.atleast_1d(np.asarray(means, dtype=np.float64))
    if means.size and not (means.min() >= 0.0 and means.max() <= 1.0):
        raise ValueError("means must lie in [0, 1]")
    sigma = (M / math.pi) * np.arcsin(np.sqrt(means))
    probs = outcome_probabilities(sigma, M)
    dists = np.abs(output_grid(M)[None, :] - means[:, None])
    order = np.argsort(dists, axis=1, kind="stable")
    dists = np.take_along_axis(dists, order, axis=1)
    cum = np.cumsum(np.take_along_axis(probs, order, axis=1), axis=1)
    out = np.empty((len(ps), means.size))
    for i, p in enumerate(ps):
        hit = cum >= p - LEVEL_SLACK
        idx = np.argmax(hit, axis=1)
        idx[~hit[np.arange(means.size), idx]] = M - 1  # all-False guard
        out[i] = np.take_along_axis(dists, idx[:, None], axis=1)[:, 0]
    return out


def error_at_level(a: Fraction | float, M: int, p: float) -> float:
    """Smallest alpha with total outcome mass >= p inside |abar(j) - a| <= alpha."""
    return float(level_errors([float(a)], M, [p])[0, 0])


def _sweep_all_means(M: int, N: int, ps: Sequence[float]):
    """Yield (k-slice, level-error block) over the full mean grid k/N."""
    chunk = max(1024, _CHUNK_CELLS // max(M, 1))
    for lo in range(0, N + 1, chunk):
        hi = min(lo + chunk, N + 1)
        ks = np.arange(lo, hi, dtype=np.float64)
        yield slice(lo, hi), level_errors(ks / N, M, ps)


def worst_probabilistic_errors(M: int, N: int, ps: Sequence[float]) -> list[ErrorRecord]:
    """Worst-case records for several levels in one sweep over the mean grid.

    The outcome sort per mean is shared across levels, so this costs the same
    as a single-level sweep.
    """
    best = np.zeros(len(ps))
    for _, errs in _sweep_all_means(M, N, ps):
        best = np.maximum(best, errs.max(axis=1))
    records = []
    for p, value in zip(ps, best):
        if abs(p - EIGHT_OVER_PI_SQ) <= 1e-15:
            bound, ref = 0.75 * math.pi / M, "ImprovedCor"
        else:
            bound, ref = c_bound(p, M) * math.pi / M, "GlobalCor"
        records.append(ErrorRecord(
            M=M, N=N, p=p, setting=Setting.WORST_PROBABILISTIC, measure=None,
            value=float(value), bound=bound, bound_ref=ref,
        ))
    return records


def worst_probabilistic_error(M: int, N: int, p: float) -> ErrorRecord:
    """Maximum level error over every attainable mean k/N, k = 0..N."""
    _validate_p(p)
    return worst_probabilistic_errors(M, N, [p])[0]


def avg_probabilistic_error(
    M: int, N: int, p: float, measure: Measure, beta: float = 2.0
) -> ErrorRecord:
    """Measure-weighted average of the level error over all means k/N."""
    _validate_p(p)
    weights = class_weights(measure, N)
    parts = []
    for ks, errs in _sweep_all_means(M, N, [p]):
        parts.append(float(np.dot(weights[ks], errs[0])))
    value = math.fsum(parts)
    if measure is Measure.UNIFORM_FUNCTIONS and M % 4 == 0:
        bound, ref = wa4_upper_bound(M, N), "WA4"
    elif measure is Measure.UNIFORM_FUNCTIONS and M > 4:
        bound, ref = wan4_lower_bound(M, N, beta), "WAn4"
    else:
        bound, ref = c_bound(p, M) * math.pi / M, "GlobalCor"
    return ErrorRecord(
        M=M, N=N, p=p, setting=Setting.AVG_PROBABILISTIC, measure=measure,
        value=value, bound=bound, bound_ref=ref,
    )


def _sinc_sq(x: float) -> float:
    # sin^2(pi x)/(pi x)^2 with the limit 1 at x = 0.
    if abs(x) < 1e-9:
        return 1.0 - (math.pi * x) ** 2 / 3.0
    s = math.sin(math.pi * x) / (math.pi * x)
    return s * s


def v_func(delta: float) -> float:
    """sin^2(pi d)/(pi d)^2; decreasing on [1/4, 1/2] where it is inverted."""
    return _sinc_sq(delta)


def v_inverse(p: float) -> float:
    """Inverse of v on [1/4, 1/2], for p in [4/pi^2, 8/pi^2], by bisection."""
    if not FOUR_OVER_PI_SQ - 1e-12 <= p <= EIGHT_OVER_PI_SQ + 1e-12:
        raise ValueError(
            f"p must lie in [4/pi^2, 8/pi^2] = [{FOUR_OVER_PI_SQ:.6f}, "
            f"{EIGHT_OVER_PI_SQ:.6f}], got {p}"
        )
    lo, hi = 0.25, 0.5
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if v_func(mid) > p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def c_bound(p: float, M: int) -> float:
    """Sharp constant bound C(p) in the worst-case estimate C(p) * pi / M."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p < FOUR_OVER_PI_SQ:
        return 0.5
    if p <= EIGHT_OVER_PI_SQ:
        return 1.0 - v_inverse(p)
    return M / math.pi


def g_func(delta: float) -> float:
    """v(d) + v(1-d); at least 8/pi^2 on [0, 1], with the minimum at d = 1/2."""
    return _sinc_sq(delta) + _sinc_sq(1.0 - delta)


def h_func(delta: float) -> float:
    """max(v(d), v(1-d)); at least 8/pi^2 on [0, 1/4] and [3/4, 1]."""
    return max(_sinc_sq(delta), _sinc_sq(1.0 - delta))


def w_func(delta: float, M: int) -> float:
    """sin^2(pi d)/(M^2 sin^2(pi d / M)): retention mass of a rounded outcome."""
    return float(dirichlet_kernel_sq(delta, M))


def wa4_upper_bound(M: int, N: int) -> float:
    """Average-error upper bound under the uniform-function measure, 4 | M."""
    if M % 4 != 0:
        raise ValueError(f"M must be divisible by 4, got {M}")
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    moment_branch = (
        math.sqrt(3.0 / (2.0 * math.pi))
        * math.sqrt(1.0 + math.pi**2 / (4.0 * M * M))
        * math.exp(1.0 / (12.0 * (N - 1)))
        / math.sqrt(N - 1)
    )
    return min(0.75 * math.pi / M, moment_branch)


def wan4_lower_bound(M: int, N: int, beta: float) -> float:
    """Average-error lower bound under the uniform-function measure, 4 not | M.

    Valid for M > 4 and any beta > 1; the expression may be non-positive when
    the concentration factor loses to the tail term (then it is vacuous).
    """
    if M % 4 == 0:
        raise ValueError(f"M must not be divisible by 4, got {M}")
    if M <= 4:
        raise ValueError(f"M must exceed 4, got {M}")
    if beta <= 1.0:
        raise ValueError(f"beta must exceed 1, got {beta}")
    concentration = 1.0 - 2.0 * math.exp(-N * math.pi**2 / (8.0 * beta * M) ** 2)
    return (math.pi / (4.0 * M)) * (1.0 - 1.0 / M - 1.0 / beta) * concentration


def queries_for_epsilon(epsilon: float, p: float) -> int:
    """Smallest M with guaranteed error <= epsilon at probability p.

    Returns M = ceil((1 - v^-1(p)) pi / epsilon); the run then uses M - 1
    queries.  Requires epsilon in (0, 1) and p in (1/2, 8/pi^2].
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.5 < p <= EIGHT_OVER_PI_SQ + 1e-12:
        raise ValueError(f"p must lie in (1/2, 8/pi^2], got {p}")
    return math.ceil((1.0 - v_inverse(p)) * math.pi / epsilon)
