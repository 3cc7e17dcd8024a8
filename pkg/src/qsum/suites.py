"""Named verification suites: exhaustive numerical checks of every claimed
property, runnable from the command line and reused by the test suite.

Each check compares an implementation path against either an independent
oracle (brute-force subset search, direct complex sums, big-integer
binomials, sequential operator application) or an analytic inequality, and
reports a pass/fail with the observed extremal quantity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .boolfn import BooleanFunction, Measure, class_weights, first_moment, sigma_of
from .bounds import (
    EIGHT_OVER_PI_SQ,
    FOUR_OVER_PI_SQ,
    LEVEL_SLACK,
    avg_probabilistic_error,
    c_bound,
    error_at_level,
    g_func,
    h_func,
    level_errors,
    queries_for_epsilon,
    v_func,
    v_inverse,
    w_func,
    wa4_upper_bound,
    wan4_lower_bound,
    worst_probabilistic_error,
    worst_probabilistic_errors,
)
from .closedform import (
    distribution,
    kernel,
    outcome_probabilities,
    output_grid,
)
from .simulator import (
    Primitive,
    QubitLayout,
    StateVector,
    apply_grover,
    apply_lambda,
    apply_primitive,
    apply_standard_query,
    grover_eigenvectors,
    grover_spectrum,
    run_qs,
)

__all__ = [
    "CheckResult",
    "SUITE_NAMES",
    "run_suite",
    "kernel_direct_sum",
    "brute_force_error_at_level",
    "gate_grid_deviation",
]

SUITE_NAMES = ("unitarity", "oracle-equivalence", "bounds", "calculus", "average-case")


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _check(results: list[CheckResult], suite: str, name: str, passed: bool, detail: str) -> None:
    results.append(CheckResult(suite=suite, name=name, passed=bool(passed), detail=detail))


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def kernel_direct_sum(omega1: float, omega2: float, M: int) -> float:
    """|sum_j exp(-2 pi i (w1-w2) j)|^2 / M^2 evaluated term by term."""
    delta = omega1 - omega2
    total = sum(cmath.exp(-2j * math.pi * delta * j) for j in range(M))
    return abs(total) ** 2 / M**2


def brute_force_error_at_level(a, M: int, p: float) -> float:
    """min over outcome sets A with mass >= p of max_{j in A} |abar(j) - a|.

    Exhaustive over all 2^M - 1 nonempty subsets; only usable for small M.
    """
    dist = distribution(a, M)
    d = np.abs(dist.outputs - float(a))
    best = math.inf
    for size in range(1, M + 1):
        for subset in combinations(range(M), size):
            idx = list(subset)
            if dist.probs[idx].sum() >= p - LEVEL_SLACK:
                best = min(best, float(d[idx].max()))
    return best


def gate_grid_deviation(n_max: int = 6, m_max: int = 16) -> tuple[float, float, bool]:
    """Sweep every (n <= n_max, M <= m_max, k) and compare the simulator
    marginal with the closed form.

    Returns (max |gate - closed-form| over the grid, max tail probability,
    whether query/qubit accounting matched everywhere).
    """
    max_dev = 0.0
    max_tail = 0.0
    accounting_ok = True
    for n in range(1, n_max + 1):
        N = 1 << n
        for M in range(1, m_max + 1):
            for k in range(N + 1):
                f = BooleanFunction.from_mean(n, k)
                result = run_qs(f, M)
                probs = outcome_probabilities(sigma_of(Fraction(k, N), M).sigma, M)[0]
                dev = float(np.abs(result.probabilities[:M] - probs).max())
                max_dev = max(max_dev, dev)
                if result.probabilities.size > M:
                    max_tail = max(max_tail, float(result.probabilities[M:].max()))
                if result.queries != M - 1 or result.qubits != n + result.layout.m:
                    accounting_ok = False
    return max_dev, max_tail, accounting_ok


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _suite_unitarity() -> list[CheckResult]:
    rng = np.random.default_rng(20240901)
    out: list[CheckResult] = []
    suite = "unitarity"

    drift = 0.0
    for n, M in ((3, 6), (4, 5), (2, 8), (5, 1)):
        layout = QubitLayout(n=n, M=M)
        f = BooleanFunction(n, tuple(int(b) for b in rng.integers(0, 2, 1 << n)))
        state = StateVector.random(layout, rng)
        for op in (Primitive.QFT, Primitive.WALSH_HADAMARD, Primitive.S0,
                   Primitive.QFT_INVERSE):
            apply_primitive(state, op)
            drift = max(drift, abs(state.norm() - 1.0))
        apply_primitive(state, Primitive.QUERY, f)
        drift = max(drift, abs(state.norm() - 1.0))
        apply_grover(state, f)
        drift = max(drift, abs(state.norm() - 1.0))
        apply_lambda(state, f)
        drift = max(drift, abs(state.norm() - 1.0))
    _check(out, suite, "norm preservation across all operators", drift <= 1e-10,
           f"max |norm-1| = {drift:.3e} (tol 1e-10)")

    layout = QubitLayout(n=4, M=1)
    dev = 0.0
    for _ in range(5):
        state = StateVector.random(layout, rng)
        ref = state.amplitudes.copy()
        apply_primitive(state, Primitive.WALSH_HADAMARD)
        apply_primitive(state, Primitive.WALSH_HADAMARD)
        dev = max(dev, float(np.abs(state.amplitudes - ref).max()))
    _check(out, suite, "Walsh-Hadamard is an involution", dev <= 1e-12,
           f"max deviation {dev:.3e} (tol 1e-12)")

    layout = QubitLayout(n=2, M=6)
    dev = 0.0
    for _ in range(5):
        state = StateVector.random(layout, rng)
        ref = state.amplitudes.copy()
        apply_primitive(state, Primitive.QFT)
        apply_primitive(state, Primitive.QFT_INVERSE)
        dev = max(dev, float(np.abs(state.amplitudes - ref).max()))
    _check(out, suite, "Fourier block times its inverse is identity", dev <= 1e-12,
           f"max deviation {dev:.3e} (tol 1e-12, M=6 on 3 index qubits)")

    dev = 0.0
    for _ in range(5):
        n = 3
        f = BooleanFunction(n, tuple(int(b) for b in rng.integers(0, 2, 1 << n)))
        layout = QubitLayout(n=n + 1, M=1)
        data = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        data /= np.linalg.norm(data)
        ancilla = np.array([-1.0, 1.0]) / math.sqrt(2.0)  # (|1> - |0>)/sqrt(2)
        state = StateVector(np.kron(data, ancilla), layout)
        apply_standard_query(state, f)
        expected = np.kron(data * (1.0 - 2.0 * f.table()), ancilla)
        dev = max(dev, float(np.abs(state.amplitudes - expected).max()))
    _check(out, suite, "XOR query with prepared ancilla equals sign query", dev <= 1e-12,
           f"max deviation {dev:.3e} (tol 1e-12)")

    dev = 0.0
    for n, k in ((3, 3), (3, 1), (4, 7), (5, 16)):
        f = BooleanFunction.from_mean(n, k)
        spec = grover_spectrum(Fraction(k, 1 << n))
        ones = f.table() == 1
        psi0 = np.where(~ones, 1.0 / math.sqrt(1 << n), 0.0).astype(complex)
        psi1 = np.where(ones, 1.0 / math.sqrt(1 << n), 0.0).astype(complex)
        for col, basis in enumerate((psi0, psi1)):
            state = StateVector(basis.copy(), QubitLayout(n=n, M=1))
            apply_grover(state, f)
            expected = (spec.subspace_matrix[0, col] * psi0
                        + spec.subspace_matrix[1, col] * psi1)
            dev = max(dev, float(np.abs(state.amplitudes - expected).max()))
    _check(out, suite, "Grover action on the invariant plane matches its 2x2 matrix",
           dev <= 1e-12, f"max deviation {dev:.3e} (tol 1e-12)")

    dev = 0.0
    for n, k in ((3, 1), (3, 5), (4, 9), (6, 31)):
        f = BooleanFunction.from_mean(n, k)
        spec = grover_spectrum(Fraction(k, 1 << n))
        plus, minus = grover_eigenvectors(f)
        for vec, lam in ((plus, spec.lambda_plus), (minus, spec.lambda_minus)):
            state = StateVector(vec.copy(), QubitLayout(n=n, M=1))
            apply_grover(state, f)
            dev = max(dev, float(np.linalg.norm(state.amplitudes - lam * vec)))
    _check(out, suite, "eigenvector relation Q psi = lambda psi", dev <= 1e-10,
           f"max residual norm {dev:.3e} (tol 1e-10)")

    dev = 0.0
    for n, k in ((3, 0), (3, 8), (3, 3), (4, 7), (2, 2)):
        f = BooleanFunction.from_mean(n, k)
        theta = sigma_of(Fraction(k, 1 << n), 1).theta
        plus, minus = grover_eigenvectors(f)
        uniform = np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=complex)
        recon = (-1j / math.sqrt(2.0)) * (
            cmath.exp(1j * theta) * plus - cmath.exp(-1j * theta) * minus
        )
        dev = max(dev, float(np.abs(recon - uniform).max()))
    _check(out, suite, "uniform state decomposes over the eigenvectors", dev <= 1e-10,
           f"max deviation {dev:.3e} (tol 1e-10, includes means 0 and 1)")
    return out


def _suite_oracle_equivalence() -> list[CheckResult]:
    out: list[CheckResult] = []
    suite = "oracle-equivalence"

    max_dev, max_tail, accounting_ok = gate_grid_deviation()
    _check(out, suite, "gate marginal equals closed form on the full grid",
           max_dev <= 1e-9,
           f"max deviation {max_dev:.3e} (tol 1e-9, n<=6, M<=16, all k)")
    _check(out, suite, "outcomes beyond M-1 carry no mass", max_tail <= 1e-12,
           f"max tail probability {max_tail:.3e} (tol 1e-12)")
    _check(out, suite, "every run reports M-1 queries and n+ceil(log2 M) qubits",
           accounting_ok, "exact match required")

    worst_gap = 0.0
    cases = [(Fraction(0, 2), M, 1) for M in range(1, 17)]
    cases += [(Fraction(1, 1), M, 1) for M in range(2, 17, 2)]
    cases += [(Fraction(1, 2), M, 1) for M in range(4, 65, 4)]
    for a, M, _ in cases:
        dist = distribution(a, M)
        mass = dist.probs[np.abs(dist.outputs - float(a)) <= 1e-12].sum()
        worst_gap = max(worst_gap, abs(mass - 1.0))
    _check(out, suite, "integral sigma puts all mass on the exact output",
           worst_gap <= 1e-12,
           f"max |mass-1| = {worst_gap:.3e} (a in {{0, 1, 1/2}} families, tol 1e-12)")

    norm_gap = 0.0
    sym_gap = 0.0
    for M in range(1, 65):
        N = 1 << 10
        sig = (M / math.pi) * np.arcsin(np.sqrt(np.arange(N + 1) / N))
        probs = outcome_probabilities(sig, M)
        norm_gap = max(norm_gap, float(np.abs(probs.sum(axis=1) - 1.0).max()))
        if M > 1:
            sym_gap = max(sym_gap, float(np.abs(probs[:, 1:] - probs[:, :0:-1]).max()))
            outputs = output_grid(M)
            sym_gap = max(sym_gap, float(np.abs(outputs[1:] - outputs[:0:-1]).max()))
    _check(out, suite, "distributions are normalized", norm_gap <= 1e-12,
           f"max |sum-1| = {norm_gap:.3e} (N=2^10, M<=64, tol 1e-12)")
    _check(out, suite, "probabilities and outputs are symmetric under j -> M-j",
           sym_gap <= 1e-12, f"max asymmetry {sym_gap:.3e} (tol 1e-12)")

    min_mass = 1.0
    for M in range(2, 17):
        N = 64
        for k in range(N + 1):
            sv = sigma_of(Fraction(k, N), M)
            dist = distribution(Fraction(k, N), M)
            lo, hi = math.floor(sv.sigma), math.ceil(sv.sigma)
            picks = {lo % M, hi % M, (M - lo) % M, (M - hi) % M}
            min_mass = min(min_mass, float(dist.probs[list(picks)].sum()))
    _check(out, suite, "the four outcomes bracketing sigma carry mass >= 8/pi^2",
           min_mass >= EIGHT_OVER_PI_SQ - 1e-12,
           f"min mass {min_mass:.6f} >= {EIGHT_OVER_PI_SQ:.6f}")
    return out


def _suite_bounds() -> list[CheckResult]:
    out: list[CheckResult] = []
    suite = "bounds"
    N12 = 1 << 12

    worst_excess = -math.inf
    for M in range(2, 65):
        rec = worst_probabilistic_error(M, N12, EIGHT_OVER_PI_SQ)
        worst_excess = max(worst_excess, rec.value - 0.75 * math.pi / M)
    _check(out, suite, "worst error at p = 8/pi^2 stays below (3/4) pi / M",
           worst_excess <= 1e-12,
           f"max (value - bound) = {worst_excess:.3e} over M = 2..64, N = 2^12")

    chain_excess = -math.inf
    for N in (1 << 2, 1 << 8, 1 << 12):
        for M in range(2, 65):
            errs = level_errors(np.arange(N + 1) / N, M,
                                [0.51, 0.6, 0.75, EIGHT_OVER_PI_SQ])
            for p, row in zip([0.51, 0.6, 0.75, EIGHT_OVER_PI_SQ], errs):
                chain_excess = max(
                    chain_excess, float(row.max()) - c_bound(p, M) * math.pi / M
                )
    _check(out, suite, "worst error respects C(p) pi / M for all p branches",
           chain_excess <= 1e-12,
           f"max (value - bound) = {chain_excess:.3e} over M<=64, N in {{2^2,2^8,2^12}}")

    recs = worst_probabilistic_errors(64, 1 << 20, [0.51, 0.6, 0.75, EIGHT_OVER_PI_SQ])
    ratios = [rec.value / ((1.0 - v_inverse(rec.p)) * math.pi / 64) for rec in recs]
    _check(out, suite, "worst error at M=64, N=2^20 sits in [0.85, 1.0] of the sharp rate",
           min(ratios) >= 0.85 and max(ratios) <= 1.0,
           f"ratios {', '.join(f'{r:.6f}' for r in ratios)}")

    gap = 0.0
    for M in range(1, 9):
        for k in range(17):
            a = Fraction(k, 16)
            for p in (0.51, 0.75, EIGHT_OVER_PI_SQ):
                gap = max(gap, abs(error_at_level(a, M, p)
                                   - brute_force_error_at_level(a, M, p)))
    _check(out, suite, "greedy level error equals exhaustive subset minimum",
           gap <= 1e-12, f"max |greedy - brute force| = {gap:.3e} (M<=8, a=k/16)")

    rounding_ok = True
    for N in (2, 4, 8):
        M = int(1.5 * math.pi * N) + 1
        for k in range(N + 1):
            a = Fraction(k, N)
            dist = distribution(a, M)
            hits = np.round(dist.outputs * N) / N == float(a)
            if dist.probs[hits].sum() < EIGHT_OVER_PI_SQ - 1e-12:
                rounding_ok = False
    _check(out, suite, "for M > (3 pi / 2) N rounding recovers the mean w.p. >= 8/pi^2",
           rounding_ok, "exhaustive over N in {2, 4, 8}")

    eps, p = 0.01, EIGHT_OVER_PI_SQ
    M = queries_for_epsilon(eps, p)
    rec = worst_probabilistic_error(M, 1 << 20, p)
    _check(out, suite, "the query prescription achieves the target accuracy",
           M == 236 and rec.value <= eps,
           f"M = {M}, worst error {rec.value:.6f} <= {eps} at N = 2^20")

    mono_ok = True
    grid = np.linspace(0.05, 1.0, 20)
    for M in (3, 7, 12):
        for k in (1, 5, 9, 14):
            errs = level_errors([k / 16], M, list(grid))[:, 0]
            if np.any(np.diff(errs) < -1e-15):
                mono_ok = False
    _check(out, suite, "level error is nondecreasing in p", mono_ok,
           "checked on a 20-point p grid for several (a, M)")
    return out


def _suite_calculus() -> list[CheckResult]:
    out: list[CheckResult] = []
    suite = "calculus"

    a1 = abs(v_inverse(EIGHT_OVER_PI_SQ) - 0.25)
    a2 = abs(v_inverse(FOUR_OVER_PI_SQ) - 0.5)
    _check(out, suite, "v inverse hits both interval endpoints",
           a1 <= 1e-10 and a2 <= 1e-10,
           f"|v^-1(8/pi^2)-1/4| = {a1:.2e}, |v^-1(4/pi^2)-1/2| = {a2:.2e} (tol 1e-10)")

    c1 = (1.0 - v_inverse(0.75)) * math.pi
    c2 = (1.0 - v_inverse(0.501)) * math.pi
    _check(out, suite, "sharp constants at the common probability levels",
           abs(c1 - 2.23) <= 0.01 and abs(c2 - 1.75) <= 0.01,
           f"(1-v^-1(0.75)) pi = {c1:.4f} ~ 2.23, (1-v^-1(0.501)) pi = {c2:.4f} ~ 1.75")

    grid = np.linspace(FOUR_OVER_PI_SQ, EIGHT_OVER_PI_SQ, 1000)
    resid = max(abs(math.pi**2 / 16 * p + 0.25 - (1.0 - v_inverse(p))) for p in grid)
    _check(out, suite, "linear approximation of 1 - v^-1(p) within 0.0085",
           resid <= 0.0085, f"max residual {resid:.6f} on a 1000-point grid")

    deltas = np.linspace(0.25, 0.5, 2001)
    vvals = [v_func(d) for d in deltas]
    _check(out, suite, "v is decreasing on [1/4, 1/2]",
           all(b < a for a, b in zip(vvals, vvals[1:])), "2001-point grid")

    gg = np.array([g_func(d) for d in np.linspace(0.0, 1.0, 10001)])
    at_half = abs(gg[5000] - EIGHT_OVER_PI_SQ)
    off = np.delete(gg, 5000)
    _check(out, suite, "g has minimum 8/pi^2 exactly at 1/2",
           gg.min() >= EIGHT_OVER_PI_SQ - 1e-12 and at_half <= 1e-12
           and off.min() > EIGHT_OVER_PI_SQ + 1e-12,
           f"g(1/2) - 8/pi^2 = {at_half:.2e}, off-center margin {off.min() - EIGHT_OVER_PI_SQ:.2e}")

    hh = [h_func(d) for d in np.concatenate([np.linspace(0, 0.25, 500),
                                             np.linspace(0.75, 1.0, 500)])]
    _check(out, suite, "h stays above 8/pi^2 on the outer quarters",
           min(hh) >= EIGHT_OVER_PI_SQ - 1e-12, f"min h = {min(hh):.6f}")

    wmin = min(w_func(0.5, M) for M in range(1, 65))
    _check(out, suite, "w(1/2, M) is at least 4/pi^2 for every M",
           wmin >= FOUR_OVER_PI_SQ, f"min over M<=64 is {wmin:.6f} >= {FOUR_OVER_PI_SQ:.6f}")

    rng = np.random.default_rng(77)
    gap = 0.0
    for _ in range(1000):
        M = int(rng.integers(1, 33))
        w1 = float(rng.uniform(-3, 3))
        w2 = float(rng.uniform(-3, 3))
        gap = max(gap, abs(kernel(w1, w2, M) - kernel_direct_sum(w1, w2, M)))
    _check(out, suite, "kernel matches the direct complex sum", gap <= 1e-12,
           f"max deviation {gap:.3e} on 1000 random frequency pairs (tol 1e-12)")
    return out


def _suite_average_case() -> list[CheckResult]:
    out: list[CheckResult] = []
    suite = "average-case"

    worst_gap = 0.0
    for N in (4, 64, 1 << 12, 1 << 20):
        for measure in (Measure.UNIFORM_FUNCTIONS, Measure.UNIFORM_MEANS):
            worst_gap = max(worst_gap, abs(float(class_weights(measure, N).sum()) - 1.0))
    _check(out, suite, "class weights sum to one for both measures up to N = 2^20",
           worst_gap <= 1e-12, f"max |sum-1| = {worst_gap:.3e} (tol 1e-12)")

    gap = 0.0
    for N in range(1, 25):
        ks = np.arange(N + 1)
        direct = float(np.dot(class_weights(Measure.UNIFORM_FUNCTIONS, N),
                              np.abs(0.5 - ks / N)))
        gap = max(gap, abs(first_moment(Measure.UNIFORM_FUNCTIONS, N) - direct))
    _check(out, suite, "closed-form first moment equals the direct sum for N <= 24",
           gap <= 1e-14, f"max deviation {gap:.3e} (tol 1e-14)")

    N = 1 << 12
    ratio = first_moment(Measure.UNIFORM_FUNCTIONS, N) * math.sqrt(2.0 * math.pi * N)
    m2 = first_moment(Measure.UNIFORM_MEANS, N)
    _check(out, suite, "uniform-function moment decays like 1/sqrt(2 pi N)",
           0.99 <= ratio <= 1.01, f"ratio {ratio:.6f} at N = 2^12")
    _check(out, suite, "uniform-mean moment approaches 1/4",
           0.24 <= m2 <= 0.26 and abs(m2 - 0.25) <= 1.0 / N,
           f"moment {m2:.6f} at N = 2^12")

    ok_up = True
    details = []
    for M in (4, 8, 16, 32):
        rec = avg_probabilistic_error(M, N, 0.75, Measure.UNIFORM_FUNCTIONS)
        ok_up = ok_up and rec.value <= wa4_upper_bound(M, N)
        details.append(f"M={M}: {rec.value:.5f} <= {wa4_upper_bound(M, N):.5f}")
    _check(out, suite, "divisible-by-4 average error obeys its upper bound",
           ok_up, "; ".join(details))

    ok_dn = True
    details = []
    for M in (5, 6, 7, 18):
        rec = avg_probabilistic_error(M, N, 0.75, Measure.UNIFORM_FUNCTIONS, beta=2.0)
        ok_dn = ok_dn and rec.value >= wan4_lower_bound(M, N, 2.0)
        details.append(f"M={M}: {rec.value:.5f} >= {wan4_lower_bound(M, N, 2.0):.5f}")
    _check(out, suite, "non-divisible average error obeys its lower bound",
           ok_dn, "; ".join(details))
    return out


_SUITES = {
    "unitarity": _suite_unitarity,
    "oracle-equivalence": _suite_oracle_equivalence,
    "bounds": _suite_bounds,
    "calculus": _suite_calculus,
    "average-case": _suite_average_case,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run a named suite (or 'all'); raises ValueError on an unknown name."""
    if name == "all":
        results: list[CheckResult] = []
        for suite in SUITE_NAMES:
            results.extend(_SUITES[suite]())
        return results
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    return _SUITES[name]()
