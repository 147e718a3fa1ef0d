"""Real-valued attractor memory: outer-product storage, linear and sign
recall, quadratic energy, and signal/noise decomposition of recall outputs.

The linear activation is the bare matrix product and is the right tool for
single-step analysis on (near-)orthonormal sets; the sign activation adds
the nonlinearity needed for iterative convergence on generic bipolar sets
and is the default for iterative recall.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .patterns import OverlapSpectrum, RealPatternSet, _readonly

#: Net inputs within this of zero count as ties and keep the previous sign.
TIE_EPS = 1e-12

#: Largest |coefficient| still treated as "no pattern recalled".
DEAD_COEFFICIENT = 1e-12

#: Pairwise-overlap bound under which a stored set counts as orthonormal.
ORTHONORMAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class HebbMatrix:
    """Symmetric n-by-n weight matrix accumulated from stored patterns."""

    weights: np.ndarray
    zero_diagonal: bool = False
    source_count: int = 0

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weights must be a square matrix")
        if np.max(np.abs(w - w.T), initial=0.0) > 1e-12:
            raise ValueError("weights must be symmetric")
        if self.zero_diagonal and np.any(np.diag(w) != 0.0):
            raise ValueError("zero_diagonal is set but the diagonal is not zero")
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class RecallResult:
    """Outcome of iterative recall, decomposed against the training set.

    ``output == signal_A * v_winner + residual`` with ``noise_B_norm`` the
    Euclidean norm of that residual. ``winner`` is None when every stored
    coefficient is negligible (probe orthogonal to the whole memory).
    """

    output: np.ndarray
    winner: int | None
    signal_A: float
    noise_B_norm: float
    iterations: int
    converged: bool


def _check_dim(memory: HebbMatrix, q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (memory.n,):
        raise ValueError(f"state length {q.shape} does not match matrix size {memory.n}")
    return q


def hebb_learn(pattern_set: RealPatternSet, zero_diagonal: bool = False) -> HebbMatrix:
    """Accumulate the outer-product sum of all stored patterns."""
    n = pattern_set.n
    weights = np.zeros((n, n))
    # Fixed accumulation order: other learners reproduce this sum bitwise.
    for v in pattern_set.patterns:
        weights += np.outer(v, v)
    if zero_diagonal:
        np.fill_diagonal(weights, 0.0)
    return HebbMatrix(weights, zero_diagonal, pattern_set.p)


def recall_step(memory: HebbMatrix, q, activation: str = "linear") -> np.ndarray:
    """One recall update: the matrix product, optionally sign-quantized.

    The sign activation renormalizes to unit norm and keeps the previous
    sign wherever the net input ties at zero.
    """
    q = _check_dim(memory, q)
    if activation == "linear":
        return memory.weights @ q
    if activation == "sign":
        out, _, _ = _kernels.sign_iterate(memory.weights, q, 1, 0.0, TIE_EPS)
        return out
    raise ValueError(f"unknown activation {activation!r}")


def recall_iterate(
    memory: HebbMatrix,
    q_prime,
    pattern_set: RealPatternSet,
    activation: str = "sign",
    max_iters: int = 100,
    tol: float = 1e-9,
) -> RecallResult:
    """Iterate recall_step until the state moves less than tol, then score
    the final state against the training set.

    Non-convergence is not an error; the result just carries converged=False.
    """
    q = _check_dim(memory, q_prime)
    if pattern_set.n != memory.n:
        raise ValueError("pattern set does not match matrix size")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if activation == "sign":
        out, iterations, converged = _kernels.sign_iterate(
            memory.weights, q, max_iters, tol, TIE_EPS
        )
    elif activation == "linear":
        out = q
        iterations, converged = max_iters, False
        for it in range(1, max_iters + 1):
            nxt = memory.weights @ out
            moved = np.linalg.norm(nxt - out)
            out = nxt
            if moved < tol:
                iterations, converged = it, True
                break
    else:
        raise ValueError(f"unknown activation {activation!r}")

    spectrum = signal_noise_decompose(pattern_set, out)
    coeffs = spectrum.coefficients
    if np.max(np.abs(coeffs)) <= DEAD_COEFFICIENT:
        winner, signal = None, 0.0
        noise = float(np.linalg.norm(out))
    else:
        winner = int(np.argmax(np.abs(coeffs)))
        signal = float(coeffs[winner])
        noise = float(np.linalg.norm(out - signal * pattern_set.vector(winner)))
    return RecallResult(out, winner, signal, noise, iterations, converged)


def energy(memory: HebbMatrix, q) -> float:
    """Quadratic energy -q.W.q/2 of a network state."""
    q = _check_dim(memory, q)
    return -0.5 * float(q @ (memory.weights @ q))


def signal_noise_decompose(pattern_set: RealPatternSet, q_probe) -> OverlapSpectrum:
    """Coefficients of a probe against every stored pattern, plus the
    remainder of the probe outside its coefficient expansion."""
    probe = np.asarray(q_probe, dtype=np.float64)
    if probe.shape != (pattern_set.n,):
        raise ValueError("probe length does not match the pattern set")
    coeffs = pattern_set.patterns @ probe
    residual = probe - pattern_set.patterns.T @ coeffs
    gram = pattern_set.patterns @ pattern_set.patterns.T
    orthonormal = bool(
        np.max(np.abs(gram - np.eye(pattern_set.p))) < ORTHONORMAL_TOL
    )
    return OverlapSpectrum(
        coefficients=coeffs,
        residual=residual,
        residual_norm=float(np.linalg.norm(residual)),
        orthonormal=orthonormal,
    )


def async_descent(memory: HebbMatrix, q0, sweeps: int = 2, seed=0):
    """Asynchronous single-site sign updates over seeded site permutations.

    Returns (final state, energies), where energies[t] is the quadratic
    energy after t single-site updates. With a zero (or non-negative)
    diagonal the trace never increases.
    """
    q = _check_dim(memory, q0)
    if sweeps < 1:
        raise ValueError("sweeps must be at least 1")
    rng = np.random.default_rng(seed)
    order = np.concatenate([rng.permutation(memory.n) for _ in range(sweeps)])
    return _kernels.async_sign_descent(
        memory.weights, q, order.astype(np.int64), TIE_EPS
    )
