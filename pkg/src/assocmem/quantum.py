"""Projector-kernel quantum memory over discretized wavefunctions.

Stored unit-norm states accumulate into an n-by-n Hermitian kernel that acts
as a one-step propagator; applying it to a probe reproduces the coefficient
expansion of the probe over the stored states, and readout either takes the
dominant coefficient deterministically or samples a stored state with
Born-rule probabilities (collapse).

Index convention: the kernel's first index contracts with the input state,
and every contraction carries the scalar grid weight of the uniform spatial
grid. All phases follow the kernel construction conj(psi(r1)) * psi(r2),
i.e. phase differences enter as +i*(phi(r2) - phi(r1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .patterns import ComplexState, OverlapSpectrum, _readonly

#: |coefficient|^2 at or below this counts as "probe orthogonal to memory".
DEAD_THRESHOLD = 1e-12

#: Top-two |coefficient| gap under which the deterministic winner is ambiguous.
AMBIGUITY_EPS = 1e-9

#: Pairwise-overlap bound for flagging a stored set as orthonormal.
ORTHONORMAL_TOL = 1e-8

STATE_NORM_TOL = 1e-9


class NoRecallError(RuntimeError):
    """The probe is orthogonal to every stored state: nothing to recall."""


@dataclass(frozen=True, eq=False)
class GreenMemory:
    """Hermitian memory kernel plus the states it was accumulated from.

    For orthonormal sources the kernel is a projector under grid-weighted
    composition (conventionally normalized propagators differ by a factor
    of -i; this kernel is the projector-normalized form).
    """

    kernel: np.ndarray
    grid_weight: float
    eigenstates: tuple
    orthonormal_source: bool

    def __post_init__(self):
        k = np.asarray(self.kernel, dtype=np.complex128)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise ValueError("kernel must be a square matrix")
        if np.max(np.abs(k - k.conj().T), initial=0.0) > 1e-12:
            raise ValueError("kernel must be Hermitian")
        if not self.grid_weight > 0.0:
            raise ValueError("grid_weight must be positive")
        object.__setattr__(self, "kernel", _readonly(k))
        object.__setattr__(self, "eigenstates", tuple(self.eigenstates))
        object.__setattr__(self, "grid_weight", float(self.grid_weight))

    @property
    def n(self) -> int:
        return self.kernel.shape[0]

    @property
    def eigenstate_count(self) -> int:
        return len(self.eigenstates)


@dataclass(frozen=True, eq=False)
class CollapseOutcome:
    """Result of one Born-rule readout draw.

    ``post_state`` is the winning stored eigenstate object itself, and
    ``probability`` the normalized weight it was drawn with.
    """

    winner: int
    probability: float
    post_state: ComplexState
    seed: int | None


@dataclass(frozen=True, eq=False)
class QuantumRecallResult:
    """Deterministic recall report, optionally with a sampled collapse.

    ``signal_A`` is the winning coefficient magnitude and ``noise_B_norm``
    the grid-weighted norm of the output minus the winner's contribution.
    """

    output: ComplexState
    winner: int | None
    signal_A: float
    noise_B_norm: float
    ambiguous: bool
    spectrum: OverlapSpectrum
    collapse: CollapseOutcome | None


def _check_states(eigenstates: Sequence[ComplexState]):
    states = tuple(eigenstates)
    if not states:
        raise ValueError("need at least one eigenstate")
    n, w = states[0].n, states[0].grid_weight
    for k, s in enumerate(states):
        if s.n != n:
            raise ValueError(f"eigenstate {k} has length {s.n}, expected {n}")
        if s.grid_weight != w:
            raise ValueError(f"eigenstate {k} has a different grid_weight")
    return states, n, w


def _pairwise_orthonormal(values: np.ndarray, weight: float) -> bool:
    gram = weight * (values.conj() @ values.T)
    off = gram - np.diag(np.diag(gram))
    return bool(np.max(np.abs(off), initial=0.0) < ORTHONORMAL_TOL)


def green_learn(eigenstates: Sequence[ComplexState]) -> GreenMemory:
    """Accumulate the memory kernel sum_k conj(psi_k(r1)) * psi_k(r2).

    States must be unit-norm under the grid-weighted inner product; the
    orthonormal_source flag records whether all pairwise overlaps stayed
    below 1e-8.
    """
    states, n, w = _check_states(eigenstates)
    values = np.array([s.values for s in states])
    for k, s in enumerate(states):
        if abs(s.norm() - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"eigenstate {k} is not unit-norm under the grid weight")
    kernel = np.zeros((n, n), dtype=np.complex128)
    for row in values:
        kernel += np.outer(np.conj(row), row)
    return GreenMemory(kernel, w, states, _pairwise_orthonormal(values, w))


def phase_hebb_kernel(amplitudes, phases, grid_weight: float = 1.0) -> GreenMemory:
    """Build the kernel from explicit per-pattern amplitude and phase vectors.

    Assembles each state as A * exp(i*phi) and delegates to green_learn, so
    the memory encodes amplitude correlations A(r1)*A(r2) together with
    phase differences +i*(phi(r2) - phi(r1)).
    """
    amplitudes = [np.asarray(a, dtype=np.float64) for a in amplitudes]
    phases = [np.asarray(f, dtype=np.float64) for f in phases]
    if len(amplitudes) != len(phases) or not amplitudes:
        raise ValueError("need matching, non-empty amplitude and phase lists")
    states = []
    for k, (a, f) in enumerate(zip(amplitudes, phases)):
        if a.shape != f.shape:
            raise ValueError(f"pattern {k}: amplitude and phase shapes differ")
        if np.any(a < 0.0):
            raise ValueError(f"pattern {k}: amplitudes must be non-negative")
        states.append(ComplexState(a, f, grid_weight))
    return green_learn(states)


def propagate(memory: GreenMemory, psi_prime: ComplexState) -> ComplexState:
    """One propagation step: contract the kernel's first index with the
    input state under the grid weight."""
    if psi_prime.n != memory.n:
        raise ValueError(f"state length {psi_prime.n} does not match kernel {memory.n}")
    if psi_prime.grid_weight != memory.grid_weight:
        raise ValueError("state and memory grid weights differ")
    out = memory.grid_weight * (psi_prime.values @ memory.kernel)
    return ComplexState.from_values(out, memory.grid_weight)


def compose(a: GreenMemory, b: GreenMemory | None = None) -> np.ndarray:
    """Grid-weighted kernel composition; equals the kernel itself when the
    sources are orthonormal (projector law)."""
    b = a if b is None else b
    if a.n != b.n or a.grid_weight != b.grid_weight:
        raise ValueError("kernels must share size and grid weight")
    return a.grid_weight * (a.kernel @ b.kernel)


def decompose(eigenstates: Sequence[ComplexState], psi_prime: ComplexState) -> OverlapSpectrum:
    """Grid-weighted coefficients of a probe against every stored state,
    plus the probe's remainder outside the coefficient expansion."""
    states, n, w = _check_states(eigenstates)
    if psi_prime.n != n:
        raise ValueError("probe length does not match the eigenstates")
    if psi_prime.grid_weight != w:
        raise ValueError("probe and eigenstates have different grid weights")
    values = np.array([s.values for s in states])
    probe = psi_prime.values
    coeffs = w * (values.conj() @ probe)
    residual = probe - coeffs @ values
    return OverlapSpectrum(
        coefficients=coeffs,
        residual=residual,
        residual_norm=float(np.sqrt(w) * np.linalg.norm(residual)),
        orthonormal=_pairwise_orthonormal(values, w),
    )


def collapse_readout(
    spectrum: OverlapSpectrum,
    eigenstates: Sequence[ComplexState],
    seed,
    dead_threshold: float = DEAD_THRESHOLD,
) -> CollapseOutcome:
    """Draw one stored state with probability proportional to |coefficient|^2.

    Deterministic per seed; a generator may be passed instead of an integer
    seed to amortize setup over many draws.
    """
    states = tuple(eigenstates)
    probs = np.abs(np.asarray(spectrum.coefficients)) ** 2
    if probs.shape[0] != len(states):
        raise ValueError("spectrum and eigenstates disagree on pattern count")
    if float(np.max(probs)) <= dead_threshold:
        raise NoRecallError("every stored coefficient is below the dead threshold")
    total = float(np.sum(probs))
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    draw = rng.random() * total
    winner = int(min(np.searchsorted(np.cumsum(probs), draw, side="right"),
                     probs.shape[0] - 1))
    return CollapseOutcome(
        winner=winner,
        probability=float(probs[winner] / total),
        post_state=states[winner],
        seed=seed if isinstance(seed, (int, np.integer)) else None,
    )


def recall(
    memory: GreenMemory,
    psi_prime: ComplexState,
    mode: str = "deterministic",
    seed=None,
    eigenstates: Sequence[ComplexState] | None = None,
) -> QuantumRecallResult:
    """Propagate a probe through the memory and identify the recalled state.

    Deterministic mode picks the largest |coefficient| (ties resolve to the
    lowest index and set the ambiguous flag); sampled mode additionally runs
    a Born-rule collapse draw. The propagated output is never renormalized.
    """
    if mode not in ("deterministic", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    states = tuple(eigenstates) if eigenstates is not None else memory.eigenstates
    output = propagate(memory, psi_prime)
    spectrum = decompose(states, psi_prime)
    mags = np.abs(spectrum.coefficients)
    top = float(np.max(mags))
    if top * top <= DEAD_THRESHOLD:
        winner, signal, noise, ambiguous = None, 0.0, output.norm(), False
    else:
        near = np.flatnonzero(mags >= top - AMBIGUITY_EPS)
        winner = int(near[0])
        ambiguous = near.size > 1
        signal = float(mags[winner])
        leftover = output.values - spectrum.coefficients[winner] * states[winner].values
        noise = float(np.sqrt(memory.grid_weight) * np.linalg.norm(leftover))
    collapse = collapse_readout(spectrum, states, seed) if mode == "sampled" else None
    return QuantumRecallResult(output, winner, signal, noise, ambiguous, spectrum, collapse)
