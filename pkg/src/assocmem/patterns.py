"""Pattern sets, corruption, and comparison shared by all memory models.

Conventions used throughout the package:

* Stored real patterns are unit-norm by default; bipolar entries are scaled
  to +/-1/sqrt(n) so normalization is built in (``to_signs`` recovers the
  raw +/-1 view for display).
* Complex states keep a polar (amplitude, phase) representation with phases
  wrapped to [0, 2*pi). Phase-only edits therefore never touch amplitudes.
* Spatial integrals are uniform-grid Riemann sums: every inner product over
  a complex state is scaled by its scalar ``grid_weight``.
* Every stochastic operation is a pure function of its inputs and ``seed``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * np.pi

#: Residual-norm floor below which Gram-Schmidt declares linear dependence.
DEGENERACY_TOL = 1e-10


class DegeneracyError(ValueError):
    """A vector handed to :func:`orthogonalize` depends on its predecessors."""

    def __init__(self, index: int, residual: float):
        self.index = index
        self.residual = residual
        super().__init__(
            f"vector {index} is linearly dependent on its predecessors "
            f"(residual norm {residual:.3e})"
        )


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RealPatternSet:
    """P stored real activity vectors of length n, one per row."""

    patterns: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        pats = np.asarray(self.patterns, dtype=np.float64)
        if pats.ndim != 2 or pats.shape[0] < 1 or pats.shape[1] < 1:
            raise ValueError("patterns must form a non-empty (p, n) array")
        object.__setattr__(self, "patterns", _readonly(pats))
        if self.normalized:
            norms = np.linalg.norm(pats, axis=1)
            if np.max(np.abs(norms - 1.0)) > 1e-12:
                raise ValueError("normalized pattern set contains a non-unit vector")

    @property
    def n(self) -> int:
        return self.patterns.shape[1]

    @property
    def p(self) -> int:
        return self.patterns.shape[0]

    def vector(self, k: int) -> np.ndarray:
        return self.patterns[k]

    def to_signs(self) -> np.ndarray:
        """Raw +/-1 integer view of a bipolar set, for display."""
        return np.sign(self.patterns).astype(np.int8)


@dataclass(frozen=True, eq=False)
class ComplexState:
    """A complex vector over sites, stored as amplitudes and wrapped phases.

    ``grid_weight`` is the quadrature weight applied to every inner product,
    turning sums over sites into uniform-grid Riemann integrals.
    """

    amplitudes: np.ndarray
    phases: np.ndarray
    grid_weight: float = 1.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.float64)
        phis = np.asarray(self.phases, dtype=np.float64)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must form a non-empty 1-d array")
        if phis.shape != amps.shape:
            raise ValueError("phases must match amplitudes in shape")
        if np.any(amps < 0.0):
            raise ValueError("amplitudes must be non-negative")
        if not self.grid_weight > 0.0:
            raise ValueError("grid_weight must be positive")
        object.__setattr__(self, "amplitudes", _readonly(amps))
        object.__setattr__(self, "phases", _readonly(np.mod(phis, TWO_PI)))
        object.__setattr__(self, "grid_weight", float(self.grid_weight))

    @classmethod
    def from_values(cls, values, grid_weight: float = 1.0) -> "ComplexState":
        values = np.asarray(values, dtype=np.complex128)
        return cls(np.abs(values), np.angle(values), grid_weight)

    @cached_property
    def values(self) -> np.ndarray:
        return _readonly(self.amplitudes * np.exp(1j * self.phases))

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        """Grid-weighted Euclidean norm sqrt(w * sum A_i^2)."""
        return float(np.sqrt(self.grid_weight) * np.linalg.norm(self.amplitudes))

    def normalized(self) -> "ComplexState":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize a zero state")
        return ComplexState(self.amplitudes / nrm, self.phases, self.grid_weight)


@dataclass(frozen=True)
class PatternDistance:
    """Similarity of two patterns: inner-product overlap, plus the fraction
    of differing signs when both inputs are real bipolar."""

    overlap: complex | float
    hamming_fraction: float | None = None


@dataclass(frozen=True, eq=False)
class OverlapSpectrum:
    """Coefficients of a probe against every stored pattern.

    ``residual`` is the probe minus its coefficient expansion; it equals the
    out-of-span component only when the stored set is orthonormal, which the
    ``orthonormal`` flag records.
    """

    coefficients: np.ndarray
    residual: np.ndarray
    residual_norm: float
    orthonormal: bool

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _readonly(np.asarray(self.coefficients)))
        object.__setattr__(self, "residual", _readonly(np.asarray(self.residual)))

    @property
    def in_span_norm(self) -> float:
        """Sum of squared coefficient magnitudes."""
        return float(np.sum(np.abs(self.coefficients) ** 2))

    @property
    def pattern_count(self) -> int:
        return self.coefficients.shape[0]


def generate_bipolar(n: int, p: int, seed) -> RealPatternSet:
    """Draw p random bipolar patterns with entries +/-1/sqrt(n)."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be at least 1")
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(p, n)) * 2 - 1
    return RealPatternSet(signs / np.sqrt(n))


def random_complex_states(
    n: int, p: int, seed, grid_weight: float = 1.0
) -> list[ComplexState]:
    """Draw p unit-norm complex Gaussian states on an n-point grid."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be at least 1")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((p, n)) + 1j * rng.standard_normal((p, n))
    states = []
    for row in raw:
        nrm = np.sqrt(grid_weight) * np.linalg.norm(row)
        states.append(ComplexState.from_values(row / nrm, grid_weight))
    return states


def random_phase_states(
    n: int, p: int, seed, grid_weight: float = 1.0
) -> list[ComplexState]:
    """Draw p unit-norm states with constant amplitude and uniform phases."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be at least 1")
    rng = np.random.default_rng(seed)
    amp = np.full(n, 1.0 / np.sqrt(n * grid_weight))
    return [
        ComplexState(amp, rng.uniform(0.0, TWO_PI, size=n), grid_weight)
        for _ in range(p)
    ]


def _gram_schmidt(mat: np.ndarray, weight: float) -> np.ndarray:
    p, n = mat.shape
    if p > n:
        raise ValueError(f"cannot orthogonalize {p} vectors in dimension {n}")
    out = np.array(mat, copy=True)
    for k in range(p):
        u = out[k]
        # Modified Gram-Schmidt; the second pass keeps pairwise products
        # below 1e-10 even for large, nearly dependent sets.
        for _ in range(2):
            for j in range(k):
                u = u - (weight * np.vdot(out[j], u)) * out[j]
        residual = np.sqrt(weight) * np.linalg.norm(u)
        if residual < DEGENERACY_TOL:
            raise DegeneracyError(k, float(residual))
        out[k] = u / residual
    return out


def orthogonalize(patterns):
    """Gram-Schmidt a RealPatternSet or a list of ComplexState.

    Output vectors are unit-norm with pairwise inner products below 1e-10;
    complex states are orthogonalized under their grid-weighted product.
    """
    if isinstance(patterns, RealPatternSet):
        return RealPatternSet(_gram_schmidt(patterns.patterns, 1.0))
    states: Sequence[ComplexState] = list(patterns)
    if not states:
        raise ValueError("no states to orthogonalize")
    weight = states[0].grid_weight
    n = states[0].n
    for s in states:
        if s.n != n:
            raise ValueError("states differ in length")
        if s.grid_weight != weight:
            raise ValueError("states differ in grid_weight")
    basis = _gram_schmidt(
        np.array([s.values for s in states], dtype=np.complex128), weight
    )
    return [ComplexState.from_values(row, weight) for row in basis]


def _require_bipolar(v: np.ndarray) -> float:
    mags = np.abs(v)
    if mags[0] == 0.0 or np.max(np.abs(mags - mags[0])) > 1e-12:
        raise ValueError("expected a bipolar pattern (entries of equal magnitude)")
    return float(mags[0])


def corrupt_flip(v, fraction: float, seed) -> np.ndarray:
    """Sign-flip exactly round(fraction * n) distinct sites of a bipolar pattern."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0, 1]")
    v = np.asarray(v, dtype=np.float64)
    _require_bipolar(v)
    k = int(round(fraction * v.size))
    out = v.copy()
    if k:
        rng = np.random.default_rng(seed)
        sites = rng.choice(v.size, size=k, replace=False)
        out[sites] = -out[sites]
    return out


def corrupt_phase(state: ComplexState, sigma: float, seed) -> ComplexState:
    """Perturb each phase by independent zero-mean Gaussian noise of std sigma.

    Amplitudes are carried over untouched; phases re-wrap to [0, 2*pi).
    """
    if sigma < 0.0:
        raise ValueError("sigma must be non-negative")
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=state.n) if sigma > 0.0 else 0.0
    return ComplexState(state.amplitudes, state.phases + noise, state.grid_weight)


def overlap(a, b) -> PatternDistance:
    """Inner-product overlap, conjugating the first argument in the complex case.

    Complex states use the grid-weighted product w * sum(conj(a_i) * b_i);
    real inputs use the plain dot product and, when both are bipolar, also
    report the fraction of differing signs.
    """
    if isinstance(a, ComplexState) or isinstance(b, ComplexState):
        if not (isinstance(a, ComplexState) and isinstance(b, ComplexState)):
            raise ValueError("cannot mix complex states with real vectors")
        if a.n != b.n:
            raise ValueError(f"length mismatch: {a.n} vs {b.n}")
        if a.grid_weight != b.grid_weight:
            raise ValueError("grid_weight mismatch")
        return PatternDistance(complex(a.grid_weight * np.vdot(a.values, b.values)))
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape or av.ndim != 1:
        raise ValueError(f"length mismatch: {av.shape} vs {bv.shape}")
    value = float(np.dot(av, bv))
    hamming = None
    try:
        _require_bipolar(av)
        _require_bipolar(bv)
    except ValueError:
        pass
    else:
        hamming = float(np.mean(np.sign(av) != np.sign(bv)))
    return PatternDistance(value, hamming)
