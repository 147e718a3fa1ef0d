"""Complex-valued holographic memory: interference learning over
stimulus/response pairs and recall-key reconstruction.

All sums here are plain (unweighted) discrete sums, so complex states used
as stimuli, responses, or keys must carry grid_weight 1. Stimuli are
required to be unit-norm at learn time; with that convention an exact key
reproduces its stored response up to crosstalk from the other pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .patterns import ComplexState, OverlapSpectrum, RealPatternSet, _readonly

ORTHONORMAL_TOL = 1e-8

#: How far from unit norm a stimulus may be at learn time.
STIMULUS_NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class HoloMatrix:
    """Complex interference matrix mapping stimulus space to response space.

    The learned stimuli ride along so recall can report the per-pattern
    contribution spectrum of a key.
    """

    weights: np.ndarray
    stimuli: np.ndarray
    source_count: int = 0

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.complex128)
        s = np.asarray(self.stimuli, dtype=np.complex128)
        if w.ndim != 2:
            raise ValueError("weights must be a matrix")
        if s.ndim != 2 or s.shape[1] != w.shape[1]:
            raise ValueError("stimuli must be rows of length n_in")
        object.__setattr__(self, "weights", _readonly(w))
        object.__setattr__(self, "stimuli", _readonly(s))

    @property
    def n_in(self) -> int:
        return self.weights.shape[1]

    @property
    def n_out(self) -> int:
        return self.weights.shape[0]


def _as_complex_vector(x) -> np.ndarray:
    if isinstance(x, ComplexState):
        if x.grid_weight != 1.0:
            raise ValueError("holographic sums are unweighted; use grid_weight 1")
        return np.asarray(x.values)
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError("expected a 1-d vector")
    return v


def encode_phase(x, magnitudes=None) -> ComplexState:
    """Map data in [0, 1] onto phases (theta = 2*pi*x) on a unit-norm state.

    Magnitudes default to the flat 1/sqrt(n); explicitly given magnitudes
    are renormalized to unit norm. ``decode_phase`` inverts the map on [0, 1).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("x must be a non-empty 1-d vector")
    if np.any((x < 0.0) | (x > 1.0)):
        raise ValueError("entries must lie in [0, 1]")
    if magnitudes is None:
        mags = np.full(x.size, 1.0 / np.sqrt(x.size))
    else:
        mags = np.asarray(magnitudes, dtype=np.float64)
        if mags.shape != x.shape:
            raise ValueError("magnitudes must match x in shape")
        if np.any(mags <= 0.0):
            raise ValueError("magnitudes must be positive")
        mags = mags / np.linalg.norm(mags)
    return ComplexState(mags, 2.0 * np.pi * x)


def decode_phase(state: ComplexState) -> np.ndarray:
    """Recover the [0, 1) data vector behind an encode_phase state."""
    return state.phases / (2.0 * np.pi)


def holo_learn(pairs: Sequence[tuple]) -> HoloMatrix:
    """Accumulate the interference sum of (stimulus, response) pairs.

    Each pair contributes the outer product of the response with the
    conjugated stimulus, storing amplitude correlations and phase
    differences. Stimuli must be unit-norm.
    """
    if not pairs:
        raise ValueError("no pairs to learn")
    stimuli, responses = [], []
    for k, (s, o) in enumerate(pairs):
        sv = _as_complex_vector(s)
        ov = _as_complex_vector(o)
        if abs(np.linalg.norm(sv) - 1.0) > STIMULUS_NORM_TOL:
            raise ValueError(f"stimulus {k} is not unit-norm")
        stimuli.append(sv)
        responses.append(ov)
    n_in = stimuli[0].size
    n_out = responses[0].size
    weights = np.zeros((n_out, n_in), dtype=np.complex128)
    for sv, ov in zip(stimuli, responses):
        if sv.size != n_in or ov.size != n_out:
            raise ValueError("inconsistent pair dimensions")
        weights += np.outer(ov, np.conj(sv))
    return HoloMatrix(weights, np.array(stimuli), len(stimuli))


def holo_recall(memory: HoloMatrix, key) -> tuple[ComplexState, OverlapSpectrum]:
    """Reconstruct the response addressed by a key.

    Returns the raw matrix product as the response plus the spectrum of
    stimulus/key inner products, separating the addressed pattern's signal
    from crosstalk. Recall is linear in the key, so superposed keys are
    allowed; unit-norm keys make the spectrum directly comparable across
    patterns.
    """
    kv = _as_complex_vector(key)
    if kv.size != memory.n_in:
        raise ValueError(f"key length {kv.size} does not match n_in {memory.n_in}")
    response = memory.weights @ kv
    coeffs = np.conj(memory.stimuli) @ kv
    residual = kv - coeffs @ memory.stimuli
    gram = np.conj(memory.stimuli) @ memory.stimuli.T
    orthonormal = bool(
        np.max(np.abs(gram - np.eye(memory.source_count))) < ORTHONORMAL_TOL
    )
    spectrum = OverlapSpectrum(
        coefficients=coeffs,
        residual=residual,
        residual_norm=float(np.linalg.norm(residual)),
        orthonormal=orthonormal,
    )
    return ComplexState.from_values(response), spectrum


def self_associate(patterns) -> HoloMatrix:
    """Interference learning of each pattern with itself.

    On a real pattern set this reproduces the real outer-product Hebb sum
    exactly (the weights come out real with zero imaginary dust), which is
    why real rows are fed through without a polar round-trip.
    """
    if isinstance(patterns, RealPatternSet):
        rows = [row.astype(np.complex128) for row in patterns.patterns]
    else:
        rows = [_as_complex_vector(v) for v in patterns]
    return holo_learn([(row, row) for row in rows])


def split_association(vectors, boundary: int) -> HoloMatrix:
    """Self-interference of concatenated vectors split at ``boundary``.

    Each vector's head becomes the stimulus and its tail the response. The
    head is normalized and the tail scaled up by the same factor, so the
    accumulated matrix equals the raw head/tail interference sum while
    satisfying the unit-norm stimulus convention.
    """
    if isinstance(vectors, RealPatternSet):
        vectors = [row.astype(np.complex128) for row in vectors.patterns]
    pairs = []
    for k, v in enumerate(vectors):
        vv = _as_complex_vector(v)
        if not 1 <= boundary < vv.size:
            raise ValueError("boundary must split the vector into two non-empty parts")
        head, tail = vv[:boundary], vv[boundary:]
        scale = np.linalg.norm(head)
        if scale == 0.0:
            raise ValueError(f"vector {k} has a zero stimulus part")
        pairs.append((head / scale, tail * scale))
    return holo_learn(pairs)
