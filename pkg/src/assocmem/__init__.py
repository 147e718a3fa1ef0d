"""Associative memories with a shared pattern toolkit: a real attractor
network, a complex holographic store, and a projector-kernel quantum memory
with Born-rule collapse readout, plus a seeded experiment harness."""

from ._kernels import BACKEND
from .patterns import (
    ComplexState,
    DegeneracyError,
    OverlapSpectrum,
    PatternDistance,
    RealPatternSet,
    corrupt_flip,
    corrupt_phase,
    generate_bipolar,
    orthogonalize,
    overlap,
    random_complex_states,
    random_phase_states,
)
from .hopfield import HebbMatrix, RecallResult, energy, hebb_learn, recall_iterate, recall_step
from .holographic import HoloMatrix, encode_phase, holo_learn, holo_recall, self_associate
from .quantum import (
    CollapseOutcome,
    GreenMemory,
    NoRecallError,
    QuantumRecallResult,
    collapse_readout,
    decompose,
    green_learn,
    phase_hebb_kernel,
    propagate,
)
from .harness import ExperimentConfig, capacity_sweep, correspondence_suite, run_recall_trial

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "ComplexState",
    "DegeneracyError",
    "OverlapSpectrum",
    "PatternDistance",
    "RealPatternSet",
    "corrupt_flip",
    "corrupt_phase",
    "generate_bipolar",
    "orthogonalize",
    "overlap",
    "random_complex_states",
    "random_phase_states",
    "HebbMatrix",
    "RecallResult",
    "energy",
    "hebb_learn",
    "recall_iterate",
    "recall_step",
    "HoloMatrix",
    "encode_phase",
    "holo_learn",
    "holo_recall",
    "self_associate",
    "CollapseOutcome",
    "GreenMemory",
    "NoRecallError",
    "QuantumRecallResult",
    "collapse_readout",
    "decompose",
    "green_learn",
    "phase_hebb_kernel",
    "propagate",
    "ExperimentConfig",
    "capacity_sweep",
    "correspondence_suite",
    "run_recall_trial",
]
