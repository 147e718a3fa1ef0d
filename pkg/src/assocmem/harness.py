"""Reproducible experiments: recall trials, capacity sweeps, and the
cross-model correspondence suite.

Every trial's randomness derives from a stable hash of (base_seed, model,
n, p, level, trial, role), so sweeps are bitwise reproducible and trials
are independent of execution order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import holographic, hopfield, quantum
from .patterns import (
    ComplexState,
    RealPatternSet,
    corrupt_flip,
    corrupt_phase,
    generate_bipolar,
    orthogonalize,
    random_complex_states,
    random_phase_states,
)

CSV_HEADER = "model,n,p,load,level,trials,accuracy,mean_signal,mean_noise,mean_iters"

MODELS = ("hopfield", "holographic", "quantum")
CORRUPTIONS = ("flip", "phase")


def stable_seed(*parts) -> int:
    """64-bit seed from a stable hash of the given parts (the builtin hash
    is salted per process and unusable for reproducible experiments)."""
    msg = "|".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(msg, digest_size=8).digest(), "little")


@dataclass
class ExperimentConfig:
    """Grid definition for a capacity sweep."""

    model: str
    n: int
    p_values: list
    corruption_kind: str
    levels: list
    trials: int
    base_seed: int
    activation: str = "sign"
    mode: str = "deterministic"
    orthogonalize: bool = False
    zero_diagonal: bool = False
    success_overlap: float = 0.9
    max_iters: int = 100
    tol: float = 1e-9
    output: str | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.corruption_kind not in CORRUPTIONS:
            raise ValueError(f"unknown corruption kind {self.corruption_kind!r}")
        if self.model == "hopfield" and self.corruption_kind != "flip":
            raise ValueError("hopfield patterns are real; only 'flip' corruption applies")
        if self.n < 1 or self.trials < 1:
            raise ValueError("n and trials must be at least 1")
        if not self.p_values or any(p < 1 for p in self.p_values):
            raise ValueError("p_values must be non-empty positive integers")
        if not self.levels:
            raise ValueError("levels must be non-empty")
        if self.corruption_kind == "flip" and any(
            not 0.0 <= lv <= 1.0 for lv in self.levels
        ):
            raise ValueError("flip levels must lie in [0, 1]")
        if self.orthogonalize and self.model != "quantum":
            raise ValueError("orthogonalize is only supported for the quantum model")
        if self.orthogonalize and max(self.p_values) > self.n:
            raise ValueError("cannot orthogonalize more patterns than dimensions")
        if self.activation not in ("sign", "linear"):
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.mode not in ("deterministic", "sampled"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        doc = dict(doc)
        corruption = doc.pop("corruption", None)
        if corruption is not None:
            doc["corruption_kind"] = corruption["kind"]
            doc["levels"] = list(corruption["levels"])
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        missing = {"model", "n", "p_values", "corruption_kind", "levels",
                   "trials", "base_seed"} - set(doc)
        if missing:
            raise ValueError(f"missing config keys: {sorted(missing)}")
        return cls(**doc)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["corruption"] = {"kind": doc.pop("corruption_kind"),
                             "levels": doc.pop("levels")}
        return doc


@dataclass(frozen=True)
class TrialRecord:
    success: bool
    winner: int | None
    signal: float
    noise: float
    iterations: int


@dataclass(frozen=True)
class SweepRow:
    model: str
    n: int
    p: int
    load: float
    level: float
    trials: int
    accuracy: float
    mean_signal: float
    mean_noise: float
    mean_iters: float

    def to_csv(self) -> str:
        return ",".join(
            [self.model, repr(self.n), repr(self.p), repr(self.load),
             repr(self.level), repr(self.trials), repr(self.accuracy),
             repr(self.mean_signal), repr(self.mean_noise), repr(self.mean_iters)]
        )


@dataclass(frozen=True)
class SweepTable:
    rows: tuple
    config: dict

    def to_csv_text(self) -> str:
        return "\n".join([CSV_HEADER] + [r.to_csv() for r in self.rows]) + "\n"

    def write(self, path) -> tuple[Path, Path]:
        """Write the CSV and a sidecar JSON of the resolved config."""
        path = Path(path)
        path.write_text(self.to_csv_text(), encoding="utf-8", newline="\n")
        sidecar = path.with_suffix(".config.json")
        sidecar.write_text(
            json.dumps(self.config, indent=2, sort_keys=True) + "\n",
            encoding="utf-8", newline="\n",
        )
        return path, sidecar


def _flip_sites(state: ComplexState, fraction: float, seed) -> ComplexState:
    """Sign-flip round(fraction * n) grid sites of a complex state by
    shifting their phases by pi (amplitudes untouched)."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0, 1]")
    k = int(round(fraction * state.n))
    shift = np.zeros(state.n)
    if k:
        rng = np.random.default_rng(seed)
        shift[rng.choice(state.n, size=k, replace=False)] = np.pi
    return ComplexState(state.amplitudes, state.phases + shift, state.grid_weight)


def _corrupt_complex(state: ComplexState, kind: str, level: float, seed) -> ComplexState:
    if kind == "phase":
        return corrupt_phase(state, level, seed)
    return _flip_sites(state, level, seed)


def _overlap_with_target(target_values, out_values, weight: float) -> float:
    out_norm = np.sqrt(weight) * np.linalg.norm(out_values)
    if out_norm == 0.0:
        return 0.0
    return float(abs(weight * np.vdot(target_values, out_values)) / out_norm)


def run_recall_trial(config: ExperimentConfig, p: int, level: float, trial: int) -> TrialRecord:
    """One seeded generate/learn/corrupt/recall trial; the corrupted probe
    always derives from the first stored pattern, and success requires both
    recalling it as the winner and an output overlap above the threshold."""
    gen_seed = stable_seed(config.base_seed, config.model, config.n, p, level, trial, "generate")
    corrupt_seed = stable_seed(config.base_seed, config.model, config.n, p, level, trial, "corrupt")

    if config.model == "hopfield":
        pats = generate_bipolar(config.n, p, gen_seed)
        key = corrupt_flip(pats.vector(0), level, corrupt_seed)
        memory = hopfield.hebb_learn(pats, config.zero_diagonal)
        res = hopfield.recall_iterate(
            memory, key, pats, config.activation, config.max_iters, config.tol
        )
        out_norm = np.linalg.norm(res.output)
        ov = 0.0 if out_norm == 0.0 else float(pats.vector(0) @ res.output) / out_norm
        success = res.winner == 0 and ov > config.success_overlap
        return TrialRecord(success, res.winner, res.signal_A, res.noise_B_norm, res.iterations)

    if config.model == "holographic":
        stimuli = random_phase_states(config.n, p, gen_seed)
        memory = holographic.self_associate(stimuli)
        key = _corrupt_complex(stimuli[0], config.corruption_kind, level, corrupt_seed)
        response, spectrum = holographic.holo_recall(memory, key)
        mags = np.abs(spectrum.coefficients)
        winner = int(np.argmax(mags))
        signal = float(mags[winner])
        noise = float(np.linalg.norm(
            response.values - spectrum.coefficients[winner] * stimuli[winner].values
        ))
        ov = _overlap_with_target(stimuli[0].values, response.values, 1.0)
        success = winner == 0 and ov > config.success_overlap
        return TrialRecord(success, winner, signal, noise, 1)

    states = random_complex_states(config.n, p, gen_seed)
    if config.orthogonalize:
        states = orthogonalize(states)
    memory = quantum.green_learn(states)
    key = _corrupt_complex(states[0], config.corruption_kind, level, corrupt_seed)
    readout_seed = stable_seed(config.base_seed, config.model, config.n, p, level, trial, "readout")
    res = quantum.recall(memory, key, mode=config.mode, seed=readout_seed)
    winner = res.collapse.winner if res.collapse is not None else res.winner
    ov = _overlap_with_target(states[0].values, res.output.values, memory.grid_weight)
    success = winner == 0 and ov > config.success_overlap
    return TrialRecord(success, winner, res.signal_A, res.noise_B_norm, 1)


def capacity_sweep(config: ExperimentConfig) -> SweepTable:
    """Run the full (p, level) grid of seeded trials and aggregate per cell.

    Cells and trials are mutually independent; aggregation runs over sorted
    trial indices so any execution order produces the identical table. The
    table is written to config.output (plus a config sidecar) when set.
    """
    rows = []
    for p in config.p_values:
        for level in config.levels:
            records = [
                run_recall_trial(config, p, level, trial)
                for trial in range(config.trials)
            ]
            rows.append(SweepRow(
                model=config.model,
                n=config.n,
                p=p,
                load=p / config.n,
                level=level,
                trials=config.trials,
                accuracy=float(np.mean([r.success for r in records])),
                mean_signal=float(np.mean([r.signal for r in records])),
                mean_noise=float(np.mean([r.noise for r in records])),
                mean_iters=float(np.mean([r.iterations for r in records])),
            ))
    table = SweepTable(tuple(rows), config.to_dict())
    if config.output is not None:
        try:
            table.write(config.output)
        except OSError as exc:
            raise OSError(f"cannot write sweep output {config.output!r}: {exc}") from exc
    return table


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float


@dataclass(frozen=True)
class CorrespondenceReport:
    n: int
    p: int
    seed: int
    inject_phases: bool
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "seed": self.seed,
            "inject_phases": self.inject_phases,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "max_deviation": c.max_deviation}
                for c in self.checks
            ],
        }


def correspondence_suite(
    n: int, p: int, seed: int, inject_phases: bool = False, flip_fraction: float = 0.1
) -> CorrespondenceReport:
    """Run the real and quantum pipelines on one shared data set and check
    they agree: matrices (real part and vanishing imaginary part), one-step
    recall outputs, the winner's signal/noise split, and full coefficient
    spectra, all within 1e-12; plus exact equality of the holographic
    self-association matrix with the real outer-product matrix.

    ``inject_phases`` multiplies each quantum state by random per-site
    phases, a negative control that must break the matrix agreement.
    """
    if p > n:
        raise ValueError("p must not exceed n")
    tol = 1e-12
    pats = generate_bipolar(n, p, stable_seed(seed, "correspondence", "patterns"))
    probe = corrupt_flip(
        pats.vector(0), flip_fraction, stable_seed(seed, "correspondence", "probe")
    )

    memory = hopfield.hebb_learn(pats)
    real_out = hopfield.recall_step(memory, probe, "linear")
    real_spec = hopfield.signal_noise_decompose(pats, probe)

    if inject_phases:
        rng = np.random.default_rng(stable_seed(seed, "correspondence", "phases"))
        rows = [
            row * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n))
            for row in pats.patterns
        ]
    else:
        rows = [row.astype(np.complex128) for row in pats.patterns]
    states = [ComplexState.from_values(row) for row in rows]
    gmem = quantum.green_learn(states)
    probe_state = ComplexState.from_values(probe.astype(np.complex128))
    q_out = quantum.propagate(gmem, probe_state)
    q_spec = quantum.decompose(states, probe_state)

    checks = []
    dev_matrix = max(
        float(np.max(np.abs(gmem.kernel.real - memory.weights))),
        float(np.max(np.abs(gmem.kernel.imag))),
    )
    checks.append(CheckResult("memory_matrix", dev_matrix < tol, dev_matrix))

    dev_out = float(np.max(np.abs(q_out.values - real_out)))
    checks.append(CheckResult("propagation", dev_out < tol, dev_out))

    real_win = int(np.argmax(np.abs(real_spec.coefficients)))
    q_win = int(np.argmax(np.abs(q_spec.coefficients)))
    if real_win != q_win:
        dev_split = float("inf")
    else:
        a_real = real_spec.coefficients[real_win]
        a_q = q_spec.coefficients[q_win]
        b_real = np.linalg.norm(real_out - a_real * pats.vector(real_win))
        b_q = np.linalg.norm(q_out.values - a_q * states[q_win].values)
        dev_split = max(float(abs(a_real - a_q)), float(abs(b_real - b_q)))
    checks.append(CheckResult("signal_noise_split", dev_split < tol, dev_split))

    dev_spec = float(np.max(np.abs(real_spec.coefficients - q_spec.coefficients)))
    checks.append(CheckResult("coefficient_spectrum", dev_spec < tol, dev_spec))

    holo = holographic.self_associate(pats)
    dev_holo = max(
        float(np.max(np.abs(holo.weights.real - memory.weights))),
        float(np.max(np.abs(holo.weights.imag))),
    )
    checks.append(CheckResult("holographic_self_association", dev_holo == 0.0, dev_holo))

    return CorrespondenceReport(n, p, seed, inject_phases, tuple(checks))
