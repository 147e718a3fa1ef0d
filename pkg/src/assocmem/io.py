"""JSON interchange for pattern sets and learned memories.

Pattern sets serialize as {"n", "p", "kind": "real"|"complex", "grid_weight",
"patterns"} with complex entries as [re, im] pairs; matrices serialize with
kind "real_matrix" or "complex_matrix" and a row-major value array. Floats
round-trip exactly through json, so reloading a memory reproduces its kernel
bit for bit.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .holographic import HoloMatrix
from .hopfield import HebbMatrix
from .patterns import ComplexState, RealPatternSet
from .quantum import GreenMemory


def _pairs(values: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values).ravel()]

def _unpairs(pairs, shape) -> np.ndarray:
    arr = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    return arr.reshape(shape)


def pattern_set_to_doc(patterns) -> dict:
    if isinstance(patterns, RealPatternSet):
        return {
            "n": patterns.n,
            "p": patterns.p,
            "kind": "real",
            "grid_weight": 1.0,
            "patterns": [[float(x) for x in row] for row in patterns.patterns],
        }
    states: Sequence[ComplexState] = list(patterns)
    if not states:
        raise ValueError("empty pattern list")
    weight = states[0].grid_weight
    if any(s.grid_weight != weight or s.n != states[0].n for s in states):
        raise ValueError("complex states must share length and grid_weight")
    return {
        "n": states[0].n,
        "p": len(states),
        "kind": "complex",
        "grid_weight": weight,
        "patterns": [_pairs(s.values) for s in states],
    }


def pattern_set_from_doc(doc: dict):
    kind = doc.get("kind")
    n, p = int(doc["n"]), int(doc["p"])
    if kind == "real":
        pats = np.asarray(doc["patterns"], dtype=np.float64)
        if pats.shape != (p, n):
            raise ValueError(f"patterns shaped {pats.shape}, header says ({p}, {n})")
        norms = np.linalg.norm(pats, axis=1)
        normalized = bool(np.max(np.abs(norms - 1.0)) <= 1e-12)
        return RealPatternSet(pats, normalized=normalized)
    if kind == "complex":
        weight = float(doc.get("grid_weight", 1.0))
        rows = doc["patterns"]
        if len(rows) != p:
            raise ValueError(f"{len(rows)} patterns, header says {p}")
        return [ComplexState.from_values(_unpairs(row, (n,)), weight) for row in rows]
    raise ValueError(f"unknown pattern-set kind {kind!r}")


def memory_to_doc(memory) -> dict:
    if isinstance(memory, HebbMatrix):
        return {
            "kind": "real_matrix",
            "model": "hopfield",
            "n": memory.n,
            "zero_diagonal": memory.zero_diagonal,
            "source_count": memory.source_count,
            "values": [float(x) for x in memory.weights.ravel()],
        }
    if isinstance(memory, HoloMatrix):
        return {
            "kind": "complex_matrix",
            "model": "holographic",
            "n_in": memory.n_in,
            "n_out": memory.n_out,
            "source_count": memory.source_count,
            "values": _pairs(memory.weights),
            "stimuli": [_pairs(row) for row in memory.stimuli],
        }
    if isinstance(memory, GreenMemory):
        return {
            "kind": "complex_matrix",
            "model": "quantum",
            "n": memory.n,
            "grid_weight": memory.grid_weight,
            "eigenstate_count": memory.eigenstate_count,
            "orthonormal_source": memory.orthonormal_source,
            "values": _pairs(memory.kernel),
            "eigenstates": [_pairs(s.values) for s in memory.eigenstates],
        }
    raise TypeError(f"cannot serialize {type(memory).__name__}")


def memory_from_doc(doc: dict):
    kind = doc.get("kind")
    if kind == "real_matrix":
        n = int(doc["n"])
        weights = np.asarray(doc["values"], dtype=np.float64).reshape(n, n)
        return HebbMatrix(weights, bool(doc.get("zero_diagonal", False)),
                          int(doc.get("source_count", 0)))
    if kind == "complex_matrix":
        model = doc.get("model", "quantum" if "eigenstates" in doc else "holographic")
        if model == "holographic":
            n_in, n_out = int(doc["n_in"]), int(doc["n_out"])
            weights = _unpairs(doc["values"], (n_out, n_in))
            count = int(doc.get("source_count", 0))
            stimuli = _unpairs(
                [pair for row in doc["stimuli"] for pair in row], (count, n_in)
            )
            return HoloMatrix(weights, stimuli, count)
        n = int(doc["n"])
        weight = float(doc["grid_weight"])
        kernel = _unpairs(doc["values"], (n, n))
        states = tuple(
            ComplexState.from_values(_unpairs(row, (n,)), weight)
            for row in doc["eigenstates"]
        )
        return GreenMemory(kernel, weight, states, bool(doc["orthonormal_source"]))
    raise ValueError(f"unknown memory kind {kind!r}")


def save_json(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def save_pattern_set(path, patterns) -> None:
    save_json(path, pattern_set_to_doc(patterns))


def load_pattern_set(path):
    return pattern_set_from_doc(load_json(path))


def save_memory(path, memory) -> None:
    save_json(path, memory_to_doc(memory))


def load_memory(path):
    return memory_from_doc(load_json(path))
