"""Command-line surface: gen, learn, recall, sweep, correspond.

Machine-readable JSON goes to stdout; logs (including the fully resolved
option set of every run) go to stderr. Exit codes: 0 success, 1 domain or
file error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import harness, holographic, hopfield, io, quantum
from .patterns import (
    ComplexState,
    DegeneracyError,
    RealPatternSet,
    generate_bipolar,
    orthogonalize,
    random_complex_states,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assocmem",
        description="Associative-memory models: generate, learn, recall, sweep, correspond.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a pattern set")
    gen.add_argument("--kind", choices=["real", "complex"], default="real")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--orthogonalize", action="store_true")
    gen.add_argument("--grid-weight", type=float, default=1.0)
    gen.add_argument("--output", default=None)

    learn = sub.add_parser("learn", help="learn a memory from a pattern set")
    learn.add_argument("--model", choices=list(harness.MODELS), required=True)
    learn.add_argument("--patterns", required=True)
    learn.add_argument("--zero-diagonal", action="store_true",
                       help="hopfield: zero the weight diagonal")
    learn.add_argument("--responses", default=None,
                       help="holographic: response set (default: self-association)")
    learn.add_argument("--boundary", type=int, default=None,
                       help="holographic: split each vector at this index instead")
    learn.add_argument("--output", default=None)

    recall = sub.add_parser("recall", help="recall from a stored memory")
    recall.add_argument("--model", choices=list(harness.MODELS), required=True)
    recall.add_argument("--memory", required=True)
    recall.add_argument("--key", required=True)
    recall.add_argument("--patterns", default=None,
                        help="hopfield: training set used to score the output")
    recall.add_argument("--activation", choices=["sign", "linear"], default="sign")
    recall.add_argument("--max-iters", type=int, default=100)
    recall.add_argument("--tol", type=float, default=1e-9)
    recall.add_argument("--mode", choices=["deterministic", "sampled"],
                        default="deterministic")
    recall.add_argument("--seed", type=int, default=0)

    sweep = sub.add_parser("sweep", help="run a capacity sweep from a config file")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--output", default=None, help="override the config output path")
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")

    corr = sub.add_parser("correspond", help="run the cross-model correspondence suite")
    corr.add_argument("--n", type=int, required=True)
    corr.add_argument("--p", type=int, required=True)
    corr.add_argument("--seed", type=int, default=0)
    corr.add_argument("--flip-fraction", type=float, default=0.1)
    corr.add_argument("--inject-phases", action="store_true",
                      help="negative control: per-site phases must break the matrix check")
    return parser


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _first_vector(patterns):
    if isinstance(patterns, RealPatternSet):
        return patterns.vector(0)
    return patterns[0]


def _as_state(key, grid_weight: float) -> ComplexState:
    if isinstance(key, ComplexState):
        return key
    return ComplexState.from_values(np.asarray(key, dtype=np.complex128), grid_weight)


def _cmd_gen(args) -> int:
    if args.kind == "real":
        patterns = generate_bipolar(args.n, args.p, args.seed)
    else:
        patterns = random_complex_states(args.n, args.p, args.seed, args.grid_weight)
    if args.orthogonalize:
        patterns = orthogonalize(patterns)
    doc = io.pattern_set_to_doc(patterns)
    if args.output is None:
        _emit(doc)
    else:
        io.save_json(args.output, doc)
        _emit({"written": args.output, "n": doc["n"], "p": doc["p"], "kind": doc["kind"]})
    return 0


def _cmd_learn(args) -> int:
    patterns = io.load_pattern_set(args.patterns)
    if args.model == "hopfield":
        if not isinstance(patterns, RealPatternSet):
            raise ValueError("hopfield learning needs a real pattern set")
        memory = hopfield.hebb_learn(patterns, args.zero_diagonal)
    elif args.model == "holographic":
        if args.boundary is not None:
            memory = holographic.split_association(patterns, args.boundary)
        elif args.responses is not None:
            responses = io.load_pattern_set(args.responses)
            stim = (
                [r.astype(np.complex128) for r in patterns.patterns]
                if isinstance(patterns, RealPatternSet) else patterns
            )
            resp = (
                [r.astype(np.complex128) for r in responses.patterns]
                if isinstance(responses, RealPatternSet) else responses
            )
            memory = holographic.holo_learn(list(zip(stim, resp)))
        else:
            memory = holographic.self_associate(patterns)
    else:
        if isinstance(patterns, RealPatternSet):
            states = [
                ComplexState.from_values(row.astype(np.complex128))
                for row in patterns.patterns
            ]
        else:
            states = patterns
        memory = quantum.green_learn(states)
    doc = io.memory_to_doc(memory)
    if args.output is None:
        _emit(doc)
    else:
        io.save_json(args.output, doc)
        _emit({"written": args.output, "model": args.model, "kind": doc["kind"]})
    return 0


def _cmd_recall(args) -> int:
    memory = io.load_memory(args.memory)
    key = _first_vector(io.load_pattern_set(args.key))

    if args.model == "hopfield":
        if not isinstance(memory, hopfield.HebbMatrix):
            raise ValueError("memory file does not hold a real matrix")
        if args.patterns is None:
            raise ValueError("hopfield recall needs --patterns to score the output")
        pattern_set = io.load_pattern_set(args.patterns)
        res = hopfield.recall_iterate(
            memory, np.real(np.asarray(key)), pattern_set,
            args.activation, args.max_iters, args.tol,
        )
        _emit({
            "model": "hopfield",
            "winner": res.winner,
            "signal_A": res.signal_A,
            "noise_B_norm": res.noise_B_norm,
            "iterations": res.iterations,
            "converged": res.converged,
        })
        return 0

    if args.model == "holographic":
        if not isinstance(memory, holographic.HoloMatrix):
            raise ValueError("memory file does not hold a holographic matrix")
        response, spectrum = holographic.holo_recall(memory, _as_state(key, 1.0))
        mags = np.abs(spectrum.coefficients)
        if float(np.max(mags)) <= 1e-12:
            winner, signal, noise = None, 0.0, float(np.linalg.norm(response.values))
        else:
            winner = int(np.argmax(mags))
            signal = float(mags[winner])
            noise = float(np.linalg.norm(
                response.values
                - spectrum.coefficients[winner] * memory.stimuli[winner]
            ))
        _emit({
            "model": "holographic",
            "winner": winner,
            "signal_A": signal,
            "noise_B_norm": noise,
        })
        return 0

    if not isinstance(memory, quantum.GreenMemory):
        raise ValueError("memory file does not hold a quantum memory")
    res = quantum.recall(
        memory, _as_state(key, memory.grid_weight), mode=args.mode, seed=args.seed
    )
    doc = {
        "model": "quantum",
        "winner": res.winner,
        "signal_A": res.signal_A,
        "noise_B_norm": res.noise_B_norm,
        "ambiguous": res.ambiguous,
        "collapse": None,
    }
    if res.collapse is not None:
        doc["collapse"] = {
            "winner": res.collapse.winner,
            "probability": res.collapse.probability,
            "seed": res.collapse.seed,
        }
    _emit(doc)
    return 0


def _cmd_sweep(args) -> int:
    config = harness.ExperimentConfig.from_dict(io.load_json(args.config))
    if args.output is not None:
        config.output = args.output
    if args.format == "csv" and config.output is None:
        raise ValueError("sweep needs an output path (config 'output' or --output)")
    if args.format == "json":
        table_config = config.output
        config.output = None
        table = harness.capacity_sweep(config)
        rows = [row.__dict__ for row in table.rows]
        if table_config is not None:
            config.output = table_config
            table = harness.SweepTable(table.rows, config.to_dict())
            csv_path, sidecar = table.write(config.output)
            _emit({"rows": rows, "csv": str(csv_path), "config": str(sidecar)})
        else:
            _emit({"rows": rows})
        return 0
    table = harness.capacity_sweep(config)
    sidecar = str(Path(config.output).with_suffix(".config.json"))
    _emit({"csv": config.output, "config": sidecar, "rows_written": len(table.rows)})
    return 0


def _cmd_correspond(args) -> int:
    report = harness.correspondence_suite(
        args.n, args.p, args.seed,
        inject_phases=args.inject_phases,
        flip_fraction=args.flip_fraction,
    )
    _emit(report.to_dict())
    return 0 if report.passed else 1


_COMMANDS = {
    "gen": _cmd_gen,
    "learn": _cmd_learn,
    "recall": _cmd_recall,
    "sweep": _cmd_sweep,
    "correspond": _cmd_correspond,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    resolved = {k: v for k, v in vars(args).items() if k != "command"}
    print(json.dumps({"command": args.command, "options": resolved}, sort_keys=True),
          file=sys.stderr)
    try:
        return _COMMANDS[args.command](args)
    except quantum.NoRecallError as exc:
        print(json.dumps({"error": f"no-recall: {exc}"}), file=sys.stderr)
        return 1
    except DegeneracyError as exc:
        print(json.dumps({"error": f"degenerate input: {exc}"}), file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
