"""Command-line entry point: synth, run, cost, bound, export."""
from __future__ import annotations

import argparse
import json
import sys

from . import analysis
from .amplification import (
    PipelineConfig, amplified_success, build_pipeline, build_transduction, pipeline_layout,
    run_pipeline, sample, success_frequency,
)
from .circuit import count
from .encoding import AmplitudeSpec
from .qasm import export_qasm2, lower, widen_for_export

_COST_ALIASES = {"standard": "standard_lcu", "modified": "modified_lcu"}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def load_amplitude_file(path: str) -> AmplitudeSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict) or "amplitudes" not in doc or "bits" not in doc:
        raise InputError(f"{path}: expected an object with 'amplitudes' and 'bits'")
    amps, bits = doc["amplitudes"], doc["bits"]
    if not isinstance(amps, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in amps):
        raise InputError(f"{path}: 'amplitudes' must be a list of numbers")
    if not isinstance(bits, int) or isinstance(bits, bool) or bits < 2:
        raise InputError(f"{path}: 'bits' must be an integer >= 2")
    try:
        return AmplitudeSpec(tuple(amps), bits)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _rounds(text: str):
    if text == "auto":
        return "auto"
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}") from None
    if r < 0:
        raise argparse.ArgumentTypeError("rounds must be non-negative")
    return r


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_synth(args) -> None:
    spec = load_amplitude_file(args.input)
    layout = pipeline_layout(spec, args.algo, args.decompose)
    circuit = build_transduction(spec, args.algo, layout, args.decompose)
    if args.out == "qasm":
        sys.stdout.write(export_qasm2(widen_for_export(circuit)))
        return
    _emit({
        "algorithm": args.algo,
        "n": spec.bits,
        "d": spec.d,
        "decomposed": args.decompose,
        "layout": {name: getattr(layout, name)
                   for name in ("address", "data", "control", "flag", "ancilla")},
        "gates": [str(g) for g in circuit.gates],
        "gate_counts": count(circuit).as_dict(),
        "lowered_counts": count(lower(widen_for_export(circuit))).as_dict(),
    })


def cmd_run(args) -> None:
    spec = load_amplitude_file(args.input)
    if args.shots is not None and args.seed is None:
        raise InputError("--shots needs --seed")
    config = PipelineConfig(spec, args.algo, args.rounds, args.decompose, args.seed)
    result = run_pipeline(config)
    report = {
        "algorithm": args.algo,
        "n": spec.bits,
        "d": spec.d,
        "rounds": result.rounds,
        "success_probability_transduction": result.analytic_probability,
        "success_probability_analytic": amplified_success(result.analytic_probability, result.rounds),
        "success_probability_simulated": result.success_probability,
        "fidelity_with_target": result.fidelity,
        "gate_counts": count(result.circuit).as_dict(),
        "qubits_total": result.circuit.num_qubits,
        "seed": args.seed,
        "shots": args.shots,
    }
    if args.shots is not None:
        histogram = sample(result.state, args.shots, args.seed)
        report["empirical_success"] = success_frequency(histogram, result.circuit.layout)
    _emit(report)


def cmd_cost(args) -> None:
    algos = analysis.COST_ALGORITHMS if args.algo == "all" else (_COST_ALIASES.get(args.algo, args.algo),)
    out = {"n": args.bits, "transduction": [analysis.cost_table(a, args.bits).as_dict() for a in algos]}
    if args.reflections:
        out["reflections"] = [analysis.reflection_cost(a, args.bits).as_dict() for a in algos]
    _emit(out)


def cmd_bound(args) -> None:
    out = {"bound": analysis.angle_truncation_bounds(args.bits, args.angle_bits).as_dict(),
           "required_angle_bits": analysis.required_angle_bits(args.bits)}
    if args.empirical:
        out["measured"] = analysis.empirical_angle_error(args.bits, args.angle_bits).as_dict()
    _emit(out)


def cmd_export(args) -> None:
    spec = load_amplitude_file(args.input)
    if args.circuit == "transduction":
        layout = pipeline_layout(spec, args.algo, args.decompose)
        circuit = build_transduction(spec, args.algo, layout, args.decompose)
    else:
        circuit = build_pipeline(PipelineConfig(spec, args.algo, args.rounds, args.decompose))
    sys.stdout.write(export_qasm2(widen_for_export(circuit)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcuprep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def algo_input(p):
        p.add_argument("--algo", choices=("standard", "modified"), required=True)
        p.add_argument("--input", required=True, help="amplitude JSON file")
        p.add_argument("--decompose", action="store_true",
                       help="use the Toffoli/CNOT cascade (standard only)")

    p = sub.add_parser("synth", help="build the transduction circuit")
    algo_input(p)
    p.add_argument("--out", choices=("json", "qasm"), default="json")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("run", help="simulate the amplified pipeline")
    algo_input(p)
    p.add_argument("--rounds", type=_rounds, default="auto")
    p.add_argument("--shots", type=_positive)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("cost", help="closed-form cost rows")
    p.add_argument("--algo", default="all",
                   choices=("all",) + analysis.COST_ALGORITHMS + tuple(_COST_ALIASES))
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--reflections", action="store_true")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("bound", help="angle truncation error bounds")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--angle-bits", type=int, required=True)
    p.add_argument("--empirical", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("export", help="emit OpenQASM 2.0")
    algo_input(p)
    p.add_argument("--format", choices=("qasm2",), default="qasm2")
    p.add_argument("--circuit", choices=("pipeline", "transduction"), default="pipeline")
    p.add_argument("--rounds", type=_rounds, default="auto")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InputError, ValueError) as exc:
        print(f"lcuprep {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
