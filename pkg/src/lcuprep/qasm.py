"""OpenQASM 2.0 export over {x, h, ry, cx, cz, ccx} and a reader for that subset.

Lowering rules:

* controlled-H  ->  ry(-pi/4) t; cz c,t; ry(pi/4) t
* control-on-0  ->  x on that control before and after
* MCX, k >= 3   ->  2k-3 ccx through k-2 ancillas (compute, fire, uncompute)
* MCZ           ->  the MCX lowering conjugated by h on the target

Multi-controlled gates borrow the first k-2 qubits of the ``anc`` register,
which must be clean at that point; every circuit built by this package
satisfies that.
"""
from __future__ import annotations

import math
import re

from .circuit import Circuit, Gate, Kind, REGISTER_ORDER, RegisterLayout, ccx, cx, cz, h, ry, x

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'
REGISTER_NAMES = {
    "address": "addr",
    "data": "data",
    "control": "ctrl",
    "flag": "flag",
    "ancilla": "anc",
}
_QUARTER_PI = math.pi / 4


class QasmError(ValueError):
    pass


def _fmt(angle: float) -> str:
    return format(angle, ".17g")


def lowering_ancillas(circuit: Circuit) -> int:
    """Ancillas needed to lower the widest multi-controlled gate."""
    need = 0
    for g in circuit.gates:
        if g.kind in (Kind.MCX, Kind.MCZ) and len(g.controls) >= 3:
            need = max(need, len(g.controls) - 2)
    return need


def widen_for_export(circuit: Circuit) -> Circuit:
    """Same gates on a layout with enough ancillas for :func:`export_qasm2`."""
    need = lowering_ancillas(circuit)
    if circuit.layout.ancilla >= need:
        return circuit
    return circuit.on_layout(circuit.layout.with_ancilla(need))


def _lower(gate: Gate, ancillas: tuple[int, ...]) -> list[Gate]:
    k = gate.kind
    if k in (Kind.X, Kind.H, Kind.RY, Kind.CX, Kind.CZ, Kind.CCX):
        return [gate]
    if k is Kind.CH:
        c, t = gate.controls[0], gate.target
        return [ry(-_QUARTER_PI, t), cz(c, t), ry(_QUARTER_PI, t)]

    flips = [x(q) for q, b in zip(gate.controls, gate.pattern) if b == 0]
    controls, t = gate.controls, gate.target
    nc = len(controls)
    if nc == 1:
        core = [cx(controls[0], t)] if k is Kind.MCX else [cz(controls[0], t)]
    else:
        if nc == 2:
            core = [ccx(controls[0], controls[1], t)]
        else:
            if len(ancillas) < nc - 2:
                raise QasmError(
                    f"{nc}-controlled gate needs {nc - 2} ancillas, layout provides {len(ancillas)}"
                )
            anc = ancillas[: nc - 2]
            compute = [ccx(controls[0], controls[1], anc[0])]
            for i in range(2, nc - 1):
                compute.append(ccx(controls[i], anc[i - 2], anc[i - 1]))
            core = compute + [ccx(controls[-1], anc[-1], t)] + compute[::-1]
        if k is Kind.MCZ:
            core = [h(t)] + core + [h(t)]
    return flips + core + flips


def lower(circuit: Circuit) -> Circuit:
    """Rewrite the circuit over the export gate set, on the same layout."""
    ancillas = circuit.layout.qubits("ancilla")
    gates = []
    for g in circuit.gates:
        avail = tuple(q for q in ancillas if q not in g.qubits)
        gates.extend(_lower(g, avail))
    return Circuit(circuit.layout, gates)


def _qubit_names(layout: RegisterLayout) -> list[str]:
    names = []
    for reg in REGISTER_ORDER:
        names.extend(f"{REGISTER_NAMES[reg]}[{i}]" for i in range(getattr(layout, reg)))
    return names


def export_qasm2(circuit: Circuit) -> str:
    layout = circuit.layout
    lowered = lower(circuit)
    names = _qubit_names(layout)
    lines = [HEADER]
    for reg in REGISTER_ORDER:
        size = getattr(layout, reg)
        if size:
            lines.append(f"qreg {REGISTER_NAMES[reg]}[{size}];")
    for g in lowered.gates:
        args = ",".join(names[q] for q in g.qubits)
        if g.kind is Kind.RY:
            lines.append(f"ry({_fmt(g.angle)}) {args};")
        else:
            lines.append(f"{g.kind.value} {args};")
    return "\n".join(lines) + "\n"


# Reader -----------------------------------------------------------------------

_QREG = re.compile(r"^qreg\s+(\w+)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"^(\w+)\s*(?:\(([^)]*)\))?\s+(.+)$")
_ARG = re.compile(r"^(\w+)\s*\[\s*(\d+)\s*\]$")
_PI_EXPR = re.compile(r"^(-)?\s*pi\s*(?:/\s*([0-9.eE+-]+))?$")
_ARITY = {"x": 1, "h": 1, "ry": 1, "cx": 2, "cz": 2, "ccx": 3}


def _parse_angle(text: str) -> float:
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_EXPR.match(text)
    if not m:
        raise QasmError(f"unsupported angle expression {text!r}")
    value = math.pi / float(m.group(2)) if m.group(2) else math.pi
    return -value if m.group(1) else value


def read_qasm2(text: str) -> Circuit:
    """Parse programs in the subset emitted by :func:`export_qasm2`."""
    body = re.sub(r"//[^\n]*", "", text)
    statements = [s.strip() for s in body.split(";")]
    statements = [s for s in statements if s]
    if not statements or statements[0].replace(" ", "") != "OPENQASM2.0":
        raise QasmError("program must start with 'OPENQASM 2.0;'")
    by_qasm_name = {v: k for k, v in REGISTER_NAMES.items()}
    sizes = dict.fromkeys(REGISTER_ORDER, 0)
    ops = []
    for stmt in statements[1:]:
        if stmt.startswith("include"):
            continue
        m = _QREG.match(stmt)
        if m:
            name, size = m.group(1), int(m.group(2))
            if name not in by_qasm_name:
                raise QasmError(f"unknown register {name!r}")
            sizes[by_qasm_name[name]] = size
            continue
        m = _GATE.match(stmt)
        if not m or m.group(1) not in _ARITY:
            raise QasmError(f"unsupported statement {stmt!r}")
        ops.append((m.group(1), m.group(2), [a.strip() for a in m.group(3).split(",")]))
    layout = RegisterLayout(**sizes)
    gates = []
    for name, param, args in ops:
        if len(args) != _ARITY[name]:
            raise QasmError(f"{name} takes {_ARITY[name]} qubits, got {len(args)}")
        qubits = []
        for a in args:
            m = _ARG.match(a)
            if not m or m.group(1) not in by_qasm_name:
                raise QasmError(f"bad qubit argument {a!r}")
            reg, idx = by_qasm_name[m.group(1)], int(m.group(2))
            if idx >= getattr(layout, reg):
                raise QasmError(f"{a} out of range")
            qubits.append(layout.offset(reg) + idx)
        if name == "ry":
            if param is None:
                raise QasmError("ry needs an angle")
            gates.append(ry(_parse_angle(param), qubits[0]))
        elif param is not None:
            raise QasmError(f"{name} takes no parameter")
        else:
            gates.append({"x": x, "h": h, "cx": cx, "cz": cz, "ccx": ccx}[name](*qubits))
    return Circuit(layout, gates)
