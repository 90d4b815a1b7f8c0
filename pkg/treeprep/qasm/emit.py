#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/qasm/emit.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                30.03.2026
# Last Modified Date:  11.07.2026
# Last Modified By:    treeprep contributors

from collections.abc import Iterable, Sequence
from treeprep.circuit.AnsatzSpec import AnsatzSpec, GateOp
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.errors import DimensionError

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'


def format_angle(angle: float) -> str:
	""" 12 significant digits """
	return f"{angle:.12g}"


def emit_ops(n_qubits: int, ops: Iterable[GateOp], measure: bool = True) -> str:
	""" OpenQASM 2.0 text of bound gates, in the given order """
	lines = [HEADER, f"qreg q[{n_qubits}];", f"creg c[{n_qubits}];"]
	for op in ops:
		qubits = ",".join(f"q[{q}]" for q in op.qubits)
		if op.name in ("ry", "rz"):
			if op.angle is None:
				raise ValueError(f"Unbound rotation {op.name} on qubit {op.qubits[0]}")
			lines.append(f"{op.name}({format_angle(op.angle)}) {qubits};")
		elif op.name == "cx":
			lines.append(f"cx {qubits};")
		else:
			raise ValueError(f"Cannot emit gate '{op.name}'")
	if measure:
		lines.extend(f"measure q[{q}] -> c[{q}];" for q in range(n_qubits))
	return "\n".join(lines) + "\n"


def emit_qasm(spec: AnsatzSpec, theta: ParameterVector | Sequence[float], measure: bool = True) -> str:
	if len(theta) != spec.param_count:
		raise DimensionError(f"Ansatz has {spec.param_count} parameters, got {len(theta)}")
	return emit_ops(spec.n_qubits, spec.bind(theta), measure)
