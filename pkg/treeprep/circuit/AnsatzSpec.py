#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/circuit/AnsatzSpec.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                03.03.2026
# Last Modified Date:  02.09.2026
# Last Modified By:    treeprep contributors

from collections.abc import Iterable, Sequence
from typing import Literal, NamedTuple
from pydantic import ConfigDict, Field, field_validator
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.errors import CapacityError

Rotation = Literal["ry", "rz"]

#: canonical application order within a qubit slot
ROTATION_ORDER: tuple[Rotation, ...] = ("ry", "rz")

#: dense 2^n statevectors; beyond this a run stops being desk-scale
DEFAULT_MAX_QUBITS = 12


class GateOp(NamedTuple):
	"""
	One gate of a circuit. Rotations either reference a parameter slot
	(``param``) or carry a fixed ``angle``; cx has neither.
	"""
	name: str
	qubits: tuple[int, ...]
	param: None | int = None
	angle: None | float = None


class AnsatzSpec(PrepBaseModel):
	"""
	Layered ansatz: every layer applies the rotations of ``rotation_set`` to each
	qubit (ry before rz) followed by the linear cx cascade 0->1, 1->2, ..., n-2->n-1.

	Parameter indices enumerate layers outermost, then qubits, then rotation kind::

		index(layer, qubit, k) = layer * n_qubits * R + qubit * R + k

	with R = len(rotation_set) and k the position of the rotation in ROTATION_ORDER.
	"""

	model_config = ConfigDict(frozen=True)

	n_qubits: int = Field(ge=1)
	n_layers: int = Field(ge=1)
	rotation_set: tuple[Rotation, ...] = ROTATION_ORDER

	@field_validator("rotation_set", mode="before")
	@classmethod
	def _canonical_rotations(cls, value: Iterable[str]) -> tuple[str, ...]:
		if isinstance(value, str):
			value = [value]
		requested = {str(v).lower() for v in value}
		if not requested:
			raise ValueError("rotation_set must not be empty")
		if unknown := requested - set(ROTATION_ORDER):
			raise ValueError(f"Unknown rotation(s) {sorted(unknown)}, allowed: {ROTATION_ORDER}")
		return tuple(r for r in ROTATION_ORDER if r in requested)

	@property
	def rotations_per_qubit(self) -> int:
		return len(self.rotation_set)

	@property
	def params_per_layer(self) -> int:
		return self.n_qubits * self.rotations_per_qubit

	@property
	def param_count(self) -> int:
		return self.params_per_layer * self.n_layers

	@property
	def dim(self) -> int:
		return 2 ** self.n_qubits

	def param_index(self, layer: int, qubit: int, rotation: Rotation) -> int:
		return (
			layer * self.params_per_layer +
			qubit * self.rotations_per_qubit +
			self.rotation_set.index(rotation)
		)

	def layer_indices(self, layer: int) -> list[int]:
		start = layer * self.params_per_layer
		return list(range(start, start + self.params_per_layer))

	def layer_blocks(self) -> list[list[int]]:
		return [self.layer_indices(l) for l in range(self.n_layers)]

	def gates(self) -> list[GateOp]:
		""" Gate sequence in simulation order, rotations referencing their parameter slot """
		ops: list[GateOp] = []
		for layer in range(self.n_layers):
			for q in range(self.n_qubits):
				for rot in self.rotation_set:
					ops.append(GateOp(rot, (q,), param=self.param_index(layer, q, rot)))
			for q in range(self.n_qubits - 1):
				ops.append(GateOp("cx", (q, q + 1)))
		return ops

	def bind(self, theta: Sequence[float]) -> list[GateOp]:
		""" Gate sequence with the angles of ``theta`` filled in """
		return [
			op._replace(angle=float(theta[op.param])) if op.param is not None else op
			for op in self.gates()
		]


def build_ansatz(
	n_qubits: int,
	n_layers: int,
	rotation_set: Iterable[str] = ROTATION_ORDER,
	max_qubits: int = DEFAULT_MAX_QUBITS
) -> AnsatzSpec:
	"""
	:raises CapacityError: n_qubits exceeds max_qubits
	:raises pydantic.ValidationError: non-positive sizes or empty/unknown rotation_set
	"""
	if n_qubits > max_qubits:
		raise CapacityError(f"{n_qubits} qubits requested, configured maximum is {max_qubits}")
	return AnsatzSpec(n_qubits=n_qubits, n_layers=n_layers, rotation_set=tuple(rotation_set))


def circuit_depth(n_qubits: int, ops: Iterable[GateOp]) -> int:
	"""
	Critical path length of the gate DAG, every gate counting as one time step.
	"""
	level = [0] * n_qubits
	for op in ops:
		t = max(level[q] for q in op.qubits) + 1
		for q in op.qubits:
			level[q] = t
	return max(level, default=0)


def circuit_metrics(spec: AnsatzSpec) -> tuple[int, int]:
	""" (depth, cx_count) of the ansatz """
	ops = spec.gates()
	return circuit_depth(spec.n_qubits, ops), sum(1 for op in ops if op.name == "cx")
