#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/circuit/StatevectorSimulator.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                04.03.2026
# Last Modified Date:  02.09.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Iterable, Sequence
from treeprep.circuit.AnsatzSpec import AnsatzSpec, GateOp, DEFAULT_MAX_QUBITS
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.circuit.ProbabilityDistribution import ProbabilityDistribution
from treeprep.errors import CapacityError, DimensionError

NORM_TOL = 1e-10

CX = np.array(
	[[1, 0, 0, 0],
	 [0, 1, 0, 0],
	 [0, 0, 0, 1],
	 [0, 0, 1, 0]],
	dtype=np.complex128
)


def ry(theta: float) -> np.ndarray:
	c, s = np.cos(theta / 2), np.sin(theta / 2)
	return np.array([[c, -s], [s, c]], dtype=np.complex128)


def rz(lam: float) -> np.ndarray:
	return np.array(
		[[np.exp(-0.5j * lam), 0], [0, np.exp(0.5j * lam)]],
		dtype=np.complex128
	)


def gate_matrix(op: GateOp) -> np.ndarray:
	match op.name:
		case "ry":
			assert op.angle is not None
			return ry(op.angle)
		case "rz":
			assert op.angle is not None
			return rz(op.angle)
		case "cx":
			return CX
	raise ValueError(f"No matrix for gate '{op.name}'")


class StateVector:
	"""
	Pure n-qubit state. Amplitude index is the big-endian bitstring q0 q1 ... q(n-1),
	i.e. qubit 0 is the most significant bit.
	"""

	__slots__ = ("amplitudes", "n_qubits")

	def __init__(self, amplitudes: np.ndarray) -> None:
		amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
		n = int(amps.size).bit_length() - 1
		if amps.size < 2 or 2 ** n != amps.size:
			raise DimensionError(f"State length {amps.size} is not a power of two >= 2")
		if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
			raise ValueError(f"State norm {np.linalg.norm(amps)!r} deviates from 1")
		self.amplitudes = amps
		self.n_qubits = n

	@classmethod
	def zero(cls, n_qubits: int) -> "StateVector":
		amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
		amps[0] = 1.0
		return cls(amps)

	def __len__(self) -> int:
		return self.amplitudes.size


def _apply(psi: np.ndarray, matrix: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
	"""
	Contract a 2^k x 2^k gate into the rank-n state tensor on ``qubits``
	(ordered as in the matrix' basis, first qubit most significant).
	"""
	k = len(qubits)
	tensor = matrix.reshape([2] * (2 * k))
	out = np.tensordot(tensor, psi, axes=(list(range(k, 2 * k)), list(qubits)))
	return np.moveaxis(out, list(range(k)), list(qubits))


def simulate_ops(n_qubits: int, ops: Iterable[GateOp], max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
	""" Apply bound gates gate by gate to |0...0> """
	if n_qubits > max_qubits:
		raise CapacityError(f"{n_qubits} qubits requested, configured maximum is {max_qubits}")
	psi = StateVector.zero(n_qubits).amplitudes.reshape([2] * n_qubits)
	for op in ops:
		if any(q < 0 or q >= n_qubits for q in op.qubits):
			raise DimensionError(f"Gate {op.name} acts on {op.qubits}, circuit has {n_qubits} qubits")
		psi = _apply(psi, gate_matrix(op), op.qubits)
	return StateVector(psi.reshape(-1))


def simulate(spec: AnsatzSpec, theta: ParameterVector | Sequence[float]) -> StateVector:
	""" C(theta)|0...0> for the layered ansatz """
	if len(theta) != spec.param_count:
		raise DimensionError(f"Ansatz has {spec.param_count} parameters, got {len(theta)}")
	return simulate_ops(spec.n_qubits, spec.bind(theta))


def output_distribution(state: StateVector) -> ProbabilityDistribution:
	p = np.abs(state.amplitudes) ** 2
	return ProbabilityDistribution(p / p.sum(), kind="exact")


def fidelity(a: StateVector, b: StateVector) -> float:
	""" |<a|b>|^2, insensitive to global phase """
	if len(a) != len(b):
		raise DimensionError(f"Cannot compare states of length {len(a)} and {len(b)}")
	return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def embed(matrix: np.ndarray, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
	"""
	Full 2^n x 2^n operator of a one- or two-qubit gate. Adjacent pairs
	(q, q+1) are built with Kronecker products of identities.
	"""
	if len(qubits) == 1:
		q = qubits[0]
		return np.kron(np.kron(np.eye(2 ** q), matrix), np.eye(2 ** (n_qubits - q - 1)))
	c, t = qubits
	if t != c + 1:
		raise ValueError("Dense embedding only supports nearest-neighbour pairs (q, q+1)")
	return np.kron(np.kron(np.eye(2 ** c), matrix), np.eye(2 ** (n_qubits - t - 1)))


def unitary(spec: AnsatzSpec, theta: ParameterVector | Sequence[float]) -> np.ndarray:
	""" Dense circuit unitary, product of the embedded gates in reverse order """
	if len(theta) != spec.param_count:
		raise DimensionError(f"Ansatz has {spec.param_count} parameters, got {len(theta)}")
	u = np.eye(spec.dim, dtype=np.complex128)
	for op in spec.bind(theta):
		u = embed(gate_matrix(op), op.qubits, spec.n_qubits) @ u
	return u
