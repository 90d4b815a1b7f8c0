from functools import reduce

import numpy as np
import pytest

from treeprep.circuit.AnsatzSpec import GateOp
from treeprep.circuit.StatevectorSimulator import output_distribution, simulate_ops
from treeprep.target.TargetSpec import TargetModel, TargetSpec


def _ry(t):
    return np.array([[np.cos(t / 2), -np.sin(t / 2)], [np.sin(t / 2), np.cos(t / 2)]])


def _rz(t):
    return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])


def _cx_full(control, target, n):
    """Permutation matrix flipping `target` where `control` is set, qubit 0 = MSB."""
    dim = 2**n
    m = np.zeros((dim, dim))
    for i in range(dim):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        if bits[control]:
            bits[target] ^= 1
        j = sum(b << (n - 1 - q) for q, b in enumerate(bits))
        m[j, i] = 1
    return m


def _single_full(matrix, qubit, n):
    factors = [matrix if q == qubit else np.eye(2) for q in range(n)]
    return reduce(np.kron, factors)


def kron_oracle_state(n, ops):
    """Dense full-unitary oracle, independent of the simulator's contraction."""
    u = np.eye(2**n, dtype=complex)
    for op in ops:
        if op.name == "cx":
            g = _cx_full(op.qubits[0], op.qubits[1], n)
        else:
            g = _single_full((_ry if op.name == "ry" else _rz)(op.angle), op.qubits[0], n)
        u = g @ u
    return u[:, 0]


@pytest.fixture
def oracle():
    return kron_oracle_state


def ry_target(alpha: float) -> TargetSpec:
    """1-qubit Ry(alpha) target, searched with the 1-parameter Ry ansatz."""
    ops = [GateOp("ry", (0,), angle=alpha)]
    state = simulate_ops(1, ops)
    return TargetSpec(
        model=TargetModel(family="vqe", n_qubits=1, n_layers=1, seed=0),
        exact_distribution=output_distribution(state),
        state=state,
        circuit=ops,
        hidden_theta=[alpha],
        search_rotation_set=("ry",),
    )


@pytest.fixture
def make_ry_target():
    return ry_target


@pytest.fixture
def one_qubit_target():
    return ry_target(1.1)


TINY_EXPERIMENT = """
schema_version: 1
target:
  family: vqe
  n_qubits: 2
  n_layers: 1
  seed: 5
ansatz:
  n_layers: 1
run:
  mode: layerwise
  budget: 2
  n_init: 4
  inner_iters: 2
  shots: 100
  seed: 3
  surrogate:
    n_estimators: 10
  acquisition:
    n_cand: 32
"""


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "experiment.yml"
    path.write_text(TINY_EXPERIMENT)
    return path
