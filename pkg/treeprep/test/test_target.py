import numpy as np
import pytest
from pydantic import ValidationError

from treeprep.circuit.AnsatzSpec import build_ansatz
from treeprep.circuit.ProbabilityDistribution import tvd
from treeprep.circuit.StatevectorSimulator import output_distribution, simulate, simulate_ops
from treeprep.errors import CapacityError
from treeprep.target.TargetSpec import TargetModel
from treeprep.target.generators import (
    encode_amplitudes, make_qsp, make_rqc, make_target, make_vqe, random_circuit, reference
)


@pytest.mark.parametrize(
    "model",
    [
        TargetModel(family="rqc", n_qubits=3, depth=4, seed=11),
        TargetModel(family="qsp", n_qubits=3, source="gaussian", seed=2),
        TargetModel(family="qsp", n_qubits=2, source="uniform", seed=2),
        TargetModel(family="vqe", n_qubits=3, n_layers=2, seed=7),
    ],
)
def test_regeneration_is_bit_identical(model):
    a, b = make_target(model), make_target(model)
    assert np.array_equal(a.exact_distribution.probs, b.exact_distribution.probs)
    assert np.array_equal(a.state.amplitudes, b.state.amplitudes)
    assert a.exact_distribution.probs.sum() == pytest.approx(1.0, abs=1e-12)
    assert a.to_config() == model.model_dump(exclude_none=True)


def test_rqc_depth_rejected():
    with pytest.raises(ValueError):
        make_rqc(3, 0, 1)
    with pytest.raises(ValidationError):
        TargetModel(family="rqc", n_qubits=3, depth=0)


def test_rqc_circuit_shape():
    ops = random_circuit(4, 5, 3)
    rotations = [op for op in ops if op.name != "cx"]
    assert len(rotations) == 20
    assert all(op.name in ("ry", "rz") for op in rotations)
    assert all(0.0 <= op.angle < 2 * np.pi for op in rotations)
    assert all(op.qubits[1] == op.qubits[0] + 1 for op in ops if op.name == "cx")
    target = make_rqc(4, 5, 3)
    assert tvd(target.exact_distribution, output_distribution(simulate_ops(4, ops))) == 0.0


def test_qsp_recomputed_independently():
    target = make_qsp(3, "gaussian", 5)
    v = np.random.default_rng(5).standard_normal(8)
    assert target.exact_distribution.probs == pytest.approx(v**2 / np.sum(v**2), abs=1e-15)
    assert target.search_rotation_set == ("ry",)


def test_qsp_zero_vector():
    with pytest.raises(ValueError):
        encode_amplitudes(np.zeros(4))


def test_vqe_hidden_theta_reaches_zero():
    target = make_vqe(4, 3, 9)
    spec = build_ansatz(4, 3)
    assert len(target.hidden_theta) == spec.param_count == 24
    p = output_distribution(simulate(spec, target.hidden_theta))
    assert tvd(p, target.exact_distribution) < 1e-12


def test_hidden_theta_not_serialized():
    target = make_vqe(2, 1, 1)
    dumped = target.model_dump()
    assert "hidden_theta" not in dumped and "state" not in dumped


def test_capacity():
    with pytest.raises(CapacityError):
        make_vqe(13, 1, 0)
    with pytest.raises(CapacityError):
        make_target(TargetModel(family="rqc", n_qubits=5, depth=2), max_qubits=4)


def test_reference():
    target = make_vqe(2, 2, 4)
    assert reference(target) is target.exact_distribution
    emp = reference(target, shots=500, seed=3)
    assert emp.kind == "empirical" and emp.shots == 500
    assert np.array_equal(emp.counts, reference(target, shots=500, seed=3).counts)
    with pytest.raises(ValueError):
        reference(target, shots=0)
    with pytest.raises(ValueError):
        reference(target, shots=-5)


def test_reference_calibration():
    target = make_vqe(2, 2, 4)
    hits = sum(tvd(reference(target, shots=10**6, seed=s), target.exact_distribution) < 0.005 for s in range(100))
    assert hits >= 95
