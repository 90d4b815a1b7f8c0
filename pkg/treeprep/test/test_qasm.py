import numpy as np
import pytest

from treeprep.circuit.AnsatzSpec import build_ansatz
from treeprep.circuit.ProbabilityDistribution import tvd
from treeprep.circuit.StatevectorSimulator import output_distribution, simulate_ops
from treeprep.errors import DimensionError, QASMSyntaxError, UnsupportedGateError
from treeprep.qasm.QASMParser import QASMParser, match_ansatz, parse_qasm
from treeprep.qasm.emit import emit_ops, emit_qasm, format_angle
from treeprep.target.generators import random_circuit

RY_PI = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[1];
creg c[1];
ry(3.14159265359) q[0];
measure q[0] -> c[0];
"""


def test_emit_fixture():
    assert emit_qasm(build_ansatz(1, 1, ("ry",)), [np.pi]) == RY_PI


def test_emit_gate_order():
    spec = build_ansatz(2, 1)
    text = emit_qasm(spec, [0.1, 0.2, 0.3, 0.4], measure=False)
    body = text.splitlines()[4:]
    assert body == ["ry(0.1) q[0];", "rz(0.2) q[0];", "ry(0.3) q[1];", "rz(0.4) q[1];", "cx q[0],q[1];"]
    with pytest.raises(DimensionError):
        emit_qasm(spec, [0.1])


def test_format_angle():
    assert format_angle(np.pi) == "3.14159265359"
    assert format_angle(0.0) == "0"
    assert format_angle(1e-7) == "1e-07"


def test_parse_fixture():
    parsed = parse_qasm(RY_PI)
    assert parsed.n_qubits == 1
    assert [op.name for op in parsed.ops] == ["ry"]
    assert parsed.theta == [3.14159265359]
    assert parsed.measurements == [(0, 0)]


def test_emitted_text_parses_losslessly():
    spec = build_ansatz(3, 2)
    theta = np.random.default_rng(0).uniform(0, 2 * np.pi, spec.param_count)
    parsed = parse_qasm(emit_qasm(spec, theta))
    assert [(op.name, op.qubits) for op in parsed.ops] == [(op.name, op.qubits) for op in spec.gates()]
    assert parsed.theta == [float(format_angle(a)) for a in theta]
    assert parsed.measurements == [(0, 0), (1, 1), (2, 2)]


def test_round_trip_distribution():
    rng = np.random.default_rng(1)
    for i in range(100):
        n = int(rng.integers(1, 5))
        ops = random_circuit(n, int(rng.integers(1, 6)), seed=i)
        parsed = parse_qasm(emit_ops(n, ops))
        p = output_distribution(simulate_ops(n, ops))
        q = output_distribution(simulate_ops(parsed.n_qubits, parsed.ops))
        assert tvd(p, q) <= 1e-9


def test_match_ansatz():
    spec = build_ansatz(2, 3, ("ry",))
    theta = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    found, values = match_ansatz(parse_qasm(emit_qasm(spec, theta)))
    assert found == spec
    assert values.tolist() == theta


def test_match_ansatz_rejects_foreign_layout():
    text = 'OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\nry(0.3) q[0];\n'
    assert match_ansatz(parse_qasm(text)) is None


def test_unsupported_gate():
    text = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nh q[0];\n'
    with pytest.raises(UnsupportedGateError) as e:
        parse_qasm(text)
    assert e.value.gate == "h"
    assert "'h'" in str(e.value)
    with pytest.raises(UnsupportedGateError):
        parse_qasm("qreg q[1];\nu3(0.1,0.2,0.3) q[0];\n")
    with pytest.raises(UnsupportedGateError):
        parse_qasm("qreg q[2];\nbarrier q[0],q[1];\n")


@pytest.mark.parametrize(
    "expr,value",
    [
        ("pi/2", np.pi / 2),
        ("-pi/2", -np.pi / 2),
        ("2*pi/4", np.pi / 2),
        ("3*pi", 3 * np.pi),
        ("(pi)/4", np.pi / 4),
        ("0.25", 0.25),
        ("1.5e-3", 1.5e-3),
    ],
)
def test_angle_expressions(expr, value):
    assert QASMParser().eval_expr(expr) == pytest.approx(value, rel=1e-15)


def test_pi_angle_in_program():
    parsed = parse_qasm("OPENQASM 2.0;\nqreg q[1];\nry(pi/2) q[0]; // quarter turn\n")
    assert parsed.theta == [pytest.approx(np.pi / 2)]


def test_syntax_error_location():
    text = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncreg c[2];\nry(0.5) q[0]\ncx q[0],q[1];\n'
    with pytest.raises(QASMSyntaxError) as e:
        parse_qasm(text)
    assert e.value.line == 5
    assert e.value.column >= 1


@pytest.mark.parametrize(
    "text",
    [
        "qreg q[1];\nry(0.1) q[1];\n",
        "qreg q[2];\ncx q[0],q[0];\n",
        "qreg q[1];\nry q[0];\n",
        "qreg q[1];\nqreg r[1];\n",
        "ry(0.1) q[0];\n",
        "OPENQASM 3.0;\nqreg q[1];\n",
        "qreg q[1];\ncreg c[1];\nmeasure q[0] -> c[3];\n",
    ],
)
def test_malformed_programs(text):
    with pytest.raises(QASMSyntaxError):
        parse_qasm(text)


def test_argument_lists():
    parsed = parse_qasm("qreg q[2];\nry( pi / 4 ) q[ 1 ];\ncx q[0] ,\n  q[1];\n")
    assert [(op.name, op.qubits) for op in parsed.ops] == [("ry", (1,)), ("cx", (0, 1))]
    assert parsed.theta == [pytest.approx(np.pi / 4)]
    for text in ("qreg q[2];\ncx q[0],q[1],;\n", "qreg q[2];\ncx q[0] q[1];\n", "qreg q[1];\nry(0.1,) q[0];\n"):
        with pytest.raises(QASMSyntaxError):
            parse_qasm(text)
