#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/qasm/QASMParser.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                31.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import math, operator
from itertools import combinations
from typing import Any, NamedTuple
from pyparsing import (
	CaselessKeyword, DelimitedList, Group, Keyword, Literal, OpAssoc, Optional, ParseException,
	ParserElement, ParseResults, QuotedString, Regex, StringEnd, Suppress, Word,
	ZeroOrMore, alphanums, alphas, cpp_style_comment, infix_notation,
	lineno, col
)
from treeprep.circuit.AnsatzSpec import ROTATION_ORDER, AnsatzSpec, GateOp, build_ansatz
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.errors import QASMSyntaxError, UnsupportedGateError

SUPPORTED_GATES = {"ry": (1, True), "rz": (1, True), "cx": (2, False)}

ParserElement.enable_packrat()


class ParsedCircuit(NamedTuple):
	n_qubits: int
	#: gates in file order; rotations carry their angle and their index into ``theta``
	ops: list[GateOp]
	theta: list[float]
	#: (qubit, clbit) pairs
	measurements: list[tuple[int, int]]


class Statement(NamedTuple):
	kind: str
	line: int
	column: int
	tokens: Any


def _eval_binary(toks: ParseResults) -> float:
	items = toks[0]
	value = float(items[0])
	for op_sym, rhs in zip(items[1::2], items[2::2]):
		value = (operator.mul if op_sym == "*" else operator.truediv)(value, float(rhs))
	return value


def _statement(kind: str) -> Any:
	def action(s: str, loc: int, toks: ParseResults) -> Statement:
		return Statement(kind, lineno(loc, s), col(loc, s), toks)
	return action


class QASMParser:
	"""
	pyparsing grammar for the OpenQASM 2.0 subset written by emit_qasm:
	one qreg / creg pair, ry / rz / cx gates and measurements. Gate angles are
	constant expressions of numeric literals, ``pi``, ``*``, ``/`` and unary minus.
	"""

	def __init__(self) -> None:
		lpar, rpar, lbra, rbra, semi, comma = map(Suppress, "()[];,")
		ident = Word(alphas + "_", alphanums + "_")
		integer = Regex(r"\d+").set_parse_action(lambda t: int(t[0]))
		number = Regex(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?").set_parse_action(lambda t: float(t[0]))
		pi = CaselessKeyword("pi").set_parse_action(lambda: math.pi)

		self.expr = infix_notation(
			number | pi,
			[
				(Literal("-"), 1, OpAssoc.RIGHT, lambda t: -float(t[0][1])),
				(Literal("*") | Literal("/"), 2, OpAssoc.LEFT, _eval_binary),
			]
		)
		qubit_ref = Group(ident + lbra + integer + rbra)

		version = (Keyword("OPENQASM") + Regex(r"\d+(\.\d+)?") + semi).set_parse_action(_statement("version"))
		include = (Keyword("include") + QuotedString('"') + semi).set_parse_action(_statement("include"))
		qreg = (Keyword("qreg") + ident + lbra + integer + rbra + semi).set_parse_action(_statement("qreg"))
		creg = (Keyword("creg") + ident + lbra + integer + rbra + semi).set_parse_action(_statement("creg"))
		measure = (Keyword("measure") + qubit_ref + Suppress("->") + qubit_ref + semi).set_parse_action(_statement("measure"))
		gate = (
			ident + Group(Optional(lpar + DelimitedList(self.expr) + rpar)) + Group(DelimitedList(qubit_ref)) + semi
		).set_parse_action(_statement("gate"))

		self.program = Optional(version) + ZeroOrMore(include | qreg | creg | measure | gate) + StringEnd()
		self.program.ignore(cpp_style_comment)

	def eval_expr(self, text: str) -> float:
		try:
			return float(self.expr.parse_string(text, parse_all=True)[0])
		except ParseException as e:
			raise QASMSyntaxError(f"Invalid expression '{text}'", e.lineno, e.col) from e

	def parse(self, text: str) -> ParsedCircuit:
		"""
		:raises QASMSyntaxError: malformed text, undeclared or out-of-range registers
		:raises UnsupportedGateError: a gate outside {ry, rz, cx}
		"""
		try:
			statements: list[Statement] = list(self.program.parse_string(text, parse_all=True))
		except ParseException as e:
			raise QASMSyntaxError(f"Invalid OpenQASM: {e.msg}", e.lineno, e.col) from e

		n_qubits: None | int = None
		qname = cname = None
		n_clbits = 0
		ops: list[GateOp] = []
		theta: list[float] = []
		measurements: list[tuple[int, int]] = []

		def qubit(ref: ParseResults, st: Statement) -> int:
			name, idx = ref[0], ref[1]
			if n_qubits is None or name != qname:
				raise QASMSyntaxError(f"Undeclared quantum register '{name}'", st.line, st.column)
			if idx >= n_qubits:
				raise QASMSyntaxError(f"Qubit index {idx} out of range for {name}[{n_qubits}]", st.line, st.column)
			return int(idx)

		for st in statements:
			toks = st.tokens
			match st.kind:
				case "version":
					if not str(toks[1]).startswith("2"):
						raise QASMSyntaxError(f"Unsupported OpenQASM version {toks[1]}", st.line, st.column)
				case "include":
					pass
				case "qreg":
					if n_qubits is not None:
						raise QASMSyntaxError("Only one quantum register is supported", st.line, st.column)
					qname, n_qubits = toks[1], int(toks[2])
				case "creg":
					cname, n_clbits = toks[1], int(toks[2])
				case "measure":
					q = qubit(toks[1], st)
					c_name, c_idx = toks[2][0], int(toks[2][1])
					if c_name != cname or c_idx >= n_clbits:
						raise QASMSyntaxError(f"Invalid classical bit {c_name}[{c_idx}]", st.line, st.column)
					measurements.append((q, c_idx))
				case "gate":
					name, params, refs = str(toks[0]), list(toks[1]), list(toks[2])
					if name not in SUPPORTED_GATES:
						raise UnsupportedGateError(name, st.line)
					arity, takes_angle = SUPPORTED_GATES[name]
					if len(refs) != arity or len(params) != int(takes_angle):
						raise QASMSyntaxError(f"Malformed '{name}' statement", st.line, st.column)
					qubits = tuple(qubit(r, st) for r in refs)
					if len(set(qubits)) != len(qubits):
						raise QASMSyntaxError(f"Repeated qubit in '{name}'", st.line, st.column)
					if takes_angle:
						ops.append(GateOp(name, qubits, param=len(theta), angle=float(params[0])))
						theta.append(float(params[0]))
					else:
						ops.append(GateOp(name, qubits))

		if n_qubits is None:
			raise QASMSyntaxError("Missing qreg declaration", 1, 1)
		return ParsedCircuit(n_qubits, ops, theta, measurements)


_parser: None | QASMParser = None


def parse_qasm(text: str) -> ParsedCircuit:
	global _parser
	if _parser is None:
		_parser = QASMParser()
	return _parser.parse(text)


def match_ansatz(parsed: ParsedCircuit) -> None | tuple[AnsatzSpec, ParameterVector]:
	"""
	Recover the layered ansatz a gate list was emitted from, or None if the gate
	sequence is not of that form.
	"""
	signature = [(op.name, op.qubits) for op in parsed.ops]
	for k in range(len(ROTATION_ORDER), 0, -1):
		for rotations in combinations(ROTATION_ORDER, k):
			per_layer = parsed.n_qubits * len(rotations)
			if not parsed.theta or len(parsed.theta) % per_layer:
				continue
			spec = build_ansatz(parsed.n_qubits, len(parsed.theta) // per_layer, rotations)
			if [(op.name, op.qubits) for op in spec.gates()] == signature:
				return spec, ParameterVector(parsed.theta)
	return None
