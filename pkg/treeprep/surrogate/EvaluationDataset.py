#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/EvaluationDataset.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                09.03.2026
# Last Modified Date:  27.08.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Iterable, Iterator, Sequence
from typing import NamedTuple
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.errors import DimensionError


class EvaluationRecord(NamedTuple):
	theta: ParameterVector
	#: observed loss (shot estimate, possibly with injected noise)
	y: float
	#: provenance, e.g. "warmup", "block:2", "sync"
	tag: str = ""
	#: noiseless loss f(theta) when known
	f_exact: None | float = None
	shots: int = 0


class EvaluationDataset:
	"""
	Append-only log of evaluations. Insertion order defines t.
	Arrays X (t x d) and y (t,) are materialised lazily and cached until the next append.
	"""

	def __init__(self, records: Iterable[EvaluationRecord] = ()) -> None:
		self._records: list[EvaluationRecord] = []
		self._dim: None | int = None
		self._X: None | np.ndarray = None
		self._y: None | np.ndarray = None
		for rec in records:
			self.append(rec)

	def append(self, record: EvaluationRecord) -> int:
		""" :returns: index of the new record """
		d = len(record.theta)
		if self._dim is None:
			self._dim = d
		elif d != self._dim:
			raise DimensionError(f"Dataset holds {self._dim}-d points, got {d}")
		self._records.append(record)
		self._X = self._y = None
		return len(self._records) - 1

	def add(self, theta: ParameterVector, y: float, tag: str = "", f_exact: None | float = None, shots: int = 0) -> int:
		return self.append(EvaluationRecord(theta, float(y), tag, f_exact, shots))

	def __len__(self) -> int:
		return len(self._records)

	def __iter__(self) -> Iterator[EvaluationRecord]:
		return iter(self._records)

	def __getitem__(self, i: int) -> EvaluationRecord:
		return self._records[i]

	@property
	def dim(self) -> None | int:
		return self._dim

	@property
	def records(self) -> Sequence[EvaluationRecord]:
		return tuple(self._records)

	@property
	def X(self) -> np.ndarray:
		if self._X is None:
			self._X = np.array([r.theta.values for r in self._records], dtype=np.float64).reshape(len(self), self._dim or 0)
			self._X.setflags(write=False)
		return self._X

	@property
	def y(self) -> np.ndarray:
		if self._y is None:
			self._y = np.array([r.y for r in self._records], dtype=np.float64)
			self._y.setflags(write=False)
		return self._y

	def best(self) -> tuple[int, EvaluationRecord]:
		""" Lowest-y record, earliest on ties """
		if not self._records:
			raise ValueError("Empty dataset has no best record")
		i = int(np.argmin(self.y))
		return i, self._records[i]

	def copy(self) -> "EvaluationDataset":
		return EvaluationDataset(self._records)

	def head(self, t: int) -> "EvaluationDataset":
		""" The dataset as it was after t records """
		return EvaluationDataset(self._records[:t])
