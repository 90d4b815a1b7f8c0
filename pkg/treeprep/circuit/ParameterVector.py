#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/circuit/ParameterVector.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                03.03.2026
# Last Modified Date:  11.08.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Iterable, Sequence
from typing import Any

TWO_PI = 2.0 * np.pi


def wrap_angles(values: Any) -> np.ndarray:
	"""
	Map angles onto [0, 2pi). np.mod may round tiny negative inputs up to
	exactly 2pi, those are folded back to 0.
	"""
	arr = np.mod(np.asarray(values, dtype=np.float64), TWO_PI)
	arr[arr >= TWO_PI] = 0.0
	return arr


class ParameterVector:
	"""
	Point of the search box [0, 2pi)^d. Values are wrapped on construction
	and the underlying array is read-only.
	"""

	__slots__ = ("_values",)

	def __init__(self, values: Iterable[float] | np.ndarray) -> None:
		arr = wrap_angles(np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64))
		if arr.ndim != 1 or arr.size < 1:
			raise ValueError(f"ParameterVector needs a non-empty 1-d sequence, got shape {arr.shape}")
		arr.setflags(write=False)
		self._values = arr

	@property
	def values(self) -> np.ndarray:
		return self._values

	def __len__(self) -> int:
		return self._values.size

	def __getitem__(self, i: int) -> float:
		return float(self._values[i])

	def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
		return self._values.astype(dtype) if dtype is not None else self._values.copy()

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, ParameterVector):
			return NotImplemented
		return bool(np.array_equal(self._values, other._values))

	def __hash__(self) -> int:
		return hash(self._values.tobytes())

	def __repr__(self) -> str:
		return f"ParameterVector({np.array2string(self._values, precision=4)})"

	def with_block(self, indices: Sequence[int], block_values: Sequence[float] | np.ndarray) -> "ParameterVector":
		""" Copy of this vector with the coordinates in ``indices`` replaced """
		arr = self._values.copy()
		arr[list(indices)] = block_values
		return ParameterVector(arr)

	def tolist(self) -> list[float]:
		return [float(v) for v in self._values]
