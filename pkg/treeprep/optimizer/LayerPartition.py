#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/optimizer/LayerPartition.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                18.03.2026
# Last Modified Date:  14.06.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Iterator, Sequence
from treeprep.circuit.AnsatzSpec import AnsatzSpec
from treeprep.errors import ConfigError


class LayerPartition:
	""" Ordered disjoint blocks of parameter indices covering 0..d-1 """

	__slots__ = ("blocks", "dim")

	def __init__(self, blocks: Sequence[Sequence[int]], dim: int) -> None:
		bl = tuple(tuple(int(i) for i in b) for b in blocks)
		if any(not b for b in bl):
			raise ValueError("Partition blocks must not be empty")
		flat = sorted(i for b in bl for i in b)
		if flat != list(range(dim)):
			raise ValueError(f"Blocks do not partition range({dim}): {bl}")
		self.blocks = bl
		self.dim = dim

	def __len__(self) -> int:
		return len(self.blocks)

	def __iter__(self) -> Iterator[tuple[int, ...]]:
		return iter(self.blocks)

	def __eq__(self, other: object) -> bool:
		return isinstance(other, LayerPartition) and self.blocks == other.blocks

	def __repr__(self) -> str:
		return f"LayerPartition({list(self.blocks)})"

	@classmethod
	def single(cls, dim: int) -> "LayerPartition":
		return cls([range(dim)], dim)

	@classmethod
	def layerwise(cls, spec: AnsatzSpec) -> "LayerPartition":
		return cls(spec.layer_blocks(), spec.param_count)


def random_partition(d: int, block_size: int, seed: int | np.random.SeedSequence) -> LayerPartition:
	"""
	Uniformly random permutation of 0..d-1 cut into consecutive blocks of
	``block_size`` (the last one possibly shorter). Indices within a block are sorted.
	"""
	if not 1 <= block_size <= d:
		raise ConfigError(f"block_size must lie in [1, {d}], got {block_size}")
	perm = np.random.default_rng(seed).permutation(d)
	return LayerPartition(
		[sorted(int(i) for i in perm[s:s + block_size]) for s in range(0, d, block_size)], d
	)
