#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/diagnostics/DiagnosticsReport.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                26.03.2026
# Last Modified Date:  07.09.2026
# Last Modified By:    treeprep contributors

import numpy as np
import pandas as pd
from typing import Any
from pydantic import Field
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.diagnostics.covering import covering_radius_curve, domain_diameter, packing_bound
from treeprep.diagnostics.regret import lipschitz_lower_bound, noise_estimate, regret_curve
from treeprep.surrogate.BoostedEnsemble import variance_floor_eta
from treeprep.surrogate.EvaluationDataset import EvaluationDataset


class DiagnosticsOptions(PrepBaseModel):
	#: probe count of the covering-radius estimator
	resolution: int = Field(default=4096, ge=1)
	seed: int = 0
	#: known optimum; regret columns are left empty without it
	f_star: None | float = None


class DiagnosticsReport(PrepBaseModel):
	"""
	Per-iteration geometry and regret of a query sequence, t = 1..n.
	The packing bound is reported for comparison only; optimizer queries carry no
	dispersion guarantee.
	"""

	dim: int
	t: list[int]
	rho: list[float]
	packing: list[float]
	eta: list[float]
	regret: None | list[float] = None
	best_regret: None | list[float] = None
	cumulative_regret: None | list[float] = None
	bound: None | list[float] = None
	rate_exponent: None | float = None
	lipschitz_lower_bound: float
	#: max |y - f| over records carrying an exact loss
	sigma_hat: None | float = None

	@classmethod
	def from_dataset(
		cls,
		data: EvaluationDataset,
		options: DiagnosticsOptions = DiagnosticsOptions(),
		nu: float = 0.1,
		m_max: int = 100
	) -> "DiagnosticsReport":
		if len(data) < 1 or data.dim is None:
			raise ValueError("Diagnostics need at least one evaluation")
		d = data.dim
		X, y = data.X, data.y
		n = len(data)
		t = list(range(1, n + 1))
		D = domain_diameter(d)

		exact = [r.f_exact for r in data]
		has_exact = all(f is not None for f in exact)
		L = lipschitz_lower_bound(X, np.asarray(exact, dtype=np.float64) if has_exact else y)
		sigma_hat = noise_estimate(y, exact) if has_exact else None

		kw: dict[str, Any] = {}
		if options.f_star is not None and n >= 4:
			rc = regret_curve(data, options.f_star, lipschitz=L, d=d, sigma=sigma_hat or 0.0)
			kw = {
				"regret": rc.regret.tolist(),
				"best_regret": rc.best_regret.tolist(),
				"cumulative_regret": rc.cumulative.tolist(),
				"bound": None if rc.bound is None else rc.bound.tolist(),
				"rate_exponent": None if np.isnan(rc.exponent) else rc.exponent,
			}

		return cls(
			dim=d,
			t=t,
			rho=covering_radius_curve(X, options.resolution, options.seed).tolist(),
			packing=[packing_bound(i, d, D) for i in t],
			eta=[variance_floor_eta(y[:i], nu, m_max) for i in t],
			lipschitz_lower_bound=L,
			sigma_hat=sigma_hat,
			**kw
		)

	def to_frame(self) -> pd.DataFrame:
		cols: dict[str, Any] = {"t": self.t, "rho": self.rho, "packing_bound": self.packing, "eta": self.eta}
		for name in ("regret", "best_regret", "cumulative_regret", "bound"):
			if (vals := getattr(self, name)) is not None:
				cols[name] = vals
		return pd.DataFrame(cols)

	def summary(self) -> dict[str, Any]:
		return {
			"dim": self.dim,
			"evaluations": len(self.t),
			"final_rho": self.rho[-1],
			"final_packing_bound": self.packing[-1],
			"final_eta": self.eta[-1],
			"rate_exponent": self.rate_exponent,
			"lipschitz_lower_bound": self.lipschitz_lower_bound,
			"sigma_hat": self.sigma_hat,
			"final_best_regret": None if self.best_regret is None else self.best_regret[-1],
		}
