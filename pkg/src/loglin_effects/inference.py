"""Hypothesis tests: zero additive interaction and linearity bonds.

The additive-interaction test is a z-test on the linear combination
lambda^ZY + 2 lambda^Y + lambda^XY of the additive two-way-model
parameters, using the inverse-information covariance from the fit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .causal import CausalParams, CausalModelError
from .fitting import FitResult

#: contrast weights over additive parameters for the zero-interaction test
_CONTRAST = {"Y": 2.0, "XY": 1.0, "ZY": 1.0}


class TestError(ValueError):
    """Test preconditions violated (wrong model, unusable covariance)."""


def normal_cdf(x: float) -> float:
    """Standard normal CDF via erfc; absolutely accurate to ~1e-15."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


@dataclass(frozen=True)
class TestResult:
    beta_hat: float
    se: float
    z: float
    p_two_sided: float
    combination: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "beta_hat": self.beta_hat,
                "se": self.se,
                "z": self.z,
                "p": self.p_two_sided,
                "constraint": self.combination,
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class LinearityReport:
    bond1_residual: float
    bond2_residual: float
    bond1_test: Optional[TestResult] = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "bond1_residual": self.bond1_residual,
                "bond2_residual": self.bond2_residual,
                "bond1_test": (
                    None
                    if self.bond1_test is None
                    else json.loads(self.bond1_test.to_json())
                ),
            },
            sort_keys=True,
        )


def additive_zero_test(fit: FitResult) -> TestResult:
    """z-test of lambda^ZY + 2 lambda^Y + lambda^XY = 0 on a two-way fit."""
    if fit.spec.with_three_way:
        raise TestError("test defined for two-way model")
    terms = fit.spec.ordered_terms
    missing = [t for t in _CONTRAST if t not in terms]
    if missing:
        raise TestError(f"fit lacks required terms {missing}")
    if fit.covariance is None:
        raise TestError("fit carries no covariance")

    c = np.array([_CONTRAST.get(t, 0.0) for t in terms])
    add = fit.params.additive
    beta_hat = float(sum(_CONTRAST[t] * add[t] for t in _CONTRAST))
    var = float(c @ fit.covariance @ c)
    if var <= 0.0:
        raise TestError("covariance is not positive on the test contrast")
    se = math.sqrt(var)
    z = beta_hat / se
    return TestResult(
        beta_hat=beta_hat,
        se=se,
        z=z,
        p_two_sided=two_sided_p(z),
        combination="lambda^ZY + 2*lambda^Y + lambda^XY = 0",
    )


def linearity_bonds(
    cp: CausalParams, fit: Optional[FitResult] = None
) -> LinearityReport:
    """Log-scale residuals of the two mean-split linearity constraints.

    Bond 1: mu^XY * (mu^Y)^2 * mu^ZY = 1 (equivalently the zero
    additive-interaction condition); bond 2: mu_c^XZ * (mu_c^Z)^2 = 1.
    Bond 2 is reported as a residual only; no sampling variance is
    attached to the causal Z-block parameters.
    """
    if cp.with_interaction:
        raise CausalModelError("linearity bonds defined without interaction")
    bond1 = math.log(cp.xy * cp.y ** 2 * cp.zy)
    bond2 = math.log(cp.xzc * cp.zc ** 2)
    test = additive_zero_test(fit) if fit is not None else None
    return LinearityReport(
        bond1_residual=bond1, bond2_residual=bond2, bond1_test=test
    )
