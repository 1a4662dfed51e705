"""Brute-force effect computation straight from the eight joint cells.

This module deliberately shares no formula code with ``effects``: every
conditional probability is obtained by dividing sums of joint cells, and
every effect definition is transcribed independently.  It exists to
cross-validate the closed-form engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .tables import JointProbabilityTable


class OracleError(ValueError):
    """Zero-probability conditioning event or degenerate conditional."""


@dataclass(frozen=True)
class OracleReport:
    """Effect values recomputed in probability space."""

    te: float
    lde: tuple
    cell: tuple
    ie: float
    ie_reverse: float
    nde: float
    additive_interaction: float
    multiplicative_interaction: float
    decomposition_residual: float
    direction: tuple = (0, 1)

    def to_json(self) -> str:
        doc = {
            "TE": self.te,
            "LDE": {"z0": self.lde[0], "z1": self.lde[1]},
            "cell": {"z0": self.cell[0], "z1": self.cell[1]},
            "IE": self.ie,
            "IE_reverse": self.ie_reverse,
            "NDE": self.nde,
            "additive_interaction": self.additive_interaction,
            "multiplicative_interaction": self.multiplicative_interaction,
            "decomposition_residual": self.decomposition_residual,
            "direction": list(self.direction),
            "source": "oracle",
        }
        return json.dumps(doc, sort_keys=True)


def _conditionals(joint: JointProbabilityTable):
    """P(Z=z|X=x) and P(Y=1|X=x,Z=z) by direct division of cell sums."""
    def p(x=None, z=None, y=None):
        total = 0.0
        for xx in (0, 1):
            for zz in (0, 1):
                for yy in (0, 1):
                    if x is not None and xx != x:
                        continue
                    if z is not None and zz != z:
                        continue
                    if y is not None and yy != y:
                        continue
                    total += joint.prob(xx, zz, yy)
        return total

    pz = {}
    py = {}
    for x in (0, 1):
        px = p(x=x)
        if px <= 0.0:
            raise OracleError(f"P(X={x}) = 0; conditioning undefined")
        for z in (0, 1):
            pxz = p(x=x, z=z)
            if pxz <= 0.0:
                raise OracleError(f"P(X={x},Z={z}) = 0; conditioning undefined")
            pz[(z, x)] = pxz / px
            cond = p(x=x, z=z, y=1) / pxz
            if cond <= 0.0 or cond >= 1.0:
                raise OracleError(
                    f"P(Y=1|X={x},Z={z}) = {cond!r} is degenerate"
                )
            py[(x, z)] = cond
    return pz, py


def _or(p_num: float, p_den: float) -> float:
    for p in (p_num, p_den):
        if p <= 0.0 or p >= 1.0:
            raise OracleError(f"degenerate probability {p!r} in odds ratio")
    return (p_num / (1.0 - p_num)) / (p_den / (1.0 - p_den))


def oracle_effects(
    joint: JointProbabilityTable, x: int = 0, xp: int = 1
) -> OracleReport:
    """Evaluate every effect definition literally on the joint table."""
    if x not in (0, 1) or xp not in (0, 1) or x == xp:
        raise ValueError("direction must be two distinct levels in {0, 1}")
    pz, py = _conditionals(joint)

    def marginal_y(at_x):
        return sum(py[(at_x, z)] * pz[(z, at_x)] for z in (0, 1))

    def counterfactual(y_arm, z_arm):
        # sum_z P(Y=1|X=y_arm,Z=z) P(Z=z|X=z_arm)
        return sum(py[(y_arm, z)] * pz[(z, z_arm)] for z in (0, 1))

    te = _or(marginal_y(xp), marginal_y(x))
    lde = tuple(_or(py[(xp, z)], py[(x, z)]) for z in (0, 1))
    nde = _or(counterfactual(xp, x), marginal_y(x))
    ie = _or(counterfactual(x, xp), marginal_y(x))
    ie_reverse = _or(counterfactual(xp, x), marginal_y(xp))
    cell = tuple(nde / lde[z] for z in (0, 1))
    additive = py[(1, 1)] - py[(0, 1)] - py[(1, 0)] + py[(0, 0)]
    multiplicative = _or(py[(1, 1)], py[(0, 1)]) / _or(py[(1, 0)], py[(0, 0)])
    residual = max(
        abs(te - lde[z] * cell[z] / ie_reverse) for z in (0, 1)
    )
    return OracleReport(
        te=te,
        lde=lde,
        cell=cell,
        ie=ie,
        ie_reverse=ie_reverse,
        nde=nde,
        additive_interaction=additive,
        multiplicative_interaction=multiplicative,
        decomposition_residual=residual,
        direction=(x, xp),
    )
