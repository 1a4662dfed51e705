"""Poisson loglinear fitting for 2x2x2 tables.

Implements dummy-coded design matrices, IRLS maximum likelihood for the
log-link Poisson model, the closed-form saturated solution, and the
observed-information covariance of the additive parameters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .tables import CELLS, ContingencyTable, cell_index

#: term order shared by design matrices, parameter vectors, and covariances
TERM_ORDER = ("eta", "X", "Z", "Y", "XZ", "XY", "ZY", "XZY")

#: variables entering each non-intercept term
TERM_VARS = {
    "X": ("X",),
    "Z": ("Z",),
    "Y": ("Y",),
    "XZ": ("X", "Z"),
    "XY": ("X", "Y"),
    "ZY": ("Z", "Y"),
    "XZY": ("X", "Z", "Y"),
}

_VAR_POS = {"X": 0, "Z": 1, "Y": 2}


class FitError(RuntimeError):
    """Fitting failure: non-convergence, singularity, or divergence."""


@dataclass(frozen=True)
class ModelSpec:
    """A hierarchical dummy-coded loglinear model given by its terms."""

    terms: frozenset

    def __post_init__(self):
        terms = frozenset(self.terms)
        unknown = terms - set(TERM_VARS)
        if unknown:
            raise ValueError(f"unknown terms {sorted(unknown)}")
        for t in terms:
            for v in TERM_VARS[t]:
                for sub in _subterms(t):
                    if sub not in terms:
                        raise ValueError(
                            f"non-hierarchical spec: {t} present without {sub}"
                        )
        object.__setattr__(self, "terms", terms)

    @property
    def with_three_way(self) -> bool:
        return "XZY" in self.terms

    @property
    def variables(self) -> tuple:
        used = set()
        for t in self.terms:
            used.update(TERM_VARS[t])
        return tuple(v for v in ("X", "Z", "Y") if v in used)

    @property
    def ordered_terms(self) -> tuple:
        """Intercept first, then model terms in canonical order."""
        return ("eta",) + tuple(
            t for t in TERM_ORDER[1:] if t in self.terms
        )


def _subterms(term: str):
    vs = TERM_VARS[term]
    if len(vs) == 1:
        return []
    if len(vs) == 2:
        return list(vs)
    return ["X", "Z", "Y", "XZ", "XY", "ZY"]


def two_way_spec() -> ModelSpec:
    return ModelSpec(frozenset({"X", "Z", "Y", "XZ", "XY", "ZY"}))


def saturated_spec() -> ModelSpec:
    return ModelSpec(frozenset(TERM_ORDER[1:]))


@dataclass(frozen=True)
class FitControl:
    tol: float = 1e-10
    max_iter: int = 100
    bound: float = 30.0


@dataclass(frozen=True)
class NoCausalParams:
    """Loglinear parameters in multiplicative form (dummy code).

    Every parameter with any index at level 0 is 1 and is not stored;
    ``xzy`` is 1 when the three-way term is absent.  The additive form is
    the componentwise log.
    """

    eta: float
    x: float
    z: float
    y: float
    xz: float
    xy: float
    zy: float
    xzy: float = 1.0

    def __post_init__(self):
        for name in ("eta", "x", "z", "y", "xz", "xy", "zy", "xzy"):
            if getattr(self, name) <= 0:
                raise ValueError(f"multiplicative parameter {name} must be > 0")

    @property
    def multiplicative(self) -> dict:
        return dict(zip(TERM_ORDER, (self.eta, self.x, self.z, self.y,
                                     self.xz, self.xy, self.zy, self.xzy)))

    @property
    def additive(self) -> dict:
        return {k: math.log(v) for k, v in self.multiplicative.items()}

    @classmethod
    def from_additive(cls, lambdas: dict) -> "NoCausalParams":
        full = {t: float(lambdas.get(t, 0.0)) for t in TERM_ORDER}
        mult = {t: math.exp(v) for t, v in full.items()}
        return cls(mult["eta"], mult["X"], mult["Z"], mult["Y"],
                   mult["XZ"], mult["XY"], mult["ZY"], mult["XZY"])

    def expected_counts(self) -> tuple:
        """Expected cell counts m(x,z,y) in canonical order."""
        m = self.multiplicative
        out = []
        for x, z, y in CELLS:
            v = m["eta"]
            if x:
                v *= m["X"]
            if z:
                v *= m["Z"]
            if y:
                v *= m["Y"]
            if x and z:
                v *= m["XZ"]
            if x and y:
                v *= m["XY"]
            if z and y:
                v *= m["ZY"]
            if x and z and y:
                v *= m["XZY"]
            out.append(v)
        return tuple(out)

    def as_table(self) -> ContingencyTable:
        return ContingencyTable(self.expected_counts())


def multiplicative_from_additive(lambdas: dict) -> NoCausalParams:
    """Exponentiate additive parameters into multiplicative form."""
    return NoCausalParams.from_additive(lambdas)


@dataclass(frozen=True)
class FitResult:
    params: NoCausalParams
    fitted_counts: tuple
    covariance: np.ndarray = field(compare=False)
    deviance: float
    iterations: int
    converged: bool
    spec: ModelSpec

    def to_json(self) -> str:
        terms = self.spec.ordered_terms
        add = self.params.additive
        mult = self.params.multiplicative
        doc = {
            "additive": {t: add[t] for t in terms},
            "multiplicative": {t: mult[t] for t in terms},
            "fitted_counts": list(self.fitted_counts),
            "covariance": {
                "terms": list(terms),
                "values": [float(v) for v in self.covariance.ravel()],
            },
            "deviance": self.deviance,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        return json.dumps(doc, sort_keys=True)


def design_matrix(spec: ModelSpec) -> np.ndarray:
    """Dummy-coded design matrix, intercept first, rows in canonical order.

    Rows run over the lexicographic cells of the variables the spec uses
    (all of X, Z, Y for a full model; fewer rows for marginal layouts).
    A term's column is 1 exactly when all its variables sit at level 1.
    """
    variables = spec.variables
    if not variables:
        raise ValueError("spec uses no variables")
    pos = {v: i for i, v in enumerate(variables)}
    rows = _lex_cells(len(variables))
    terms = spec.ordered_terms
    D = np.zeros((len(rows), len(terms)))
    D[:, 0] = 1.0
    for j, term in enumerate(terms[1:], start=1):
        for i, cell in enumerate(rows):
            if all(cell[pos[v]] == 1 for v in TERM_VARS[term]):
                D[i, j] = 1.0
    return D


def _lex_cells(n: int):
    cells = [()]
    for _ in range(n):
        cells = [c + (b,) for c in cells for b in (0, 1)]
    return cells


def fit_poisson(
    table: ContingencyTable,
    spec: Optional[ModelSpec] = None,
    control: FitControl = FitControl(),
) -> FitResult:
    """IRLS maximum likelihood for the log-link Poisson loglinear model.

    Convergence is declared when the relative deviance change drops below
    ``control.tol``.  The covariance of the additive parameters is the
    inverse Fisher information ``(D' diag(m) D)^-1`` at the optimum.
    """
    if spec is None:
        spec = two_way_spec()
    if set(spec.variables) != {"X", "Z", "Y"}:
        raise FitError("fitting requires a spec over all of X, Z, Y")

    D = design_matrix(spec)
    n = np.asarray(table.counts, dtype=float)
    p = D.shape[1]

    lam = np.zeros(p)
    lam[0] = math.log(n.mean()) if n.mean() > 0 else 0.0
    dev = _deviance(n, np.exp(D @ lam))
    converged = False
    iterations = 0

    for iterations in range(1, control.max_iter + 1):
        m = np.exp(D @ lam)
        # Fisher scoring step: solve (D' W D) delta = D'(n - m), W = diag(m)
        sw = np.sqrt(m)
        A = D * sw[:, None]
        b = (n - m) / sw
        delta, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)
        if rank < p:
            raise FitError("singular information matrix")
        lam = lam + delta
        if np.max(np.abs(lam)) > control.bound:
            raise FitError(
                "divergent parameter estimate; the MLE may not exist "
                "(zero-margin pathology)"
            )
        new_dev = _deviance(n, np.exp(D @ lam))
        if abs(new_dev - dev) <= control.tol * (abs(dev) + 1.0):
            dev = new_dev
            converged = True
            break
        dev = new_dev

    if not converged:
        raise FitError(f"IRLS did not converge in {control.max_iter} iterations")

    m = np.exp(D @ lam)
    info = D.T @ (m[:, None] * D)
    try:
        cov = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        raise FitError("singular information matrix") from None
    cov = (cov + cov.T) / 2.0

    lambdas = dict(zip(spec.ordered_terms, lam))
    return FitResult(
        params=NoCausalParams.from_additive(lambdas),
        fitted_counts=tuple(float(v) for v in m),
        covariance=cov,
        deviance=float(dev),
        iterations=iterations,
        converged=converged,
        spec=spec,
    )


def _deviance(n: np.ndarray, m: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        term = np.where(n > 0, n * np.log(np.where(n > 0, n / m, 1.0)), 0.0)
    return float(2.0 * np.sum(term - (n - m)))


def saturated_closed_form(table: ContingencyTable) -> NoCausalParams:
    """Invert the eight cell formulas of the saturated model directly."""
    nn = {cell: table.count(*cell) for cell in CELLS}
    if any(v <= 0 for v in nn.values()):
        raise FitError("saturated closed form requires all counts > 0")
    eta = nn[(0, 0, 0)]
    x = nn[(1, 0, 0)] / eta
    z = nn[(0, 1, 0)] / eta
    y = nn[(0, 0, 1)] / eta
    xz = nn[(1, 1, 0)] * eta / (nn[(1, 0, 0)] * nn[(0, 1, 0)])
    xy = nn[(1, 0, 1)] * eta / (nn[(1, 0, 0)] * nn[(0, 0, 1)])
    zy = nn[(0, 1, 1)] * eta / (nn[(0, 1, 0)] * nn[(0, 0, 1)])
    xzy = (
        nn[(1, 1, 1)] * nn[(1, 0, 0)] * nn[(0, 1, 0)] * nn[(0, 0, 1)]
    ) / (
        nn[(1, 1, 0)] * nn[(1, 0, 1)] * nn[(0, 1, 1)] * nn[(0, 0, 0)]
    )
    return NoCausalParams(eta, x, z, y, xz, xy, zy, xzy)
