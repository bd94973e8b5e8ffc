"""Numerical verification of classical dynamical r-matrices.

Families over the dual Cartan h* with coordinates lambda_m = lambda(h_m):

    r(lambda) = sum_a d_a * g( <alpha, lambda> / 2 ) e_a ^ f_a,

where the root pairing is evaluated on the coroot-type element of the
bracket relations,

    <alpha, lambda> = 2 lambda(h_alpha),     h_alpha = [e_alpha, f_alpha],

g = coth for the trigonometric family and g(x) = 1/x for its rational
degeneration.  This normalization is additive in the root and makes the
rank-one restriction to each root sl(2) read c_a = g(lambda(h_alpha)).

Convention note.  With the pair-sum Schouten bracket used across this
package, the verified identity is

    sum_m h_m ^ dr/dlambda_m + (1/2) [r, r] = constant, ad-invariant.

The sign of the [r, r] term is opposite to the way the compatibility
condition is usually typeset because Schouten conventions differ by a sign
on even-even brackets between sources; the sl(2) closed form pins both the
sign and the pairing: with c = coth(lambda(h_alpha)) = coth(lambda_1), the
combination c' + c^2 = 1 is constant, while c' - c^2 is not, and the
coefficient of the surviving constant lands on e ^ f ^ h exactly.  The
residual is treated as Lambda^3 g-valued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .liealg import AlgElement, LieAlgebraData, LinearAlgMap, alg_schouten

__all__ = [
    "DynamicalRFamily",
    "NearSingular",
    "trig_family",
    "rational_family",
    "corrupted_family",
    "eval_r",
    "r_derivative",
    "cdybe_residual",
    "residual_scan",
    "equivariance_check",
    "ScanReport",
    "EquivarianceReport",
]

SINGULAR_GUARD = 1e-3


class NearSingular(ValueError):
    """lambda is within the guard distance of a singular hyperplane."""


@dataclass(frozen=True)
class DynamicalRFamily:
    """A coefficient family c_a(lambda) = d_a * g(<alpha, lambda>/2)."""

    algebra: LieAlgebraData
    kind: str

    def __post_init__(self):
        if self.algebra.root_data is None:
            raise ValueError("algebra carries no root data")
        if self.kind not in ("trig", "rational", "tanh-corrupted"):
            raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return len(self.algebra.root_data.cartan)

    def _g(self, x: float) -> float:
        if self.kind == "trig":
            return 1.0 / math.tanh(x)
        if self.kind == "rational":
            return 1.0 / x
        return math.tanh(x)  # deliberately wrong family for negative controls

    def _g_prime(self, x: float) -> float:
        if self.kind == "trig":
            c = 1.0 / math.tanh(x)
            return 1.0 - c * c
        if self.kind == "rational":
            return -1.0 / (x * x)
        t = math.tanh(x)
        return 1.0 - t * t

    def pairings(self, lam: Sequence[float]) -> list[float]:
        """<alpha, lambda> = 2 lambda(h_alpha) for every positive root."""
        lam = list(lam)
        if len(lam) != self.rank:
            raise ValueError(f"lambda must have length {self.rank}")
        return [
            2.0 * float(sum(c * l for c, l in zip(info.h_coords, lam)))
            for info in self.algebra.root_data.roots
        ]

    def guard(self, lam: Sequence[float]) -> None:
        for value, info in zip(self.pairings(lam), self.algebra.root_data.roots):
            if abs(value) < SINGULAR_GUARD:
                raise NearSingular(
                    f"<alpha, lambda> = {value:.2e} for root {info.pair}; guard is {SINGULAR_GUARD}"
                )


def trig_family(g: LieAlgebraData) -> DynamicalRFamily:
    return DynamicalRFamily(g, "trig")


def rational_family(g: LieAlgebraData) -> DynamicalRFamily:
    return DynamicalRFamily(g, "rational")


def corrupted_family(g: LieAlgebraData) -> DynamicalRFamily:
    """coth replaced by tanh; used as a negative control."""
    return DynamicalRFamily(g, "tanh-corrupted")


def eval_r(family: DynamicalRFamily, lam: Sequence[float]) -> AlgElement:
    """r(lambda) as a numeric bivector over the algebra."""
    family.guard(lam)
    g = family.algebra
    comps = {}
    for value, info in zip(family.pairings(lam), g.root_data.roots):
        comps[(info.e_index, info.f_index)] = float(info.d) * family._g(0.5 * value)
    return AlgElement(g, 2, comps)


def r_derivative(family: DynamicalRFamily, lam: Sequence[float], m: int) -> AlgElement:
    """Analytic dr/dlambda_m."""
    family.guard(lam)
    g = family.algebra
    comps = {}
    for value, info in zip(family.pairings(lam), g.root_data.roots):
        slope = float(info.d) * family._g_prime(0.5 * value) * info.h_coords[m]
        if slope != 0.0:
            comps[(info.e_index, info.f_index)] = slope
    return AlgElement(g, 2, comps)


def cdybe_residual(family: DynamicalRFamily, lam: Sequence[float]) -> AlgElement:
    """sum_m h_m ^ dr/dlambda_m + (1/2)[r, r], a numeric trivector."""
    g = family.algebra
    r = eval_r(family, lam)
    total = alg_schouten(r, r) * 0.5
    for m, h_idx in enumerate(g.root_data.cartan):
        h_m = AlgElement(g, 1, {(h_idx,): 1.0})
        total = total + h_m.wedge(r_derivative(family, lam, m))
    return total


def _sample_lambda(family: DynamicalRFamily, seed: int, index: int, margin: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng([seed, index])
    for _ in range(1000):
        lam = rng.uniform(-2.0, 2.0, size=family.rank)
        if all(abs(v) >= margin for v in family.pairings(lam)):
            return lam
    raise RuntimeError("could not sample lambda away from the singular set")


@dataclass(frozen=True)
class ScanReport:
    kind: str
    algebra: str
    samples: int
    seed: int
    spread: float
    invariance_defect: float
    derivative_defect: float
    tol: float

    @property
    def ok(self) -> bool:
        return max(self.spread, self.invariance_defect, self.derivative_defect) <= self.tol

    def __bool__(self) -> bool:
        return self.ok


def residual_scan(family: DynamicalRFamily, samples: int = 10, seed: int = 0, tol: float = 1e-7) -> ScanReport:
    """Constancy, ad-invariance, and gradient checks over seeded sample points.

    * spread: largest componentwise deviation of the residual across samples;
    * invariance defect: largest coefficient of [x_b, residual] over all
      basis elements;
    * derivative defect: analytic dr/dlambda vs a central finite difference
      with step 1e-5.
    """
    g = family.algebra
    residuals = []
    deriv_defect = 0.0
    step = 1e-5
    for idx in range(samples):
        lam = _sample_lambda(family, seed, idx)
        residuals.append(cdybe_residual(family, lam))
        for m in range(family.rank):
            lp, lmn = lam.copy(), lam.copy()
            lp[m] += step
            lmn[m] -= step
            fd = (eval_r(family, lp) - eval_r(family, lmn)) * (1.0 / (2 * step))
            deriv_defect = max(deriv_defect, (fd - r_derivative(family, lam, m)).norm_inf())

    spread = 0.0
    for res in residuals[1:]:
        spread = max(spread, (res - residuals[0]).norm_inf())

    invariance = 0.0
    for res in residuals:
        for b in range(g.dim):
            defect = alg_schouten(AlgElement(g, 1, {(b,): 1.0}), res)
            invariance = max(invariance, defect.norm_inf())

    return ScanReport(family.kind, g.name, samples, seed, spread, invariance, deriv_defect, tol)


@dataclass(frozen=True)
class EquivarianceReport:
    algebra: str
    samples: int
    seed: int
    defect: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.defect <= self.tol

    def __bool__(self) -> bool:
        return self.ok


def equivariance_check(
    family: DynamicalRFamily,
    s: LinearAlgMap,
    samples: int = 10,
    seed: int = 0,
    tol: float = 1e-10,
) -> EquivarianceReport:
    """max over samples of || (Lambda^2 s) r(lambda) + r(s_h* lambda) ||.

    s must preserve the Cartan; for the root-swapping anti-morphism the
    induced map on h* is the identity and the condition reduces to
    s(r(lambda)) = -r(lambda).
    """
    g = family.algebra
    cartan = g.root_data.cartan
    if s.source is not g or s.target is not g:
        raise ValueError("s must be an endomorphism of the family's algebra")
    # restriction of s to the Cartan, as a matrix on lambda-coordinates
    k = len(cartan)
    s_h = np.zeros((k, k))
    for b, jb in enumerate(cartan):
        col = [s.matrix[i][jb] for i in range(g.dim)]
        for i, c in enumerate(col):
            if c.is_zero():
                continue
            if i not in cartan:
                raise ValueError("s does not preserve the Cartan subalgebra")
            s_h[cartan.index(i)][b] = float(c.re)
    defect = 0.0
    for idx in range(samples):
        lam = _sample_lambda(family, seed, idx)
        moved = s_h.T @ lam  # (s_h)* lambda in coordinates
        family.guard(moved)
        lhs = s.apply(eval_r(family, lam))  # Lambda^2 s acting on r
        rhs = eval_r(family, moved)
        defect = max(defect, (lhs.to_numeric() + rhs.to_numeric()).norm_inf())
    return EquivarianceReport(g.name, samples, seed, defect, tol)
