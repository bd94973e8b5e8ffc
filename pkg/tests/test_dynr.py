"""Dynamical r-matrix families: evaluation, CDYBE residual, equivariance."""

import math

import numpy as np
import pytest

from poissonkit.dynr import (
    NearSingular,
    cdybe_residual,
    corrupted_family,
    equivariance_check,
    eval_r,
    r_derivative,
    rational_family,
    residual_scan,
    trig_family,
)
from poissonkit.liealg import sl_chevalley, transpose_antimorphism
from poissonkit.liealg import LinearAlgMap
from poissonkit import linalg


# -- evaluation -----------------------------------------------------------------


def test_eval_r_sl2_trig_value():
    g = sl_chevalley(2)
    fam = trig_family(g)
    lam = [0.7]
    r = eval_r(fam, lam)
    e, f = g.label_index("e12"), g.label_index("f12")
    # coefficient g(<alpha, lambda>/2) = coth(lambda(h_alpha)) = coth(0.7)
    assert abs(r.comps[(e, f)] - 1.0 / math.tanh(0.7)) < 1e-15


def test_eval_r_antisymmetric_storage():
    g = sl_chevalley(2)
    r = eval_r(trig_family(g), [0.9])
    e, f = g.label_index("e12"), g.label_index("f12")
    assert r.component((f, e)) == -r.component((e, f))


def test_rational_homogeneity():
    g = sl_chevalley(3)
    fam = rational_family(g)
    lam = np.array([0.8, -1.3])
    c = 2.5
    r1 = eval_r(fam, c * lam)
    r2 = eval_r(fam, lam) * (1.0 / c)
    assert (r1 - r2).norm_inf() < 1e-14


def test_singular_guard():
    g = sl_chevalley(2)
    with pytest.raises(NearSingular):
        eval_r(trig_family(g), [1e-5])


# -- residual -------------------------------------------------------------------


def test_residual_constant_two_points_sl2():
    g = sl_chevalley(2)
    fam = trig_family(g)
    r1 = cdybe_residual(fam, [0.6])
    r2 = cdybe_residual(fam, [-1.4])
    assert (r1 - r2).norm_inf() < 1e-12
    # the surviving constant is exactly e ^ f ^ h
    e, f, h = (g.label_index(k) for k in ("e12", "f12", "h1"))
    assert abs(r1.comps[(e, f, h)] - 1.0) < 1e-12


def test_residual_ad_invariance_sl2():
    from poissonkit.liealg import AlgElement, alg_schouten

    g = sl_chevalley(2)
    res = cdybe_residual(trig_family(g), [0.8])
    for b in range(g.dim):
        defect = alg_schouten(AlgElement(g, 1, {(b,): 1.0}), res)
        assert defect.norm_inf() < 1e-12


def test_rational_residual_vanishes_sl2():
    g = sl_chevalley(2)
    res = cdybe_residual(rational_family(g), [0.75])
    assert res.norm_inf() < 1e-12


def test_residual_storage_is_antisymmetric():
    g = sl_chevalley(3)
    res = cdybe_residual(trig_family(g), [0.9, 0.7])
    for idxs in res.comps:
        assert list(idxs) == sorted(set(idxs))
        swapped = (idxs[1], idxs[0], idxs[2])
        assert res.component(swapped) == -res.comps[idxs]


# -- scans ----------------------------------------------------------------------


def test_scan_sl2_trig_tight():
    rep = residual_scan(trig_family(sl_chevalley(2)), samples=10, seed=5, tol=1e-8)
    assert rep.ok
    assert rep.spread <= 1e-8


def test_scan_sl3_both_families():
    g = sl_chevalley(3)
    for fam in (trig_family(g), rational_family(g)):
        rep = residual_scan(fam, samples=10, seed=5, tol=1e-7)
        assert rep.ok, (fam.kind, rep)


def test_scan_negative_control_sl3():
    rep = residual_scan(corrupted_family(sl_chevalley(3)), samples=6, seed=5, tol=1e-7)
    assert not rep.ok
    assert rep.spread > 1e-3


def test_scan_deterministic():
    rep1 = residual_scan(trig_family(sl_chevalley(3)), samples=6, seed=9, tol=1e-7)
    rep2 = residual_scan(trig_family(sl_chevalley(3)), samples=6, seed=9, tol=1e-7)
    assert rep1 == rep2


def test_gradient_check_explicit():
    g = sl_chevalley(3)
    fam = trig_family(g)
    lam = np.array([1.1, -0.9])
    step = 1e-5
    for m in range(2):
        lp, lm = lam.copy(), lam.copy()
        lp[m] += step
        lm[m] -= step
        fd = (eval_r(fam, lp) - eval_r(fam, lm)) * (1.0 / (2 * step))
        assert (fd - r_derivative(fam, lam, m)).norm_inf() < 1e-7


# -- equivariance ---------------------------------------------------------------


def test_equivariance_sl2_sl3():
    for n in (2, 3):
        g = sl_chevalley(n)
        s = transpose_antimorphism(g)
        rep = equivariance_check(trig_family(g), s, samples=8, seed=3)
        assert rep.ok
        assert rep.defect <= 1e-10


def test_equivariance_negative_control_identity():
    g = sl_chevalley(2)
    ident = LinearAlgMap(g, g, tuple(tuple(row) for row in linalg.identity(g.dim)))
    rep = equivariance_check(trig_family(g), ident, samples=4, seed=3)
    assert not rep.ok
    assert rep.defect > 0.1
