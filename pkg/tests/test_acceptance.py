"""Acceptance gate: twelve end-to-end criteria, one printed verdict each.

Run with plain pytest; the PASS/FAIL lines are emitted outside capture so
they always reach the terminal.
"""

import math
import time

import numpy as np
import pytest

import graphiso as gi
from graphiso import subshift
from conftest import corpus

OMEGA = gi.euclidean_ball_volume
SQRT3 = math.sqrt(3.0)


def verdict(capsys, num, label, ok, detail=""):
    line = f"[acceptance {num:02d}] {label}: {'PASS' if ok else 'FAIL'}"
    if detail and not ok:
        line += f"  ({detail})"
    with capsys.disabled():
        print(line)
    assert ok, line


def regular_instances(count=100):
    """Deterministic list of (n, v, seed) regular-graph parameters."""
    feasible = {3: [4, 6, 8, 10, 12], 4: [5, 6, 7, 8, 9, 10, 11, 12],
                5: [6, 8, 10, 12]}
    out = []
    i = 0
    while len(out) < count:
        v = (3, 4, 5)[i % 3]
        n = feasible[v][(i // 3) % len(feasible[v])]
        out.append((n, v, i))
        i += 1
    return out


def test_criterion_01_bouquet_entropy(capsys):
    t0 = time.perf_counter()
    worst = max(abs(gi.volume_entropy(gi.bouquet(b)) - math.log(2 * b - 1))
                for b in range(2, 11))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 1.0
    verdict(capsys, 1, "bouquet entropy ln(2b-1), b=2..10",
            ok, f"worst {worst:.2e}, {dt:.2f}s")


def test_criterion_02_estimator_agreement(capsys):
    graphs = ([gi.bouquet(b) for b in range(2, 6)]
              + [gi.theta(3), gi.complete(4), gi.random_regular(10, 3, seed=1)])
    t0 = time.perf_counter()
    worst = 0.0
    for g in graphs:
        est = gi.entropy_estimate(g, r_max=25.0)
        worst = max(worst, abs(est.value - gi.volume_entropy(g)))
    dt = time.perf_counter() - t0
    ok = worst <= 0.02 and dt < 30.0
    verdict(capsys, 2, "ball-growth estimate within 0.02 of exact entropy",
            ok, f"worst {worst:.4f}, {dt:.1f}s")


def test_criterion_03_thm1_bulk(capsys):
    t0 = time.perf_counter()
    violations = 0
    for seed in range(500):
        g = gi.random_weighted(b_range=(2, 8), weight_range=(0.1, 10.0),
                               seed=seed)
        h = gi.volume_entropy(g)
        sys_val, _ = gi.systole(g)
        b = g.betti_number()
        if h * sys_val > 2.0 * math.log(8 * b ** 3 - 1) + 1e-9:
            violations += 1
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 120.0
    verdict(capsys, 3, "h*sys <= 2 ln(8b^3-1) on 500 random weighted graphs",
            ok, f"{violations} violations, {dt:.1f}s")


def test_criterion_04_regular_bounds(capsys):
    bad = []
    for n, v, seed in regular_instances(100):
        g = gi.random_regular(n, v, seed=seed)
        b = g.betti_number()
        h = gi.volume_entropy(g)
        sys_val, _ = gi.systole(g)
        if h * sys_val > 3.0 * math.log(b) + 1e-9:
            bad.append(("prop1", n, v, seed))
        if abs(h - math.log(v - 1)) > 1e-9:  # delta = Delta = v: equality
            bad.append(("prop2", n, v, seed))
        if b > 1 and sys_val > 1.0:
            if sys_val > 3.0 * math.log(b) / math.log(v - 1) + 1e-9:
                bad.append(("lemma2", n, v, seed))
    verdict(capsys, 4, "regular-graph entropy band on 100 instances",
            not bad, f"first failures {bad[:3]}")


def test_criterion_05_systolic_basis_lower_bound(capsys):
    bad = []
    for name, g in corpus():
        b = g.betti_number()
        if b < 1:
            continue
        res = gi.detect_systolic_basis(g, cap=10 ** 5)
        if res.status != "found":
            continue
        h = gi.volume_entropy(g)
        sys_val, _ = gi.systole(g)
        if h * sys_val < math.log(2 * b - 1) - 1e-9:
            bad.append(name)
        if name.startswith("bouquet") and g.is_unit_weight():
            if abs(h * sys_val - math.log(2 * b - 1)) > 1e-9:
                bad.append(name + ":equality")
    verdict(capsys, 5, "h*sys >= ln(2b-1) whenever a systolic basis is found",
            not bad, str(bad))


def test_criterion_06_chain_length_bounds(capsys):
    bad = []
    ln2 = math.log(2.0)
    for name, g in corpus():
        b = g.betti_number()
        _, (_, Delta) = g.valence_profile()
        h = gi.volume_entropy(g)
        if Delta <= 3 and b >= 2:
            if not (ln2 / gi.c_max(g) - 1e-9 <= h
                    <= ln2 / gi.c_min_literal(g) + 1e-9):
                bad.append(name + ":band")
        if b >= 1:
            lhs = h * gi.c_min_literal(g)
            if lhs > math.log(2 * b - 1) + 1e-9:
                bad.append(name + ":cmin")
            if name.startswith("bouquet") and g.is_unit_weight():
                if abs(lhs - math.log(2 * b - 1)) > 1e-9:
                    bad.append(name + ":equality")
    verdict(capsys, 6, "trivalent band ln2/C_max <= h <= ln2/c_min; "
            "h*c_min <= ln(2b-1)", not bad, str(bad))


def test_criterion_07_thm2_unit_graphs(capsys):
    t0 = time.perf_counter()
    bad = []
    for seed in range(100):
        g = gi.random_weighted(b_range=(1, 5), weight_range=(1.0, 1.0),
                               seed=seed)
        b = g.betti_number()
        mu = gi.stable_ball_volume_exact(g).value
        cross = 2.0 ** b / math.factorial(b)
        if not (cross * (b / g.volume()) ** b - 1e-9 <= mu <= cross + 1e-9):
            bad.append(seed)
    for b in range(1, 6):
        mu = gi.stable_ball_volume_exact(gi.bouquet(b)).value
        if abs(mu - 2.0 ** b / math.factorial(b)) > 1e-9:
            bad.append(f"bouquet{b}")
    mu_theta = gi.stable_ball_volume_exact(gi.theta(3)).value
    if abs(mu_theta - 3.0 * SQRT3 / 4.0) > 1e-9:
        bad.append("theta")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120.0
    verdict(capsys, 7, "unit-graph stable-ball bounds and exact values",
            ok, f"{bad[:5]}, {dt:.1f}s")


def test_criterion_08_thm3_haar_bound(capsys):
    bad = []
    for seed in range(100):
        g = gi.random_weighted(b_range=(1, 5), seed=seed)
        b = g.betti_number()
        mu = gi.stable_ball_volume_exact(g).value
        if mu * g.volume() ** (b / 2.0) < OMEGA(b) - 1e-9:
            bad.append(seed)
    for seed in range(20):
        g = gi.random_weighted(b_range=(4, 6), n_range=(18, 24),
                               seed=1000 + seed)
        assert g.num_edges > 20  # forces the Monte-Carlo route
        b = g.betti_number()
        est = gi.stable_ball_volume_mc(g, samples=200_000, seed=seed)
        scale = g.volume() ** (b / 2.0)
        if est.value * scale < OMEGA(b) - est.ci99 * scale - 1e-9:
            bad.append(f"mc{seed}")
    verdict(capsys, 8, "mu * Vol^(b/2) >= omega_b, exact and CI-aware MC",
            not bad, str(bad[:5]))


def test_criterion_09_subdivision_invariance(capsys):
    bad = []
    for gname, g in (("theta", gi.theta(3)), ("k4", gi.complete(4))):
        h0 = gi.volume_entropy(g)
        s0 = gi.systole(g)[0]
        m0 = gi.stable_ball_volume_exact(g).value
        for k in (2, 3, 5):
            variants = [gi.subdivide(g, "e1", k)]
            if g.num_edges * k <= 20:
                variants.append(gi.subdivide_all(g, k))
            for gv in variants:
                if abs(gi.volume_entropy(gv) - h0) > 1e-8:
                    bad.append(f"{gname}/k{k}:h")
                if abs(gi.systole(gv)[0] - s0) > 1e-8:
                    bad.append(f"{gname}/k{k}:sys")
                if abs(gi.stable_ball_volume_exact(gv).value - m0) > 1e-8:
                    bad.append(f"{gname}/k{k}:mu")
    verdict(capsys, 9, "entropy/systole/stable measure invariant under "
            "subdivision (k=2,3,5)", not bad, str(bad))


def test_criterion_10_subshift(capsys):
    t0 = time.perf_counter()
    bad = []
    for b in range(1, 9):
        A = gi.equality_family(b)
        val = gi.topological_entropy(A) * gi.minimal_period(A)
        if abs(val - math.log(b)) > 1e-9:
            bad.append(f"family{b}")
    rng = np.random.default_rng(123)
    checked = 0
    while checked < 1000:
        n = int(rng.integers(1, 9))
        A = (rng.uniform(0, 1, (n, n)) < 0.4).astype(int)
        if not subshift.has_directed_cycle(A) or gi.betti_bA(A) < 1:
            continue
        rep = gi.check_prop6(A)
        if rep.applicable and not rep.holds(1e-9):
            bad.append(A.tolist())
        checked += 1
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60.0
    verdict(capsys, 10, "subshift equality family + 1000 random matrices",
            ok, f"{bad[:2]}, {dt:.1f}s")


def test_criterion_11_optimizer(capsys):
    bad = []
    for b in range(1, 6):
        if abs(gi.optimize_systolic_volume(gi.bouquet(b)).sigma - b) > 1e-6:
            bad.append(f"bouquet{b}")
    if abs(gi.optimize_systolic_volume(gi.theta(3)).sigma - 1.5) > 1e-6:
        bad.append("theta")
    if abs(gi.optimize_systolic_volume(gi.complete(4)).sigma - 2.0) > 1e-6:
        bad.append("k4")
    if gi.bs_lower_bound(3) != 0.6:
        bad.append("bs(3)")
    for name, g in corpus():
        b = g.betti_number()
        if b < 3:
            continue
        sigma = gi.optimize_systolic_volume(g).sigma
        if gi.bs_lower_bound(b) > sigma + 1e-6:
            bad.append(name)
    verdict(capsys, 11, "sigma values, exact bs(3)=0.6, bs <= sigma",
            not bad, str(bad))


def test_criterion_12_scale_invariance(capsys):
    bad = []
    picks = {"theta", "k4", "bouquet3", "bouquet2w", "theta_w", "rw3"}
    for name, g in corpus():
        if name not in picks:
            continue
        b = g.betti_number()
        base_prod = gi.volume_entropy(g, tol=1e-11) * gi.systole(g)[0]
        base_mu = (gi.stable_ball_volume_exact(g).value
                   * g.volume() ** (b / 2.0))
        for lam in (0.1, 3.0, 42.0):
            gs = gi.scale(g, lam)
            prod = gi.volume_entropy(gs, tol=1e-11) * gi.systole(gs)[0]
            mu = (gi.stable_ball_volume_exact(gs).value
                  * gs.volume() ** (b / 2.0))
            if abs(prod - base_prod) > 1e-8 * max(1.0, abs(base_prod)):
                bad.append(f"{name}/{lam}:hsys")
            if abs(mu - base_mu) > 1e-8 * max(1.0, abs(base_mu)):
                bad.append(f"{name}/{lam}:mu")
    verdict(capsys, 12, "h*sys and mu*Vol^(b/2) scale-invariant "
            "(lambda=0.1,3,42)", not bad, str(bad))
