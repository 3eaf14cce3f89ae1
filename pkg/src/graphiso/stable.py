"""Stable norm on first homology and volumes of its unit ball.

The cycle space sits inside edge space R^|E| via the reference orientation;
the stable norm of a cycle vector u is the weighted l1 value sum_e w_e |u_e|
(cross-checked against the closed-walk oracle in ``cycles``).  Ball volumes
are taken for the Haar measure induced by the diagonal weighted scalar
product <e_i, e_j> = w_i delta_ij.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .errors import DegenerateBox, NotACycle, NotConnected, SizeLimitExceeded
from .graph import WeightedMultigraph
from .report import InequalityReport, make_report

EXACT_MAX_BETTI = 8
EXACT_MAX_EDGES = 20


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a BFS spanning tree (integer coordinates).

    Row i of ``vectors`` is the cycle closed by the i-th non-tree edge; that
    edge carries coefficient +1 and appears in no other row.
    """

    vectors: np.ndarray          # shape (b, |E|), integer entries
    tree_edge_ids: tuple[str, ...]
    chord_edge_ids: tuple[str, ...]


def cycle_basis(g: WeightedMultigraph) -> CycleBasis:
    """Deterministic fundamental-cycle basis from a BFS tree rooted at the
    lowest vertex id."""
    if not g.is_connected():
        raise NotConnected("cycle_basis requires a connected graph")
    root = min(g.vertices)
    parent_dir = {root: None}
    order = [root]
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for d in sorted(g.out_edges(x)):
            y = g.head(d)
            if y not in parent_dir:
                parent_dir[y] = d
                order.append(y)
    tree_edges = {d >> 1 for d in parent_dir.values() if d is not None}

    def path_to_root(v):
        """Signed edge-coordinate vector of the tree path root -> v."""
        vec = np.zeros(g.num_edges, dtype=int)
        while parent_dir[v] is not None:
            d = parent_dir[v]
            vec[d >> 1] += -1 if (d & 1) else 1
            v = g.tail(d)
        return vec

    rows = []
    chords = []
    for i, e in enumerate(g.edges):
        if i in tree_edges:
            continue
        vec = np.zeros(g.num_edges, dtype=int)
        vec[i] = 1  # traverse the chord u -> v along its orientation
        vec += path_to_root(e.u)
        vec -= path_to_root(e.v)
        rows.append(vec)
        chords.append(e.id)
    vectors = (np.array(rows, dtype=int) if rows
               else np.zeros((0, g.num_edges), dtype=int))
    tree_ids = tuple(g.edges[i].id for i in sorted(tree_edges))
    return CycleBasis(vectors, tree_ids, tuple(chords))


def stable_norm(g: WeightedMultigraph, u, tol: float = 1e-9) -> float:
    """sum_e w_e |u_e| for a vector in the cycle space."""
    u = np.asarray(u, dtype=float)
    if u.shape != (g.num_edges,):
        raise NotACycle("coordinate length must equal |E|")
    residual = g.boundary_matrix() @ u
    if u.size and np.abs(residual).max() > tol:
        raise NotACycle(f"boundary residual {np.abs(residual).max():g}")
    return float(np.dot(g.weights, np.abs(u)))


def gram_matrix(g: WeightedMultigraph, basis: CycleBasis) -> np.ndarray:
    """Gram matrix of the basis under the weighted scalar product."""
    C = basis.vectors.astype(float)
    return C @ np.diag(g.weights) @ C.T


@dataclass(frozen=True)
class StableBallVolume:
    value: float
    method: str                  # "exact" or "monte-carlo"
    samples: int | None = None
    ci99: float = 0.0
    degenerate: bool = False


def stable_ball_volume_exact(g: WeightedMultigraph) -> StableBallVolume:
    """Exact Haar volume of the stable-norm unit ball.

    In basis coordinates the ball is {x : sum_e w_e |(Cx)_e| <= 1}; its
    vertices lie on rank-(b-1) zero sets of the coordinate functionals
    (Cx)_e, so enumerating those directions and taking the convex hull is an
    exact vertex enumeration.  The result is scaled by sqrt(det Gram) and is
    independent of the basis choice.
    """
    if not g.is_connected():
        raise NotConnected("stable_ball_volume_exact requires connectivity")
    b = g.betti_number()
    if b == 0:
        # 0-dimensional Haar measure of a point, by the empty-product convention
        return StableBallVolume(1.0, "exact", degenerate=True)
    if b > EXACT_MAX_BETTI or g.num_edges > EXACT_MAX_EDGES:
        raise SizeLimitExceeded(
            f"exact route limited to b <= {EXACT_MAX_BETTI}, "
            f"|E| <= {EXACT_MAX_EDGES}")
    basis = cycle_basis(g)
    C = basis.vectors.T.astype(float)   # |E| x b
    w = g.weights
    root_det = math.sqrt(np.linalg.det(gram_matrix(g, basis)))
    if b == 1:
        n1 = float(np.dot(w, np.abs(C[:, 0])))
        return StableBallVolume(2.0 / n1 * root_det, "exact")
    points = {}
    for subset in combinations(range(g.num_edges), b - 1):
        A = C[list(subset), :]
        ns = null_space(A)
        if ns.shape[1] != 1:
            continue
        d = ns[:, 0]
        n1 = float(np.dot(w, np.abs(C @ d)))
        v = d / n1
        for s in (1.0, -1.0):
            points[tuple(np.round(s * v, 10))] = s * v
    hull = ConvexHull(np.array(list(points.values())))
    return StableBallVolume(hull.volume * root_det, "exact")


def _coordinate_box(g, C, w):
    """Per-coordinate suprema of the unit ball via LPs: max +-x_i subject to
    |Cx| <= t componentwise, w.t <= 1."""
    m, b = C.shape
    # variables (x, t)
    A_ub = np.block([
        [C, -np.eye(m)],
        [-C, -np.eye(m)],
        [np.zeros((1, b)), w.reshape(1, -1)],
    ])
    b_ub = np.concatenate([np.zeros(2 * m), [1.0]])
    bounds = [(None, None)] * b + [(0, None)] * m
    hi = np.zeros(b)
    for i in range(b):
        c = np.zeros(b + m)
        c[i] = -1.0
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if not res.success or -res.fun <= 0:
            raise DegenerateBox(f"coordinate {i}: {res.message}")
        hi[i] = -res.fun
    return hi


def stable_ball_volume_mc(g: WeightedMultigraph, samples: int = 10 ** 6,
                          seed: int = 0) -> StableBallVolume:
    """Rejection-sampling estimate with a 99% confidence half-width;
    deterministic for a fixed seed."""
    if not g.is_connected():
        raise NotConnected("stable_ball_volume_mc requires connectivity")
    b = g.betti_number()
    if b < 1:
        raise DegenerateBox("betti must be >= 1")
    basis = cycle_basis(g)
    C = basis.vectors.T.astype(float)
    w = g.weights
    hi = _coordinate_box(g, C, w)
    box_vol = float(np.prod(2.0 * hi))
    rng = np.random.default_rng(seed)
    inside = 0
    done = 0
    chunk = 200_000
    while done < samples:
        k = min(chunk, samples - done)
        x = rng.uniform(-hi, hi, size=(k, b))
        norms = np.abs(x @ C.T) @ w
        inside += int(np.count_nonzero(norms <= 1.0))
        done += k
    p = inside / samples
    root_det = math.sqrt(np.linalg.det(gram_matrix(g, basis)))
    value = p * box_vol * root_det
    half = 2.5758293035489004 * math.sqrt(p * (1 - p) / samples) * box_vol * root_det
    return StableBallVolume(value, "monte-carlo", samples, half)


def euclidean_ball_volume(b: int) -> float:
    """Volume of the Euclidean unit ball of R^b."""
    if b < 0:
        raise ValueError("dimension must be nonnegative")
    return math.pi ** (b / 2.0) / math.gamma(b / 2.0 + 1.0)


def check_stable_inequalities(g: WeightedMultigraph, tol: float = 1e-9,
                              samples: int = 10 ** 6, seed: int = 0,
                              exact_only: bool = False) -> list[InequalityReport]:
    """Stable-ball bounds: thm2.lower/.upper (unit weights), thm3 (always),
    and the regular-graph remark regular.lower (unit regular, valence >= 3).

    Uses the exact volume when within size limits, else Monte-Carlo with a
    CI-aware verdict.
    """
    if not g.is_connected():
        raise NotConnected("check_stable_inequalities requires connectivity")
    b = g.betti_number()
    if b < 1:
        return []
    try:
        ball = stable_ball_volume_exact(g)
    except SizeLimitExceeded:
        if exact_only:
            return [make_report("thm3", "lower", None, None, applicable=False,
                                reason="exact volume beyond size limits and "
                                       "--exact-only set")]
        ball = stable_ball_volume_mc(g, samples=samples, seed=seed)
    mu = ball.value
    ci = ball.ci99
    prov = "exact" if ball.method == "exact" else "mc"
    vol = g.volume()
    unit = g.is_unit_weight()
    prof, (delta, Delta) = g.valence_profile()
    regular = delta == Delta
    cross = 2.0 ** b / math.factorial(b)
    reports = [
        make_report("thm2.lower", "lower", mu, cross * (b / vol) ** b,
                    applicable=unit, provenance=prov, ci=ci,
                    reason="" if unit else "combinatorial (unit-weight) bound",
                    tol=tol),
        make_report("thm2.upper", "upper", mu, cross,
                    applicable=unit, provenance=prov, ci=ci,
                    reason="" if unit else "combinatorial (unit-weight) bound",
                    tol=tol),
        make_report("thm3", "lower", mu * vol ** (b / 2.0),
                    euclidean_ball_volume(b),
                    provenance=prov, ci=ci * vol ** (b / 2.0), tol=tol),
    ]
    remark_ok = unit and regular and delta >= 3
    reports.append(make_report(
        "regular.lower", "lower", mu,
        ((delta - 2) / delta) ** b * cross if remark_ok else None,
        applicable=remark_ok, provenance=prov, ci=ci,
        reason="" if remark_ok else "needs unit weights, regularity, v >= 3",
        tol=tol))
    return reports
