"""Weighted girth (systole), cycle witnesses and related search oracles.

The girth algorithm is the delete-edge scheme: loops are immediate
candidates, and for every non-loop edge e = {u, v} the shortest u-v path in
g - e plus w(e) closes a shortest reduced cycle through e.  Ties are broken
lexicographically on edge-id sequences so all results are deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoCycle,
    NoCycleThroughEdge,
    NotACycle,
    NotConnected,
    OracleBudgetExceeded,
)
from .graph import WeightedMultigraph


@dataclass(frozen=True)
class CycleWitness:
    """A closed reduced edge walk certifying a cycle length.

    ``steps`` are signed edge ids ("+e1" traverses e1 along its reference
    orientation, "-e1" against it); ``homology`` holds the signed traversal
    counts per edge in input edge order.
    """

    steps: tuple[str, ...]
    length: float
    homology: tuple[int, ...]


def _witness_from_dirs(g: WeightedMultigraph, dirs, weights) -> CycleWitness:
    hom = [0] * g.num_edges
    steps = []
    length = 0.0
    for d in dirs:
        i = d >> 1
        sign = -1 if (d & 1) else 1
        hom[i] += sign
        steps.append(("+" if sign > 0 else "-") + g.edges[i].id)
        length += weights[i]
    return CycleWitness(tuple(steps), float(length), tuple(hom))


def recomputed_length(g: WeightedMultigraph, witness: CycleWitness) -> float:
    return float(sum(g.edge(s[1:]).w for s in witness.steps))


def _dijkstra(g: WeightedMultigraph, weights, source, target, banned_edge):
    """Shortest path avoiding one edge index, with lexicographic edge-id
    tie-breaking.  Returns (dist, directed edges) or None if unreachable."""
    heap = [(0.0, (), source, ())]
    done = set()
    while heap:
        dist, ids, x, dirs = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        if x == target:
            return dist, dirs
        for d in g.out_edges(x):
            i = d >> 1
            if i == banned_edge:
                continue
            y = g.head(d)
            if y in done:
                continue
            heapq.heappush(
                heap,
                (dist + weights[i], ids + (g.edges[i].id,), y, dirs + (d,)))
    return None


def _resolve_weights(g, weights):
    if weights is None:
        return g.weights
    w = np.asarray(weights, dtype=float)
    if w.shape != (g.num_edges,):
        raise ValueError("weights override must have one entry per edge")
    if np.any(w < 0):
        raise ValueError("weights override must be nonnegative")
    return w


def systole(g: WeightedMultigraph, weights=None):
    """Length of the shortest nontrivial reduced cycle, with a witness.

    ``weights`` optionally overrides edge weights (zeros allowed; used by the
    LP separation loop).
    """
    if not g.is_connected():
        raise NotConnected("systole requires a connected graph")
    if g.betti_number() < 1:
        raise NoCycle("graph is a tree")
    w = _resolve_weights(g, weights)
    best = None  # (length, ids, dirs)
    for i, e in enumerate(g.edges):
        if e.u == e.v:
            cand = (w[i], (e.id,), (2 * i,))
        else:
            res = _dijkstra(g, w, e.v, e.u, i)
            if res is None:
                continue
            dist, dirs = res
            cand = (w[i] + dist,
                    (e.id,) + tuple(g.edges[d >> 1].id for d in dirs),
                    (2 * i,) + dirs)
        if best is None or (cand[0], cand[1]) < (best[0], best[1]):
            best = cand
    if best is None:
        raise NoCycle("no cycle found")  # unreachable when betti >= 1
    return best[0], _witness_from_dirs(g, best[2], w)


def shortest_cycle_through_edge(g: WeightedMultigraph, edge_id, weights=None):
    """Shortest reduced cycle containing the given edge under (override)
    weights; raises NoCycleThroughEdge on a bridge."""
    w = _resolve_weights(g, weights)
    i = g.edge_index(edge_id)
    e = g.edges[i]
    if e.u == e.v:
        return _witness_from_dirs(g, (2 * i,), w)
    res = _dijkstra(g, w, e.v, e.u, i)
    if res is None:
        raise NoCycleThroughEdge(edge_id)
    _, dirs = res
    return _witness_from_dirs(g, (2 * i,) + dirs, w)


# --- systolic basis detection ----------------------------------------------------


@dataclass(frozen=True)
class SystolicBasisResult:
    """Outcome of the systolic-basis search.

    ``status`` is "found", "not_found" or "inconclusive" (search cap hit).
    A "found" result is homology-certified only: the witnesses span rank b in
    H1 over the rationals, a necessary proxy for generating the fundamental
    group.
    """

    status: str
    base_vertex: str | None = None
    witnesses: tuple[CycleWitness, ...] = ()


def detect_systolic_basis(g: WeightedMultigraph, cap: int = 10 ** 6,
                          tol: float = 1e-9) -> SystolicBasisResult:
    """Search every vertex for b independent systolic cycles through it.

    Enumerates reduced closed walks of length exactly sys(g) by
    length-bounded DFS; per-vertex expansion is capped, and hitting the cap
    without success yields "inconclusive" rather than a negative claim.
    """
    if not g.is_connected():
        raise NotConnected("detect_systolic_basis requires a connected graph")
    b = g.betti_number()
    sys_val, _ = systole(g)
    hit_cap = False
    for x0 in sorted(g.vertices):
        found = _systolic_cycles_at(g, x0, sys_val, b, cap, tol)
        if found is None:
            hit_cap = True
            continue
        if found:
            return SystolicBasisResult("found", x0, tuple(found))
    return SystolicBasisResult("inconclusive" if hit_cap else "not_found")


def _systolic_cycles_at(g, x0, sys_val, b, cap, tol):
    """b independent systolic witnesses through x0, [] if none, None on cap."""
    vectors = []
    witnesses = []
    budget = cap
    stack = [(d, g.dir_weight(d), (d,)) for d in sorted(g.out_edges(x0))]
    while stack:
        budget -= 1
        if budget < 0:
            return None
        d, length, dirs = stack.pop()
        if length > sys_val + tol:
            continue
        x = g.head(d)
        if x == x0 and abs(length - sys_val) <= tol:
            wit = _witness_from_dirs(g, dirs, g.weights)
            vec = np.array(wit.homology, dtype=float)
            cand = vectors + [vec]
            if np.linalg.matrix_rank(np.array(cand)) == len(cand):
                vectors.append(vec)
                witnesses.append(wit)
                if len(vectors) == b:
                    return witnesses
            continue
        for nd in g.out_edges(x):
            if nd == (d ^ 1):
                continue
            nl = length + g.dir_weight(nd)
            if nl <= sys_val + tol:
                stack.append((nd, nl, dirs + (nd,)))
    return []


# --- shortest-closed-walk oracle -------------------------------------------------


def min_closed_walk_in_class(g: WeightedMultigraph, target, n: int = 1) -> float:
    """Brute-force oracle for the stable norm: minimum length of a closed
    walk whose signed edge-traversal counts equal n * target, divided by n.

    A walk with those counts is an Eulerian circuit of the digraph holding
    |n*u_e| oriented copies of each edge, possibly padded with back-and-forth
    doubled edges to make the support connected; the search minimizes over
    the padding sets.  Test-oracle scale only (|E| <= 8, |coeff| <= 3).
    """
    target = np.asarray(target)
    if g.num_edges > 8 or (target.size and np.abs(target).max() > 3) or n < 1:
        raise OracleBudgetExceeded("oracle limited to |E| <= 8, |coeff| <= 3")
    if not np.allclose(target, np.round(target)):
        raise NotACycle("target must be integral")
    u = np.round(target).astype(int)
    if np.abs(g.boundary_matrix() @ u).max() > 1e-9:
        raise NotACycle("target is not in the cycle space")
    nu = n * u
    if not nu.any():
        return 0.0
    base = float(np.dot(g.weights, np.abs(nu)))
    support = frozenset(i for i in range(g.num_edges) if nu[i] != 0)
    rest = [i for i in range(g.num_edges) if nu[i] == 0]
    best = np.inf
    for mask in range(1 << len(rest)):
        extra = [rest[j] for j in range(len(rest)) if (mask >> j) & 1]
        edge_set = support | set(extra)
        if not _edges_connected(g, edge_set):
            continue
        cost = base + 2.0 * sum(g.weights[i] for i in extra)
        best = min(best, cost)
    if not np.isfinite(best):
        raise OracleBudgetExceeded("no connected augmentation found")
    return best / n


def _edges_connected(g, edge_set):
    """True when the edge-induced subgraph is a single component."""
    verts = set()
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in edge_set:
        e = g.edges[i]
        for v in (e.u, e.v):
            if v not in parent:
                parent[v] = v
                verts.add(v)
        ru, rv = find(e.u), find(e.v)
        parent[ru] = rv
    roots = {find(v) for v in verts}
    return len(roots) <= 1
