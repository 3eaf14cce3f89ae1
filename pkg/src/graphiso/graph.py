"""Weighted multigraphs: representation, basic invariants, transforms, generators.

A graph is a finite undirected multigraph (loops and parallel edges allowed)
with a strictly positive weight (length) on each edge.  The stored (u, v)
order of every edge fixes a reference orientation used consistently by the
cycle-space and homology code.

Directed-edge convention: edge number ``i`` yields directed edges ``2*i``
(u -> v) and ``2*i + 1`` (v -> u); ``d ^ 1`` is the reversal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadPartCount,
    DanglingEndpoint,
    DuplicateEdgeId,
    InfeasibleParameters,
    NonPositiveScale,
    NonPositiveWeight,
    ParseError,
    UnknownEdge,
)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    w: float


@dataclass(frozen=True)
class Chain:
    """A path whose intermediate vertices all have valence 2.

    ``closed`` marks the one-chain-per-component case of a pure circle of
    valence-2 vertices.
    """

    edge_ids: tuple[str, ...]
    length: float
    closed: bool = False


class WeightedMultigraph:
    """Immutable weighted multigraph with a fixed reference orientation."""

    def __init__(self, vertices, edges):
        vertices = [str(v) for v in vertices]
        vset = set(vertices)
        if len(vset) != len(vertices):
            raise DanglingEndpoint("duplicate vertex ids")
        edge_objs = []
        seen = set()
        for e in edges:
            if isinstance(e, Edge):
                eid, u, v, w = e.id, e.u, e.v, e.w
            else:
                eid, u, v, w = e
            eid, u, v = str(eid), str(u), str(v)
            w = float(w)
            if eid in seen:
                raise DuplicateEdgeId(eid)
            seen.add(eid)
            if u not in vset or v not in vset:
                raise DanglingEndpoint(f"edge {eid}: endpoint not a vertex")
            if not (w > 0.0) or not math.isfinite(w):
                raise NonPositiveWeight(f"edge {eid}: weight {w}")
            edge_objs.append(Edge(eid, u, v, w))
        self.vertices = tuple(vertices)
        self.edges = tuple(edge_objs)
        self._eindex = {e.id: i for i, e in enumerate(self.edges)}
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        m = len(self.edges)
        # directed incidence
        self._tail = [None] * (2 * m)
        self._head = [None] * (2 * m)
        self._out = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            self._tail[2 * i], self._head[2 * i] = e.u, e.v
            self._tail[2 * i + 1], self._head[2 * i + 1] = e.v, e.u
            self._out[e.u].append(2 * i)
            self._out[e.v].append(2 * i + 1)
        self.weights = np.array([e.w for e in self.edges], dtype=float)

    # --- directed-edge accessors -------------------------------------------------

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    def edge(self, edge_id) -> Edge:
        try:
            return self.edges[self._eindex[edge_id]]
        except KeyError:
            raise UnknownEdge(edge_id) from None

    def edge_index(self, edge_id) -> int:
        try:
            return self._eindex[edge_id]
        except KeyError:
            raise UnknownEdge(edge_id) from None

    def tail(self, d):
        return self._tail[d]

    def head(self, d):
        return self._head[d]

    def out_edges(self, vertex):
        """Directed edges leaving ``vertex`` (a loop appears twice)."""
        return self._out[vertex]

    def dir_weight(self, d):
        return self.edges[d >> 1].w

    # --- invariants --------------------------------------------------------------

    def components(self):
        """Connected components as lists of vertex ids (isolated vertices count)."""
        seen = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for d in self._out[x]:
                    y = self._head[d]
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def is_connected(self):
        return len(self.components()) == 1

    def betti_number(self):
        """|E| - |V| + number of connected components."""
        return self.num_edges - self.num_vertices + len(self.components())

    def volume(self):
        """Total length: sum of all edge weights."""
        return float(self.weights.sum())

    def valence_profile(self):
        """Per-vertex valence map plus (min, max); a loop counts twice."""
        prof = {v: len(self._out[v]) for v in self.vertices}
        vals = list(prof.values())
        return prof, (min(vals), max(vals))

    def is_unit_weight(self, tol=1e-12):
        return bool(np.all(np.abs(self.weights - 1.0) <= tol))

    def is_regular(self):
        prof, (lo, hi) = self.valence_profile()
        return lo == hi

    def boundary_matrix(self):
        """Vertex-by-edge signed incidence; a loop contributes zero."""
        B = np.zeros((self.num_vertices, self.num_edges))
        for i, e in enumerate(self.edges):
            if e.u == e.v:
                continue
            B[self._vindex[e.u], i] -= 1.0
            B[self._vindex[e.v], i] += 1.0
        return B

    def __repr__(self):
        return (f"WeightedMultigraph(|V|={self.num_vertices}, "
                f"|E|={self.num_edges}, b={self.betti_number()})")


# --- construction and transforms -------------------------------------------------


def build_graph(vertices, edge_records) -> WeightedMultigraph:
    """Build a graph from vertex ids and (id, u, v, weight) records."""
    return WeightedMultigraph(vertices, edge_records)


def betti_number(g: WeightedMultigraph) -> int:
    return g.betti_number()


def volume(g: WeightedMultigraph) -> float:
    return g.volume()


def valence_profile(g: WeightedMultigraph):
    return g.valence_profile()


def scale(g: WeightedMultigraph, lam: float) -> WeightedMultigraph:
    """Multiply every edge weight by ``lam`` > 0; combinatorics unchanged."""
    if not (lam > 0.0) or not math.isfinite(lam):
        raise NonPositiveScale(str(lam))
    return WeightedMultigraph(
        g.vertices, [(e.id, e.u, e.v, e.w * lam) for e in g.edges])


def subdivide(g: WeightedMultigraph, edge_id, k: int) -> WeightedMultigraph:
    """Replace an edge by a path of ``k`` parts of weight w/k each.

    Fresh valence-2 vertices are named ``{edge_id}~{j}``, part edges
    ``{edge_id}/{j}``.  Betti number and total volume are preserved.
    """
    if not isinstance(k, int) or k < 1:
        raise BadPartCount(str(k))
    e = g.edge(edge_id)
    if k == 1:
        return g
    new_vertices = list(g.vertices)
    mids = [f"{edge_id}~{j}" for j in range(1, k)]
    new_vertices.extend(mids)
    chain_pts = [e.u] + mids + [e.v]
    new_edges = []
    for old in g.edges:
        if old.id == e.id:
            for j in range(k):
                new_edges.append(
                    (f"{edge_id}/{j + 1}", chain_pts[j], chain_pts[j + 1], e.w / k))
        else:
            new_edges.append((old.id, old.u, old.v, old.w))
    return WeightedMultigraph(new_vertices, new_edges)


def subdivide_all(g: WeightedMultigraph, k: int) -> WeightedMultigraph:
    """Subdivide every edge of ``g`` in ``k`` parts."""
    out = g
    for e in g.edges:
        out = subdivide(out, e.id, k)
    return out


# --- chains and scales -----------------------------------------------------------


def maximal_chains(g: WeightedMultigraph) -> list[Chain]:
    """All maximal chains; they partition the edge set.

    A maximal chain runs between vertices of valence != 2 through valence-2
    interior vertices; a connected component that is a pure circle of
    valence-2 vertices yields one closed chain covering the whole circle.
    """
    prof, _ = g.valence_profile()
    used = set()
    chains = []

    def walk(d0):
        ids = [g.edges[d0 >> 1].id]
        used.add(d0 >> 1)
        length = g.dir_weight(d0)
        cur = d0
        while prof[g.head(cur)] == 2:
            outs = [d for d in g.out_edges(g.head(cur)) if d != (cur ^ 1)]
            nxt = outs[0]
            if (nxt >> 1) in used:
                break  # closed back onto the start (pure circle)
            ids.append(g.edges[nxt >> 1].id)
            used.add(nxt >> 1)
            length += g.dir_weight(nxt)
            cur = nxt
        return ids, length, cur

    for v in g.vertices:
        if prof[v] == 2:
            continue
        for d in g.out_edges(v):
            if (d >> 1) in used:
                continue
            ids, length, _ = walk(d)
            chains.append(Chain(tuple(ids), length, closed=False))

    # leftover edges sit in pure-circle components
    for i, e in enumerate(g.edges):
        if i in used:
            continue
        ids, length, _ = walk(2 * i)
        chains.append(Chain(tuple(ids), length, closed=True))
    return chains


def c_min_literal(g: WeightedMultigraph) -> float:
    """Minimum chain length under the literal reading: every single edge is a
    chain (it has no intermediate vertices), so this is the minimum edge weight."""
    return float(g.weights.min())


def c_min_maximal(g: WeightedMultigraph) -> float:
    """Minimum length over maximal chains."""
    return min(c.length for c in maximal_chains(g))


def c_max(g: WeightedMultigraph) -> float:
    """Maximum chain length (attained by a maximal chain)."""
    return max(c.length for c in maximal_chains(g))


# --- generators ------------------------------------------------------------------


def bouquet(b: int, weights=None) -> WeightedMultigraph:
    """One vertex with ``b`` loops."""
    if b < 1:
        raise InfeasibleParameters("bouquet needs b >= 1")
    if weights is None:
        weights = [1.0] * b
    if len(weights) != b:
        raise InfeasibleParameters("bouquet: len(weights) != b")
    return WeightedMultigraph(
        ["v0"], [(f"e{i + 1}", "v0", "v0", weights[i]) for i in range(b)])


def theta(p: int = 3, weights=None) -> WeightedMultigraph:
    """Two vertices joined by ``p`` parallel edges."""
    if p < 2:
        raise InfeasibleParameters("theta needs p >= 2")
    if weights is None:
        weights = [1.0] * p
    if len(weights) != p:
        raise InfeasibleParameters("theta: len(weights) != p")
    return WeightedMultigraph(
        ["u", "v"], [(f"e{i + 1}", "u", "v", weights[i]) for i in range(p)])


def complete(n: int) -> WeightedMultigraph:
    """Complete unit-weight graph on ``n`` vertices."""
    if n < 2:
        raise InfeasibleParameters("complete needs n >= 2")
    verts = [f"v{i}" for i in range(n)]
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            k += 1
            edges.append((f"e{k}", verts[i], verts[j], 1.0))
    return WeightedMultigraph(verts, edges)


def cycle(n: int) -> WeightedMultigraph:
    """Circle of ``n`` unit edges (n = 1 is a single loop)."""
    if n < 1:
        raise InfeasibleParameters("cycle needs n >= 1")
    verts = [f"v{i}" for i in range(n)]
    edges = [(f"e{i + 1}", verts[i], verts[(i + 1) % n], 1.0) for i in range(n)]
    return WeightedMultigraph(verts, edges)


def random_regular(n: int, v: int, seed: int = 0) -> WeightedMultigraph:
    """Connected random v-regular unit graph on ``n`` vertices, deterministic
    for a given seed."""
    import networkx as nx

    if n * v % 2 != 0 or v >= n or v < 2:
        raise InfeasibleParameters(f"random_regular({n}, {v})")
    for attempt in range(100):
        G = nx.random_regular_graph(v, n, seed=seed + 7919 * attempt)
        if nx.is_connected(G):
            verts = [f"v{i}" for i in range(n)]
            edges = [(f"e{k + 1}", f"v{a}", f"v{b}", 1.0)
                     for k, (a, b) in enumerate(sorted(G.edges()))]
            return WeightedMultigraph(verts, edges)
    raise InfeasibleParameters(f"no connected {v}-regular graph found for n={n}")


def random_weighted(b_range=(2, 8), weight_range=(0.1, 10.0), seed: int = 0,
                    n_range=(2, 8)) -> WeightedMultigraph:
    """Connected random multigraph: a random spanning tree plus ``b`` extra
    edges (loops and parallels allowed), weights uniform in ``weight_range``."""
    rng = np.random.default_rng(seed)
    b = int(rng.integers(b_range[0], b_range[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    verts = [f"v{i}" for i in range(n)]
    recs = []
    for i in range(1, n):
        j = int(rng.integers(0, i))
        recs.append((f"t{i}", verts[j], verts[i]))
    for k in range(b):
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n))
        recs.append((f"x{k + 1}", verts[i], verts[j]))
    lo, hi = weight_range
    ws = rng.uniform(lo, hi, size=len(recs))
    return WeightedMultigraph(
        verts, [(eid, u, v, w) for (eid, u, v), w in zip(recs, ws)])


_GENERATORS = {
    "bouquet": bouquet,
    "theta": theta,
    "complete": complete,
    "cycle": cycle,
    "random_regular": random_regular,
    "random_weighted": random_weighted,
}


def generate(kind: str, **params) -> WeightedMultigraph:
    """Dispatch to a named generator; see module functions for parameters."""
    try:
        gen = _GENERATORS[kind]
    except KeyError:
        raise InfeasibleParameters(f"unknown generator kind {kind!r}") from None
    try:
        return gen(**params)
    except TypeError as exc:
        raise InfeasibleParameters(str(exc)) from None


# --- JSON interchange ------------------------------------------------------------


def from_json(text_or_obj) -> WeightedMultigraph:
    """Parse {"vertices": [...], "edges": [{"id","u","v","w"}]}; unknown
    top-level keys are rejected."""
    if isinstance(text_or_obj, (str, bytes)):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    else:
        obj = text_or_obj
    if not isinstance(obj, dict):
        raise ParseError("graph file must be a JSON object")
    extra = set(obj) - {"vertices", "edges"}
    if extra:
        raise ParseError(f"unknown top-level keys: {sorted(extra)}")
    if "vertices" not in obj or "edges" not in obj:
        raise ParseError("graph file needs 'vertices' and 'edges'")
    records = []
    for rec in obj["edges"]:
        if not isinstance(rec, dict) or not {"id", "u", "v", "w"} <= set(rec):
            raise ParseError(f"bad edge record: {rec!r}")
        records.append((rec["id"], rec["u"], rec["v"], rec["w"]))
    try:
        return WeightedMultigraph(obj["vertices"], records)
    except (NonPositiveWeight, DanglingEndpoint, DuplicateEdgeId) as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from None


def to_json(g: WeightedMultigraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "w": e.w} for e in g.edges],
    }
