"""Topological Markov chains given by 0/1 transition matrices.

All quantities are computed on the defining digraph; the shift space itself
is never materialized.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import BadParameter, EmptySubshift, OracleBudgetExceeded, ParseError
from .report import InequalityReport, make_report


def validate_transition_matrix(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise BadParameter(f"transition matrix must be square, got {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise BadParameter("transition matrix entries must be 0 or 1")
    return A.astype(int)


def has_directed_cycle(A) -> bool:
    A = validate_transition_matrix(A)
    # iteratively strip sinks; a cycle survives iff something remains
    alive = np.ones(A.shape[0], dtype=bool)
    changed = True
    while changed:
        changed = False
        for i in np.flatnonzero(alive):
            if not A[i, alive].any():
                alive[i] = False
                changed = True
    return bool(alive.any())


def topological_entropy(A) -> float:
    """ln of the spectral radius of A; requires a directed cycle."""
    from .entropy import spectral_radius

    A = validate_transition_matrix(A)
    if not has_directed_cycle(A):
        raise EmptySubshift("acyclic transition matrix")
    rho = spectral_radius(A.astype(float))
    assert rho >= 1.0 - 1e-12, "binary matrix with a cycle has rho >= 1"
    return math.log(max(rho, 1.0))


def count_admissible_words(A, k: int) -> int:
    """Number of admissible words of length k: total entries of A^(k-1).

    Exact integer arithmetic; oracle scale (n <= 12, k <= 30).
    """
    A = validate_transition_matrix(A)
    if k < 1 or k > 30 or A.shape[0] > 12:
        raise OracleBudgetExceeded("word count limited to n <= 12, k <= 30")
    P = np.array(A, dtype=object)
    out = np.eye(A.shape[0], dtype=object)
    e = k - 1
    while e:
        if e & 1:
            out = out @ P
        P = P @ P
        e >>= 1
    return int(out.sum())


def minimal_period(A) -> int:
    """Shortest directed cycle length (self-loop gives 1)."""
    A = validate_transition_matrix(A)
    n = A.shape[0]
    if np.diagonal(A).any():
        return 1
    best = None
    succ = [np.flatnonzero(A[i]).tolist() for i in range(n)]
    for v in range(n):
        dist = {v: 0}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for y in succ[x]:
                    if y == v:
                        cand = dist[x] + 1
                        if best is None or cand < best:
                            best = cand
                    elif y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            if best is not None and frontier and dist[frontier[0]] + 1 >= best:
                break
            frontier = nxt
    if best is None:
        raise EmptySubshift("acyclic transition matrix")
    return best


def betti_bA(A) -> int:
    """The paper-formula Betti count: sum(A) - n + 1 (may be <= 0 when the
    underlying graph is disconnected; callers should flag that case)."""
    A = validate_transition_matrix(A)
    return int(A.sum()) - A.shape[0] + 1


def underlying_connected(A) -> bool:
    """Connectivity of the underlying undirected graph of the digraph."""
    A = validate_transition_matrix(A)
    n = A.shape[0]
    und = (A + A.T) > 0
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in np.flatnonzero(und[x]):
            if y not in seen:
                seen.add(int(y))
                stack.append(int(y))
    return len(seen) == n


def equality_family(b: int) -> np.ndarray:
    """Size-(b+1) star matrix: hub state 1 connects both ways to b leaves."""
    if b < 1:
        raise BadParameter("equality_family needs b >= 1")
    A = np.zeros((b + 1, b + 1), dtype=int)
    A[0, 1:] = 1
    A[1:, 0] = 1
    return A


def check_prop6(A, tol: float = 1e-9) -> InequalityReport:
    """h_top * T_min <= ln b_A, with degenerate cases reported, not checked.

    The b_A formula equals the first Betti number of the defining digraph
    only when its underlying graph is connected (isolated vertices already
    break it); outside that hypothesis the bound can fail for reasons that
    have nothing to do with the dynamics, so such inputs are reported as
    non-applicable rather than as violations.
    """
    A = validate_transition_matrix(A)
    if not has_directed_cycle(A):
        raise EmptySubshift("acyclic transition matrix")
    bA = betti_bA(A)
    if bA < 1:
        return make_report(
            "prop6", "upper", None, None, applicable=False,
            reason=f"b_A = {bA} <= 0: formula is not a Betti number here")
    h = topological_entropy(A)
    t = minimal_period(A)
    if not underlying_connected(A):
        return make_report(
            "prop6", "upper", None, None, applicable=False,
            reason="underlying graph disconnected: b_A formula diverges "
                   "from topology",
            witnesses={"T_min": t, "b_A": bA, "h_T": h * t})
    return make_report("prop6", "upper", h * t, math.log(bA),
                       witnesses={"T_min": t, "b_A": bA}, tol=tol)


def from_json(text_or_obj) -> np.ndarray:
    """Parse {"n": int, "rows": [[0/1, ...], ...]}."""
    if isinstance(text_or_obj, (str, bytes)):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    else:
        obj = text_or_obj
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise ParseError("matrix file needs 'n' and 'rows'")
    rows = obj["rows"]
    if len(rows) != obj["n"] or any(len(r) != obj["n"] for r in rows):
        raise ParseError("rows do not form an n x n matrix")
    try:
        return validate_transition_matrix(rows)
    except BadParameter as exc:
        raise ParseError(str(exc)) from None
