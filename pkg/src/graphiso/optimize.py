"""Systolic constant via cutting-plane linear programming.

sigma(G) = inf_w Vol / sys is computed as min sum_e w_e subject to
l_w(c) >= 1 for every reduced cycle c and w >= 0.  Cycle constraints are
generated lazily: the pool starts from the fundamental cycles and grows by
the most-violated cycle found by the weighted-girth separation oracle
(which tolerates the zero weights LP iterates produce).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .cycles import CycleWitness, systole
from .errors import IterationBudgetExceeded, NoCycle, NotConnected, OutOfDomain
from .graph import WeightedMultigraph
from .report import InequalityReport, make_report
from .stable import cycle_basis


@dataclass(frozen=True)
class SystolicOptimum:
    """Result of the cutting-plane solve.

    ``sigma`` is the volume of the final iterate, whose systole is certified
    >= 1 - tolerance by an independent girth call; ``duals`` are the LP
    multipliers of the pool constraints at the last solve.
    """

    sigma: float
    weights: dict[str, float]
    active_cycles: tuple[CycleWitness, ...]
    iterations: int
    duals: tuple[float, ...]


def optimize_systolic_volume(g: WeightedMultigraph, tolerance: float = 1e-7,
                             max_cuts: int = 10 ** 4) -> SystolicOptimum:
    if not g.is_connected():
        raise NotConnected("optimizer requires a connected graph")
    if g.betti_number() < 1:
        raise NoCycle("sigma undefined on trees")
    m = g.num_edges
    pool_rows = []      # nonnegative incidence counts, one row per cycle
    pool_wits = []
    seen = set()

    def add_cycle(wit: CycleWitness):
        row = tuple(abs(c) for c in wit.homology)
        if row in seen:
            return False
        seen.add(row)
        pool_rows.append(row)
        pool_wits.append(wit)
        return True

    basis = cycle_basis(g)
    for vec in basis.vectors:
        steps = tuple(("+" if c > 0 else "-") + g.edges[i].id
                      for i, c in enumerate(vec) for _ in range(abs(c)))
        add_cycle(CycleWitness(steps, float(np.abs(vec) @ g.weights),
                               tuple(int(c) for c in vec)))

    c_obj = np.ones(m)
    res = None
    w = None
    for it in range(max_cuts):
        A = -np.array(pool_rows, dtype=float)
        b_ub = -np.ones(len(pool_rows))
        res = linprog(c_obj, A_ub=A, b_ub=b_ub, bounds=[(0, None)] * m,
                      method="highs")
        if not res.success:
            raise IterationBudgetExceeded(f"LP failed: {res.message}")
        w = res.x
        sys_val, wit = systole(g, weights=w)
        if sys_val >= 1.0 - tolerance:
            break
        if not add_cycle(wit):
            raise IterationBudgetExceeded("separation stalled on a known cycle")
    else:
        raise IterationBudgetExceeded(f"cut budget {max_cuts} exhausted")

    lengths = np.array(pool_rows, dtype=float) @ w
    active = tuple(wit for wit, l in zip(pool_wits, lengths)
                   if l <= 1.0 + 1e-6)
    duals = tuple(float(x) for x in res.ineqlin.marginals)
    return SystolicOptimum(
        sigma=float(w.sum()),
        weights={e.id: (float(w[i]) if w[i] != 0 else 0.0)
                 for i, e in enumerate(g.edges)},
        active_cycles=active,
        iterations=it + 1,
        duals=duals,
    )


def bs_lower_bound(b: int) -> float:
    """Bollobas-Szemeredi lower bound on sigma for first Betti number b >= 3.

    Denominator grouped so the ln ln 2 terms cancel exactly at b = 3.
    """
    if b < 3:
        raise OutOfDomain("bound defined for b >= 3")
    ln2 = math.log(2.0)
    denom = (math.log(math.log(b - 1)) - math.log(ln2)
             ) + math.log(b - 1) + 4 * ln2
    return (3 * ln2 / 2) * (b - 1) / denom


def reference_upper_asymptotic(b: int) -> float:
    """Context value only: 8 ln 2 * b / ln b, the known construction scale."""
    if b < 2:
        raise OutOfDomain("needs b >= 2")
    return 8 * math.log(2.0) * b / math.log(b)


def check_bs(g: WeightedMultigraph, tolerance: float = 1e-7,
             tol: float = 1e-9) -> InequalityReport:
    """Assert bs_lower_bound(b) <= sigma(G) from the optimizer."""
    b = g.betti_number()
    if b < 3:
        return make_report("bs", "lower", None, None, applicable=False,
                           reason="bound defined for b >= 3")
    opt = optimize_systolic_volume(g, tolerance=tolerance)
    return make_report(
        "bs", "lower", opt.sigma, bs_lower_bound(b),
        witnesses={"reference_upper_asymptotic": reference_upper_asymptotic(b)},
        tol=max(tol, tolerance))
