"""Independent brute-force checks for the fast solvers.

The grid search here uses scipy's normal distribution rather than the
package's own numeric kernel, so agreement is a genuine cross-check.
"""
import numpy as np
from scipy.special import ndtr

from .demand import Cycle, Horizon, aggregate_cycle
from .errors import CapacityError
from .evaluation import CostParams, CyclePlan
from .partitions import iter_partitions, plan_key, starts_to_bounds

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def enumerate_percycle(horizon: Horizon, edges):
    """Exhaustive minimum over all partitions using prebuilt cycle edges.

    Returns ``(plan, cost, n_examined)``. Costs are accumulated in period
    order so they are bit-identical to the shortest-path labels.
    """
    T = len(horizon)
    best, examined = None, 0
    for starts in iter_partitions(T):
        bounds = starts_to_bounds(starts, T)
        if any(b not in edges for b in bounds):
            continue
        examined += 1
        cost = 0.0
        for b in bounds:
            cost += edges[b].cost
        key = plan_key(cost, starts)
        if best is None or key < best:
            best = key
    cost, _, starts = best
    levels = [edges[b].level for b in starts_to_bounds(starts, T)]
    return CyclePlan.from_starts(starts, levels, T), cost, examined


def _backorders(mu, sigma, levels):
    if sigma == 0.0:
        return np.maximum(mu - levels, 0.0)
    z = (levels - mu) / sigma
    return sigma * (_INV_SQRT_2PI * np.exp(-0.5 * z * z) - z * ndtr(-z))


def grid_search_allocation(horizon: Horizon, costs: CostParams, partition, budget,
                           step=0.01, max_sd=8.0, max_cells=50_000_000):
    """Cheapest grid of buffers meeting the backorder budget.

    Buffers (levels above each cycle's mean demand) range over multiples of
    ``step`` in ``[0, max_sd * sigma]``. The last cycle is not gridded
    exhaustively: for each combination of the others, the smallest grid
    buffer meeting the remaining budget is found by binary search, which
    is exact because backorders decrease in the buffer.

    Returns ``(holding_plus_ordering_cost, buffers)`` or ``(inf, None)``.
    """
    partition = [c if isinstance(c, Cycle) else Cycle(*c) for c in partition]
    cells = grid_cells(horizon, partition, step, max_sd)
    if cells > max_cells:
        raise CapacityError(f"grid search needs about {cells:.3g} points; use a coarser grid step")
    cds = [aggregate_cycle(horizon, c) for c in partition]
    grids = [np.arange(0.0, max(max_sd * cd.sigma, step) + step, step) for cd in cds]
    bos = [_backorders(cd.mu, cd.sigma, cd.mu + g) for cd, g in zip(cds, grids)]
    weights = [costs.holding_cost * len(c) for c in partition]

    last_g, last_b = grids[-1], bos[-1][::-1]  # ascending for searchsorted
    if len(partition) == 1:
        head_cost = np.zeros(1)
        head_bo = np.zeros(1)
        head_idx = [np.zeros(1, dtype=int)]
    else:
        mesh = np.meshgrid(*[np.arange(len(g)) for g in grids[:-1]], indexing="ij")
        head_idx = [m.ravel() for m in mesh]
        head_cost = sum(w * g[i] for w, g, i in zip(weights, grids, head_idx))
        head_bo = sum(b[i] for b, i in zip(bos, head_idx))
    remaining = budget - head_bo
    # smallest buffer index k with last_bo[k] <= remaining
    pos = np.searchsorted(last_b, remaining, side="right")
    k = len(last_g) - pos
    ok = (pos > 0) & (remaining >= 0)
    if not np.any(ok):
        return np.inf, None
    total = np.where(ok, head_cost + weights[-1] * last_g[np.minimum(k, len(last_g) - 1)], np.inf)
    j = int(np.argmin(total))
    buffers = [float(g[i[j]]) for g, i in zip(grids[:-1], head_idx[:len(grids) - 1])]
    buffers.append(float(last_g[k[j]]))
    fixed = 0.0
    for c in partition:
        consumed = np.cumsum(horizon.means[c.start - 1:c.end])
        fixed += costs.holding_cost * float(np.sum(consumed[-1] - consumed))
    return float(total[j]) + fixed + costs.ordering_cost * len(partition), buffers


def grid_cells(horizon: Horizon, partition, step, max_sd=8.0):
    """Number of grid points searched exhaustively for one partition."""
    cells = 1.0
    for c in partition[:-1]:
        cells *= max_sd * aggregate_cycle(horizon, c).sigma / step + 2
    return cells


def grid_search_horizon(horizon: Horizon, costs: CostParams, beta, step=0.01, max_cells=None):
    """Best grid plan over every partition under the horizon target.

    Returns ``(cost, starts, buffers)``. Raises ``CapacityError`` before
    searching if any partition needs more than ``max_cells`` grid points.
    """
    T = len(horizon)
    budget = (1.0 - beta) * float(np.sum(horizon.means))
    partitions = [[Cycle(a, b) for a, b in starts_to_bounds(starts, T)] for starts in iter_partitions(T)]
    if max_cells is not None:
        worst = max(grid_cells(horizon, p, step) for p in partitions)
        if worst > max_cells:
            raise CapacityError(
                f"grid search needs about {worst:.3g} points; use a coarser grid step"
            )
    best = (np.inf, None, None)
    for partition in partitions:
        starts = tuple(c.start for c in partition)
        cost, buffers = grid_search_allocation(horizon, costs, partition, budget, step)
        if cost < best[0]:
            best = (cost, starts, buffers)
    return best
