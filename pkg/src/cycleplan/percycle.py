"""Optimal plans when every cycle must reach the fill-rate target by itself.

Given a partition, each cycle's cheapest admissible level is its own lower
bound, so cycle costs decouple and the partition is optimised exactly as a
shortest path over cycle boundaries.
"""
import math
from dataclasses import dataclass
from typing import Dict, Tuple

from .demand import Cycle, Horizon, aggregate_cycle, cumulative_mean
from .errors import DomainError
from .evaluation import CostParams, CyclePlan, PlanEvaluation, cycle_cost, evaluate_plan
from .partitions import plan_key, starts_to_bounds
from .service import ServiceTarget, _beta, min_level_for_cycle_fill_rate

DEFAULT_LEVEL_UNIT = 1.0


@dataclass(frozen=True)
class CycleEdge:
    cycle: Cycle
    level: float
    cost: float


def check_first_period(horizon: Horizon):
    if horizon.periods[0].mean <= 0.0:
        raise DomainError("period 1 must have positive mean demand")


def edge_level(horizon: Horizon, cycle: Cycle, target, level_unit=DEFAULT_LEVEL_UNIT) -> float:
    """Cheapest level meeting both the fill-rate and non-negativity bounds.

    The buffer above expected cycle demand is rounded up to a multiple of
    ``level_unit`` (whole units by default); ``level_unit=None`` keeps the
    exact continuous bound.
    """
    cd = aggregate_cycle(horizon, cycle)
    mu = cumulative_mean(horizon, cycle.start, cycle.end)
    buffer = min_level_for_cycle_fill_rate(cd, target) - mu
    if buffer <= 0.0:
        return mu
    if level_unit:
        buffer = math.ceil(buffer / level_unit) * level_unit
    return mu + buffer


def build_edges(horizon: Horizon, costs: CostParams, target,
                level_unit=DEFAULT_LEVEL_UNIT) -> Dict[Tuple[int, int], CycleEdge]:
    """All candidate cycles keyed by ``(start, end)``.

    Cycles with zero expected demand have no defined fill rate and are left
    out; with positive means everywhere there are ``T(T+1)/2`` edges.
    """
    target = ServiceTarget(_beta(target))
    check_first_period(horizon)
    T = len(horizon)
    edges = {}
    for start in range(1, T + 1):
        for end in range(start, T + 1):
            cycle = Cycle(start, end)
            if cumulative_mean(horizon, start, end) <= 0.0:
                continue
            level = edge_level(horizon, cycle, target, level_unit)
            edges[start, end] = CycleEdge(cycle, level, cycle_cost(horizon, costs, cycle, level))
    return edges


def shortest_path(edges, n_periods):
    """Minimum-cost chain of edges covering ``1..n_periods``.

    Labels are ``(cost, n_cycles, starts)``; comparing them as tuples
    applies the tie-break of fewer cycles, then earliest starts.
    """
    best = {0: (0.0, 0, ())}
    for j in range(1, n_periods + 1):
        label = None
        for i in range(j):
            if i not in best or (i + 1, j) not in edges:
                continue
            cost, _, starts = best[i]
            new_starts = starts + (i + 1,)
            cand = plan_key(cost + edges[i + 1, j].cost, new_starts)
            if label is None or cand < label:
                label = cand
        if label is not None:
            best[j] = label
    if n_periods not in best:
        raise DomainError("no admissible partition: every cycle ending in period T has zero demand")
    return best[n_periods]


def solve_percycle(horizon: Horizon, costs: CostParams, target,
                   level_unit=DEFAULT_LEVEL_UNIT) -> Tuple[CyclePlan, PlanEvaluation]:
    edges = build_edges(horizon, costs, target, level_unit)
    T = len(horizon)
    _, _, starts = shortest_path(edges, T)
    levels = [edges[bounds].level for bounds in starts_to_bounds(starts, T)]
    plan = CyclePlan.from_starts(starts, levels, T)
    return plan, evaluate_plan(horizon, costs, plan)
