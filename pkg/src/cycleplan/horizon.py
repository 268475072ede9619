"""Optimal plans under a single fill-rate target for the whole horizon.

The horizon target turns into a budget on total expected backorders,
``(1 - beta) * total mean demand``. For a fixed partition the cheapest
levels solve a convex resource allocation problem::

    minimise    sum_c h * n_c * s_c
    subject to  sum_c B_c(s_c) <= budget,   s_c >= mu_c

whose first-order condition is ``h * n_c = lam * (1 - Phi(z_c))`` for every
cycle whose level is above its clamp. The multiplier ``lam`` is found by a
safeguarded Newton/bisection search on ``log(lam)``; the outer problem is
solved by enumerating all partitions.
"""
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .demand import Cycle, Horizon, aggregate_cycle
from .errors import DomainError
from .evaluation import CostParams, CyclePlan, PlanEvaluation, cycle_cost, evaluate_plan
from .gaussian import (
    _safeguarded_root,
    inv_std_normal_loss,
    inv_std_normal_sf,
    std_normal_loss,
    std_normal_pdf,
    std_normal_sf,
)
from .partitions import DEFAULT_ENUM_CAP, check_enum_cap, iter_partitions, plan_key, starts_to_bounds
from .percycle import check_first_period
from .service import ServiceTarget, _beta

_L0 = std_normal_loss(0.0)


@dataclass(frozen=True)
class BackorderBudget:
    budget: float

    def __post_init__(self):
        b = float(self.budget)
        if not (math.isfinite(b) and b >= 0.0):
            raise DomainError(f"backorder budget must be finite and >= 0, got {b!r}")
        object.__setattr__(self, "budget", b)

    @classmethod
    def for_target(cls, horizon: Horizon, target):
        return cls((1.0 - _beta(target)) * horizon.total_mean)


@dataclass
class AllocationResult:
    levels: List[float]
    achieved_backorders: List[float]
    multiplier: float
    tight: bool


def _z_at(weight, lam):
    """Standardised level of one cycle at multiplier ``lam`` (clamped at 0)."""
    p = weight / lam
    if p >= 0.5:
        return 0.0
    return max(inv_std_normal_sf(p), 0.0)


def allocate_levels(horizon: Horizon, costs: CostParams, partition: Sequence[Cycle], budget) -> AllocationResult:
    if not isinstance(budget, BackorderBudget):
        budget = BackorderBudget(budget)
    b = budget.budget
    cds = [aggregate_cycle(horizon, c) for c in partition]
    weights = [costs.holding_cost * len(c) for c in partition]
    active = [i for i, cd in enumerate(cds) if cd.sigma > 0.0]
    levels = [cd.mu for cd in cds]

    def result(lam, tight):
        backorders = [cds[i].sigma * std_normal_loss((levels[i] - cds[i].mu) / cds[i].sigma)
                      if i in active else max(0.0, cds[i].mu - levels[i])
                      for i in range(len(cds))]
        return AllocationResult(levels, backorders, lam, tight)

    if math.fsum(cds[i].sigma for i in active) * _L0 <= b:
        return result(0.0, False)
    if b == 0.0:
        raise DomainError("zero backorder budget is unattainable with uncertain demand")

    if len(active) == 1:
        (i,) = active
        cd = cds[i]
        z = inv_std_normal_loss(b / cd.sigma)
        levels[i] = cd.mu + cd.sigma * z
        return result(weights[i] / std_normal_sf(z), True)

    def excess(u):
        lam = math.exp(u)
        return math.fsum(cds[i].sigma * std_normal_loss(_z_at(weights[i], lam)) for i in active) - b

    def slope(u):
        # dB/du = -sum sigma * Q(z)^2 / phi(z) over unclamped cycles
        lam = math.exp(u)
        total = 0.0
        for i in active:
            z = _z_at(weights[i], lam)
            if z > 0.0:
                q = std_normal_sf(z)
                total -= cds[i].sigma * q * q / std_normal_pdf(z)
        return total

    lo = math.log(2.0 * min(weights[i] for i in active))
    hi = lo + 1.0
    while excess(hi) > 0.0:
        hi = lo + 2.0 * (hi - lo)
    u = _safeguarded_root(excess, slope, lo, hi)
    if excess(u) > 0.0:
        # step to the feasible side of the bracket
        u = math.nextafter(u, math.inf)
    lam = math.exp(u)
    for i in active:
        levels[i] = cds[i].mu + cds[i].sigma * _z_at(weights[i], lam)
    return result(lam, True)


def horizon_partition_cost(horizon, costs, partition, levels):
    total = 0.0
    for cycle, level in zip(partition, levels):
        total += cycle_cost(horizon, costs, cycle, level)
    return total


def solve_horizon(horizon: Horizon, costs: CostParams, target, enum_cap: int = DEFAULT_ENUM_CAP
                  ) -> Tuple[CyclePlan, PlanEvaluation]:
    target = ServiceTarget(_beta(target))
    check_first_period(horizon)
    T = len(horizon)
    check_enum_cap(T, enum_cap)
    budget = BackorderBudget.for_target(horizon, target)
    best = None
    for starts in iter_partitions(T):
        partition = [Cycle(a, e) for a, e in starts_to_bounds(starts, T)]
        if any(aggregate_cycle(horizon, c).mu <= 0.0 for c in partition):
            continue
        alloc = allocate_levels(horizon, costs, partition, budget)
        key = plan_key(horizon_partition_cost(horizon, costs, partition, alloc.levels), starts)
        if best is None or key < best[0]:
            best = (key, alloc.levels)
    (_, _, starts), levels = best
    plan = CyclePlan.from_starts(starts, levels, T)
    return plan, evaluate_plan(horizon, costs, plan)
