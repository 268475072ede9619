"""Cost and service evaluation of a complete replenishment plan."""
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .demand import Cycle, Horizon, aggregate_cycle
from .errors import DomainError, PartitionError
from .service import cycle_fill_rate, expected_cycle_backorders, horizon_fill_rate

FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class CostParams:
    ordering_cost: float = 0.0
    holding_cost: float = 1.0

    def __post_init__(self):
        a, h = float(self.ordering_cost), float(self.holding_cost)
        if not (math.isfinite(a) and a >= 0.0):
            raise DomainError(f"ordering cost must be finite and >= 0, got {a!r}")
        if not (math.isfinite(h) and h > 0.0):
            raise DomainError(f"holding cost must be finite and > 0, got {h!r}")
        object.__setattr__(self, "ordering_cost", a)
        object.__setattr__(self, "holding_cost", h)


@dataclass(frozen=True)
class CyclePlan:
    """Consecutive replenishment cycles with one order-up-to level each."""

    cycles: Tuple[Cycle, ...]
    levels: Tuple[float, ...]

    def __post_init__(self):
        cycles = tuple(c if isinstance(c, Cycle) else Cycle(*c) for c in self.cycles)
        levels = tuple(float(s) for s in self.levels)
        if not cycles:
            raise PartitionError("plan must contain at least one cycle")
        if len(cycles) != len(levels):
            raise PartitionError(
                f"{len(cycles)} cycles but {len(levels)} order-up-to levels"
            )
        if cycles[0].start != 1:
            raise PartitionError("first cycle must start in period 1")
        for prev, nxt in zip(cycles, cycles[1:]):
            if nxt.start != prev.end + 1:
                raise PartitionError(f"cycles {prev} and {nxt} are not consecutive")
        if not all(math.isfinite(s) for s in levels):
            raise DomainError("order-up-to levels must be finite")
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "levels", levels)

    @classmethod
    def from_starts(cls, starts: Sequence[int], levels: Sequence[float], n_periods: int):
        """Build a plan from 1-based replenishment periods."""
        starts = list(starts)
        ends = [s - 1 for s in starts[1:]] + [n_periods]
        return cls(tuple(Cycle(a, b) for a, b in zip(starts, ends)), tuple(levels))

    @property
    def n_periods(self):
        return self.cycles[-1].end

    @property
    def starts(self):
        return tuple(c.start for c in self.cycles)

    def check_horizon(self, horizon: Horizon):
        if self.n_periods != len(horizon):
            raise PartitionError(
                f"plan covers {self.n_periods} periods, horizon has {len(horizon)}"
            )


@dataclass
class PlanEvaluation:
    expected_end_inventory: List[float]
    per_cycle_backorders: List[float]
    per_cycle_fill_rate: List[float]
    horizon_fill_rate: float
    holding_cost: float
    ordering_cost: float
    total_cost: float
    feasible: bool
    buffers: List[float] = field(default_factory=list)


def expected_inventories(horizon: Horizon, cycle: Cycle, level: float) -> List[float]:
    """Expected end-of-period net inventory for each period of ``cycle``."""
    horizon.check_range(cycle.start, cycle.end)
    out, consumed = [], 0.0
    for t in cycle.periods():
        consumed += horizon.periods[t - 1].mean
        out.append(level - consumed)
    return out


def cycle_cost(horizon: Horizon, costs: CostParams, cycle: Cycle, level: float) -> float:
    """Ordering plus expected holding cost of a single cycle."""
    inv = expected_inventories(horizon, cycle, level)
    return costs.ordering_cost + costs.holding_cost * math.fsum(inv)


def evaluate_plan(horizon: Horizon, costs: CostParams, plan: CyclePlan) -> PlanEvaluation:
    plan.check_horizon(horizon)
    inventory, backorders, fill_rates, buffers = [], [], [], []
    for cycle, level in zip(plan.cycles, plan.levels):
        inv = expected_inventories(horizon, cycle, level)
        cd = aggregate_cycle(horizon, cycle)
        inventory.extend(inv)
        buffers.append(inv[-1])
        b = expected_cycle_backorders(cd, level)
        backorders.append(b)
        fill_rates.append(cycle_fill_rate(cd, level))
    holding = costs.holding_cost * math.fsum(inventory)
    ordering = costs.ordering_cost * len(plan.cycles)
    return PlanEvaluation(
        expected_end_inventory=inventory,
        per_cycle_backorders=backorders,
        per_cycle_fill_rate=fill_rates,
        horizon_fill_rate=horizon_fill_rate(backorders, horizon),
        holding_cost=holding,
        ordering_cost=ordering,
        total_cost=holding + ordering,
        feasible=all(x >= -FEASIBILITY_TOL for x in inventory),
        buffers=buffers,
    )
