"""Replenishment cycle planning under fill-rate constraints."""
from .demand import Cycle, CycleDemand, Horizon, PeriodForecast, aggregate_cycle, cumulative_mean
from .errors import (
    CapacityError,
    CycleBoundsError,
    DomainError,
    NumericalError,
    PartitionError,
    PlanningError,
    SchemaError,
    UndefinedRatioError,
)
from .estimators import HorizonPlanner, PerCyclePlanner
from .evaluation import CostParams, CyclePlan, PlanEvaluation, evaluate_plan
from .gaussian import inv_std_normal_loss, std_normal_cdf, std_normal_loss, std_normal_pdf, std_normal_sf
from .horizon import AllocationResult, BackorderBudget, allocate_levels, solve_horizon
from .percycle import CycleEdge, build_edges, solve_percycle
from .service import (
    ServiceTarget,
    cycle_fill_rate,
    expected_cycle_backorders,
    horizon_fill_rate,
    min_level_for_cycle_fill_rate,
)
from .simulator import SimulationConfig, SimulationReport, simulate

__version__ = "0.1.0"
