"""scikit-learn style planners wrapping the two solvers.

``fit`` takes a forecast array of shape ``(n_periods, 2)`` with one
``(mean, std)`` row per period and stores the optimal plan::

    >>> planner = PerCyclePlanner(beta=0.98).fit([[1000, 200], [2000, 200]])
    >>> planner.buffers_
    array([181.,  99.])
"""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import DomainError
from .evaluation import CostParams, evaluate_plan
from .horizon import solve_horizon
from .partitions import DEFAULT_ENUM_CAP
from .percycle import DEFAULT_LEVEL_UNIT, solve_percycle
from .validation import check_beta, check_forecast


class _BasePlanner(BaseEstimator):

    def _costs(self):
        return CostParams(self.ordering_cost, self.holding_cost)

    def _solve(self, horizon, costs):
        raise NotImplementedError

    def fit(self, X, y=None):
        horizon = check_forecast(X)
        beta = check_beta(self.beta)
        costs = self._costs()
        plan, evaluation = self._solve(horizon, costs, beta)
        self.horizon_ = horizon
        self.plan_ = plan
        self.evaluation_ = evaluation
        self.n_periods_ = len(horizon)
        self.replenishment_periods_ = np.array(plan.starts)
        self.levels_ = np.array(plan.levels)
        self.buffers_ = np.array(evaluation.buffers)
        self.cost_ = evaluation.total_cost
        return self

    def _check_fitted(self):
        if not hasattr(self, "plan_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def _check_same_length(self, horizon):
        if len(horizon) != self.n_periods_:
            raise DomainError(
                f"forecast has {len(horizon)} periods, planner was fitted on {self.n_periods_}"
            )

    def predict(self, X=None):
        """Order-up-to level in force during each period of the fitted plan."""
        self._check_fitted()
        if X is not None:
            self._check_same_length(check_forecast(X))
        out = np.empty(self.n_periods_)
        for cycle, level in zip(self.plan_.cycles, self.plan_.levels):
            out[cycle.start - 1:cycle.end] = level
        return out

    def evaluate(self, X=None):
        """Evaluate the fitted plan against forecast ``X`` (default: the fit data)."""
        self._check_fitted()
        horizon = self.horizon_ if X is None else check_forecast(X)
        self._check_same_length(horizon)
        return evaluate_plan(horizon, self._costs(), self.plan_)

    def score(self, X, y=None):
        """Horizon fill rate achieved by the fitted plan under forecast ``X``."""
        return self.evaluate(X).horizon_fill_rate


class PerCyclePlanner(_BasePlanner):
    """Cheapest plan in which every replenishment cycle meets ``beta``.

    Parameters
    ----------
    beta : float
        Fill-rate target in (0, 1).
    ordering_cost, holding_cost : float
        Fixed cost per replenishment and cost per unit per period.
    level_unit : float or None
        Buffers are rounded up to multiples of this; ``None`` keeps the
        exact bound.
    """

    def __init__(self, beta=0.95, ordering_cost=0.0, holding_cost=1.0, level_unit=DEFAULT_LEVEL_UNIT):
        self.beta = beta
        self.ordering_cost = ordering_cost
        self.holding_cost = holding_cost
        self.level_unit = level_unit

    def _solve(self, horizon, costs, beta):
        return solve_percycle(horizon, costs, beta, self.level_unit)


class HorizonPlanner(_BasePlanner):
    """Cheapest plan whose fill rate over the whole horizon meets ``beta``.

    Exact partition enumeration, so ``n_periods`` is limited by ``enum_cap``.
    """

    def __init__(self, beta=0.95, ordering_cost=0.0, holding_cost=1.0, enum_cap=DEFAULT_ENUM_CAP):
        self.beta = beta
        self.ordering_cost = ordering_cost
        self.holding_cost = holding_cost
        self.enum_cap = enum_cap

    def _solve(self, horizon, costs, beta):
        return solve_horizon(horizon, costs, beta, self.enum_cap)
