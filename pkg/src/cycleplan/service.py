"""Fill-rate arithmetic for normal cycle demand.

Backorders over a cycle are the shortfall of cycle-total demand against
the order-up-to level, since nothing is received mid-cycle. Fill rates
are ratios of expected backorders to expected demand.
"""
import math
from dataclasses import dataclass
from typing import Sequence

from .demand import CycleDemand, Horizon
from .errors import DomainError, UndefinedRatioError
from .gaussian import inv_std_normal_loss, std_normal_loss


@dataclass(frozen=True)
class ServiceTarget:
    beta: float

    def __post_init__(self):
        beta = float(self.beta)
        if not (0.0 < beta < 1.0):
            raise DomainError(f"fill-rate target must lie in (0, 1), got {beta!r}")
        object.__setattr__(self, "beta", beta)


def _beta(target):
    return target.beta if isinstance(target, ServiceTarget) else ServiceTarget(target).beta


def expected_cycle_backorders(cd: CycleDemand, level: float) -> float:
    """Expected units short, ``E[(D - level)^+]`` for ``D ~ N(mu, sigma)``."""
    level = float(level)
    if math.isinf(level) and level > 0:
        return 0.0
    if not math.isfinite(level):
        raise DomainError(f"order-up-to level must be finite, got {level!r}")
    if cd.sigma < 0:
        raise DomainError("cycle sigma must be >= 0")
    z = (level - cd.mu) / cd.sigma if cd.sigma > 0.0 else math.inf
    if not math.isfinite(z):
        # zero or subnormal sigma: demand is effectively deterministic
        return max(0.0, cd.mu - level)
    return cd.sigma * std_normal_loss(z)


def cycle_fill_rate(cd: CycleDemand, level: float) -> float:
    if cd.mu <= 0.0:
        raise UndefinedRatioError("fill rate undefined for a cycle with zero expected demand")
    return 1.0 - expected_cycle_backorders(cd, level) / cd.mu


def min_level_for_cycle_fill_rate(cd: CycleDemand, target) -> float:
    """Smallest order-up-to level whose cycle fill rate reaches ``target``.

    The result is not clamped at ``cd.mu``; loose targets can give a level
    below expected cycle demand.
    """
    beta = _beta(target)
    if cd.mu <= 0.0:
        raise DomainError("minimum level needs positive expected cycle demand")
    if cd.sigma == 0.0:
        return cd.mu
    target = (1.0 - beta) * cd.mu / cd.sigma
    if not math.isfinite(target):
        # deep left tail, L(z) = -z: the level covers beta * mu exactly
        return beta * cd.mu
    return cd.mu + cd.sigma * inv_std_normal_loss(target)


def horizon_fill_rate(per_cycle_backorders: Sequence[float], horizon: Horizon) -> float:
    """One minus total expected backorders over total expected demand."""
    total = horizon.total_mean
    if total <= 0.0:
        raise UndefinedRatioError("horizon fill rate undefined for zero total demand")
    return 1.0 - math.fsum(per_cycle_backorders) / total
