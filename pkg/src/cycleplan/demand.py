"""Non-stationary normal demand forecasts and their cycle aggregates.

Period demands are treated as independent normals, so the demand over a
run of consecutive periods is normal with summed means and variances.
Period indices are 1-based throughout.
"""
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import CycleBoundsError, DomainError


@dataclass(frozen=True)
class PeriodForecast:
    mean: float
    std: float

    def __post_init__(self):
        for name in ("mean", "std"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"period {name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Cycle:
    """Replenishment cycle covering periods ``start..end`` inclusive."""

    start: int
    end: int

    def __post_init__(self):
        if int(self.start) != self.start or int(self.end) != self.end:
            raise CycleBoundsError(f"cycle bounds must be integers, got {self}")
        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "end", int(self.end))
        if not 1 <= self.start <= self.end:
            raise CycleBoundsError(f"invalid cycle ({self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start + 1

    def periods(self):
        return range(self.start, self.end + 1)


@dataclass(frozen=True)
class CycleDemand:
    mu: float
    sigma: float


class Horizon:
    """Ordered sequence of period forecasts, length ``T >= 1``."""

    __slots__ = ("periods", "_means", "_vars")

    def __init__(self, periods: Sequence[PeriodForecast]):
        periods = tuple(
            p if isinstance(p, PeriodForecast) else PeriodForecast(*p) for p in periods
        )
        if not periods:
            raise DomainError("horizon must contain at least one period")
        self.periods: Tuple[PeriodForecast, ...] = periods
        self._means = [p.mean for p in periods]
        self._vars = [p.std * p.std for p in periods]

    @classmethod
    def from_arrays(cls, means, stds):
        means = np.asarray(means, dtype=float).ravel()
        stds = np.asarray(stds, dtype=float).ravel()
        if means.shape != stds.shape:
            raise DomainError("means and stds must have the same length")
        return cls([PeriodForecast(m, s) for m, s in zip(means, stds)])

    def __len__(self):
        return len(self.periods)

    def __iter__(self):
        return iter(self.periods)

    def __eq__(self, other):
        return isinstance(other, Horizon) and self.periods == other.periods

    def __hash__(self):
        return hash(self.periods)

    def __repr__(self):
        inner = ", ".join(f"N({p.mean:g}, {p.std:g})" for p in self.periods)
        return f"Horizon([{inner}])"

    @property
    def means(self):
        return np.array(self._means)

    @property
    def stds(self):
        return np.array([p.std for p in self.periods])

    @property
    def total_mean(self):
        return math.fsum(self._means)

    def check_range(self, start, end):
        if not 1 <= start <= end <= len(self):
            raise CycleBoundsError(
                f"period range ({start}, {end}) outside horizon 1..{len(self)}"
            )


def cumulative_mean(horizon: Horizon, start: int, end: int) -> float:
    """Sum of period means over ``start..end``."""
    horizon.check_range(start, end)
    if start == end:
        return horizon._means[start - 1]
    return math.fsum(horizon._means[start - 1:end])


def aggregate_cycle(horizon: Horizon, cycle: Cycle) -> CycleDemand:
    horizon.check_range(cycle.start, cycle.end)
    if cycle.start == cycle.end:
        p = horizon.periods[cycle.start - 1]
        return CycleDemand(p.mean, p.std)
    mu = math.fsum(horizon._means[cycle.start - 1:cycle.end])
    var = math.fsum(horizon._vars[cycle.start - 1:cycle.end])
    return CycleDemand(mu, math.sqrt(var))
