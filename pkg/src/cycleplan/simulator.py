"""Monte Carlo replay of an order-up-to plan with full backordering.

Replication ``r`` draws its period demands from a fixed block of a Philox
counter-based stream keyed by the seed, so its sample path does not depend
on the total number of replications or on how they are batched. Uniforms
are mapped to normals by inversion, which consumes exactly one draw per
period.
"""
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.special import ndtri

from .demand import Horizon
from .errors import DomainError
from .evaluation import CostParams, CyclePlan

Z95 = 1.96
TRUNCATE = "truncate"
ALLOW_NEGATIVE = "allow-negative"
_POLICIES = {TRUNCATE: TRUNCATE, "truncate-at-zero": TRUNCATE,
             ALLOW_NEGATIVE: ALLOW_NEGATIVE, "allow": ALLOW_NEGATIVE}


@dataclass(frozen=True)
class SimulationConfig:
    replications: int = 100_000
    seed: int = 0
    negative_demand_policy: str = TRUNCATE
    batch_size: int = 65_536

    def __post_init__(self):
        if int(self.replications) != self.replications or self.replications < 1:
            raise DomainError("replications must be a positive integer")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        policy = _POLICIES.get(self.negative_demand_policy)
        if policy is None:
            raise DomainError(f"unknown negative demand policy {self.negative_demand_policy!r}")
        object.__setattr__(self, "negative_demand_policy", policy)
        if self.batch_size < 1:
            raise DomainError("batch_size must be positive")


@dataclass
class SimulationReport:
    replications: int
    fill_rate_ratio_of_means: float
    fill_rate_mean_of_ratios: float
    per_cycle_backorders_mean: List[float]
    holding_cost_mean: float
    net_holding_cost_mean: float
    ordering_cost: float
    total_cost_mean: float
    demand_mean: float
    zero_demand_paths: int
    half_width_95: dict = field(default_factory=dict)


def _uniforms(seed, first, count, n_periods):
    """Uniforms in (0, 1) for replications ``first .. first + count - 1``."""
    blocks = -(-n_periods // 4)  # Philox yields 4 words per counter step
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(first * blocks)
    raw = bitgen.random_raw(count * blocks * 4).reshape(count, blocks * 4)[:, :n_periods]
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def sample_demands(horizon: Horizon, config: SimulationConfig, first, count):
    z = ndtri(_uniforms(config.seed, first, count, len(horizon)))
    d = horizon.means + horizon.stds * z
    if config.negative_demand_policy == TRUNCATE:
        np.maximum(d, 0.0, out=d)
    return d


def replay(plan: CyclePlan, demands):
    """Net inventory and per-cycle backorders along each sample path.

    ``demands`` has shape ``(n_paths, T)``. Returns ``(net, orders,
    backorders)`` where ``net[:, t]`` is end-of-period net inventory,
    ``orders[:, c]`` the quantity ordered at the start of cycle ``c`` and
    ``backorders[:, c]`` the demand backordered during cycle ``c``.
    """
    n, T = demands.shape
    net = np.empty((n, T))
    orders = np.empty((n, len(plan.cycles)))
    backorders = np.zeros((n, len(plan.cycles)))
    current = np.zeros(n)
    for c, (cycle, level) in enumerate(zip(plan.cycles, plan.levels)):
        orders[:, c] = level - current
        # balance update kept literal so conservation holds bit for bit
        current = current + orders[:, c]
        short_prev = np.maximum(-current, 0.0)
        for t in cycle.periods():
            current = current - demands[:, t - 1]
            net[:, t - 1] = current
            short = np.maximum(-current, 0.0)
            backorders[:, c] += short - short_prev
            short_prev = short
    return net, orders, backorders


def _hw(sample_sum, sample_sq, n):
    if n < 2:
        return 0.0
    mean = sample_sum / n
    var = max(sample_sq / n - mean * mean, 0.0) * n / (n - 1)
    return Z95 * math.sqrt(var / n)


def simulate(horizon: Horizon, plan: CyclePlan, costs: CostParams, config: SimulationConfig) -> SimulationReport:
    plan.check_horizon(horizon)
    n_cycles = len(plan.cycles)
    h = costs.holding_cost
    # running sums, accumulated batch by batch in replication order
    s = {k: 0.0 for k in ("bo", "bo2", "d", "d2", "bod", "ratio", "ratio2",
                          "hold", "hold2", "net", "net2")}
    per_cycle = np.zeros(n_cycles)
    per_cycle2 = np.zeros(n_cycles)
    n_ratio = 0
    done = 0
    while done < config.replications:
        count = min(config.batch_size, config.replications - done)
        demands = sample_demands(horizon, config, done, count)
        net, _, bo = replay(plan, demands)
        total_bo = bo.sum(axis=1)
        total_d = demands.sum(axis=1)
        hold = h * np.maximum(net, 0.0).sum(axis=1)
        net_hold = h * net.sum(axis=1)
        mask = total_d > 0.0
        ratio = total_bo[mask] / total_d[mask]
        n_ratio += int(mask.sum())
        for key, arr in (("bo", total_bo), ("d", total_d), ("hold", hold), ("net", net_hold), ("ratio", ratio)):
            s[key] += float(arr.sum())
            s[key + "2"] += float((arr * arr).sum())
        s["bod"] += float((total_bo * total_d).sum())
        per_cycle += bo.sum(axis=0)
        per_cycle2 += (bo * bo).sum(axis=0)
        done += count

    n = config.replications
    mean_bo, mean_d = s["bo"] / n, s["d"] / n
    ratio_of_means = 1.0 - mean_bo / mean_d if mean_d > 0 else math.nan
    mean_of_ratios = 1.0 - s["ratio"] / n_ratio if n_ratio else math.nan
    # delta method on B - r D for the ratio of means
    if mean_d > 0 and n > 1:
        r = mean_bo / mean_d
        lin_sum = s["bo"] - r * s["d"]
        lin_sq = s["bo2"] - 2 * r * s["bod"] + r * r * s["d2"]
        hw_rom = _hw(lin_sum, lin_sq, n) / mean_d
    else:
        hw_rom = 0.0
    ordering = costs.ordering_cost * n_cycles
    half_widths = {
        "fill_rate_ratio_of_means": hw_rom,
        "fill_rate_mean_of_ratios": _hw(s["ratio"], s["ratio2"], n_ratio),
        "per_cycle_backorders_mean": [_hw(a, b, n) for a, b in zip(per_cycle, per_cycle2)],
        "holding_cost_mean": _hw(s["hold"], s["hold2"], n),
        "net_holding_cost_mean": _hw(s["net"], s["net2"], n),
    }
    return SimulationReport(
        replications=n,
        fill_rate_ratio_of_means=ratio_of_means,
        fill_rate_mean_of_ratios=mean_of_ratios,
        per_cycle_backorders_mean=[float(x) / n for x in per_cycle],
        holding_cost_mean=s["hold"] / n,
        net_holding_cost_mean=s["net"] / n,
        ordering_cost=ordering,
        total_cost_mean=s["hold"] / n + ordering,
        demand_mean=mean_d,
        zero_demand_paths=n - n_ratio,
        half_width_95=half_widths,
    )
