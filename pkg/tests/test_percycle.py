import itertools

import pytest

from cycleplan import CostParams, DomainError, Horizon, solve_percycle
from cycleplan.percycle import build_edges, shortest_path

from conftest import random_instances


def brute_force(horizon, edges):
    """Enumerate boundary bitmasks directly; ties: fewer cycles, earliest starts."""
    T = len(horizon)
    best = None
    for mask in itertools.product([0, 1], repeat=T - 1):
        starts = (1,) + tuple(t + 2 for t, bit in enumerate(mask) if bit)
        ends = [s - 1 for s in starts[1:]] + [T]
        cost = 0.0
        for a, b in zip(starts, ends):
            cost += edges[a, b].cost
        key = (cost, len(starts), starts)
        if best is None or key < best:
            best = key
    return best


def test_edges_paper_instance(paper_horizon, unit_costs):
    edges = build_edges(paper_horizon, unit_costs, 0.98)
    assert len(edges) == 3
    assert edges[1, 1].level == pytest.approx(1181, abs=0.5)
    assert edges[2, 2].level == pytest.approx(2099, abs=0.5)
    assert edges[1, 1].cost == 181


def test_edges_exact_bound(paper_horizon, unit_costs):
    edges = build_edges(paper_horizon, unit_costs, 0.98, level_unit=None)
    assert edges[1, 1].level == pytest.approx(1180.469269502007, abs=1e-8)


def test_edges_deterministic_case():
    h = Horizon([(10, 0), (20, 0), (30, 0)])
    edges = build_edges(h, CostParams(4, 1), 0.95)
    assert len(edges) == 6
    assert edges[1, 3].level == 60
    assert edges[1, 3].cost == 4 + (50 + 30 + 0)
    assert edges[2, 3].cost == 4 + 30


def test_edges_respect_both_bounds():
    for horizon, costs, beta in random_instances(30, seed=3):
        T = len(horizon)
        edges = build_edges(horizon, costs, beta)
        assert len(edges) == T * (T + 1) // 2
        from cycleplan.demand import aggregate_cycle
        from cycleplan.service import cycle_fill_rate
        for (a, b), e in edges.items():
            cd = aggregate_cycle(horizon, e.cycle)
            assert e.level >= cd.mu
            assert cycle_fill_rate(cd, e.level) >= beta - 1e-9
            assert e.cost >= 0


def test_solve_paper_instance(paper_horizon, unit_costs):
    plan, ev = solve_percycle(paper_horizon, unit_costs, 0.98)
    assert plan.starts == (1, 2)
    assert plan.levels == (1181, 2099)
    assert ev.total_cost == pytest.approx(280, abs=0.5)


def test_huge_ordering_cost_single_cycle(paper_horizon):
    plan, _ = solve_percycle(paper_horizon, CostParams(1e6, 1), 0.98)
    assert plan.starts == (1,)
    assert plan.cycles[0].end == 2


def test_matches_brute_force():
    for horizon, costs, beta in random_instances(60, seed=11):
        edges = build_edges(horizon, costs, beta)
        cost, n, starts = brute_force(horizon, edges)
        sp = shortest_path(edges, len(horizon))
        assert sp == (cost, n, starts)
        plan, _ = solve_percycle(horizon, costs, beta)
        assert plan.starts == starts


def test_tie_break_prefers_fewer_cycles():
    # one order: 5 + holding 5; two orders: 5 + 5
    h = Horizon([(10, 0), (5, 0)])
    plan, ev = solve_percycle(h, CostParams(5, 1), 0.9)
    assert ev.total_cost == 10
    assert plan.starts == (1,)


def test_zero_demand_cycles_excluded(unit_costs):
    h = Horizon([(10, 0), (0.0, 0), (10, 0)])
    edges = build_edges(h, unit_costs, 0.9)
    assert (2, 2) not in edges
    plan, ev = solve_percycle(h, unit_costs, 0.9)
    assert plan.starts == (1, 3)
    assert ev.total_cost == 0


def test_service_guarantee_and_beta_monotone():
    for horizon, costs, beta in random_instances(40, seed=5):
        plan, ev = solve_percycle(horizon, costs, beta)
        assert ev.feasible
        assert min(ev.per_cycle_fill_rate) >= beta - 1e-9
        _, looser = solve_percycle(horizon, costs, beta - 0.05)
        assert looser.total_cost <= ev.total_cost


def test_repeatable(paper_horizon, unit_costs):
    runs = {solve_percycle(paper_horizon, unit_costs, 0.95)[0] for _ in range(5)}
    assert len(runs) == 1


def test_first_period_needs_demand(unit_costs):
    with pytest.raises(DomainError):
        solve_percycle(Horizon([(0, 0), (10, 1)]), unit_costs, 0.9)
