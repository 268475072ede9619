"""Command-line entry point: ``cycleplan --mode MODE --instance FILE ...``."""
import argparse
import sys
import time
from dataclasses import asdict

from . import formats
from .errors import CapacityError, NumericalError, PlanningError
from .evaluation import evaluate_plan
from .horizon import solve_horizon
from .oracle import enumerate_percycle, grid_search_horizon
from .partitions import DEFAULT_ENUM_CAP, check_enum_cap, count_partitions
from .percycle import build_edges, shortest_path, solve_percycle
from .simulator import SimulationConfig, simulate

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY, EXIT_NUMERIC = 0, 2, 3, 4
MODES = ("solve-percycle", "solve-horizon", "evaluate", "simulate", "oracle")
GRID_CELL_LIMIT = 50_000_000


def build_parser():
    p = argparse.ArgumentParser(
        prog="cycleplan",
        description="Replenishment cycle plans under fill-rate constraints.",
    )
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--instance", required=True, metavar="PATH")
    p.add_argument("--plan", metavar="PATH", help="plan file for evaluate/simulate")
    p.add_argument("--beta", type=float, help="override the instance fill-rate target")
    p.add_argument("--replications", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--level-unit", type=float, default=1.0,
                   help="rounding unit for per-cycle buffers (0 keeps them exact)")
    p.add_argument("--output", choices=("human", "machine"), default="human")
    p.add_argument("--negative-demand", choices=("truncate", "allow"), default="truncate")
    return p


def _report(mode, instance, plan, evaluation, **metadata):
    return {
        "mode": mode,
        "instance": instance.to_dict(),
        "plan": formats.plan_to_dict(plan, instance.horizon),
        "evaluation": formats.evaluation_to_dict(evaluation),
        "metadata": {"mode": mode, **metadata},
    }


def run_solve(mode, instance, args):
    if mode == "solve-percycle":
        plan, ev = solve_percycle(instance.horizon, instance.costs, instance.beta, args.level_unit or None)
        examined = len(instance.horizon) * (len(instance.horizon) + 1) // 2
        return _report(mode, instance, plan, ev, edges_built=examined)
    plan, ev = solve_horizon(instance.horizon, instance.costs, instance.beta, args.enum_cap)
    return _report(mode, instance, plan, ev, partitions_examined=count_partitions(len(instance.horizon)))


def run_evaluate(instance, args):
    plan = _require_plan(args)
    ev = evaluate_plan(instance.horizon, instance.costs, plan)
    return _report("evaluate", instance, plan, ev)


def run_simulate(instance, args):
    plan = _require_plan(args)
    policy = "allow-negative" if args.negative_demand == "allow" else "truncate"
    config = SimulationConfig(args.replications, args.seed, policy)
    sim = simulate(instance.horizon, plan, instance.costs, config)
    report = _report("simulate", instance, plan, evaluate_plan(instance.horizon, instance.costs, plan),
                     replications=config.replications, seed=config.seed,
                     negative_demand_policy=policy)
    report["simulation"] = asdict(sim)
    return report


def run_oracle(instance, args):
    """Cross-check both solvers against exhaustive search."""
    horizon, costs, beta = instance.horizon, instance.costs, instance.beta
    T = len(horizon)
    check_enum_cap(T, args.enum_cap)
    unit = args.level_unit or None
    edges = build_edges(horizon, costs, beta, unit)
    sp_cost, _, sp_starts = shortest_path(edges, T)
    brute_plan, brute_cost, examined = enumerate_percycle(horizon, edges)
    percycle = {
        "shortest_path_cost": sp_cost,
        "enumeration_cost": brute_cost,
        "partitions_examined": examined,
        "agree": sp_cost == brute_cost and tuple(sp_starts) == brute_plan.starts,
    }
    plan, ev = solve_horizon(horizon, costs, beta, args.enum_cap)
    step = args.grid_step
    horizon_check = {"solver_cost": ev.total_cost, "grid_step": step}
    grid_cost, grid_starts, grid_buffers = grid_search_horizon(
        horizon, costs, beta, step, max_cells=GRID_CELL_LIMIT
    )
    slack = costs.holding_cost * T * step
    horizon_check.update(
        grid_cost=grid_cost,
        grid_replenishment_periods=list(grid_starts) if grid_starts else None,
        grid_buffers=grid_buffers,
        agree=bool(ev.total_cost <= grid_cost + 1e-9 and grid_cost - ev.total_cost <= slack),
    )
    report = _report("oracle", instance, plan, ev, partitions_examined=count_partitions(T))
    report["oracle"] = {"percycle": percycle, "horizon": horizon_check}
    return report


def _require_plan(args):
    if not args.plan:
        raise formats.SchemaError(f"--plan is required for --mode {args.mode}")
    return formats.load_plan(args.plan)


def format_human(report):
    ev = report["evaluation"]
    lines = [f"mode: {report['mode']}", ""]
    header = f"{'cycle':>5} {'periods':>9} {'level':>12} {'buffer':>10} {'E[backorders]':>14} {'fill rate':>10}"
    lines += [header, "-" * len(header)]
    for i, c in enumerate(report["plan"]["cycles"]):
        periods = f"{c['start']}-{c['end']}" if c["end"] != c["start"] else str(c["start"])
        lines.append(
            f"{i + 1:>5} {periods:>9} {c['level']:>12.2f} {c['buffer']:>10.2f} "
            f"{ev['per_cycle_backorders'][i]:>14.2f} {ev['per_cycle_fill_rate'][i]:>10.4f}"
        )
    lines += [
        "",
        f"horizon fill rate  {ev['horizon_fill_rate']:.4f}",
        f"holding cost       {ev['holding_cost']:.2f}",
        f"ordering cost      {ev['ordering_cost']:.2f}",
        f"total cost         {ev['total_cost']:.2f}",
        f"feasible           {'yes' if ev['feasible'] else 'no'}",
    ]
    sim = report.get("simulation")
    if sim:
        hw = sim["half_width_95"]
        lines += ["", f"simulation ({sim['replications']} replications, 95% half-widths)"]
        for i, (b, w) in enumerate(zip(sim["per_cycle_backorders_mean"], hw["per_cycle_backorders_mean"])):
            lines.append(f"  cycle {i + 1} backorders   {b:.3f} +/- {w:.3f}")
        lines += [
            f"  fill rate (ratio of means)  {sim['fill_rate_ratio_of_means']:.5f} +/- {hw['fill_rate_ratio_of_means']:.5f}",
            f"  fill rate (mean of ratios)  {sim['fill_rate_mean_of_ratios']:.5f} +/- {hw['fill_rate_mean_of_ratios']:.5f}",
            f"  holding cost (on hand)      {sim['holding_cost_mean']:.2f} +/- {hw['holding_cost_mean']:.2f}",
            f"  holding cost (net)          {sim['net_holding_cost_mean']:.2f} +/- {hw['net_holding_cost_mean']:.2f}",
        ]
    oracle = report.get("oracle")
    if oracle:
        pc, hz = oracle["percycle"], oracle["horizon"]
        lines += [
            "",
            f"per-cycle: shortest path {pc['shortest_path_cost']:.6f}, enumeration "
            f"{pc['enumeration_cost']:.6f} -> {'agree' if pc['agree'] else 'DISAGREE'}",
            f"horizon:   solver {hz['solver_cost']:.4f}, grid {hz['grid_cost']:.4f} "
            f"(step {hz['grid_step']:g}) -> {'agree' if hz['agree'] else 'DISAGREE'}",
        ]
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        instance = formats.load_instance(args.instance)
        if args.beta is not None:
            instance = formats.instance_from_dict({**instance.to_dict(), "beta": args.beta}, "--beta")
        if args.mode in ("solve-percycle", "solve-horizon"):
            report = run_solve(args.mode, instance, args)
        elif args.mode == "evaluate":
            report = run_evaluate(instance, args)
        elif args.mode == "simulate":
            report = run_simulate(instance, args)
        else:
            report = run_oracle(instance, args)
    except CapacityError as exc:
        print(f"cycleplan: capacity error: {exc}", file=stderr)
        return EXIT_CAPACITY
    except NumericalError as exc:
        print(f"cycleplan: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except (PlanningError, ValueError) as exc:
        print(f"cycleplan: validation error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        print(f"cycleplan: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    report["metadata"]["runtime_seconds"] = time.perf_counter() - started
    if args.output == "machine":
        stdout.write(formats.dumps(report))
    else:
        stdout.write(format_human(report))
    return EXIT_OK


def main():
    sys.exit(run())
