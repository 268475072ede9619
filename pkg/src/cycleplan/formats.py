"""Instance, plan and report files.

Instance (JSON)::

    {"periods": [{"mean": 1000, "std": 200}, {"mean": 2000, "std": 200}],
     "ordering_cost": 0, "holding_cost": 1, "beta": 0.98}

``"periods"`` may be replaced by ``"periods_csv"``: the path (relative to
the instance file) of a comma-separated table with a ``mean,std`` header.

Plan (JSON)::

    {"cycles": [{"start": 1, "end": 1, "level": 1181},
                {"start": 2, "end": 2, "level": 2099}]}
"""
import csv
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import jsonschema

from .demand import Cycle, Horizon, PeriodForecast
from .errors import PlanningError, SchemaError
from .evaluation import CostParams, CyclePlan, PlanEvaluation
from .service import ServiceTarget

_NUMBER = {"type": "number"}
_PERIOD = {
    "type": "object",
    "properties": {"mean": {"type": "number", "minimum": 0}, "std": {"type": "number", "minimum": 0}},
    "required": ["mean", "std"],
    "additionalProperties": False,
}
INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "periods": {"type": "array", "items": _PERIOD, "minItems": 1},
        "periods_csv": {"type": "string"},
        "ordering_cost": {"type": "number", "minimum": 0},
        "holding_cost": {"type": "number", "exclusiveMinimum": 0},
        "beta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    },
    "required": ["ordering_cost", "holding_cost", "beta"],
    "oneOf": [{"required": ["periods"]}, {"required": ["periods_csv"]}],
    "additionalProperties": False,
}
PLAN_SCHEMA = {
    "type": "object",
    "properties": {
        "cycles": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "start": {"type": "integer", "minimum": 1},
                    "end": {"type": "integer", "minimum": 1},
                    "level": _NUMBER,
                    "buffer": _NUMBER,
                },
                "required": ["start", "end", "level"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["cycles"],
}


@dataclass(frozen=True)
class Instance:
    horizon: Horizon
    costs: CostParams
    beta: float

    def to_dict(self):
        return {
            "periods": [{"mean": p.mean, "std": p.std} for p in self.horizon],
            "ordering_cost": self.costs.ordering_cost,
            "holding_cost": self.costs.holding_cost,
            "beta": self.beta,
        }


def _reject_constant(name):
    raise SchemaError(f"non-finite number {name} is not allowed")


def _load_json(text, source):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _validate(doc, schema, source):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{source}: field {where}: {exc.message}") from None


def read_periods_csv(path):
    path = Path(path)
    periods = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or {"mean", "std"} - set(reader.fieldnames):
            raise SchemaError(f"{path}: header must contain 'mean' and 'std'")
        for row in reader:
            try:
                periods.append({"mean": float(row["mean"]), "std": float(row["std"])})
            except (TypeError, ValueError):
                raise SchemaError(f"{path}: line {reader.line_num}: invalid number") from None
    if not periods:
        raise SchemaError(f"{path}: no periods")
    return periods


def instance_from_dict(doc, source="<instance>", base_dir=None):
    _validate(doc, INSTANCE_SCHEMA, source)
    periods = doc.get("periods")
    if periods is None:
        csv_path = Path(doc["periods_csv"])
        if base_dir is not None and not csv_path.is_absolute():
            csv_path = Path(base_dir) / csv_path
        periods = read_periods_csv(csv_path)
    try:
        horizon = Horizon([PeriodForecast(p["mean"], p["std"]) for p in periods])
        costs = CostParams(doc["ordering_cost"], doc["holding_cost"])
        beta = ServiceTarget(doc["beta"]).beta
    except PlanningError as exc:
        raise SchemaError(f"{source}: {exc}") from None
    if not all(math.isfinite(p.mean) and math.isfinite(p.std) for p in horizon):
        raise SchemaError(f"{source}: period values must be finite")
    return Instance(horizon, costs, beta)


def load_instance(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    return instance_from_dict(_load_json(text, path), path, path.parent)


def plan_to_dict(plan: CyclePlan, horizon: Horizon = None):
    cycles = []
    for cycle, level in zip(plan.cycles, plan.levels):
        entry = {"start": cycle.start, "end": cycle.end, "level": level}
        if horizon is not None:
            entry["buffer"] = level - math.fsum(p.mean for p in horizon.periods[cycle.start - 1:cycle.end])
        cycles.append(entry)
    return {"cycles": cycles}


def plan_from_dict(doc, source="<plan>"):
    _validate(doc, PLAN_SCHEMA, source)
    try:
        return CyclePlan(
            tuple(Cycle(c["start"], c["end"]) for c in doc["cycles"]),
            tuple(c["level"] for c in doc["cycles"]),
        )
    except PlanningError as exc:
        raise SchemaError(f"{source}: {exc}") from None


def load_plan(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    return plan_from_dict(_load_json(text, path), path)


def evaluation_to_dict(evaluation: PlanEvaluation):
    return asdict(evaluation)


def evaluation_from_dict(doc):
    return PlanEvaluation(**doc)


def dumps(doc):
    """Machine-readable serialisation; floats use shortest round-trip repr."""
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"
