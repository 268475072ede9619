"""Exception hierarchy shared by the planning modules."""


class PlanningError(Exception):
    """Base class for all errors raised by cycleplan."""


class DomainError(PlanningError, ValueError):
    """An argument lies outside the domain of a numeric routine."""


class CycleBoundsError(PlanningError, IndexError):
    """A cycle or period range falls outside the planning horizon."""


class UndefinedRatioError(PlanningError, ZeroDivisionError):
    """A fill rate was requested for zero expected demand."""


class PartitionError(PlanningError, ValueError):
    """A plan does not partition the horizon into consecutive cycles."""


class CapacityError(PlanningError, RuntimeError):
    """The horizon is too long for exhaustive partition enumeration."""


class SchemaError(PlanningError, ValueError):
    """An instance or plan file failed validation."""


class NumericalError(PlanningError, ArithmeticError):
    """An iterative numeric routine failed to converge."""
