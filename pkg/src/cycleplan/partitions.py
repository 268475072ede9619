"""Enumeration of horizon partitions and the shared tie-breaking rule."""
from itertools import combinations

from .errors import CapacityError

DEFAULT_ENUM_CAP = 20


def iter_partitions(n_periods):
    """Yield every partition of ``1..n_periods`` as a tuple of cycle starts.

    Every tuple begins with period 1. Order is by number of cycles, then
    lexicographic, so the output is deterministic.
    """
    rest = range(2, n_periods + 1)
    for k in range(n_periods):
        for extra in combinations(rest, k):
            yield (1,) + extra


def count_partitions(n_periods):
    return 2 ** (n_periods - 1)


def check_enum_cap(n_periods, cap=DEFAULT_ENUM_CAP):
    if n_periods > cap:
        raise CapacityError(
            f"horizon of {n_periods} periods exceeds enumeration cap {cap}"
        )


def starts_to_bounds(starts, n_periods):
    ends = [s - 1 for s in starts[1:]] + [n_periods]
    return list(zip(starts, ends))


def plan_key(cost, starts):
    """Sort key: cheapest first, then fewer cycles, then earliest starts."""
    return (cost, len(starts), tuple(starts))
