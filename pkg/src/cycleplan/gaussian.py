"""Standard normal density, distribution and first-order loss function.

All routines are scalar and pure. The loss function is

    L(z) = E[(X - z)^+] = phi(z) - z * (1 - Phi(z)),

and ``inv_std_normal_loss`` inverts it by bracketed bisection polished
with Newton steps on the known derivative ``L'(z) = -(1 - Phi(z))``.
"""
import math

from .errors import DomainError, NumericalError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_INV_SQRT_2 = 1.0 / math.sqrt(2.0)


def _check(z):
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"standard score must be finite, got {z!r}")
    return z


def std_normal_pdf(z):
    z = _check(z)
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def std_normal_cdf(z):
    """Phi(z), evaluated through the complementary error function.

    Using ``erfc`` on the negative half-line avoids the cancellation
    of ``0.5 * (1 + erf(x))`` in the lower tail.
    """
    z = _check(z)
    return 0.5 * math.erfc(-z * _INV_SQRT_2)


def std_normal_sf(z):
    """Upper tail ``1 - Phi(z)`` without cancellation for large ``z``."""
    z = _check(z)
    return 0.5 * math.erfc(z * _INV_SQRT_2)


def std_normal_loss(z):
    z = _check(z)
    if z >= 0.0:
        return max(std_normal_pdf(z) - z * std_normal_sf(z), 0.0)
    # L(z) = L(-z) - z keeps both branches consistent to rounding.
    return std_normal_loss(-z) - z


def _safeguarded_root(f, df, lo, hi, max_iter=400):
    """Find the root of a decreasing function on ``[lo, hi]``.

    Newton steps are accepted only while they stay inside the current
    bracket; otherwise the bracket is bisected. Iteration stops once the
    bracket collapses to adjacent floats or ``f`` hits zero exactly.
    """
    z = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fz = f(z)
        if fz == 0.0:
            return z
        if fz > 0.0:
            lo = z
        else:
            hi = z
        d = df(z)
        step = z - fz / d if d != 0.0 else math.nan
        if not (lo < step < hi):
            step = 0.5 * (lo + hi)
        if step == z or not (lo < step < hi):
            return z
        z = step
    raise NumericalError("root bracket failed to collapse")


def inv_std_normal_loss(target):
    """Return the unique ``z`` with ``std_normal_loss(z) == target``."""
    target = float(target)
    if not math.isfinite(target) or target <= 0.0:
        raise DomainError(f"loss target must be finite and > 0, got {target!r}")
    lo, hi = -40.0, 40.0
    # deep left tail: L(z) ~ -z, widen until the bracket holds the target
    while std_normal_loss(lo) < target:
        lo *= 2.0
    if std_normal_loss(hi) > target:
        # L(40) is ~1e-350 and underflows; unreachable for normal floats
        raise NumericalError(f"loss target {target!r} below representable range")
    return _safeguarded_root(
        lambda z: std_normal_loss(z) - target,
        lambda z: -std_normal_sf(z),
        lo, hi,
    )


def inv_std_normal_sf(p):
    """Return ``z`` with ``1 - Phi(z) == p`` for ``p`` in (0, 1)."""
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"tail probability must lie in (0, 1), got {p!r}")
    return _safeguarded_root(
        lambda z: std_normal_sf(z) - p,
        lambda z: -std_normal_pdf(z),
        -40.0, 40.0,
    )
