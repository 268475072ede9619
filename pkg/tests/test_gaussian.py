import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycleplan import DomainError
from cycleplan.gaussian import (
    inv_std_normal_loss,
    inv_std_normal_sf,
    std_normal_cdf,
    std_normal_loss,
    std_normal_pdf,
    std_normal_sf,
)

mpmath.mp.dps = 40
scores = st.floats(-6, 6, allow_nan=False)


def mp_cdf(z):
    return float(mpmath.ncdf(z))


def mp_loss(z):
    z = mpmath.mpf(z)
    return float(mpmath.npdf(z) - z * (1 - mpmath.ncdf(z)))


def test_pdf_values():
    assert std_normal_pdf(0) == pytest.approx(0.3989422804, abs=1e-10)
    assert std_normal_pdf(-1.3) == std_normal_pdf(1.3)
    # 40-digit evaluation of the closed form
    assert std_normal_pdf(0.855) == pytest.approx(0.2768024973, abs=1e-6)


def test_cdf_values():
    assert std_normal_cdf(0) == 0.5
    assert std_normal_cdf(8) == pytest.approx(1.0, abs=1e-12)
    assert std_normal_cdf(0.905) == pytest.approx(0.8172673064, abs=1e-6)


def test_cdf_matches_high_precision_oracle():
    zs = np.linspace(-8, 8, 1000)
    err = max(abs(std_normal_cdf(z) - mp_cdf(z)) for z in zs)
    assert err <= 1e-12


def test_cdf_reflection():
    for z in np.linspace(-8, 8, 401):
        assert std_normal_cdf(-z) == pytest.approx(1 - std_normal_cdf(z), abs=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
@pytest.mark.parametrize("fn", [std_normal_pdf, std_normal_cdf, std_normal_loss])
def test_non_finite_rejected(fn, bad):
    with pytest.raises(DomainError):
        fn(bad)


def test_loss_values():
    assert std_normal_loss(0) == pytest.approx(0.3989422804, abs=1e-10)
    # 19.90 backorders at sigma 200
    assert std_normal_loss(0.905) == pytest.approx(0.09952, abs=5e-4)
    for z in np.linspace(-8, 8, 161):
        assert std_normal_loss(z) == pytest.approx(mp_loss(z), abs=1e-13)


def test_loss_reflection_identity_dense_grid():
    for z in np.linspace(-8, 8, 4001):
        assert abs(std_normal_loss(z) + z - std_normal_loss(-z)) <= 1e-10


def test_loss_derivative_matches_finite_difference():
    step = 1e-5
    for z in np.linspace(-6, 6, 1201):
        fd = (std_normal_loss(z + step) - std_normal_loss(z - step)) / (2 * step)
        assert abs(fd + std_normal_sf(z)) <= 1e-6


@given(scores, scores)
def test_monotone(a, b):
    lo, hi = min(a, b), max(a, b)
    assert std_normal_cdf(lo) <= std_normal_cdf(hi)
    if hi - lo > 1e-9:
        assert std_normal_loss(lo) > std_normal_loss(hi)
    else:
        assert std_normal_loss(lo) >= std_normal_loss(hi)


@given(scores, scores)
def test_loss_convex(a, b):
    mid = 0.5 * (a + b)
    assert std_normal_loss(mid) <= 0.5 * (std_normal_loss(a) + std_normal_loss(b)) + 1e-15


@given(scores)
def test_loss_lower_bound(z):
    assert std_normal_loss(z) >= max(0.0, -z)


def test_inverse_loss_examples():
    assert inv_std_normal_loss(0.3989422804) == pytest.approx(0.0, abs=1e-9)
    assert inv_std_normal_loss(0.0995) == pytest.approx(0.905, abs=5e-3)


@pytest.mark.parametrize("z", [-2, -0.5, 0, 0.5, 2])
def test_inverse_loss_roundtrip(z):
    assert inv_std_normal_loss(std_normal_loss(z)) == pytest.approx(z, abs=1e-8)


@settings(max_examples=300)
@given(st.floats(1e-12, 100.0))
def test_inverse_loss_residual(target):
    z = inv_std_normal_loss(target)
    assert abs(std_normal_loss(z) - target) <= 1e-10 * max(1.0, target)


def test_inverse_loss_deep_left_tail():
    # L(z) ~ -z once z is well below -8
    z = inv_std_normal_loss(1000.0)
    assert z == pytest.approx(-1000.0, rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_inverse_loss_domain(bad):
    with pytest.raises(DomainError):
        inv_std_normal_loss(bad)


@pytest.mark.parametrize("p", [1e-10, 0.01, 0.2, 0.5, 0.9])
def test_inverse_tail(p):
    assert std_normal_sf(inv_std_normal_sf(p)) == pytest.approx(p, rel=1e-12)
