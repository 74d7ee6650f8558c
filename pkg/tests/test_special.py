import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from etbounds.special import LambertDomainError, lambert_w0


def bisect_oracle(z, lo=-1.0, hi=0.0):
    f = lambda w: w * math.exp(w) - z
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_known_points():
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-15)
    assert lambert_w0(-1 / math.e) == pytest.approx(-1.0, abs=1e-7)


def test_quarter_against_bisection():
    w = lambert_w0(-0.25)
    assert w == pytest.approx(bisect_oracle(-0.25), abs=1e-14)
    assert w == pytest.approx(-0.357403, abs=1e-6)


def test_clamp_and_domain():
    assert lambert_w0(-1 / math.e - 5e-16) == -1.0
    with pytest.raises(LambertDomainError) as info:
        lambert_w0(-0.4)
    assert info.value.z == -0.4
    with pytest.raises(LambertDomainError):
        lambert_w0(float("nan"))


def test_matches_mpmath():
    for z in np.concatenate([np.linspace(-0.3678, 2, 101), np.logspace(0, 6, 40)]):
        assert lambert_w0(z) == pytest.approx(float(mpmath.lambertw(z).real), rel=1e-13, abs=1e-14)


@given(st.floats(min_value=-1 / math.e, max_value=1e6), st.floats(min_value=-1 / math.e, max_value=1e6))
def test_monotone_and_in_range(z1, z2):
    w1, w2 = lambert_w0(z1), lambert_w0(z2)
    assert w1 >= -1 and w2 >= -1
    if z1 < z2:
        assert w1 <= w2
