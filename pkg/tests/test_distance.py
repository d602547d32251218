import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import SPACES, vectors
from pangular.distance import (
    DistanceParams,
    alpha_p,
    angular_distance,
    beta_p,
    identity_residual,
    ips_alpha_p_sq,
    power_mean,
    power_mean_array,
)
from pangular.errors import ZeroVector
from pangular.space import SpaceSpec, norm, validate_triple

E2 = SpaceSpec.euclidean(2)
LINF2 = SpaceSpec.linf(2)


def test_alpha_p_hand_values():
    assert alpha_p(E2, [3, 0], [0, 4], 2.0) == pytest.approx(math.sqrt(337), rel=1e-15)
    assert alpha_p(LINF2, [1, 1], [2, 0], -1.0) == pytest.approx(1.0, rel=1e-15)
    assert alpha_p(E2, [1, 2], [1, 2], 3.0) == 0.0


def test_beta_p_hand_values():
    assert beta_p(E2, [3, 0], [0, 4], 1.0) == pytest.approx(5.0, rel=1e-15)
    assert beta_p(E2, [1, 0], [0, 2], 0.0) == pytest.approx(math.hypot(0.5, 2), rel=1e-15)
    assert beta_p(E2, [1, 2], [1, 2], -2.0) == 0.0


def test_zero_vector_rejected():
    with pytest.raises(ZeroVector):
        alpha_p(E2, [0, 0], [1, 0], 1.0)
    with pytest.raises(ZeroVector):
        beta_p(E2, [1, 0], [0, 0], 1.0)


def _mp_alpha_euclid(x, y, p):
    mpmath.mp.dps = 50
    x = [mpmath.mpf(float(v)) for v in x]
    y = [mpmath.mpf(float(v)) for v in y]
    nx = mpmath.sqrt(sum(v * v for v in x))
    ny = mpmath.sqrt(sum(v * v for v in y))
    d = [nx ** (p - 1) * u - ny ** (p - 1) * v for u, v in zip(x, y)]
    return mpmath.sqrt(sum(v * v for v in d))


@given(vectors(3), vectors(3), st.floats(-4, 4))
def test_alpha_p_matches_high_precision_oracle(x, y, p):
    s = SpaceSpec.euclidean(3)
    ref = _mp_alpha_euclid(x, y, p)
    assume(ref > 1e-6 * (norm(s, x) ** p + norm(s, y) ** p))  # skip catastrophic cancellation
    assert alpha_p(s, x, y, p) == pytest.approx(float(ref), rel=1e-9)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.to_syntax())
def test_alpha_p_invariants(space):
    @given(vectors(space.dim), vectors(space.dim), st.floats(-3, 3), st.floats(0.1, 10))
    def check(x, y, p, t):
        a = alpha_p(space, x, y, p)
        assert a >= 0
        assert a == pytest.approx(alpha_p(space, y, x, p), rel=1e-12, abs=1e-300)
        scale = max(1.0, a)
        assert abs(alpha_p(space, t * x, t * y, p) - t**p * a) <= 1e-9 * max(scale, t**p * a)
        assert alpha_p(space, x, y, 1.0) == pytest.approx(norm(space, x - y), rel=1e-12, abs=1e-14)
        assert alpha_p(space, x, y, 0.0) == angular_distance(space, x, y)
        # beta_p = (ab)^(p-1) alpha_(2-p)
        na, nb = norm(space, x), norm(space, y)
        lhs = beta_p(space, x, y, p)
        rhs = (na * nb) ** (p - 1) * alpha_p(space, x, y, 2 - p)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, lhs, rhs)

    check()


def test_alpha_p_extreme_index_no_overflow():
    x, y = np.array([300.0, 0]), np.array([0, 200.0])
    v = alpha_p(E2, x, y, 120.0)
    assert math.isfinite(v) and v == pytest.approx(math.hypot(300.0**120, 200.0**120), rel=1e-12)


def test_ips_alpha_p_sq_exact_rational():
    # (1,4,4), p=2: a b c^2 + (a - b)(a^3 - b^3)
    a, b, c = Fraction(1), Fraction(4), Fraction(4)
    exact = a * b * c * c + (a - b) * (a**3 - b**3)
    assert ips_alpha_p_sq(validate_triple(1, 4, 4), 2.0) == float(exact) == 253.0


@given(vectors(3), vectors(3), st.floats(-3, 3))
def test_ips_closed_form_matches_euclidean(x, y, p):
    s = SpaceSpec.euclidean(3)
    t = validate_triple(norm(s, x), norm(s, y), norm(s, x - y))
    direct = alpha_p(s, x, y, p) ** 2
    closed = ips_alpha_p_sq(t, p)
    assert abs(direct - closed) <= 1e-9 * max(1.0, direct, closed)


def test_identity_residual():
    assert identity_residual(LINF2, [1, 1], [2, 0], -1.0) == pytest.approx(0.25, abs=1e-12)
    assert identity_residual(LINF2, [1, 1], [2, 0], 2.0) == pytest.approx(-4.0, abs=1e-12)
    assert abs(identity_residual(E2, [1, 1], [2, 0], 2.0)) < 1e-12


def test_power_mean_values():
    assert power_mean(1.0, 2.0, 8.0) == 5.0
    assert power_mean(0.0, 2.0, 8.0) == 4.0
    assert power_mean(-1.0, 2.0, 8.0) == pytest.approx(3.2, rel=1e-15)
    assert power_mean(math.inf, 2.0, 8.0) == 8.0
    assert power_mean(-math.inf, 2.0, 8.0) == 2.0
    assert power_mean(2.0, 3.0, 3.0) == 3.0
    with pytest.raises(ValueError):
        power_mean(1.0, 0.0, 1.0)


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_power_mean_near_zero_index(a, b):
    g = math.sqrt(a * b)
    assert abs(power_mean(1e-8, a, b) - g) <= 1e-6 * g
    assert abs(power_mean(-1e-8, a, b) - g) <= 1e-6 * g


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3),
       st.floats(-50, 50), st.floats(-50, 50))
def test_power_mean_monotone_in_index(a, b, r, s):
    lo, hi = sorted((r, s))
    assert power_mean(lo, a, b) <= power_mean(hi, a, b) * (1 + 1e-12)
    assert min(a, b) * (1 - 1e-12) <= power_mean(r, a, b) <= max(a, b) * (1 + 1e-12)


def test_power_mean_extreme_index_no_overflow():
    v = power_mean(-800.0, 1e-3, 1e3)
    assert math.isfinite(v) and v == pytest.approx(1e-3 * 2 ** (1 / 800), rel=1e-12)
    v = power_mean(800.0, 1e-3, 1e3)
    assert v == pytest.approx(1e3 * 2 ** (-1 / 800), rel=1e-12)


def test_power_mean_array_matches_scalar():
    a = np.array([1.0, 2.0, 5.0])
    b = np.array([3.0, 2.0, 0.5])
    for r in (-2.0, 0.0, 0.5, 3.0):
        got = power_mean_array(r, a, b)
        assert np.allclose(got, [power_mean(r, u, v) for u, v in zip(a, b)], rtol=1e-14)


def test_distance_params():
    P = DistanceParams(2.0, 1.0, -math.inf)
    assert DistanceParams.from_dict(P.to_dict()) == P
    with pytest.raises(ValueError):
        DistanceParams(math.inf)
    with pytest.raises(ValueError):
        DistanceParams(0.0, r=math.nan)
