import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fejerlift import kernel
from fejerlift.kernel import (
    fejer_F,
    fejer_F_cosine,
    fejer_F_value,
    growth_bound,
    phi,
    phi_deriv,
    phi_deriv_cosine,
    phi_grid,
    phi_infty,
    phi_vec,
    trig_sums,
)


@pytest.mark.parametrize("z,i,expected", [(6, 3, 9.0), (7, 3, 0.0), (0.5, 2, 2.0)])
def test_fejer_F_examples(z, i, expected):
    assert fejer_F(z, i) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("z,i,expected", [(12, 4, 1.0), (12, 5, 0.0), (0.5, 4, 1 / (16 * math.sin(math.pi / 8) ** 2))])
def test_phi_examples(z, i, expected):
    assert phi(z, i) == pytest.approx(expected, abs=1e-12)


def test_phi_infty_examples():
    assert phi_infty(0) == 1.0
    assert phi_infty(3) == 0.0
    assert phi_infty(0.5) == pytest.approx((2 / math.pi) ** 2)
    assert phi_infty(1e-6) == pytest.approx(1 - (math.pi * 1e-6) ** 2 / 3, rel=1e-15)


def test_divisor_filter_exact():
    for i in range(2, 51):
        for n in range(0, 201):
            assert phi(n, i) == (1.0 if n % i == 0 else 0.0)
    assert np.array_equal(phi_vec(12, np.arange(1, 13)), np.array([12 % i == 0 for i in range(1, 13)], float))


def test_branches_agree_at_random_complex_points(rng):
    for _ in range(1000):
        z = complex(*rng.uniform(-20, 20, 2))
        if abs(z) > 20:
            continue
        i = int(rng.integers(2, 41))
        a = fejer_F_cosine(z, i)
        b = kernel.fejer_F_sine(z, i)
        scale = growth_bound(z, i)
        assert abs(a - b) <= 1e-11 * scale


def test_near_pole_switch_uses_cosine_sum():
    assert fejer_F_value(6 + 1e-9, 3).method == "cosine-sum"
    assert fejer_F_value(6.3, 3).method == "sine-quotient"
    assert fejer_F(6 + 1e-9, 3) == pytest.approx(9.0, rel=1e-12)


def test_growth_bound(rng):
    for _ in range(300):
        z = complex(rng.uniform(-30, 30), rng.uniform(-3, 3))
        i = int(rng.integers(1, 30))
        assert abs(fejer_F(z, i)) <= growth_bound(z, i) * (1 + 1e-10)


@given(st.floats(-25, 25), st.floats(-1, 1), st.integers(1, 25))
@settings(max_examples=200, deadline=None)
def test_dyadic_cascade(x, y, m):
    z = complex(x, y)
    lhs = phi(z, 2 * m)
    rhs = phi(z, m) * cmath.cos(math.pi * z / (2 * m)) ** 2
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(lhs))


def test_phi_vec_and_grid_match_scalar(rng):
    i = np.arange(1, 40)
    for z in rng.uniform(-10, 10, 10):
        z = float(z)
        ref = np.array([phi(z, k, integer_fast_path=False) for k in i])
        assert np.allclose(phi_vec(z, i, integer_fast_path=False), ref, atol=1e-12)
    zs = np.array([0.3, 2.7 + 0.2j])
    g = phi_grid(zs, i)
    assert g.shape == (2, 39)
    assert np.allclose(g[1], [phi(2.7 + 0.2j, k) for k in i], atol=1e-12)


@pytest.mark.parametrize("x,i,k,expected", [
    (5, 2, 2, math.pi**2 / 2),
    (6, 3, 2, -16 * math.pi**2 / 27),
    (5, 3, 1, 0.0),
])
def test_phi_deriv_closed_forms(x, i, k, expected):
    assert phi_deriv(x, i, k) == pytest.approx(expected, abs=1e-12)


def test_phi_deriv_even_at_integers_and_order_check():
    for n in range(-10, 41):
        for i in range(1, 41):
            assert phi_deriv(n, i, 1) == 0.0
    with pytest.raises(ValueError):
        phi_deriv(0.3, 3, 4)


def test_phi_deriv_finite_differences(rng):
    # central differences taken in 40-digit arithmetic on an independent mpmath phi
    mpmath.mp.dps = 40
    checked = 0
    while checked < 100:
        x = float(rng.uniform(-20, 20))
        if abs(x - round(x)) < 0.05:
            continue
        i = int(rng.integers(2, 30))
        f = lambda t: (mpmath.sin(mpmath.pi * t) / (i * mpmath.sin(mpmath.pi * t / i))) ** 2  # noqa: E731
        for k in (1, 2, 3):
            fd = float(mpmath.diff(f, mpmath.mpf(x), k, h=mpmath.mpf("1e-12"), method="step"))
            assert phi_deriv(x, i, k) == pytest.approx(fd, abs=1e-6 * max(1.0, abs(fd)))
        assert phi_deriv(x, i, 2) == pytest.approx(phi_deriv_cosine(x, i, 2), abs=1e-9)
        checked += 1


def test_trig_sums():
    for m in range(2, 31):
        for n in range(1, 2 * m):
            if n % m == 0:
                continue
            s0, s1 = trig_sums(n, m)
            assert s0 == pytest.approx(-1.0, abs=1e-12)
            assert s1 == pytest.approx(-m / 2, abs=1e-12)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        phi(1.0, 0)
    with pytest.raises(ValueError):
        fejer_F(float("nan"), 3)
    with pytest.raises(ValueError):
        kernel.ComplexPoint(float("inf"))
