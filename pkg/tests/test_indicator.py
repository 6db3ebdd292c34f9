import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fejerlift.arith import divisors, is_prime, primes_up_to
from fejerlift.budget import TruncationBudget
from fejerlift.indicator import (
    AbelConvergenceError,
    RegimeQ,
    abel_extrapolate,
    indicator_alternating_limit,
    indicator_F,
    indicator_Fsharp,
    indicator_grid,
    indicator_integer,
    phase_locking_residual,
    q_analog_sigma,
    q_analog_tau,
    s_q,
)

B = TruncationBudget(M=400, tail_tol=1e-6)


class TestRegime:
    @pytest.mark.parametrize(
        "q,regime",
        [(0.5, "real_gt1"), (-0.5, "real_lt_minus1"), (0.5j, "complex_abs_gt1"), (2, "real_lt_minus1")],
    )
    def test_violations_rejected(self, q, regime):
        with pytest.raises(ValueError):
            RegimeQ(q, regime)

    def test_alternating_needs_damping(self):
        with pytest.raises(ValueError):
            RegimeQ(-1, "alternating_minus1")
        with pytest.raises(ValueError):
            RegimeQ(-1, "alternating_minus1", abel_r=1.0)

    def test_from_q(self):
        assert RegimeQ.from_q(2).regime == "real_gt1"
        assert RegimeQ.from_q(-3).regime == "real_lt_minus1"
        assert RegimeQ.from_q(1 + 1j).regime == "complex_abs_gt1"
        assert RegimeQ.from_q(-1).regime == "alternating_minus1"
        with pytest.raises(ValueError):
            RegimeQ.from_q(0.5j)

    def test_principal_log_for_negative_q(self):
        rq = RegimeQ(-3, "real_lt_minus1")
        assert rq.log_q == pytest.approx(complex(math.log(3), math.pi))


class TestSq:
    def test_six(self):
        # divisors {2, 3, 6}
        assert s_q(6, RegimeQ.from_q(2), B).value == pytest.approx(0.390625, abs=1e-15)

    def test_prime(self):
        assert s_q(7, RegimeQ.from_q(2), B).value == pytest.approx(2.0**-7, abs=1e-16)

    def test_half_against_long_run(self):
        rq = RegimeQ.from_q(2)
        short = s_q(0.5, rq, TruncationBudget(M=60, tail_tol=1e-6))
        ref = s_q(0.5, rq, TruncationBudget(M=200, tail_tol=1e-6))
        assert abs(short.value - ref.value) <= short.tail_bound + ref.tail_bound
        assert short.tail_bound > 0

    def test_unit_modulus_rejected(self):
        with pytest.raises(ValueError):
            s_q(0.5, 1j, B)


class TestIndicatorValues:
    @pytest.mark.parametrize("n,q,expected", [(7, 2, 0.0), (4, 2, 0.5), (12, 2, 29 / 32), (9, 2, 0.25)])
    def test_divisor_formula(self, n, q, expected):
        assert indicator_F(n, q, B).value == pytest.approx(expected, abs=1e-15)
        assert indicator_integer(n, q) == Fraction(expected)

    def test_sharp_prime_anchor(self):
        v = indicator_Fsharp(11, 1.5, B)
        assert v.value == 0 and v.path == "integer-exact"

    def test_integer_path_tolerance(self):
        assert indicator_F(7 + 1e-13, 2, B).path == "integer-exact"
        assert indicator_F(7 + 1e-9, 2, B).path == "series"
        assert indicator_F(7, 2, B, integer_fast_path=False).path == "series"

    def test_series_agrees_with_arithmetic(self):
        for q in (1.5, 2.0, 10.0):
            b = TruncationBudget(M=600, tail_tol=1e-6)
            for n in range(2, 501):
                s = indicator_F(n, q, b, integer_fast_path=False)
                exact = indicator_integer(n, q, exact=False)
                assert abs(s.value - exact) <= s.tail_bound + 1e-12 * max(1.0, abs(exact)), (q, n)

    def test_sharp_equals_plain_at_integers(self):
        b = TruncationBudget(M=200, tail_tol=1e-6)
        for n in range(2, 100):
            a = indicator_F(n, 2, b, integer_fast_path=False).value
            c = indicator_Fsharp(n, 2, b, integer_fast_path=False).value
            assert a == pytest.approx(c, abs=1e-13)

    def test_off_integer_against_mpmath(self):
        z = 3.7 + 0.3j
        v = indicator_F(z, 2, TruncationBudget(M=80, tail_tol=1e-12))
        with mpmath.workdps(30):
            zz = mpmath.mpc(z)

            def term(i):
                return mpmath.mpf(2) ** (-i) * (mpmath.sin(mpmath.pi * zz) / (i * mpmath.sin(mpmath.pi * zz / i))) ** 2

            ref = 2 * (mpmath.nsum(term, [2, mpmath.inf]) - mpmath.power(2, -zz))
        assert abs(v.value - complex(ref)) <= v.tail_bound + 1e-13

    def test_negative_q_corrector_branch(self):
        z = 2.5
        rq = RegimeQ(-3, "real_lt_minus1")
        v = indicator_F(z, rq, TruncationBudget(M=60, tail_tol=1e-12))
        S = s_q(z, rq, TruncationBudget(M=60, tail_tol=1e-12)).value
        corr = cmath.exp(-z * (math.log(3) + 1j * math.pi))
        assert v.value == pytest.approx((-4) * (-3) * (S - corr), abs=1e-12)


class TestPrimeZeroProperty:
    @pytest.mark.parametrize("q", [Fraction(3, 2), 2, 10])
    def test_zero_iff_prime(self, q):
        for n in range(2, 2001):
            v = indicator_integer(n, q)
            assert (v == 0) == is_prime(n), n
            if not is_prime(n):
                assert v > 0

    @settings(max_examples=20, deadline=None)
    @given(st.fractions(min_value=Fraction(10001, 10000), max_value=100, max_denominator=10**6))
    def test_normalization(self, q):
        # exact geometric closed form, then the float weights the evaluator uses
        assert (q - 1) * q * q**-2 / (1 - 1 / q) == 1
        rq = RegimeQ(float(q), "real_gt1")
        total = rq.prefactor * (math.fsum(rq.weights(50)) + rq.weight_tail(50))
        # 1 - 1/q loses log10(1/(q-1)) digits in binary64
        assert total == pytest.approx(1.0, abs=1e-14 + 4e-16 / float(q - 1))

    def test_tangent_matching(self):
        b = TruncationBudget(M=400, tail_tol=1e-6)
        h = 1e-6
        for n in range(2, 101):
            fd = (indicator_Fsharp(n + h, 2, b).value - indicator_Fsharp(n - h, 2, b).value) / (2 * h)
            assert abs(fd) <= 1e-4, n

    @pytest.mark.parametrize("q,pmax", [(2.0, 13), (1.5, 23)])
    def test_derivative_at_prime(self, q, pmax):
        b = TruncationBudget(M=400, tail_tol=1e-6)
        h = 1e-6
        for p in primes_up_to(pmax):
            fd = (indicator_F(p + h, q, b).value - indicator_F(p - h, q, b).value) / (2 * h)
            expected = (q - 1) * q * math.log(q) * q ** (-p)
            assert fd == pytest.approx(expected, rel=1e-4), p


class TestAlternating:
    @pytest.mark.parametrize("n", [6, 10, 14])
    def test_v2_one_zero(self, n):
        assert indicator_integer(n, -1) == 0

    def test_four(self):
        assert indicator_integer(4, -1) == 2

    def test_eight_at_i(self):
        assert abs(indicator_integer(8, 1j)) < 1e-15

    def test_damped_integer_is_finite_sum(self):
        # only the divisors contribute, so the damped value is a polynomial in r
        for r in (0.9, 0.99):
            rq = RegimeQ(-1, "alternating_minus1", abel_r=r)
            b = TruncationBudget(M=20_000, tail_tol=1.0)
            for n in range(2, 40):
                v = indicator_F(n, rq, b, integer_fast_path=False)
                poly = 2 * (math.fsum((-r) ** d for d in divisors(n) if d >= 2) - (-1) ** n)
                assert complex(v.value) == pytest.approx(poly, abs=1e-10), (r, n)

    def test_abel_limit_at_integers(self):
        # the polynomial in r is continuous at r = 1 and lands on the exact value
        b = TruncationBudget(M=200, tail_tol=1.0)
        h = 1e-10
        rq = RegimeQ(-1, "alternating_minus1", abel_r=1 - h)
        for n in range(2, 200):
            v = indicator_F(n, rq, b, integer_fast_path=False).value
            # |(-1)^d - (-r)^d| <= d h
            bound = 2 * h * sum(divisors(n)) + 1e-11
            assert abs(complex(v) - indicator_integer(n, -1)) <= bound, n

    def test_extrapolation_of_smooth_family(self):
        lim = abel_extrapolate(lambda z, r: z + (1 - r) + 3 * (1 - r) ** 2, 2.0)
        assert lim == pytest.approx(2.0, abs=1e-12)
        assert abel_extrapolate.last_error < 1e-10

    def test_sharp_imag_at_half(self):
        for r in (0.9, 0.99, 0.999):
            rq = RegimeQ(-1, "alternating_minus1", abel_r=r)
            v = indicator_Fsharp(0.5, rq, TruncationBudget(M=50_000, tail_tol=1.0))
            assert complex(v.value).imag == pytest.approx(2.0, abs=1e-12)

    def test_abel_sum_at_zero(self):
        def S(z, r):
            rq = RegimeQ(-1, "alternating_minus1", abel_r=r)
            return 2 * s_q(z, rq, TruncationBudget(M=300_000, tail_tol=1.0)).value

        for r in (0.9, 0.99):
            assert S(0.0, r) == pytest.approx(2 * r * r / (1 + r), abs=1e-10)
        lim = abel_extrapolate(S, 0.0, (0.9, 0.95, 0.99, 0.995))
        assert lim == pytest.approx(1.0, abs=1e-6)

    def test_abel_no_convergence(self):
        with pytest.raises(AbelConvergenceError):
            abel_extrapolate(lambda z, r: 1.0 / (1 - r) ** 2 * math.sin(50 * r), 0.0)

    def test_abel_grid_validation(self):
        with pytest.raises(ValueError):
            abel_extrapolate(lambda z, r: r, 0.0, (0.99, 0.9))

    def test_limit_consistent_with_damped(self):
        z = 0.3
        lim = indicator_alternating_limit(z, TruncationBudget(M=200_000, tail_tol=1.0)).value
        rq = RegimeQ(-1, "alternating_minus1", abel_r=0.9999)
        damped = indicator_F(z, rq, TruncationBudget(M=400_000, tail_tol=1.0)).value
        assert abs(lim - damped) < 1e-3

    def test_conjugation_symmetry(self, rng):
        b = TruncationBudget(M=5_000, tail_tol=1e6)
        rq = RegimeQ(-1, "alternating_minus1", abel_r=0.99)
        for _ in range(30):
            z = complex(rng.uniform(-10, 10), rng.uniform(-1, 1))
            a = indicator_F(-z.conjugate(), rq, b).value
            c = indicator_F(z, rq, b).value
            assert abs(complex(a) - complex(c).conjugate()) <= 1e-10


class TestResidueBalance:
    @pytest.mark.parametrize("m,a", [(2, 1), (4, 1)])
    @pytest.mark.parametrize("R", [1, 2])
    def test_balance(self, m, a, R):
        q = R * cmath.exp(2j * math.pi * a / m)
        for n in range(2, 501):
            props = [d for d in divisors(n) if 2 <= d < n]
            classes = [math.fsum(R ** (-d) for d in props if d % m == r) for r in range(m)]
            rhs = (q - 1) * q * sum(cmath.exp(-2j * math.pi * a * r / m) * classes[r] for r in range(m))
            assert abs(complex(indicator_integer(n, q)) - rhs) <= 1e-12 * max(1.0, abs(rhs)), n


class TestQAnalogs:
    def test_tau_near_one(self):
        assert q_analog_tau(12, 1 + 1e-6, B).value == pytest.approx(4, abs=1e-4)

    def test_tau_values(self):
        assert q_analog_tau(7, 3.3, B).value == 0
        assert q_analog_tau(6, 2, B).value == pytest.approx(0.375)

    def test_sigma_values(self):
        assert q_analog_sigma(6, 1 + 1e-6, B).value == pytest.approx(5, abs=1e-4)
        assert q_analog_sigma(5, 3, B).value == 0
        assert q_analog_sigma(8, 2, B).value == pytest.approx(0.75)

    def test_series_paths_match_integers(self):
        b = TruncationBudget(M=300, tail_tol=1e-6)
        for n in range(2, 60):
            t = q_analog_tau(n, 2.0, b, integer_fast_path=False)
            s = q_analog_sigma(n, 2.0, b, integer_fast_path=False)
            assert t.value == pytest.approx(q_analog_tau(n, 2.0, b).value, abs=1e-12)
            assert s.value == pytest.approx(q_analog_sigma(n, 2.0, b).value, abs=1e-12)

    def test_rejects_small_q(self):
        with pytest.raises(ValueError):
            q_analog_tau(2.5, 1.0, B)
        with pytest.raises(ValueError):
            q_analog_sigma(2.5, 0.5, B)


class TestPhaseLocking:
    def test_examples(self):
        assert phase_locking_residual(5, -1) == 0
        assert phase_locking_residual(0.5, -1) == pytest.approx(1.0)
        for x in (0.3, 2.7, 11.1):
            assert phase_locking_residual(x, 2) == 0


def test_grid_matches_pointwise():
    zs = np.array([2.0, 3.0, 4.5, 2.5 + 0.5j, 6.0, -1.25])
    vals, tails = indicator_grid(zs, 2.0, 200)
    b = TruncationBudget(M=200, tail_tol=1.0)
    for z, v, t in zip(zs, vals, tails):
        ref = indicator_F(complex(z) if z.imag else z.real, 2.0, b)
        assert v == pytest.approx(complex(ref.value), abs=1e-12)
        assert t == pytest.approx(ref.tail_bound, abs=1e-300)
