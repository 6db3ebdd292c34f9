import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fejerlift import arith
from fejerlift.arith import ArithTable


def test_factorize_and_divisors():
    assert arith.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert arith.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert arith.divisors(1) == [1]
    with pytest.raises(ValueError):
        arith.divisors(0)


def test_prime_sieve_counts():
    assert len(arith.primes_up_to(100)) == 25
    assert len(arith.primes_up_to(10_000)) == 1229
    assert arith.primes_up_to(1) == []
    assert [n for n in range(50) if arith.is_prime(n)] == arith.primes_up_to(49)


@pytest.mark.parametrize("n,mu", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0)])
def test_mobius_values(n, mu):
    assert arith.mobius(n) == mu
    assert arith.mobius_table(40)[n] == mu


def test_von_mangoldt_and_valuation():
    assert arith.von_mangoldt(8) == pytest.approx(math.log(2))
    assert arith.von_mangoldt(12) == 0
    assert arith.von_mangoldt(1) == 0
    assert arith.two_adic_valuation(48) == 4
    assert arith.two_adic_valuation(7) == 0


def test_mu_star_lambda_values():
    t = arith.mu_star_lambda_table(30)
    # (mu * Lambda)(p) = log p, (mu * Lambda)(p^2) = 0, (mu * Lambda)(pq) = -log p - log q
    assert t[5] == pytest.approx(math.log(5))
    assert t[9] == pytest.approx(0.0, abs=1e-15)
    assert t[6] == pytest.approx(-math.log(6))


@given(st.integers(min_value=1, max_value=400))
@settings(max_examples=60, deadline=None)
def test_mobius_inversion_recovers_lambda(n):
    # (mu*Lambda)*1 = Lambda
    t = arith.mu_star_lambda_table(400)
    total = math.fsum(t[d] for d in arith.divisors(n))
    assert total == pytest.approx(arith.von_mangoldt(n), abs=1e-12)


def test_dirichlet_convolve_and_domain_errors():
    ones = arith.ones_table(30)
    tau = arith.dirichlet_convolve(ones, ones)
    assert tau.values == arith.divisor_count_table(30).values
    with pytest.raises(ValueError):
        arith.dirichlet_convolve(ones, arith.ones_table(10), N=20)


def test_arith_table_indexing_and_multiplicativity():
    t = ArithTable.from_function(arith.divisor_count, 50, "tau", True)
    assert t[12] == 6 and t.N == 50
    with pytest.raises(IndexError):
        t[0]
    with pytest.raises(IndexError):
        t[51]
    assert t.check_multiplicative()
    assert not ArithTable.from_function(lambda n: n + 1, 20).check_multiplicative()


def test_sigma_and_proper_divisor_sum():
    assert arith.sigma(12, 1) == 28
    assert arith.sigma(6, 0) == 4
    assert arith.proper_divisor_sum(12, lambda d: d) == 2 + 3 + 4 + 6


def test_chebyshev_psi():
    assert arith.chebyshev_psi(10) == pytest.approx(math.log(2520))
    assert arith.chebyshev_psi(10.5) == arith.chebyshev_psi(10)
    with pytest.raises(ValueError):
        arith.chebyshev_psi(0.5)


def test_residue_divisor_sums_exact():
    s = arith.residue_divisor_sums(12, 4, 2)
    # divisors 2,3,4,6 -> residues 2,3,0,2
    assert s == [Fraction(1, 16), 0, Fraction(1, 4) + Fraction(1, 64), Fraction(1, 8)]
    assert sum(s) == sum(Fraction(1, 2**d) for d in (2, 3, 4, 6))
