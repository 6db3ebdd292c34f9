"""Integer arithmetic functions and Dirichlet convolution on finite tables.

Factorization is plain trial division up to sqrt(n); table builders use
linear sieves.  Logarithmic values are stored as binary64 reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "ArithTable",
    "divisors",
    "factorize",
    "is_prime",
    "primes_up_to",
    "mobius",
    "von_mangoldt",
    "two_adic_valuation",
    "divisor_count",
    "sigma",
    "dirichlet_convolve",
    "chebyshev_psi",
    "residue_divisor_sums",
    "proper_divisor_sum",
    "mobius_table",
    "von_mangoldt_table",
    "ones_table",
    "log_table",
    "divisor_count_table",
    "mu_star_lambda_table",
]


def _check_positive(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or int(n) != n:
        raise TypeError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")
    return n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    n = _check_positive(n)
    out: dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    n = _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if int(n) != n or n < 2:
        return False
    n = int(n)
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def primes_up_to(N: int) -> list[int]:
    """Primes p <= N by the sieve of Eratosthenes."""
    if N < 2:
        return []
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def von_mangoldt(n: int) -> float:
    fac = factorize(n)
    if len(fac) == 1:
        (p,) = fac
        return math.log(p)
    return 0.0


def two_adic_valuation(n: int) -> int:
    n = _check_positive(n)
    return (n & -n).bit_length() - 1


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


def sigma(n: int, s: complex = 1) -> complex:
    """Divisor power sum sum_{d|n} d^s (so sigma(n, -s) is sigma_{-s}(n))."""
    if isinstance(s, int) and s >= 0:
        return sum(d**s for d in divisors(n))
    if isinstance(s, (int, Fraction)) and Fraction(s).denominator == 1:
        return sum(Fraction(d) ** int(s) for d in divisors(n))
    return sum(complex(d) ** s for d in divisors(n))


def proper_divisor_sum(n: int, weight: Callable[[int], object]) -> object:
    """sum of weight(d) over divisors 2 <= d < n."""
    return sum((weight(d) for d in divisors(n) if 2 <= d < n), start=0)


@dataclass(frozen=True)
class ArithTable:
    """Values f(1..N) of an arithmetic function.

    ``values[0]`` holds f(1).  Entries may be ints, Fractions, floats or
    complex numbers; tables are immutable once built.
    """

    values: tuple
    name: str = ""
    multiplicative: bool = False

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("an arithmetic table needs at least the entry n=1")

    @classmethod
    def from_function(cls, f: Callable[[int], object], N: int, name: str = "",
                      multiplicative: bool = False) -> "ArithTable":
        N = _check_positive(N, "N")
        return cls(tuple(f(n) for n in range(1, N + 1)), name, multiplicative)

    @classmethod
    def from_sequence(cls, seq: Iterable, name: str = "", multiplicative: bool = False) -> "ArithTable":
        return cls(tuple(seq), name, multiplicative)

    @property
    def N(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int):
        if not 1 <= n <= len(self.values):
            raise IndexError(f"n={n} outside table domain 1..{len(self.values)}")
        return self.values[n - 1]

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return ((n, v) for n, v in enumerate(self.values, start=1))

    def as_array(self, dtype=float) -> np.ndarray:
        return np.array([dtype(v) for v in self.values])

    def check_multiplicative(self, tol: float = 1e-12) -> bool:
        """Verify f(mn) = f(m) f(n) on coprime pairs inside the domain."""
        N = self.N
        if abs(complex(self[1]) - 1) > tol:
            return False
        for m in range(2, N + 1):
            for n in range(2, N // m + 1):
                if math.gcd(m, n) == 1 and abs(complex(self[m * n]) - complex(self[m]) * complex(self[n])) > tol:
                    return False
        return True


def dirichlet_convolve(f: ArithTable, g: ArithTable, N: int | None = None) -> ArithTable:
    """(f*g)(n) = sum_{d|n} f(d) g(n/d) for n <= N."""
    if N is None:
        N = min(f.N, g.N)
    N = _check_positive(N, "N")
    if f.N < N or g.N < N:
        raise ValueError(f"domain mismatch: tables cover 1..{f.N} and 1..{g.N}, need 1..{N}")
    h: list = [0] * (N + 1)
    fv, gv = f.values, g.values
    for d in range(1, N + 1):
        fd = fv[d - 1]
        if fd == 0:
            continue
        for m in range(1, N // d + 1):
            h[d * m] += fd * gv[m - 1]
    name = f"({f.name}*{g.name})" if f.name and g.name else ""
    return ArithTable(tuple(h[1:]), name, f.multiplicative and g.multiplicative)


def _spf_table(N: int) -> np.ndarray:
    """Smallest prime factor for 0..N (0 and 1 map to themselves)."""
    spf = np.arange(N + 1, dtype=np.int64)
    for p in range(2, math.isqrt(N) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, N + 1, p)
            block[mask] = p
            spf[p * p :: p] = block
    return spf


@lru_cache(maxsize=8)
def mobius_table(N: int) -> ArithTable:
    N = _check_positive(N, "N")
    spf = _spf_table(N)
    mu = [0] * (N + 1)
    mu[1] = 1
    for n in range(2, N + 1):
        p = int(spf[n])
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return ArithTable(tuple(mu[1:]), "mu", True)


@lru_cache(maxsize=8)
def von_mangoldt_table(N: int) -> ArithTable:
    N = _check_positive(N, "N")
    lam = [0.0] * (N + 1)
    for p in primes_up_to(N):
        lp = math.log(p)
        pk = p
        while pk <= N:
            lam[pk] = lp
            pk *= p
    return ArithTable(tuple(lam[1:]), "Lambda")


def ones_table(N: int) -> ArithTable:
    return ArithTable((1,) * _check_positive(N, "N"), "1", True)


def log_table(N: int) -> ArithTable:
    return ArithTable(tuple(math.log(n) for n in range(1, _check_positive(N, "N") + 1)), "log")


def divisor_count_table(N: int) -> ArithTable:
    N = _check_positive(N, "N")
    tau = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            tau[m] += 1
    return ArithTable(tuple(tau[1:]), "tau", True)


@lru_cache(maxsize=8)
def mu_star_lambda_table(N: int) -> ArithTable:
    """(mu * Lambda)(n) for n <= N."""
    return dirichlet_convolve(mobius_table(N), von_mangoldt_table(N), N)


def chebyshev_psi(x: float) -> float:
    """psi(x) = sum_{n <= x} Lambda(n), with Lambda(x) counted fully at integers."""
    if not x >= 1:
        raise ValueError(f"chebyshev_psi needs x >= 1, got {x!r}")
    X = math.floor(x)
    total = []
    for p in primes_up_to(X):
        k = 1
        pk = p
        while pk * p <= X:
            pk *= p
            k += 1
        total.append(k * math.log(p))
    return math.fsum(total)


def residue_divisor_sums(n: int, m: int, R) -> list:
    """S_r(n;R) = sum of R^{-d} over divisors 2 <= d < n with d = r mod m.

    Exact (Fraction) when R is an int or Fraction, floats otherwise.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    m = _check_positive(m, "m")
    if not R > 0:
        raise ValueError(f"R must be positive, got {R!r}")
    exact = isinstance(R, (int, Fraction)) and not isinstance(R, bool)
    Rv = Fraction(R) if exact else float(R)
    zero = Fraction(0) if exact else 0.0
    out = [zero] * m
    for d in divisors(int(n)):
        if 2 <= d < n:
            out[d % m] += Rv ** (-d)
    return out


def sum_exact(values: Sequence) -> object:
    """Sum preserving exactness for Fractions and using fsum for floats."""
    if all(isinstance(v, (int, Fraction)) for v in values):
        return sum(values, Fraction(0))
    return math.fsum(float(v) for v in values)
