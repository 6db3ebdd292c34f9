"""The Fejér-Dirichlet lift T_a(z) = sum_i a(i) phi_i(z) and its renormalized variants.

At integers T_a(n) = (a*1)(n), and its Dirichlet series is zeta(s) A(s).
Tails of the plain lift are bounded through |phi_i(z)| <= cosh(2 pi |Im z|);
the renormalized lifts (weights mu*Lambda, or i^{-s} with Re s > -1) use
phi_i - phi_inf = O(i^{-2}) with an empirically calibrated constant, so
their bounds are flagged heuristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import ArithTable, divisors, mobius, mobius_table, mu_star_lambda_table
from .budget import CertifiedValue, TruncationBudget
from .kernel import as_complex, phi_infty, phi_vec
from .special import DirichletCharacter, _geometric_ratio_tail, zeta, zeta_prime

__all__ = [
    "WeightSpec",
    "lift_eval",
    "lift_integer",
    "lift_integer_table",
    "weight_dirichlet_series",
    "renorm_lift_mu_lambda",
    "two_var_lift",
    "spectral_derivative_s0",
]

_KINDS = ("geometric", "power", "mobius_power", "character_power", "mu_star_lambda", "table")


def _is_exact_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class WeightSpec:
    """Coefficient sequence a(i), i >= start_index.

    Build instances through the classmethods; ``scaled`` geometric weights
    carry the normalizing factor (q-1)q.
    """

    kind: str
    q: Optional[complex] = None
    alpha: Optional[float] = None
    character: Optional[DirichletCharacter] = None
    table: Optional[ArithTable] = None
    scaled: bool = False
    start_index: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if int(self.start_index) != self.start_index or self.start_index < 1:
            raise ValueError("start_index must be an integer >= 1")
        if self.kind == "geometric" and not abs(complex(self.q)) > 1:
            raise ValueError(f"geometric weights need |q| > 1, got q={self.q!r}")
        if self.kind in ("power", "mobius_power", "character_power"):
            if self.alpha is None or not float(self.alpha) > 1:
                raise ValueError(f"{self.kind} weights need alpha > 1 for absolute summability")
        if self.kind == "character_power" and self.character is None:
            raise ValueError("character_power needs a character table")
        if self.kind == "table" and self.table is None:
            raise ValueError("table weights need an ArithTable")

    # constructors -----------------------------------------------------
    @classmethod
    def geometric(cls, q, scaled: bool = False, start: int = 1) -> "WeightSpec":
        return cls("geometric", q=q, scaled=scaled, start_index=start)

    @classmethod
    def power(cls, alpha, start: int = 1) -> "WeightSpec":
        return cls("power", alpha=alpha, start_index=start)

    @classmethod
    def mobius_power(cls, alpha, start: int = 1) -> "WeightSpec":
        return cls("mobius_power", alpha=alpha, start_index=start)

    @classmethod
    def character_power(cls, chi: DirichletCharacter, alpha, start: int = 1) -> "WeightSpec":
        return cls("character_power", alpha=alpha, character=chi, start_index=start)

    @classmethod
    def mu_star_lambda(cls) -> "WeightSpec":
        return cls("mu_star_lambda")

    @classmethod
    def from_table(cls, table: ArithTable, start: int = 1) -> "WeightSpec":
        return cls("table", table=table, start_index=start)

    # values -----------------------------------------------------------
    @property
    def _scale(self):
        if self.kind != "geometric" or not self.scaled:
            return 1
        q = self.q
        return (q - 1) * q

    def _ipow(self, i: int, exact: bool):
        a = self.alpha
        if exact and _is_exact_number(a) and Fraction(a).denominator == 1:
            return Fraction(1, i ** int(a))
        return float(i) ** (-float(a))

    def weight(self, i: int, exact: bool = True):
        """a(i); exact Fractions when the parameters allow it."""
        if i < self.start_index:
            return 0
        k = self.kind
        if k == "geometric":
            q = self.q
            if exact and _is_exact_number(q):
                return self._scale * Fraction(q) ** (-i)
            if isinstance(q, complex):
                return self._scale * q ** (-i)
            return float(self._scale) * float(q) ** (-i)
        if k == "power":
            return self._ipow(i, exact)
        if k == "mobius_power":
            return mobius(i) * self._ipow(i, exact)
        if k == "character_power":
            c = self.character(i)
            if isinstance(c, complex) and c.imag == 0 and c.real.is_integer():
                c = int(c.real)
            return c * self._ipow(i, exact)
        if k == "mu_star_lambda":
            return mu_star_lambda_table(max(i, 16))[i]
        t = self.table
        return t[i] if i <= t.N else 0

    def weights_array(self, M: int) -> np.ndarray:
        """a(1..M) as a float or complex array."""
        i = np.arange(1, M + 1, dtype=np.int64)
        k = self.kind
        if k == "geometric":
            q = complex(self.q)
            sc = complex(self._scale)
            if q.imag == 0 and sc.imag == 0:
                a = sc.real * np.exp(-i * math.log(abs(q.real)))
                if q.real < 0:
                    a = np.where(i % 2 == 1, -a, a)
            else:
                a = sc * np.exp(-i * np.log(q))
        elif k in ("power", "mobius_power", "character_power"):
            a = np.asarray(i, dtype=float) ** (-float(self.alpha))
            if k == "mobius_power":
                a = a * np.array(mobius_table(M).values, dtype=float)
            elif k == "character_power":
                chi = np.array([complex(self.character(int(n))) for n in i])
                a = a * (chi.real if np.all(chi.imag == 0) else chi)
        elif k == "mu_star_lambda":
            a = np.array(mu_star_lambda_table(M).values, dtype=float)
        else:
            vals = [complex(v) for v in self.table.values[:M]] + [0j] * max(0, M - self.table.N)
            a = np.array(vals)
            if np.all(a.imag == 0):
                a = a.real
        return np.where(i >= self.start_index, a, 0)

    # bounds -----------------------------------------------------------
    @property
    def absolutely_summable(self) -> bool:
        return self.kind != "mu_star_lambda"

    def abs_tail(self, M: int) -> float:
        """Rigorous bound on sum_{i>M} |a(i)|."""
        k = self.kind
        M = max(M, self.start_index - 1)
        if k == "geometric":
            r = 1.0 / abs(complex(self.q))
            return abs(complex(self._scale)) * r ** (M + 1) / (1 - r)
        if k in ("power", "mobius_power", "character_power"):
            a = float(self.alpha)
            return max(M, 1) ** (1 - a) / (a - 1)
        if k == "table":
            return math.fsum(abs(complex(v)) for v in self.table.values[M:])
        raise ValueError("mu*Lambda weights are not absolutely summable")

    def dirichlet_abscissa(self) -> float:
        """sigma_a such that A(s) converges absolutely for Re s > sigma_a."""
        k = self.kind
        if k in ("geometric", "table"):
            return -math.inf
        if k == "mu_star_lambda":
            return 1.0
        return 1.0 - float(self.alpha)

    def dirichlet_tail(self, M: int, sigma: float) -> float:
        """Rigorous bound on sum_{n>M} |a(n)| n^{-sigma}."""
        k = self.kind
        M = max(M, self.start_index - 1)
        if k == "geometric":
            return abs(complex(self._scale)) * _geometric_ratio_tail(1.0 / abs(complex(self.q)), sigma, M)
        if k in ("power", "mobius_power", "character_power"):
            e = float(self.alpha) + sigma
            if not e > 1:
                return math.inf
            return max(M, 1) ** (1 - e) / (e - 1)
        if k == "mu_star_lambda":
            if not sigma > 1:
                return math.inf
            M0 = max(M, 3)
            return M0 ** (1 - sigma) * (math.log(M0) / (sigma - 1) + 1 / (sigma - 1) ** 2)
        return math.fsum(abs(complex(v)) * (n ** -sigma)
                         for n, v in enumerate(self.table.values[M:], start=M + 1))


def _is_exact_integer(z) -> Optional[int]:
    zc = as_complex(z)
    if zc.imag == 0 and zc.real == int(zc.real):
        return int(zc.real)
    return None


def _real_result(z, a: np.ndarray) -> bool:
    return as_complex(z).imag == 0 and not np.iscomplexobj(a)


def lift_eval(w: WeightSpec, z, b: TruncationBudget, integer_fast_path: bool = True) -> CertifiedValue:
    """sum_{i<=M} a(i) phi_i(z) with a certified tail bound.

    At an exact integer n != 0 with M >= |n| the tail vanishes identically,
    because phi_i(n) = 0 for every i > |n|.
    """
    if not w.absolutely_summable:
        raise ValueError("mu*Lambda weights must go through renorm_lift_mu_lambda")
    zc = as_complex(z)
    M = b.M
    a = w.weights_array(M)
    ph = phi_vec(z, np.arange(1, M + 1), integer_fast_path)
    value = complex(np.sum(a * ph))
    n = _is_exact_integer(zc)
    if n is not None and n != 0 and M >= abs(n):
        tail = 0.0
    else:
        tail = math.cosh(2 * math.pi * abs(zc.imag)) * w.abs_tail(M)
    b.check(tail, "lift")
    return CertifiedValue(value.real if _real_result(z, a) else value, tail)


def lift_integer(w: WeightSpec, n: int, exact: bool = True):
    """(a*1)(n) = sum_{d|n} a(d), by arithmetic only."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    terms = [w.weight(d, exact) for d in divisors(int(n))]
    if exact and all(_is_exact_number(t) for t in terms):
        return sum(terms, Fraction(0))
    if any(isinstance(t, complex) for t in terms):
        return sum(complex(t) for t in terms)
    return math.fsum(float(t) for t in terms)


def lift_integer_table(w: WeightSpec, N: int) -> np.ndarray:
    """Array of (a*1)(n), n = 1..N, by a divisor sieve in floating point."""
    a = w.weights_array(N)
    out = np.zeros(N + 1, dtype=a.dtype)
    for d in range(1, N + 1):
        if a[d - 1] != 0:
            out[d::d] += a[d - 1]
    return out[1:]


def weight_dirichlet_series(w: WeightSpec, s: complex, b: TruncationBudget) -> CertifiedValue:
    """A(s) = sum a(n) n^{-s} truncated at M, inside the absolute-convergence half-plane."""
    sc = complex(s)
    if not sc.real > w.dirichlet_abscissa():
        raise ValueError(f"Re s = {sc.real} outside the half-plane Re s > {w.dirichlet_abscissa()}")
    M = b.M
    n = np.arange(1, M + 1, dtype=float)
    a = w.weights_array(M)
    ns = n ** (-sc.real) if sc.imag == 0 else np.exp(-sc * np.log(n))
    value = complex(np.sum(a * ns))
    tail = w.dirichlet_tail(M, sc.real)
    b.check(tail, "weight Dirichlet series")
    real = sc.imag == 0 and not np.iscomplexobj(a)
    return CertifiedValue(value.real if real else value, tail)


def _difference_constant(diff: np.ndarray, M: int) -> float:
    """max_{M/2 <= i <= M} i^2 |phi_i - phi_inf|: the empirical O(i^-2) constant."""
    lo = max(1, M // 2)
    i = np.arange(lo, M + 1, dtype=float)
    return float(np.max(i * i * np.abs(diff[lo - 1 : M])))


def _renorm_parts(z, M: int):
    zc = as_complex(z)
    i = np.arange(1, M + 1)
    ph = phi_vec(z, i)
    pinf = phi_infty(z)
    return zc, i, ph - pinf, pinf


def renorm_lift_mu_lambda(z, b: TruncationBudget) -> CertifiedValue:
    """sum_{i<=M} (mu*Lambda)(i) (phi_i(z) - phi_inf(z)); equals Lambda(n) at integers.

    Off the integers the tail estimate C(z) sum_{i>M} log(i)/i^2 <= C (log M + 1)/M
    relies on the calibrated constant C and is marked heuristic.
    """
    M = b.M
    zc, i, diff, _ = _renorm_parts(z, M)
    c = np.array(mu_star_lambda_table(M).values, dtype=float)
    value = complex(np.sum(c * diff))
    n = _is_exact_integer(zc)
    if n is not None and M >= abs(n):
        tail, heuristic = 0.0, False
    else:
        C = _difference_constant(diff, M)
        tail, heuristic = C * (math.log(M) + 1) / M, True
    b.check(tail, "renormalized lift")
    return CertifiedValue(value.real if zc.imag == 0 else value, tail, heuristic)


def two_var_lift(z, s: complex, b: TruncationBudget) -> CertifiedValue:
    """sum_{i<=M} (phi_i - phi_inf) i^{-s} + phi_inf zeta(s+2), Re s > -1.

    Interpolates sigma_{-s}(n) at integers.
    """
    sc = complex(s)
    if not sc.real > -1:
        raise ValueError(f"two-variable lift needs Re s > -1, got s={s!r}")
    M = b.M
    zc, i, diff, pinf = _renorm_parts(z, M)
    iw = np.asarray(i, dtype=float) ** (-sc.real) if sc.imag == 0 else np.exp(-sc * np.log(i))
    value = complex(np.sum(diff * iw))
    tail, heuristic = 0.0, False
    n = _is_exact_integer(zc)
    if not (n is not None and M >= abs(n)):
        C = _difference_constant(diff, M)
        tail, heuristic = C * M ** (-sc.real - 1) / (sc.real + 1), True
    if pinf != 0:
        zt = zeta(sc + 2, b, margin=0.0)
        value += pinf * complex(zt.value)
        tail += abs(pinf) * zt.tail_bound
    b.check(tail, "two-variable lift")
    real = zc.imag == 0 and sc.imag == 0
    return CertifiedValue(value.real if real else value, tail, heuristic)


def spectral_derivative_s0(z, b: TruncationBudget) -> CertifiedValue:
    """d/ds of the two-variable lift at s = 0: -sum (phi_i - phi_inf) log i + phi_inf zeta'(2)."""
    M = b.M
    zc, i, diff, pinf = _renorm_parts(z, M)
    value = -complex(np.sum(diff * np.log(np.asarray(i, dtype=float))))
    tail, heuristic = 0.0, False
    n = _is_exact_integer(zc)
    if not (n is not None and M >= abs(n)):
        C = _difference_constant(diff, M)
        tail, heuristic = C * (math.log(M) + 1) / M, True
    if pinf != 0:
        zp = zeta_prime(2.0, b)
        value += pinf * zp.value
        tail += abs(pinf) * zp.tail_bound
    b.check(tail, "spectral derivative")
    return CertifiedValue(value.real if zc.imag == 0 else value, tail, heuristic)
