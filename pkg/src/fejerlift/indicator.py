"""Prime indicators built from geometric Fejér sums.

    F(z,q)  = (q-1) q (S_q(z) - q^{-z}),           S_q = sum_{i>=2} q^{-i} phi_i
    F#(z,q) = (q-1) q (S_q(z) - q^{-z}(1 + log(q) S_1(z))),  S_1 = sin(2 pi z)/(2 pi)

At integers n >= 2 both equal (q-1) q sum_{d|n, 2<=d<n} q^{-d}, which for
real q > 1 vanishes exactly at the primes.  The powers q^{-z} use the
principal branch throughout.  For q = -1 the Fejér sum is damped by r^i
(Abel summation) and the normalized form 2 sum (-r)^i phi_i - 2 e^{-i pi z} is used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .arith import divisors
from .budget import CertifiedValue, TruncationBudget
from .kernel import as_complex, nearest_integer, phi_grid, phi_infty, phi_vec

__all__ = [
    "RegimeQ",
    "IndicatorValue",
    "AbelConvergenceError",
    "S1",
    "s_q",
    "indicator_F",
    "indicator_Fsharp",
    "indicator_integer",
    "indicator_grid",
    "indicator_alternating_limit",
    "q_analog_tau",
    "q_analog_sigma",
    "abel_extrapolate",
    "abel_budget",
    "phase_locking_residual",
]

TWO_PI = 2.0 * math.pi
REGIMES = ("real_gt1", "alternating_minus1", "real_lt_minus1", "complex_abs_gt1")


class AbelConvergenceError(ArithmeticError):
    """The damped values did not settle monotonically as r approached 1."""


@dataclass(frozen=True)
class RegimeQ:
    """Parameter q with its regime; ``abel_r`` is the damping used at q = -1."""

    q: complex
    regime: str
    abel_r: Optional[float] = None

    def __post_init__(self) -> None:
        q = complex(self.q)
        r = self.regime
        if r not in REGIMES:
            raise ValueError(f"unknown regime {r!r}")
        if r == "real_gt1" and not (q.imag == 0 and q.real > 1):
            raise ValueError(f"regime real_gt1 needs real q > 1, got {self.q!r}")
        if r == "real_lt_minus1" and not (q.imag == 0 and q.real < -1):
            raise ValueError(f"regime real_lt_minus1 needs real q < -1, got {self.q!r}")
        if r == "complex_abs_gt1" and not abs(q) > 1:
            raise ValueError(f"regime complex_abs_gt1 needs |q| > 1, got {self.q!r}")
        if r == "alternating_minus1":
            if q != -1:
                raise ValueError("alternating regime is only defined at q = -1")
            if self.abel_r is None or not 0 < self.abel_r < 1:
                raise ValueError(f"Abel damping r must lie in (0,1), got {self.abel_r!r}")

    @classmethod
    def from_q(cls, q, abel_r: Optional[float] = None) -> "RegimeQ":
        """Infer the regime from q (q = -1 needs a damping r)."""
        qc = complex(q)
        if qc == -1:
            return cls(q, "alternating_minus1", 0.999 if abel_r is None else abel_r)
        if qc.imag == 0 and qc.real > 1:
            return cls(q, "real_gt1")
        if qc.imag == 0 and qc.real < -1:
            return cls(q, "real_lt_minus1")
        if abs(qc) > 1:
            return cls(q, "complex_abs_gt1")
        raise ValueError(f"|q| <= 1 (q={q!r}) has no convergent regime besides q = -1 with damping")

    @property
    def is_real(self) -> bool:
        return self.regime == "real_gt1"

    @property
    def log_q(self) -> complex:
        """Principal logarithm; for q = -Q this is log Q + i pi."""
        qc = complex(self.q)
        return math.log(qc.real) if self.is_real else cmath.log(qc)

    @property
    def prefactor(self) -> complex:
        q = self.q
        return (q - 1) * q

    def weights(self, M: int) -> np.ndarray:
        """Fejér weights w_i for i = 1..M (w_1 = 0): q^{-i}, or (-r)^i when damped."""
        i = np.arange(1, M + 1)
        if self.regime == "alternating_minus1":
            w = np.exp(i * math.log(self.abel_r)) * np.where(i % 2 == 0, 1.0, -1.0)
        elif self.is_real:
            w = np.exp(-i * math.log(float(complex(self.q).real)))
        elif self.regime == "real_lt_minus1":
            Q = -complex(self.q).real
            w = np.exp(-i * math.log(Q)) * np.where(i % 2 == 0, 1.0, -1.0)
        else:
            w = np.exp(-i * cmath.log(complex(self.q)))
        w[0] = 0
        return w

    def weight_tail(self, M: int) -> float:
        """sum_{i>M} |w_i|."""
        rho = self.abel_r if self.regime == "alternating_minus1" else 1.0 / abs(complex(self.q))
        M = max(M, 1)
        return rho ** (M + 1) / (1.0 - rho)

    def to_dict(self) -> dict:
        qc = complex(self.q)
        return {"q_re": qc.real, "q_im": qc.imag, "regime": self.regime, "abel_r": self.abel_r}


@dataclass(frozen=True)
class IndicatorValue:
    value: complex
    tail_bound: float
    path: str  # "series" | "integer-exact"

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {"re": v.real, "im": v.imag, "tail_bound": self.tail_bound, "path": self.path}


def _coerce_regime(q) -> RegimeQ:
    return q if isinstance(q, RegimeQ) else RegimeQ.from_q(q)


def S1(z) -> complex:
    """sin(2 pi z)/(2 pi)."""
    zc = as_complex(z)
    if zc.imag == 0:
        return math.sin(TWO_PI * zc.real) / TWO_PI
    return cmath.sin(TWO_PI * zc) / TWO_PI


def _cosh_factor(z) -> float:
    return math.cosh(TWO_PI * abs(as_complex(z).imag))


def s_q(z, rq: RegimeQ, b: TruncationBudget, integer_fast_path: bool = True) -> CertifiedValue:
    """sum_{2<=i<=M} w_i phi_i(z) with tail cosh(2 pi |Im z|) sum_{i>M} |w_i|."""
    rq = _coerce_regime(rq)
    M = b.M
    w = rq.weights(M)
    ph = phi_vec(z, np.arange(1, M + 1), integer_fast_path)
    value = complex(np.sum(w * ph))
    zc = as_complex(z)
    n = nearest_integer(zc) if integer_fast_path else None
    if n is None and zc.imag == 0 and zc.real == int(zc.real):
        n = int(zc.real)
    if n is not None and n != 0 and M >= abs(n):
        tail = 0.0
    else:
        tail = _cosh_factor(z) * rq.weight_tail(M)
    b.check(tail, "S_q")
    real = zc.imag == 0 and (rq.is_real or rq.regime in ("alternating_minus1", "real_lt_minus1"))
    return CertifiedValue(value.real if real else value, tail)


def _corrector_power(z, rq: RegimeQ) -> complex:
    """q^{-z} on the principal branch (e^{-i pi z} at q = -1)."""
    zc = as_complex(z)
    if rq.is_real and zc.imag == 0:
        return math.exp(-zc.real * rq.log_q)
    return cmath.exp(-zc * rq.log_q)


def _prefactor(rq: RegimeQ) -> complex:
    return 2.0 if rq.regime == "alternating_minus1" else rq.prefactor


def _integer_route(z, integer_fast_path: bool) -> Optional[int]:
    if not integer_fast_path:
        return None
    n = nearest_integer(z)
    return n if n is not None and n >= 2 else None


def _pack(value: complex, tail: float, z, rq: RegimeQ, path: str) -> IndicatorValue:
    v = complex(value)
    real = as_complex(z).imag == 0 and rq.is_real
    return IndicatorValue(v.real if real else v, float(tail), path)


def indicator_F(z, rq, b: TruncationBudget, integer_fast_path: bool = True) -> IndicatorValue:
    """(q-1) q (S_q(z) - q^{-z}); damped value at the stored r when q = -1."""
    rq = _coerce_regime(rq)
    n = _integer_route(z, integer_fast_path)
    if n is not None:
        return _pack(complex(indicator_integer(n, rq, exact=False)), 0.0, z, rq, "integer-exact")
    S = s_q(z, rq, b, integer_fast_path)
    c = _prefactor(rq)
    value = c * (complex(S.value) - _corrector_power(z, rq))
    return _pack(value, abs(c) * S.tail_bound, z, rq, "series")


def indicator_Fsharp(z, rq, b: TruncationBudget, integer_fast_path: bool = True) -> IndicatorValue:
    """Tangent-matched indicator: corrector multiplied by 1 + log(q) S_1(z)."""
    rq = _coerce_regime(rq)
    n = _integer_route(z, integer_fast_path)
    if n is not None:
        return _pack(complex(indicator_integer(n, rq, exact=False)), 0.0, z, rq, "integer-exact")
    S = s_q(z, rq, b, integer_fast_path)
    c = _prefactor(rq)
    corr = _corrector_power(z, rq) * (1.0 + rq.log_q * S1(z))
    value = c * (complex(S.value) - corr)
    return _pack(value, abs(c) * S.tail_bound, z, rq, "series")


def indicator_grid(z: np.ndarray, rq, M: int, sharp: bool = False,
                   chunk: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """F (or F#) at many points; returns (values, tail bounds).

    Exact integers n >= 2 take the divisor-sum value with zero tail, so
    prime columns of a scan are exactly zero.
    """
    rq = _coerce_regime(rq)
    z = np.asarray(z, dtype=complex).ravel()
    w = rq.weights(M)[1:]
    i = np.arange(2, M + 1)
    c = _prefactor(rq)
    lq = rq.log_q
    out = np.empty(z.size, dtype=complex)
    for lo in range(0, z.size, chunk):
        zz = z[lo : lo + chunk]
        S = phi_grid(zz, i) @ w
        corr = np.exp(-zz * lq)
        if sharp:
            corr = corr * (1.0 + lq * np.sin(TWO_PI * zz) / TWO_PI)
        out[lo : lo + chunk] = c * (S - corr)
    tails = abs(c) * np.cosh(TWO_PI * np.abs(z.imag)) * rq.weight_tail(M)
    exact = (z.imag == 0) & (z.real == np.round(z.real)) & (z.real >= 2)
    for k in np.flatnonzero(exact):
        out[k] = complex(indicator_integer(int(z.real[k]), rq, exact=False))
        tails[k] = 0.0
    return out, tails


def _exact_power(q, d: int):
    if isinstance(q, (int, Fraction)) and not isinstance(q, bool):
        return Fraction(q) ** (-d)
    return q ** (-d)


def indicator_integer(n: int, rq, exact: bool = True):
    """(q-1) q sum_{d|n, 2<=d<n} q^{-d}, by divisor enumeration.

    With ``exact`` and an int/Fraction q the result is a Fraction; q = -1
    gives the integer 2(sum_{d|n, d>=2} (-1)^d - (-1)^n).
    """
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    q = rq.q if isinstance(rq, RegimeQ) else rq
    if complex(q) == 0:
        raise ValueError("q must be nonzero")
    if isinstance(q, complex) and q.imag == 0:
        q = q.real
    if isinstance(q, float) and q.is_integer():
        q = int(q)
    props = [d for d in divisors(n) if 2 <= d < n]
    if isinstance(q, int) and abs(q) == 1:
        total = sum(q**d for d in props)  # q^{-d} = q^d for q = +-1
        return (q - 1) * q * total
    if exact and isinstance(q, (int, Fraction)):
        qf = Fraction(q)
        if not props:
            return Fraction(0)
        # q = a/b: sum_d (b/a)^d over the common denominator a^D
        a, b, D = qf.numerator, qf.denominator, props[-1]
        num = sum(b**d * a ** (D - d) for d in props)
        return (qf - 1) * qf * Fraction(num, a**D)
    if isinstance(q, complex):
        return (q - 1) * q * sum((q ** (-d) for d in props), 0j)
    q = float(q)
    return (q - 1) * q * math.fsum(q ** (-d) for d in props)


def indicator_alternating_limit(z, b: TruncationBudget, sharp: bool = False) -> CertifiedValue:
    """The r -> 1 value at q = -1 from the renormalized alternating series.

    2 sum (-r)^i phi_i = 2 sum (-r)^i (phi_i - phi_inf) + 2 phi_inf r^2/(1+r), and
    the last term tends to phi_inf.  The remaining alternating sum converges
    since phi_i - phi_inf = O(i^{-2}); its tail estimate is heuristic.
    """
    M = b.M
    i = np.arange(1, M + 1)
    diff = phi_vec(z, i) - phi_infty(z)
    sgn = np.where(i % 2 == 0, 1.0, -1.0)
    sgn[0] = 0
    S = 2.0 * complex(np.sum(sgn * diff)) + phi_infty(z)
    zc = as_complex(z)
    lo = max(2, M // 2)
    C = float(np.max(i[lo - 1 :] ** 2.0 * np.abs(diff[lo - 1 :])))
    tail = 2.0 * C / M
    corr = cmath.exp(-1j * math.pi * zc)
    if sharp:
        corr *= 1.0 + 1j * math.pi * S1(zc)
    return CertifiedValue(S - 2.0 * corr, tail, heuristic=True)


def _q_analog_check(q: float) -> float:
    if isinstance(q, complex) or not float(q) > 1:
        raise ValueError(f"q-analogs need real q > 1, got {q!r}")
    return float(q)


def q_analog_tau(z, q: float, b: TruncationBudget, integer_fast_path: bool = True) -> CertifiedValue:
    """sum_{i>=2} q^{-i} phi_i(z) - q^{-z}; tends to tau(n) - 2 at integers as q -> 1+."""
    q = _q_analog_check(q)
    n = _integer_route(z, integer_fast_path)
    if n is not None:
        return CertifiedValue(math.fsum(q ** (-d) for d in divisors(n) if 2 <= d < n), 0.0)
    rq = RegimeQ(q, "real_gt1")
    S = s_q(z, rq, b, integer_fast_path)
    zc = as_complex(z)
    value = complex(S.value) - _corrector_power(z, rq)
    return CertifiedValue(value.real if zc.imag == 0 else value, S.tail_bound)


def q_analog_sigma(z, q: float, b: TruncationBudget, integer_fast_path: bool = True) -> CertifiedValue:
    """sum_{i>=2} i q^{-i} phi_i(z) - z q^{-z}; tends to sigma(n) - n - 1 at integers."""
    q = _q_analog_check(q)
    n = _integer_route(z, integer_fast_path)
    if n is not None:
        return CertifiedValue(math.fsum(d * q ** (-d) for d in divisors(n) if 2 <= d < n), 0.0)
    M = b.M
    i = np.arange(1, M + 1)
    w = i * np.exp(-i * math.log(q))
    w[0] = 0
    zc = as_complex(z)
    value = complex(np.sum(w * phi_vec(z, i, integer_fast_path))) - zc * cmath.exp(-zc * math.log(q))
    r = 1.0 / q
    k = M + 1
    tail = _cosh_factor(z) * r**k * (k - (k - 1) * r) / (1 - r) ** 2
    b.check(tail, "q-analog sigma")
    return CertifiedValue(value.real if zc.imag == 0 else value, tail)


def abel_budget(r: float, z=0.0, tail_tol: float = 1e-12, cap: int = 2_000_000) -> TruncationBudget:
    """Cutoff making cosh(2 pi |Im z|) r^{M+1}/(1-r) <= tail_tol."""
    c = _cosh_factor(z)
    M = math.ceil(math.log(tail_tol * (1 - r) / c) / math.log(r))
    return TruncationBudget(M=min(max(M, 2), cap), tail_tol=max(tail_tol, 1e-300))


def abel_extrapolate(f: Callable[[object, float], complex], z,
                     r_grid: Sequence[float] = (0.9, 0.99, 0.999, 0.9999)) -> complex:
    """Limit of f(z, r) as r -> 1 by polynomial (Richardson) extrapolation in h = 1 - r.

    Raises AbelConvergenceError when successive damped values stop
    contracting.  The estimate of the remaining error is exposed as the
    attribute ``abel_extrapolate.last_error``.
    """
    rs = list(r_grid)
    if len(rs) < 2 or any(not 0 < r < 1 for r in rs) or any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("r_grid must be increasing inside (0, 1) with at least two points")
    hs = [1.0 - r for r in rs]
    vals = [complex(f(z, r)) for r in rs]
    steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
    scale = max(1.0, max(abs(v) for v in vals))
    for a, b in zip(steps, steps[1:]):
        if b > a and b > 1e-13 * scale:
            raise AbelConvergenceError(f"no convergence: residual steps {steps}")
    # Neville tableau evaluated at h = 0
    table = list(vals)
    estimates = [table[-1]]
    for level in range(1, len(vals)):
        table = [
            (hs[j + level] * table[j] - hs[j] * table[j + 1]) / (hs[j + level] - hs[j])
            for j in range(len(table) - 1)
        ]
        estimates.append(table[-1])
    abel_extrapolate.last_error = abs(estimates[-1] - estimates[-2])
    return estimates[-1]


abel_extrapolate.last_error = math.nan


def phase_locking_residual(x: float, q) -> float:
    """sin(theta x)(1 + log(R) S_1(x)) - cos(theta x) theta S_1(x) for q = R e^{i theta}."""
    qc = complex(q.q if isinstance(q, RegimeQ) else q)
    R, theta = abs(qc), cmath.phase(qc)
    if not R > 0:
        raise ValueError("q must be nonzero")
    x = float(x)
    s1 = math.sin(TWO_PI * x) / TWO_PI
    if nearest_integer(x) is not None:
        n = nearest_integer(x)
        s1 = 0.0
        st = math.sin(theta * n) if theta != math.pi else 0.0
        return st - math.cos(theta * n) * theta * s1
    return math.sin(theta * x) * (1.0 + math.log(R) * s1) - math.cos(theta * x) * theta * s1
