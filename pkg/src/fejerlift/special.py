"""Special functions by convergent series with rigorous tail bounds.

Everything here works strictly inside the region of absolute convergence
(Re s > 1 for zeta-type sums, |z| < 1 for power series, |z| = 1 only with
Re s > 1).  Zeta and Hurwitz zeta default to an Euler-Maclaurin tail whose
remainder is bounded explicitly; ``method="direct"`` gives the plain partial
sum with the integral tail bound instead.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .arith import factorize
from .budget import CertifiedValue, TruncationBudget

__all__ = [
    "HALF_PLANE_MARGIN",
    "ETA_AT_1",
    "zeta",
    "zeta_prime",
    "polylog",
    "dilog",
    "eta",
    "eta_alternating",
    "eta_Q",
    "hurwitz_zeta",
    "lerch_phi",
    "DirichletCharacter",
    "characters_mod",
    "gauss_sum",
    "dirichlet_L",
]

HALF_PLANE_MARGIN = 0.05
# eta(1) = 1 - 1/2 + 1/3 - ... = log 2 (Mercator series); kept only for the s = 1 boundary check.
ETA_AT_1 = math.log(2.0)

_BERNOULLI = bernoulli(80)


def _sigma(s: complex) -> float:
    return complex(s).real


def _require_half_plane(s: complex, margin: float = HALF_PLANE_MARGIN, what: str = "series") -> None:
    if not _sigma(s) > 1.0 + margin:
        raise ValueError(
            f"{what} is evaluated only for Re s > {1 + margin:g} (no continuation); got s={s!r}"
        )


def _finish(value: complex, tail: float, real_input: bool, b: TruncationBudget | None,
            what: str, **meta) -> CertifiedValue:
    if b is not None:
        b.check(tail, what)
    v = complex(value)
    return CertifiedValue(v.real if real_input else v, float(tail), meta=meta)


def _pow_terms(n: np.ndarray, s: complex) -> np.ndarray:
    """n^{-s} elementwise for positive real n."""
    s = complex(s)
    if s.imag == 0.0:
        return n ** (-s.real)
    return np.exp(-s * np.log(n))


def _pochhammer(s: complex, m: int) -> complex:
    out = 1.0 + 0j
    for j in range(m):
        out *= s + j
    return out


def _em_tail(s: complex, x0: float, K: int = 20) -> tuple[complex, float, list]:
    """Euler-Maclaurin value of sum_{k>=0} (x0+k)^{-s} and a remainder bound.

    Uses the correction terms j = 1..K-1; the remainder is bounded by
    2 |B_2K|/(2K)! |(s)_2K| x0^{1-sigma-2K}/(sigma+2K-1).
    Returns (value, bound, term list) so the derivative can reuse the pieces.
    """
    s = complex(s)
    sig = s.real
    lx = math.log(x0)
    terms = [cmath.exp((1 - s) * lx) / (s - 1), 0.5 * cmath.exp(-s * lx)]
    for j in range(1, K):
        c = _BERNOULLI[2 * j] / math.factorial(2 * j)
        terms.append(c * _pochhammer(s, 2 * j - 1) * cmath.exp((-s - 2 * j + 1) * lx))
    bound = (
        2.0 * abs(_BERNOULLI[2 * K]) / math.factorial(2 * K) * abs(_pochhammer(s, 2 * K))
        * math.exp((1 - sig - 2 * K) * lx) / (sig + 2 * K - 1)
    )
    return sum(terms), bound, terms


def _em_tail_derivative(s: complex, x0: float, K: int = 20) -> tuple[complex, float]:
    """d/ds of the Euler-Maclaurin tail with a Cauchy-estimate remainder bound."""
    s = complex(s)
    _, _, terms = _em_tail(s, x0, K)
    lx = math.log(x0)
    d = -lx * terms[0] - terms[0] / (s - 1) - lx * terms[1]
    for j in range(1, K):
        t = terms[1 + j]
        d += t * (sum(1.0 / (s + l) for l in range(2 * j - 1)) - lx)
    r = (s.real - 1.0) / 2.0
    sig_w = s.real - r
    poch = math.prod(abs(s) + r + j for j in range(2 * K))
    rem_on_circle = (
        2.0 * abs(_BERNOULLI[2 * K]) / math.factorial(2 * K) * poch
        * math.exp((1 - sig_w - 2 * K) * lx) / (sig_w + 2 * K - 1)
    )
    return d, rem_on_circle / r


def zeta(s: complex, b: TruncationBudget | None = None, method: str = "em",
         margin: float = HALF_PLANE_MARGIN) -> CertifiedValue:
    """Riemann zeta for Re s > 1 + margin from sum_{n<=N} n^{-s} plus a bounded tail."""
    _require_half_plane(s, margin, what="zeta")
    b = b or TruncationBudget()
    real_input = not isinstance(s, complex) or s.imag == 0
    s = complex(s)
    N = b.M
    n = np.arange(1, N + 1, dtype=float)
    partial = complex(np.sum(_pow_terms(n, s)))
    if method == "direct":
        tail = N ** (1 - s.real) / (s.real - 1)
        return _finish(partial, tail, real_input, b, "zeta", method="direct", N=N)
    if method != "em":
        raise ValueError(f"unknown method {method!r}")
    t, bound, _ = _em_tail(s, N + 1.0)
    return _finish(partial + t, bound, real_input, b, "zeta", method="em", N=N)


def zeta_prime(s: complex, b: TruncationBudget | None = None, method: str = "em") -> CertifiedValue:
    """zeta'(s) = -sum log(n) n^{-s} for Re s > 1.05."""
    _require_half_plane(s, what="zeta'")
    b = b or TruncationBudget()
    real_input = not isinstance(s, complex) or s.imag == 0
    s = complex(s)
    N = b.M
    n = np.arange(1, N + 1, dtype=float)
    partial = -complex(np.sum(np.log(n) * _pow_terms(n, s)))
    sig = s.real
    if method == "direct":
        # log t * t^{-sigma} decreases for t >= 3 > e^{1/sigma}
        N0 = max(N, 3)
        tail = N0 ** (1 - sig) * (math.log(N0) / (sig - 1) + 1 / (sig - 1) ** 2)
        return _finish(partial, tail, real_input, b, "zeta'", method="direct", N=N)
    if method != "em":
        raise ValueError(f"unknown method {method!r}")
    d, bound = _em_tail_derivative(s, N + 1.0)
    return _finish(partial + d, bound, real_input, b, "zeta'", method="em", N=N)


def _geometric_ratio_tail(r: float, sig: float, M: int, shift: float = 0.0) -> float:
    """Bound on sum_{n>M} r^n (n+shift)^{-sig} for 0 <= r < 1."""
    if r == 0.0:
        return 0.0
    first = r ** (M + 1) * (M + 1 + shift) ** (-sig)
    rho = r if sig >= 0 else r * ((M + 2 + shift) / (M + 1 + shift)) ** (-sig)
    if rho >= 1.0:
        return math.inf
    return first / (1.0 - rho)


def polylog(s: complex, z: complex, b: TruncationBudget | None = None) -> CertifiedValue:
    """Li_s(z) = sum_{n>=1} z^n n^{-s} for |z| < 1, or |z| = 1 with Re s > 1."""
    b = b or TruncationBudget()
    real_input = (not isinstance(s, complex) or s.imag == 0) and (not isinstance(z, complex) or z.imag == 0)
    s, z = complex(s), complex(z)
    az = abs(z)
    if az > 1.0 + 1e-15:
        raise ValueError(f"polylog series needs |z| <= 1, got |z|={az}")
    if z == 0:
        return CertifiedValue(0.0 if real_input else 0j, 0.0)
    M = b.M
    n = np.arange(1, M + 1, dtype=float)
    if z.imag == 0.0:
        zn = np.exp(n * math.log(az))
        if z.real < 0:
            zn = np.where(n % 2 == 1, -zn, zn)
    else:
        zn = np.exp(n * cmath.log(z))
    partial = complex(np.sum(zn * _pow_terms(n, s)))
    sig = s.real
    if az < 1.0 - 1e-15:
        tail = _geometric_ratio_tail(az, sig, M)
    else:
        if not sig > 1.0:
            raise ValueError("on |z| = 1 the polylog series needs Re s > 1")
        tail = M ** (1 - sig) / (sig - 1)
        if abs(1 - z) > 1e-12:
            tail = min(tail, 2 * abs(s) * (M + 1) ** (-sig) / (sig * abs(1 - z)))
    return _finish(partial, tail, real_input, b, "polylog", M=M)


def dilog(x: float, b: TruncationBudget | None = None) -> CertifiedValue:
    """Li_2(x) for real 0 <= x < 1, via Euler's reflection when x > 1/2.

    Li_2(x) = pi^2/6 - log(x) log(1-x) - Li_2(1-x) keeps the series argument
    below 1/2 so the tail is tiny even for x close to 1.
    """
    if not 0.0 <= x < 1.0:
        raise ValueError(f"dilog needs 0 <= x < 1, got {x!r}")
    b = b or TruncationBudget(M=200, tail_tol=1e-14)
    if x <= 0.5:
        return polylog(2.0, x, b)
    inner = polylog(2.0, 1.0 - x, b)
    val = math.pi**2 / 6 - math.log(x) * math.log1p(-x) - inner.value
    return CertifiedValue(val, inner.tail_bound)


def eta(s: complex, b: TruncationBudget | None = None) -> CertifiedValue:
    """Dirichlet eta through (1 - 2^{1-s}) zeta(s), Re s > 1.05."""
    z = zeta(s, b)
    f = 1 - 2 ** (1 - complex(s))
    real_input = not isinstance(s, complex) or s.imag == 0
    v = f * complex(z.value)
    return CertifiedValue(v.real if real_input else v, abs(f) * z.tail_bound)


def eta_alternating(s: complex, b: TruncationBudget | None = None) -> CertifiedValue:
    """Dirichlet eta by its alternating series, Re s > 0."""
    b = b or TruncationBudget()
    real_input = not isinstance(s, complex) or s.imag == 0
    s = complex(s)
    sig = s.real
    if not sig > 0:
        raise ValueError("alternating eta series needs Re s > 0")
    N = b.M - (b.M % 2)
    n = np.arange(1, N + 1, dtype=float)
    signs = np.where(n % 2 == 1, 1.0, -1.0)
    partial = complex(np.sum(signs * _pow_terms(n, s)))
    tail = abs(s) * (N + 1) ** (-sig) / sig
    if real_input:
        tail = min(tail, (N + 1) ** (-sig))
    return _finish(partial, tail, real_input, b, "eta", N=N)


def eta_Q(s: complex, Q: float, b: TruncationBudget | None = None) -> CertifiedValue:
    """Weighted alternating eta sum_{n>=1} (-1)^{n-1} Q^{-n} n^{-s}, Q > 1."""
    if not Q > 1:
        raise ValueError(f"eta_Q needs Q > 1, got {Q!r}")
    b = b or TruncationBudget()
    real_input = not isinstance(s, complex) or s.imag == 0
    s = complex(s)
    M = b.M
    n = np.arange(1, M + 1, dtype=float)
    w = np.where(n % 2 == 1, 1.0, -1.0) * np.exp(-n * math.log(Q))
    partial = complex(np.sum(w * _pow_terms(n, s)))
    tail = _geometric_ratio_tail(1.0 / Q, s.real, M)
    return _finish(partial, tail, real_input, b, "eta_Q", M=M)


def hurwitz_zeta(s: complex, a: float, b: TruncationBudget | None = None, method: str = "em") -> CertifiedValue:
    """zeta(s, a) = sum_{k>=0} (k+a)^{-s} for Re s > 1.05 and 0 < a <= 1."""
    if not 0.0 < a <= 1.0:
        raise ValueError(f"Hurwitz parameter must lie in (0, 1], got {a!r}")
    _require_half_plane(s, what="Hurwitz zeta")
    b = b or TruncationBudget()
    real_input = not isinstance(s, complex) or s.imag == 0
    s = complex(s)
    N = b.M
    k = np.arange(0, N, dtype=float) + a
    partial = complex(np.sum(_pow_terms(k, s)))
    if method == "direct":
        tail = (N - 1 + a) ** (1 - s.real) / (s.real - 1)
        return _finish(partial, tail, real_input, b, "Hurwitz zeta", method="direct", N=N)
    if method != "em":
        raise ValueError(f"unknown method {method!r}")
    t, bound, _ = _em_tail(s, N + a)
    return _finish(partial + t, bound, real_input, b, "Hurwitz zeta", method="em", N=N)


def lerch_phi(z: complex, s: complex, a: float, b: TruncationBudget | None = None) -> CertifiedValue:
    """Lerch transcendent sum_{k>=0} z^k (k+a)^{-s} for |z| < 1, a > 0."""
    z = complex(z)
    if not abs(z) < 1:
        raise ValueError(f"Lerch series needs |z| < 1, got |z|={abs(z)}")
    if not a > 0:
        raise ValueError(f"Lerch parameter a must be positive, got {a!r}")
    b = b or TruncationBudget()
    s = complex(s)
    M = b.M
    k = np.arange(0, M + 1, dtype=float)
    if z == 0:
        return CertifiedValue(complex(a ** (-s)), 0.0)
    zk = np.exp(k * cmath.log(z))
    zk[0] = 1.0
    partial = complex(np.sum(zk * _pow_terms(k + a, s)))
    tail = _geometric_ratio_tail(abs(z), s.real, M, shift=a)
    return _finish(partial, tail, False, b, "Lerch phi", M=M)


# ---------------------------------------------------------------- characters


def _snap(v: complex) -> complex:
    re, im = v.real, v.imag
    if abs(re - round(re)) < 1e-14:
        re = float(round(re))
    if abs(im - round(im)) < 1e-14:
        im = float(round(im))
    return complex(re, im)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character stored as its value table on residues 0..m-1."""

    modulus: int
    values: tuple
    label: str = ""

    def __post_init__(self) -> None:
        m = self.modulus
        if len(self.values) != m:
            raise ValueError(f"character table must have {m} entries, got {len(self.values)}")
        for r, v in enumerate(self.values):
            coprime = math.gcd(r, m) == 1
            if coprime and abs(abs(complex(v)) - 1) > 1e-12:
                raise ValueError(f"chi({r}) must be a root of unity for gcd(r,m)=1")
            if not coprime and complex(v) != 0:
                raise ValueError(f"chi({r}) must vanish since gcd({r},{m}) > 1")
        for r1 in range(m):
            for r2 in range(m):
                lhs = complex(self.values[(r1 * r2) % m])
                if abs(lhs - complex(self.values[r1]) * complex(self.values[r2])) > 1e-12:
                    raise ValueError(f"table is not multiplicative at ({r1},{r2})")

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    @property
    def is_real(self) -> bool:
        return all(complex(v).imag == 0 for v in self.values)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(complex(v).conjugate() for v in self.values),
                                  self.label + "*")

    @classmethod
    def principal(cls, m: int) -> "DirichletCharacter":
        return cls(m, tuple(1 if math.gcd(r, m) == 1 else 0 for r in range(m)), f"chi0 mod {m}")

    @classmethod
    def chi4(cls) -> "DirichletCharacter":
        return cls(4, (0, 1, 0, -1), "chi4")


def _component_logs(p: int, k: int) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    """Orders of generators of (Z/p^k)^x and the discrete-log coordinates of each unit."""
    pk = p**k
    if p == 2:
        if k == 1:
            return [], {1: ()}
        if k == 2:
            return [2], {1: (0,), 3: (1,)}
        half = 2 ** (k - 2)
        logs = {}
        for a_ in range(2):
            for b_ in range(half):
                logs[((-1) ** a_ * pow(5, b_, pk)) % pk] = (a_, b_)
        return [2, half], logs
    phi = pk - pk // p
    g = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1)))
    if k > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    logs, x = {}, 1
    for e in range(phi):
        logs[x] = (e,)
        x = x * g % pk
    return [phi], logs


@lru_cache(maxsize=32)
def characters_mod(m: int) -> tuple[DirichletCharacter, ...]:
    """All phi(m) Dirichlet characters modulo m, built through CRT coordinates."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return (DirichletCharacter(1, (1,), "chi0 mod 1"),)
    comps = [(p, k, *_component_logs(p, k)) for p, k in sorted(factorize(m).items())]
    orders = [o for _, _, ords, _ in comps for o in ords]
    coords: dict[int, tuple[int, ...]] = {}
    for r in range(m):
        if math.gcd(r, m) != 1:
            continue
        c: tuple[int, ...] = ()
        for p, k, _, logs in comps:
            c += logs[r % p**k]
        coords[r] = c
    chars = []
    for idx in itertools.product(*(range(o) for o in orders)):
        vals = []
        for r in range(m):
            if r not in coords:
                vals.append(0)
                continue
            phase = sum(j * e / o for j, e, o in zip(idx, coords[r], orders))
            vals.append(_snap(cmath.exp(2j * math.pi * phase)))
        chars.append(DirichletCharacter(m, tuple(vals), f"chi{idx} mod {m}"))
    return tuple(chars)


def gauss_sum(chi: DirichletCharacter, a: int) -> complex:
    """sum_{t mod m} chi(t) e^{-2 pi i a t/m} (negative-phase convention)."""
    m = chi.modulus
    return sum(complex(chi(t)) * cmath.exp(-2j * math.pi * a * t / m) for t in range(m))


def dirichlet_L(s: complex, chi: DirichletCharacter, b: TruncationBudget | None = None) -> CertifiedValue:
    """L(s, chi) = m^{-s} sum_{r=1}^m chi(r) zeta(s, r/m), Re s > 1.05."""
    m = chi.modulus
    ms = complex(m) ** (-complex(s))
    val, tail = 0j, 0.0
    for r in range(1, m + 1):
        c = complex(chi(r))
        if c == 0:
            continue
        h = hurwitz_zeta(s, r / m, b)
        val += c * complex(h.value)
        tail += h.tail_bound
    return CertifiedValue(ms * val, abs(ms) * tail)
