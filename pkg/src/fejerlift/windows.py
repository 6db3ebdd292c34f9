"""Real-zero analysis of the prime indicators inside prime windows (p-1, p).

Two families of results live here:

* zero-free certificates for the tangent-matched indicator F#: explicit
  constants (Sigma, Lambda_sin, C'_sin, C''_sin, K0, C3tot, delta_sin,
  alpha, P0), a three-window analytic check and a conservative grid scan,
  plus the multiplicity-two contact at p;
* companion zeros of the plain indicator F: a real zero just left of each
  prime at distance Delta_p ~ (log q / K(q,p)) q^{-p}, located in extended
  precision with mpmath.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

import mpmath
import numpy as np

from .arith import is_prime
from .budget import CertifiedValue, TruncationBudget
from .indicator import RegimeQ, indicator_Fsharp
from .kernel import phi_deriv, phi_grid
from .special import dilog

__all__ = [
    "WindowConstants",
    "WindowCheck",
    "BoundaryContact",
    "WindowReport",
    "CompanionZero",
    "BracketError",
    "UniquenessCertificate",
    "compute_constants",
    "curvature_K",
    "third_deriv_budget",
    "local_third_derivative_constant",
    "conservative_lower_eval",
    "conservative_lower_eval_grid",
    "verify_window",
    "find_companion",
    "uniqueness_certificate",
    "threshold_P0",
]

PI = math.pi


def _check_q(q: float) -> float:
    if isinstance(q, complex) or not float(q) > 1:
        raise ValueError(f"window analysis needs real q > 1, got {q!r}")
    return float(q)


def _check_prime(p: int, least: int = 5) -> int:
    if int(p) != p or not is_prime(int(p)) or p < least:
        raise ValueError(f"p must be a prime >= {least}, got {p!r}")
    return int(p)


@dataclass(frozen=True)
class WindowConstants:
    q: float
    Sigma: float
    LambdaSin: float
    CprimeSin: float
    CdblprimeSin: float
    K0: float
    C3tot: float
    deltaSin: float
    alpha: float
    P0: float

    def to_dict(self) -> dict:
        return asdict(self)


def _cprime(q: float) -> float:
    lam = math.log(q)
    return 0.5 * (
        PI**2 / 2 * q**-2 + 8 * PI**2 / 27 * q**-3 + PI**2 / 4 * q**-4
        - (2 * PI**2 / 3 + lam**2) * q**-5
    )


def _cdblprime(q: float) -> float:
    return 0.5 * (
        PI**2 / 2 * q**-2 + 8 * PI**2 / 27 * q**-3 + PI**2 / 4 * q**-4
        + PI**2 / 2 * q**-5 + PI**2 / 2 * q**-6
    ) + (PI**2 / 4) * q**-7 / (1 - 1 / q)


def _p0(q: float, alpha: float, Lam: float, Sigma: float) -> float:
    lq = math.log(q)
    left = 3 + math.log(Lam / math.cos(PI * alpha / 2) ** 2) / lq
    middle = 1 + alpha + math.log(Lam / (math.sin(PI * alpha) ** 2 * Sigma)) / lq
    return max(left, middle, 5.0)


def compute_constants(q: float, digits: int = 15) -> WindowConstants:
    """Constants of the zero-free window argument at q > 1.

    ``digits`` is accepted for interface symmetry; every constant is a
    closed form evaluated in binary64 (Sigma to about 1e-16).
    """
    q = _check_q(q)
    lam = math.log(q)
    Sigma = dilog(1.0 / q).value - 1.0 / q
    Lam = 1.0 + lam / (2 * PI)
    c1, c2 = _cprime(q), _cdblprime(q)
    K0 = c1 / 2
    C3 = 4 * PI**3 * q**-2 / (1 - 1 / q) + lam**3 * (4 + lam / (2 * PI)) + 6 * PI * lam**2 + 4 * PI**2 * lam
    delta = min(1.0, 3 * K0 / C3)
    alpha = min(0.25, delta / 2)
    return WindowConstants(q, Sigma, Lam, c1, c2, K0, C3, delta, alpha, _p0(q, alpha, Lam, Sigma))


def threshold_P0(q: float, alpha: Optional[float] = None) -> float:
    """P0(q) with the standard alpha(q); a caller-chosen alpha gives P0(q, alpha)."""
    c = compute_constants(q)
    if alpha is None:
        return c.P0
    if not 0 < alpha <= 0.5:
        raise ValueError("alpha must lie in (0, 1/2]")
    return _p0(c.q, alpha, c.LambdaSin, c.Sigma)


def curvature_K(q: float, p: int, b: TruncationBudget) -> CertifiedValue:
    """K(q,p) = (sum_{i>=2} q^{-i} phi_i''(p) - q^{-p} log(q)^2)/2, truncated at M.

    Tail: |phi_i''(p)| <= pi^2/2 for i not dividing p gives
    (pi^2/4) q^{-(M+1)}/(1-1/q); if M < p the omitted i = p term adds
    at most (pi^2/12) q^{-p} on top.
    """
    q = _check_q(q)
    p = _check_prime(p)
    M = b.M
    terms = [q ** (-i) * phi_deriv(p, i, 2) for i in range(2, M + 1)]
    value = 0.5 * (math.fsum(terms) - q ** (-p) * math.log(q) ** 2)
    tail = (PI**2 / 4) * q ** (-(M + 1)) / (1 - 1 / q)
    if M < p:
        tail += (PI**2 / 12) * q ** (-p)
    b.check(tail, "curvature K")
    return CertifiedValue(value, tail)


@lru_cache(maxsize=64)
def local_third_derivative_constant(alpha: float, p: int = 5, samples: int = 401) -> float:
    """2 * max_{|x-p|<=alpha} |phi_p'''(x)| on a grid (x2 safety factor)."""
    xs = np.linspace(p - alpha, p + alpha, samples)
    return 2.0 * max(abs(phi_deriv(float(x), p, 3)) for x in xs)


def third_deriv_budget(q: float, alpha: float) -> float:
    """Upper bound on the third derivative of the Fejér sum within alpha of a prime."""
    q = _check_q(q)
    if not 0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2], got {alpha!r}")
    B = 1.0 / (2.0 - PI * alpha)
    far = PI**3 / (q - 1) * (4 * B**2 + 12 * B**3 + 18 * B**4 + 24 * B**5)
    return far + local_third_derivative_constant(float(alpha)) * q**-5


def _floor_tail(q: float, M: int) -> float:
    return q ** (-(M + 1)) / ((M + 1) ** 2 * (1 - 1 / q))


def conservative_lower_eval(x: float, q: float, M: int) -> float:
    """Lower bound on F#(x,q) for real x.

    All Fejér terms are nonnegative on the real line, so the partial sum
    already underestimates S_q; the tail term is subtracted on top and the
    corrector is bounded above by q^{-x}(1 + log(q)|S_1(x)|).
    """
    return float(conservative_lower_eval_grid(np.array([float(x)]), q, M)[0])


def conservative_lower_eval_grid(xs: np.ndarray, q: float, M: int) -> np.ndarray:
    q = _check_q(q)
    xs = np.asarray(xs, dtype=float)
    i = np.arange(2, M + 1)
    w = np.exp(-i * math.log(q))
    S = phi_grid(xs, i) @ w
    lam = math.log(q)
    corr = np.exp(-xs * lam) * (1 + lam * np.abs(np.sin(2 * PI * xs) / (2 * PI)))
    return (q - 1) * q * (S - _floor_tail(q, M) - corr)


def _default_M(q: float, p: int) -> int:
    return max(p + 2, math.ceil(40 * math.log(10) / math.log(q)))


@dataclass(frozen=True)
class WindowCheck:
    name: str
    interval: tuple
    analytic_lower_bound: float
    analytic_positive: bool
    grid_min: float
    grid_points: int
    verdict: str


@dataclass(frozen=True)
class BoundaryContact:
    h: float
    second_difference: float
    expected: float
    relative_error: float
    first_difference: float
    verdict: str


@dataclass(frozen=True)
class WindowReport:
    p: int
    q: float
    alpha: float
    P0: float
    windows: tuple
    boundary_contact: BoundaryContact
    verdict: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type"] = "window"
        return d

    @property
    def outcome(self) -> str:
        if self.verdict == "zero-free":
            return "pass"
        if self.verdict.startswith("below threshold"):
            return "withheld"
        return "fail"


def _window_grid(lo: float, hi: float, step: float, include_lo: bool, include_hi: bool) -> np.ndarray:
    n = max(1, int(math.floor((hi - lo) / step)))
    pts = list(lo + step * np.arange(1, n + 1))
    pts += [(lo + hi) / 2]
    if include_lo:
        pts.append(lo)
    if include_hi:
        pts.append(hi)
    arr = np.unique(np.array(pts))
    keep = (arr > lo) | (include_lo & (arr == lo))
    keep &= (arr < hi) | (include_hi & (arr == hi))
    return arr[keep]


def verify_window(p: int, q: float, c: Optional[WindowConstants] = None, grid_step: float = 1e-3,
                  M: Optional[int] = None, h: float = 1e-4) -> WindowReport:
    """Three-window zero-free check for F# on (p-1, p) plus the contact order at p."""
    q = _check_q(q)
    p = _check_prime(p)
    if p % 2 == 0:
        raise ValueError("p must be odd")
    if not grid_step > 0:
        raise ValueError("grid_step must be positive")
    c = c or compute_constants(q)
    if c.q != q:
        raise ValueError("window constants were computed for a different q")
    M = M or _default_M(q, p)
    a = c.alpha
    pref = (q - 1) * q
    below = p < c.P0

    left_bound = pref * (q**-2 * math.cos(PI * a / 2) ** 2 - q ** (-(p - 1)) * c.LambdaSin)
    mid_bound = pref * (math.sin(PI * a) ** 2 * c.Sigma - q ** (-(p - 1 + a)) * c.LambdaSin)
    right_ok = a <= c.deltaSin and c.K0 > 0
    right_bound = pref * (c.K0 / 2) * a**2
    specs = [
        ("left", (p - 1, p - 1 + a), left_bound, left_bound > 0, (False, True)),
        ("middle", (p - 1 + a, p - a), mid_bound, mid_bound > 0, (True, True)),
        ("right", (p - a, p), right_bound, right_ok and right_bound > 0, (True, False)),
    ]
    checks = []
    for name, (lo, hi), bound, ok, (inc_lo, inc_hi) in specs:
        xs = _window_grid(lo, hi, grid_step, inc_lo, inc_hi)
        floor = conservative_lower_eval_grid(xs, q, M)
        gmin = float(np.min(floor))
        if below:
            verdict = "withheld (grid positive)" if gmin > 0 else "withheld (grid not positive)"
        else:
            verdict = "zero-free" if ok and gmin > 0 else "not certified"
        checks.append(WindowCheck(name, (lo, hi), bound, bool(ok), gmin, int(xs.size), verdict))

    rq = RegimeQ(q, "real_gt1")
    bb = TruncationBudget(M=M, tail_tol=1e-20)
    fp = indicator_Fsharp(p + h, rq, bb).value
    f0 = indicator_Fsharp(p, rq, bb).value
    fm = indicator_Fsharp(p - h, rq, bb).value
    second = (fp - 2 * f0 + fm) / h**2
    first = (fp - fm) / (2 * h)
    K = curvature_K(q, p, bb.with_M(max(M, p + 2))).value
    expected = 2 * pref * K
    rel = abs(second - expected) / abs(expected)
    contact = BoundaryContact(h, second, expected, rel, first,
                              "multiplicity-two" if rel <= 0.2 and abs(first) <= 1e-6 else "undetermined")
    if below:
        verdict = "below threshold: analytic certificate not applicable"
    elif all(ch.verdict == "zero-free" for ch in checks) and contact.verdict == "multiplicity-two":
        verdict = "zero-free"
    else:
        verdict = "not certified"
    return WindowReport(p, q, a, c.P0, tuple(checks), contact, verdict)


# ------------------------------------------------------------------ companion zeros


class BracketError(RuntimeError):
    def __init__(self, message: str, trace: list):
        super().__init__(f"bracket failed: {message}")
        self.trace = trace


@dataclass(frozen=True)
class CompanionZero:
    p: int
    q: float
    digits: int
    bracket: tuple
    x_p: str
    Delta: float
    log_Delta: float
    newton_iters: int
    residual: float
    scale: float
    zero_count_on_grid: int
    K: float
    ratio: float  # Delta q^p K / log q

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type"] = "companion"
        return d


class _MpIndicator:
    """F(p + eta, q) and its derivative in mpmath, parametrized by the offset eta."""

    def __init__(self, p: int, q: float, digits: int):
        self.p = p
        self.q = mpmath.mpf(q)
        self.lam = mpmath.log(self.q)
        self.pref = (self.q - 1) * self.q
        # dropped terms stay below 10^{-digits-5} q^{-p}, far under the values compared near the root
        M = math.ceil((digits + p * math.log10(q) + 5) / math.log10(q)) + 2
        self.items = []
        for i in range(2, M + 1):
            k = round(p / i)
            self.items.append((i, p - i * k, self.q ** (-i)))

    def _phi_and_d(self, i: int, e):
        if e == 0:
            return mpmath.mpf(1), mpmath.mpf(0)
        pe = mpmath.pi * e
        s, cs = mpmath.sin(pe), mpmath.cos(pe)
        t, ct = mpmath.sin(pe / i), mpmath.cos(pe / i)
        ratio = s / (i * t)
        dratio = (mpmath.pi * cs * t - s * (mpmath.pi / i) * ct) / (i * t * t)
        return ratio * ratio, 2 * ratio * dratio

    def value(self, eta, with_derivative: bool = False):
        S, dS = [], []
        for i, r, w in self.items:
            ph, dph = self._phi_and_d(i, r + eta)
            S.append(w * ph)
            if with_derivative:
                dS.append(w * dph)
        corr = self.q ** (-(self.p + eta))
        val = self.pref * (mpmath.fsum(S) - corr)
        if not with_derivative:
            return val
        return val, self.pref * (mpmath.fsum(dS) + self.lam * corr)


def find_companion(p: int, q: float, digits: Optional[int] = None, grid_points: int = 10_000,
                   max_newton: int = 20) -> CompanionZero:
    """Locate the real zero of F(., q) in (p-1, p) closest to p.

    The working precision is raised automatically to at least
    p log10(q) + 10 digits.  The bracket starts from the Newton probe
    x0 = p - (log q / K) q^{-p}, bisection narrows it to 10^{-digits+5}, and
    Newton steps (kept inside the bracket) finish the refinement.
    """
    q = _check_q(q)
    p = _check_prime(p)
    if p % 2 == 0:
        raise ValueError("p must be odd")
    need = math.ceil(p * math.log10(q)) + 10
    digits = max(digits or 0, need, 15)
    dps = digits + 2 * math.ceil(p * math.log10(q)) + 10
    K = curvature_K(q, p, TruncationBudget(M=_default_M(q, p), tail_tol=1e-20)).value
    lam = math.log(q)
    trace: list = []
    with mpmath.workdps(dps):
        F = _MpIndicator(p, q, digits)
        d0 = mpmath.mpf(lam / K) * F.q ** (-p)
        lo, hi = -2 * d0, -d0 / 2
        one = mpmath.mpf(1)
        for _ in range(200):
            flo, fhi = F.value(lo), F.value(hi)
            trace.append((float(lo), float(flo), float(hi), float(fhi)))
            if flo > 0 and fhi < 0:
                break
            if flo <= 0:
                lo = max(2 * lo, -one + mpmath.mpf(10) ** (-dps // 2))
            if fhi >= 0:
                hi = hi / 2
        else:
            raise BracketError(f"no sign change found near p={p}, q={q}", trace)
        bracket = (p + float(lo), p + float(hi))
        width = mpmath.mpf(10) ** (-digits + 5)
        while hi - lo > width:
            mid = (lo + hi) / 2
            if F.value(mid) > 0:
                lo = mid
            else:
                hi = mid
        eta = (lo + hi) / 2
        scale = F.pref * F.q ** (-p)
        iters = 0
        target = mpmath.mpf(10) ** (-dps + 10) * scale
        for _ in range(max_newton):
            val, der = F.value(eta, with_derivative=True)
            if abs(val) <= target or der == 0:
                break
            new = eta - val / der
            if not lo <= new <= hi:
                new = (lo + hi) / 2
            if val > 0:
                lo = eta
            else:
                hi = eta
            eta = new
            iters += 1
        residual = abs(F.value(eta))
        Delta = -eta
        x_p = mpmath.nstr(p + eta, digits, strip_zeros=False)
        count = _count_sign_changes(F, p, q, float(d0), grid_points)
        return CompanionZero(
            p=p, q=q, digits=digits, bracket=bracket, x_p=x_p, Delta=float(Delta),
            log_Delta=float(mpmath.log(Delta)), newton_iters=iters, residual=float(residual),
            scale=float(scale), zero_count_on_grid=count, K=K,
            ratio=float(Delta * F.q**p * K / lam),
        )


def _count_sign_changes(F: _MpIndicator, p: int, q: float, d0: float, grid_points: int) -> int:
    """Sign changes of F on (p-1, p).

    A uniform binary64 grid covers the bulk of the window; since the
    companion zero sits about q^{-p} from p, a geometric grid refining
    towards p is evaluated in extended precision.
    """
    step = 1.0 / (grid_points + 1)
    etas = -1.0 + step * np.arange(1, grid_points + 1)
    i = np.arange(2, _default_M(q, p) + 1)
    xs = p + etas
    S = phi_grid(xs, i) @ np.exp(-i * math.log(q))
    uniform = (q - 1) * q * (S - np.exp(-xs * math.log(q)))
    near_lo = min(step, 1e-4)
    geo = -np.geomspace(near_lo, max(d0 * 1e-3, 1e-300), 60)
    fine = [float(mpmath.sign(F.value(mpmath.mpf(float(e))))) for e in geo]
    signs = [s for e, s in zip(etas, np.sign(uniform)) if e < -near_lo] + fine
    signs = [s for s in signs if s != 0]
    return int(sum(1 for a, b in zip(signs, signs[1:]) if a != b))


# ------------------------------------------------------------------ uniqueness


@dataclass(frozen=True)
class UniquenessCertificate:
    p: int
    q: float
    alpha: float
    inequalities: dict
    verdict: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type"] = "uniqueness"
        return d


def uniqueness_certificate(p: int, q: float, alpha: float) -> UniquenessCertificate:
    """Evaluate the three sufficient conditions (L0), (M0), (C0) for a unique companion zero."""
    q = _check_q(q)
    p = _check_prime(p)
    if not 0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    c = compute_constants(q)
    lam = math.log(q)
    Kc = curvature_K(q, p, TruncationBudget(M=_default_M(q, p), tail_tol=1e-20))
    K_low = Kc.value - Kc.tail_bound
    T3 = third_deriv_budget(q, alpha)
    ineq = {
        "L0": {"lhs": math.cos(PI * alpha / 2) ** 2, "rhs": q**-2},
        "M0": {"lhs": math.sin(PI * alpha) ** 2 * c.Sigma, "rhs": q ** (-4 - alpha)},
        "C0": {"lhs": alpha, "rhs": K_low / (T3 + lam**3 * q ** (-p))},
    }
    for name, d in ineq.items():
        d["holds"] = bool(d["lhs"] >= d["rhs"]) if name != "C0" else bool(d["lhs"] <= d["rhs"])
    failing = [k for k, d in ineq.items() if not d["holds"]]
    verdict = "unique zero certified" if not failing else "not certified: fails " + ", ".join(failing)
    return UniquenessCertificate(p, q, alpha, ineq, verdict)
