"""Dirichlet-series identity checks and the explicit formula for psi.

Each ``verify_*`` function evaluates both sides of an identity as certified
values and returns a :class:`SeriesCheck`; the verdict is computed as
``gap <= budget_gap + slack`` and never assumed.  Left-hand sides are
Dirichlet series of integer data summed to a cutoff N, with the discarded
part bounded through

    sum_{n>N} n^{-sigma} sum_{d|n, n/d >= m_min} |w(d)|
        = sum_d |w(d)| d^{-sigma} T(max(m_min, floor(N/d)+1)),

where T(m0) = m0^{-sigma} + m0^{1-sigma}/(sigma-1) bounds sum_{m>=m0} m^{-sigma}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .arith import chebyshev_psi, von_mangoldt
from .budget import CertifiedValue, TruncationBudget, product_bound
from .lift import WeightSpec, lift_integer_table, weight_dirichlet_series
from .special import (
    ETA_AT_1,
    characters_mod,
    dirichlet_L,
    eta,
    eta_alternating,
    eta_Q,
    gauss_sum,
    hurwitz_zeta,
    lerch_phi,
    polylog,
    zeta,
    zeta_prime,
)

__all__ = [
    "DEFAULT_SLACK",
    "SeriesCheck",
    "ZetaZeroTable",
    "ZerosFileError",
    "load_zeros",
    "default_zeros_path",
    "verify_polylog_zeta",
    "verify_qminus1",
    "verify_qnegQ",
    "verify_lerch_bridge",
    "verify_lerch_characters",
    "verify_lerch_deformation",
    "verify_lift_factorization",
    "verify_zeta_zeta_prime",
    "verify_eta_paths",
    "verify_eta_at_one",
    "reconstruct_zeta",
    "explicit_formula_psi",
    "ExplicitFormulaResult",
]

DEFAULT_SLACK = 1e-8


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


@dataclass(frozen=True)
class SeriesCheck:
    identity_name: str
    s: complex
    params: dict
    lhs: CertifiedValue
    rhs: CertifiedValue
    gap: float
    budget_gap: float
    slack: float
    verdict: bool

    @property
    def outcome(self) -> str:
        return "pass" if self.verdict else "fail"

    def to_dict(self) -> dict:
        return {
            "type": "series_check",
            "identity_name": self.identity_name,
            "s": _jsonable(complex(self.s)),
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "gap": self.gap,
            "budget_gap": self.budget_gap,
            "slack": self.slack,
            "verdict": self.outcome,
        }


def _check(name: str, s, params: dict, lhs: CertifiedValue, rhs: CertifiedValue,
           slack: float = DEFAULT_SLACK) -> SeriesCheck:
    gap = abs(complex(lhs.value) - complex(rhs.value))
    budget = lhs.tail_bound + rhs.tail_bound
    return SeriesCheck(name, complex(s), params, lhs, rhs, gap, budget, slack, bool(gap <= budget + slack))


def _require_sigma(s) -> float:
    sig = complex(s).real
    if not sig > 1:
        raise ValueError(f"identity checks run only for Re s > 1, got s={s!r}")
    return sig


# ------------------------------------------------------------------ LHS machinery


def _T(m0: np.ndarray | float, sig: float):
    return m0 ** (-sig) + m0 ** (1 - sig) / (sig - 1)


def _divisor_tail(N: int, sig: float, wabs: np.ndarray, beyond: float, m_min: int) -> float:
    """Bound on sum_{n>N} n^{-sigma} sum_{d|n, n/d>=m_min} |w(d)|.

    ``wabs[d-1] = |w(d)|`` for d = 1..N and ``beyond`` bounds
    sum_{d>N} |w(d)| d^{-sigma}.
    """
    d = np.arange(1, N + 1, dtype=float)
    m0 = np.maximum(m_min, np.floor(N / d) + 1)
    body = float(np.sum(wabs * d ** (-sig) * _T(m0, sig)))
    return body + _T(float(m_min), sig) * beyond


def _dirichlet_sum(values: np.ndarray, s: complex) -> complex:
    n = np.arange(1, values.size + 1, dtype=float)
    s = complex(s)
    ns = n ** (-s.real) if s.imag == 0 else np.exp(-s * np.log(n))
    return complex(np.sum(values * ns))


def _divisor_sieve(w: np.ndarray, m_min: int) -> np.ndarray:
    """out[n-1] = sum_{d|n, n/d >= m_min} w[d-1]."""
    N = w.size
    out = np.zeros(N + 1, dtype=w.dtype)
    for d in range(1, N + 1):
        if w[d - 1] != 0:
            out[m_min * d :: d] += w[d - 1]
    return out[1:]


def _geometric_weights(q: complex, N: int) -> np.ndarray:
    d = np.arange(1, N + 1)
    if isinstance(q, complex) and q.imag != 0:
        w = np.exp(-d * cmath.log(q))
    else:
        qr = float(complex(q).real)
        w = np.exp(-d * math.log(abs(qr)))
        if qr < 0:
            w = np.where(d % 2 == 1, -w, w)
    w[0] = 0
    return w


def _indicator_lhs(q, s, N: int, variant: str) -> CertifiedValue:
    """sum_{n<=N} F(n,q) n^{-s} (variant "F") or the S_q-sum variant "S", with tail bound."""
    sig = complex(s).real
    m_min = 2 if variant == "F" else 1
    w = _geometric_weights(q, N)
    pref = (complex(q) - 1) * complex(q)
    vals = pref * _divisor_sieve(w, m_min)
    R = abs(complex(q))
    wabs = np.abs(w)
    if R > 1:
        beyond = R ** (-(N + 1)) * (N + 1) ** (-sig) / (1 - 1 / R)
    else:
        beyond = _T(float(N + 1), sig)
    tail = abs(pref) * _divisor_tail(N, sig, wabs, beyond, m_min)
    return CertifiedValue(_dirichlet_sum(vals, s), tail, meta={"N": N})


def _minus_one(c: CertifiedValue) -> CertifiedValue:
    return CertifiedValue(complex(c.value) - 1, c.tail_bound)


def _times(x: CertifiedValue, y: CertifiedValue, scale: complex = 1) -> CertifiedValue:
    return CertifiedValue(scale * complex(x.value) * complex(y.value), abs(scale) * product_bound(x, y))


# ------------------------------------------------------------------ factorization checks


def _regime_budget(b: Optional[TruncationBudget], tail_tol: float = 1e-3) -> TruncationBudget:
    return b or TruncationBudget(M=2000, tail_tol=tail_tol)


def verify_polylog_zeta(q, s, N: int = 10_000, b: Optional[TruncationBudget] = None,
                        variant: str = "F", slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum F(n,q) n^{-s} = (q-1) q (zeta(s)-1)(Li_s(1/q) - 1/q) for |q| > 1.

    ``variant="S"`` checks the S_q line, where zeta(s) - 1 becomes zeta(s).
    """
    if variant not in ("F", "S"):
        raise ValueError("variant must be 'F' or 'S'")
    qc = complex(q)
    if not abs(qc) > 1:
        raise ValueError(f"|q| > 1 required, got q={q!r}")
    _require_sigma(s)
    b = _regime_budget(b)
    lhs = _indicator_lhs(q, s, N, variant)
    z = zeta(s, b, margin=0.0)
    li = polylog(s, 1 / qc, b)
    li_shift = CertifiedValue(complex(li.value) - 1 / qc, li.tail_bound)
    first = _minus_one(z) if variant == "F" else z
    rhs = _times(first, li_shift, (qc - 1) * qc)
    name = "polylog-zeta" if variant == "F" else "polylog-zeta-S"
    return _check(name, s, {"q": q, "N": N}, lhs, rhs, slack)


def reconstruct_zeta(q, s, N: int = 10_000, b: Optional[TruncationBudget] = None,
                     slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """zeta(s) recovered as sum S-series / ((q-1) q (Li_s(1/q) - 1/q)) against zeta(s)."""
    qc = complex(q)
    if not abs(qc) > 1:
        raise ValueError(f"|q| > 1 required, got q={q!r}")
    _require_sigma(s)
    b = _regime_budget(b)
    num = _indicator_lhs(q, s, N, "S")
    li = polylog(s, 1 / qc, b)
    den_v = (qc - 1) * qc * (complex(li.value) - 1 / qc)
    den_t = abs((qc - 1) * qc) * li.tail_bound
    if abs(den_v) <= den_t:
        raise ArithmeticError("denominator not separated from zero within its tail bound")
    x = complex(num.value) / den_v
    err = (num.tail_bound + abs(x) * den_t) / (abs(den_v) - den_t)
    lhs = CertifiedValue(x, err)
    rhs = zeta(s, b, margin=0.0)
    return _check("zeta-reconstruction", s, {"q": q, "N": N}, lhs, rhs, slack)


def verify_qminus1(s, N: int = 10_000, b: Optional[TruncationBudget] = None,
                   slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum F(n,-1) n^{-s} = 2 (zeta(s)-1)(1 - eta(s)), using the exact integer values at q = -1."""
    _require_sigma(s)
    b = _regime_budget(b)
    lhs = _indicator_lhs(-1, s, N, "F")
    z = zeta(s, b, margin=0.0)
    f = 1 - 2 ** (1 - complex(s))
    one_minus_eta = CertifiedValue(1 - f * complex(z.value), abs(f) * z.tail_bound)
    rhs = _times(_minus_one(z), one_minus_eta, 2)
    return _check("qminus1", s, {"q": -1, "N": N}, lhs, rhs, slack)


def verify_qnegQ(Q: float, s, N: int = 10_000, b: Optional[TruncationBudget] = None,
                 slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum F(n,-Q) n^{-s} = Q(Q+1)(zeta(s)-1)(1/Q - eta_Q(s)) for Q > 1."""
    if not Q > 1:
        raise ValueError(f"Q > 1 required, got {Q!r}")
    _require_sigma(s)
    b = _regime_budget(b)
    lhs = _indicator_lhs(-float(Q), s, N, "F")
    z = zeta(s, b, margin=0.0)
    e = eta_Q(s, Q, b)
    second = CertifiedValue(1 / Q - complex(e.value), e.tail_bound)
    rhs = _times(_minus_one(z), second, Q * (Q + 1))
    return _check("qnegQ", s, {"Q": Q, "N": N}, lhs, rhs, slack)


# ------------------------------------------------------------------ unit circle and Lerch


def _hurwitz_combination(m: int, a: int, s, b: TruncationBudget, residues) -> CertifiedValue:
    s = complex(s)
    ms = complex(m) ** (-s)
    val, tail = 0j, 0.0
    for r in residues:
        h = hurwitz_zeta(s, r / m, b)
        val += cmath.exp(-2j * math.pi * a * r / m) * complex(h.value)
        tail += h.tail_bound
    return CertifiedValue(ms * val, abs(ms) * tail)


def _direct_unit_circle(m: int, a: int, s, b: TruncationBudget) -> CertifiedValue:
    z = cmath.exp(-2j * math.pi * a / m) if a % m else 1.0
    return polylog(s, z, b)


def _check_residue(m: int, a: int) -> None:
    if int(m) != m or m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m!r}")
    if int(a) != a or not 0 <= a < m:
        raise ValueError(f"residue a must lie in 0..m-1, got {a!r}")


def verify_lerch_bridge(m: int, a: int, s, b: Optional[TruncationBudget] = None,
                        slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum e^{-i theta n} n^{-s} = m^{-s} sum_{r=1}^m e^{-2 pi i a r/m} zeta(s, r/m), theta = 2 pi a/m."""
    _check_residue(m, a)
    _require_sigma(s)
    b = b or TruncationBudget(M=20_000, tail_tol=1e-2)
    lhs = _direct_unit_circle(m, a, s, b)
    rhs = _hurwitz_combination(m, a, s, b, range(1, m + 1))
    return _check("lerch-bridge", s, {"m": m, "a": a}, lhs, rhs, slack)


def verify_lerch_characters(m: int, a: int, s, b: Optional[TruncationBudget] = None,
                            slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """Direct unit-circle sum against the Gauss-sum/L-function decomposition.

    Coprime residues give (1/phi(m)) sum_chi tau(conj chi, a) L(s, chi); the
    residues sharing a factor with m are added back through Hurwitz zeta.
    """
    _check_residue(m, a)
    _require_sigma(s)
    b = b or TruncationBudget(M=20_000, tail_tol=1e-2)
    lhs = _direct_unit_circle(m, a, s, b)
    chars = characters_mod(m)
    val, tail = 0j, 0.0
    for chi in chars:
        L = dirichlet_L(s, chi, b)
        tau = gauss_sum(chi.conjugate(), a)
        val += tau * complex(L.value)
        tail += abs(tau) * L.tail_bound
    phi_m = len(chars)
    rest = _hurwitz_combination(m, a, s, b, [r for r in range(1, m + 1) if math.gcd(r, m) > 1])
    rhs = CertifiedValue(val / phi_m + complex(rest.value), tail / phi_m + rest.tail_bound)
    return _check("lerch-characters", s, {"m": m, "a": a}, lhs, rhs, slack)


def verify_lerch_deformation(R: float, m: int, a: int, s, b: Optional[TruncationBudget] = None,
                             slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """Li_s(1/q) = m^{-s} sum_{r=1}^m e^{-2 pi i a r/m} R^{-r} Phi(R^{-m}, s, r/m), q = R e^{2 pi i a/m}."""
    if not R > 1:
        raise ValueError(f"R > 1 required, got {R!r}")
    _check_residue(m, a)
    b = b or TruncationBudget(M=2000, tail_tol=1e-6)
    q = R * cmath.exp(2j * math.pi * a / m)
    lhs = polylog(s, 1 / q, b)
    sc = complex(s)
    ms = complex(m) ** (-sc)
    val, tail = 0j, 0.0
    for r in range(1, m + 1):
        ph = lerch_phi(R ** (-m), s, r / m, b)
        c = cmath.exp(-2j * math.pi * a * r / m) * R ** (-r)
        val += c * complex(ph.value)
        tail += abs(c) * ph.tail_bound
    rhs = CertifiedValue(ms * val, abs(ms) * tail)
    return _check("lerch-deformation", s, {"R": R, "m": m, "a": a}, lhs, rhs, slack)


# ------------------------------------------------------------------ lifts and spectral derivative


def verify_lift_factorization(w: WeightSpec, s, N: int = 10_000, b: Optional[TruncationBudget] = None,
                              slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum (a*1)(n) n^{-s} = zeta(s) A(s)."""
    sig = _require_sigma(s)
    if not sig > w.dirichlet_abscissa():
        raise ValueError("s lies outside the absolute-convergence half-plane of A(s)")
    b = _regime_budget(b)
    vals = lift_integer_table(w, N)
    wabs = np.abs(w.weights_array(N))
    tail = _divisor_tail(N, sig, wabs, w.dirichlet_tail(N, sig), 1)
    lhs = CertifiedValue(_dirichlet_sum(vals, s), tail, meta={"N": N})
    rhs = _times(zeta(s, b, margin=0.0), weight_dirichlet_series(w, s, b.with_M(max(b.M, N))))
    return _check("lift-factorization", s, {"weight": w.kind, "N": N}, lhs, rhs, slack)


def verify_zeta_zeta_prime(u, N: int = 10_000, b: Optional[TruncationBudget] = None,
                           slack: float = DEFAULT_SLACK) -> SeriesCheck:
    """sum_n (-sum_{d|n} log d) n^{-u} = zeta(u) zeta'(u)."""
    sig = _require_sigma(u)
    b = _regime_budget(b)
    logs = np.log(np.arange(1, N + 1, dtype=float))
    vals = -_divisor_sieve(logs, 1)
    X = N + 1.0
    beyond = math.log(X) * X ** (-sig) + X ** (1 - sig) * (math.log(X) / (sig - 1) + 1 / (sig - 1) ** 2)
    tail = _divisor_tail(N, sig, logs, beyond, 1)
    lhs = CertifiedValue(_dirichlet_sum(vals, u), tail, meta={"N": N})
    rhs = _times(zeta(u, b, margin=0.0), zeta_prime(u, b))
    return _check("zeta-zeta-prime", u, {"N": N}, lhs, rhs, slack)


def verify_eta_paths(s, b: Optional[TruncationBudget] = None, slack: float = 1e-12) -> SeriesCheck:
    """Alternating series for eta(s) against (1 - 2^{1-s}) zeta(s)."""
    _require_sigma(s)
    b = b or TruncationBudget(M=2_000_000, tail_tol=1e-3)
    return _check("eta-two-paths", s, {}, eta_alternating(s, b), eta(s, b), slack)


def verify_eta_at_one(b: Optional[TruncationBudget] = None, slack: float = 0.0) -> SeriesCheck:
    """The documented value eta(1) = log 2 against the alternating series at s = 1.

    Supports the observation that 1 - eta(1) = 1 - log 2 is nonzero, so the
    pole of the q = -1 series at s = 1 comes from zeta alone.
    """
    b = b or TruncationBudget(M=100_000, tail_tol=1e-3)
    series = eta_alternating(1.0, b)
    return _check("eta-at-one", 1.0, {"one_minus_eta": 1 - ETA_AT_1}, series,
                  CertifiedValue(ETA_AT_1, 0.0), slack)


# ------------------------------------------------------------------ zeros and explicit formula


class ZerosFileError(ValueError):
    def __init__(self, message: str, path: str, line: Optional[int] = None):
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class ZetaZeroTable:
    gammas: tuple
    source: str

    @property
    def count(self) -> int:
        return len(self.gammas)

    def head(self, k: int) -> "ZetaZeroTable":
        if not 0 <= k <= self.count:
            raise ValueError(f"table holds {self.count} zeros, asked for {k}")
        return ZetaZeroTable(self.gammas[:k], self.source)


def default_zeros_path() -> Path:
    return Path(str(resources.files("fejerlift") / "data" / "zeta_zeros_100.txt"))


def load_zeros(path=None) -> ZetaZeroTable:
    """Read one positive gamma per line ('#' starts a comment); validates ordering and the first zero."""
    path = Path(path) if path is not None else default_zeros_path()
    try:
        text = path.read_text()
    except OSError as exc:
        raise ZerosFileError(f"cannot read zeros file ({exc.strerror})", str(path)) from exc
    gammas: list[float] = []
    first_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            g = float(line)
        except ValueError:
            raise ZerosFileError(f"not a number: {raw.strip()!r}", str(path), lineno) from None
        if not (math.isfinite(g) and g > 0):
            raise ZerosFileError(f"gamma must be a positive finite number, got {g!r}", str(path), lineno)
        if gammas and not g > gammas[-1]:
            raise ZerosFileError(f"values must be strictly increasing ({g} after {gammas[-1]})", str(path), lineno)
        if first_line is None:
            first_line = lineno
        gammas.append(g)
    if not gammas:
        raise ZerosFileError("zeros required: file contains no values", str(path))
    if not 14.1 < gammas[0] < 14.2:
        raise ZerosFileError(f"first zero {gammas[0]} outside the sanity range (14.1, 14.2)", str(path), first_line)
    return ZetaZeroTable(tuple(gammas), str(path))


@dataclass(frozen=True)
class ExplicitFormulaResult:
    x: float
    zero_count: int
    truncated_rhs: float
    direct_psi: float
    residual: float
    half_weight: float = 0.0
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "type": "explicit_formula",
            "x": self.x,
            "zero_count": self.zero_count,
            "truncated_rhs": self.truncated_rhs,
            "direct_psi": self.direct_psi,
            "residual": self.residual,
            "half_weight": self.half_weight,
            "notes": list(self.notes),
        }


def explicit_formula_psi(x: float, zeros: Optional[ZetaZeroTable], allow_empty: bool = False) -> ExplicitFormulaResult:
    """psi(x) against x - sum_rho x^rho/rho - log(2 pi) - log(1 - x^{-2})/2.

    Zeros 1/2 + i gamma are paired with their conjugates, contributing
    2 Re(x^rho/rho) each.  At a prime power x the direct side uses the
    half-weight value psi(x) - Lambda(x)/2.
    """
    if not x > 1:
        raise ValueError(f"x > 1 required, got {x!r}")
    if zeros is None or (zeros.count == 0 and not allow_empty):
        raise ValueError("zeros required")
    g = np.asarray(zeros.gammas, dtype=float)
    rho = 0.5 + 1j * g
    pair_sum = float(np.sum((np.exp(rho * math.log(x)) / rho).real)) if g.size else 0.0
    rhs = x - 2 * pair_sum - math.log(2 * math.pi) - 0.5 * math.log1p(-(x**-2))
    psi = chebyshev_psi(x)
    half, notes = 0.0, []
    if float(x).is_integer():
        lam = von_mangoldt(int(x))
        if lam:
            half = lam / 2
            psi -= half
            notes.append(f"half-weight applied: psi(x) - Lambda(x)/2 with Lambda(x) = {lam!r}")
    return ExplicitFormulaResult(float(x), zeros.count, rhs, psi, abs(rhs - psi), half, tuple(notes))
