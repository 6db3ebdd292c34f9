"""Fejér divisor filter F(z,i) = (sin(pi z)/sin(pi z/i))^2 and its normalizations.

phi_i = F/i^2 equals the divisor indicator 1_{i|n} at integers, and
phi_inf(z) = (sin(pi z)/(pi z))^2 is the i -> infinity profile.  The sine
quotient has removable poles at multiples of i; near them the finite cosine
sum i + 2 sum_{k<i} (i-k) cos(2 pi k z/i) is used instead.

Scalar evaluators reduce z modulo i first (F is i-periodic), which keeps the
trig arguments small and the reduced offset exact in binary64.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ComplexPoint",
    "KernelValue",
    "POLE_SWITCH",
    "INTEGER_TOL",
    "as_complex",
    "nearest_integer",
    "fejer_F",
    "fejer_F_value",
    "fejer_F_cosine",
    "fejer_F_sine",
    "phi",
    "phi_infty",
    "phi_vec",
    "phi_infty_vec",
    "phi_deriv",
    "phi_deriv_cosine",
    "growth_bound",
    "trig_sums",
]

PI = math.pi
TWO_PI = 2.0 * math.pi
POLE_SWITCH = 1e-6
INTEGER_TOL = 1e-12


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"complex point must be finite, got {self.re!r}+{self.im!r}i")

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    method: str  # "cosine-sum" | "sine-quotient" | "taylor-near-pole" | "integer"


Number = Union[int, float, complex, ComplexPoint]


def as_complex(z: Number) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite argument {z!r}")
    return z


def _is_real(z: Number) -> bool:
    if isinstance(z, ComplexPoint):
        return z.im == 0.0
    return not isinstance(z, complex) or z.imag == 0.0


def nearest_integer(z: Number, tol: float = INTEGER_TOL) -> int | None:
    """The integer n with |z - n| <= tol, if any."""
    zc = as_complex(z)
    n = round(zc.real)
    if abs(zc - n) <= tol:
        return int(n)
    return None


def _check_order(i: int) -> int:
    if isinstance(i, bool) or int(i) != i or i < 1:
        raise ValueError(f"kernel order i must be an integer >= 1, got {i!r}")
    return int(i)


def _reduce(z: complex, i: int) -> complex:
    """z - i*k with k = round(Re z / i); F(z,i) depends only on this offset."""
    return z - i * round(z.real / i)


def fejer_F_cosine(z: Number, i: int) -> complex:
    """Finite cosine-sum form, exact for every z."""
    i = _check_order(i)
    eps = _reduce(as_complex(z), i)
    if i == 1:
        return 1.0
    if eps.imag == 0.0:
        x = eps.real
        s = math.fsum((i - k) * math.cos(TWO_PI * k * x / i) for k in range(1, i))
        return i + 2.0 * s
    acc = sum((i - k) * cmath.cos(TWO_PI * k * eps / i) for k in range(1, i))
    return i + 2.0 * acc


def fejer_F_sine(z: Number, i: int) -> complex:
    """Sine-quotient form; raises ZeroDivisionError exactly at the removable poles."""
    i = _check_order(i)
    if i == 1:
        return 1.0
    eps = _reduce(as_complex(z), i)
    if eps.imag == 0.0:
        x = eps.real
        return (math.sin(PI * x) / math.sin(PI * x / i)) ** 2
    return (cmath.sin(PI * eps) / cmath.sin(PI * eps / i)) ** 2


def fejer_F_value(z: Number, i: int) -> KernelValue:
    """F(z,i) together with the branch that produced it."""
    i = _check_order(i)
    if i == 1:
        return KernelValue(1.0, "sine-quotient")
    zc = as_complex(z)
    eps = _reduce(zc, i)
    if eps.imag == 0.0 and _is_real(z):
        den = math.sin(PI * eps.real / i)
    else:
        den = cmath.sin(PI * eps / i)
    if abs(den) < POLE_SWITCH:
        return KernelValue(fejer_F_cosine(zc if not _is_real(z) else zc.real, i), "cosine-sum")
    if _is_real(z):
        return KernelValue((math.sin(PI * eps.real) / den) ** 2, "sine-quotient")
    return KernelValue((cmath.sin(PI * eps) / den) ** 2, "sine-quotient")


def fejer_F(z: Number, i: int) -> complex:
    """F(z,i); F(z,1) = 1.  Real input gives a float."""
    return fejer_F_value(z, i).value


def phi(z: Number, i: int, integer_fast_path: bool = True) -> complex:
    """phi_i(z) = F(z,i)/i^2, exact divisor indicator at integers."""
    i = _check_order(i)
    if integer_fast_path:
        n = nearest_integer(z)
        if n is not None:
            return 1.0 if n % i == 0 else 0.0
    return fejer_F(z, i) / (i * i)


def _sinc_sq_taylor(u: complex) -> complex:
    # (sin w / w)^2 with w^2 = u
    return 1.0 - u / 3.0 + 2.0 * u * u / 45.0 - u**3 / 315.0


def phi_infty(z: Number, integer_fast_path: bool = True) -> complex:
    """(sin(pi z)/(pi z))^2 with value 1 at z = 0."""
    zc = as_complex(z)
    if integer_fast_path:
        n = nearest_integer(zc)
        if n is not None:
            return 1.0 if n == 0 else 0.0
    real = _is_real(z)
    if abs(zc) < 1e-4:
        val = _sinc_sq_taylor((PI * zc) ** 2)
        return val.real if real else val
    if real:
        x = zc.real
        return (math.sin(PI * x) / (PI * x)) ** 2
    return (cmath.sin(PI * zc) / (PI * zc)) ** 2


def phi_vec(z: Number, i: np.ndarray, integer_fast_path: bool = True) -> np.ndarray:
    """phi_i(z) for an array of orders i at one point z.

    Uses phi_i(z) = (sinc(e)/sinc(e/i))^2 with e = z - i*round(Re z/i), which
    never divides by zero since |Re e/i| <= 1/2.
    """
    i = np.asarray(i, dtype=np.int64)
    zc = as_complex(z)
    if integer_fast_path:
        n = nearest_integer(zc)
        if n is not None:
            return (n % i == 0).astype(float)
    k = np.round(zc.real / i)
    if _is_real(z):
        eps = zc.real - i * k
    else:
        eps = zc - i * k
    return (np.sinc(eps) / np.sinc(eps / i)) ** 2


def phi_grid(z: np.ndarray, i: np.ndarray) -> np.ndarray:
    """phi_i(z) on an outer grid: result[a, b] = phi_{i[b]}(z[a]).  No integer snapping."""
    z = np.asarray(z)[:, None]
    i = np.asarray(i, dtype=np.int64)[None, :]
    k = np.round(np.real(z) / i)
    eps = z - i * k
    return (np.sinc(eps) / np.sinc(eps / i)) ** 2


def phi_infty_vec(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z)
    return np.sinc(z) ** 2


def growth_bound(z: Number, i: int) -> float:
    """i^2 cosh(2 pi |Im z|), a global bound on |F(z,i)|."""
    return float(i * i) * math.cosh(TWO_PI * abs(as_complex(z).imag))


def phi_deriv_cosine(x: float, i: int, k: int) -> float:
    """k-th derivative of phi_i at real x from the cosine sum (cross-check path)."""
    i = _check_order(i)
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if i == 1:
        return 1.0 if k == 0 else 0.0
    x = float(x) - i * round(float(x) / i)
    terms = []
    for j in range(1, i):
        a = TWO_PI * j / i
        terms.append((i - j) * a**k * math.cos(a * x + k * PI / 2))
    s = 2.0 * math.fsum(terms)
    if k == 0:
        s += i
    return s / (i * i)


def phi_deriv(x: float, i: int, k: int) -> float:
    """k-th derivative (k <= 3) of phi_i at a real point.

    Integers use closed forms; elsewhere the sine quotient is differentiated
    by Leibniz' rule on sin^2(pi x) * csc^2(pi x/i), switching to the cosine
    sum near the removable poles.
    """
    i = _check_order(i)
    if isinstance(k, bool) or int(k) != k or not 0 <= k <= 3:
        raise ValueError(f"derivative order must be 0..3 (bounds certified to order 3), got {k!r}")
    x = float(x)
    if i == 1:
        return 1.0 if k == 0 else 0.0
    n = nearest_integer(x)
    if n is not None:
        divides = n % i == 0
        if k == 0:
            return 1.0 if divides else 0.0
        if k in (1, 3):
            return 0.0
        if divides:
            return -(2.0 * PI**2 / 3.0) * (1.0 - 1.0 / (i * i))
        return 2.0 * PI**2 / (i * i * math.sin(PI * n / i) ** 2)
    xr = x - i * round(x / i)
    v = PI * xr / i
    sv = math.sin(v)
    if abs(sv) < POLE_SWITCH:
        return phi_deriv_cosine(xr, i, k)
    u = PI * xr
    c = PI / i
    csc, cot = 1.0 / sv, math.cos(v) / sv
    f = (math.sin(u) ** 2, PI * math.sin(2 * u), 2 * PI**2 * math.cos(2 * u), -4 * PI**3 * math.sin(2 * u))
    g = (
        csc**2,
        -2 * c * csc**2 * cot,
        c**2 * (4 * csc**2 * cot**2 + 2 * csc**4),
        c**3 * (-8 * csc**2 * cot**3 - 16 * csc**4 * cot),
    )
    binom = ((1,), (1, 1), (1, 2, 1), (1, 3, 3, 1))[k]
    total = sum(binom[j] * f[k - j] * g[j] for j in range(k + 1))
    return total / (i * i)


def trig_sums(n: int, m: int) -> tuple[float, float]:
    """(sum_{k=1}^{m-1} cos(2 pi k n/m), sum_{k=1}^{m-1} k cos(2 pi k n/m))."""
    c = [math.cos(TWO_PI * ((k * n) % m) / m) for k in range(1, m)]
    return math.fsum(c), math.fsum(k * ck for k, ck in enumerate(c, start=1))
