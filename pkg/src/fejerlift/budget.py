"""Truncation budgets and certified values shared by every series evaluator."""

from __future__ import annotations

from dataclasses import dataclass, field


class BudgetInsufficient(ValueError):
    """Raised when the tail bound at the given cutoff exceeds the tolerance.

    The achievable bound is kept on the exception so callers can retry with
    a looser tolerance or a larger cutoff.
    """

    def __init__(self, achievable: float, tail_tol: float, M: int, what: str = "series"):
        self.achievable = float(achievable)
        self.tail_tol = float(tail_tol)
        self.M = int(M)
        super().__init__(
            f"budget insufficient for {what}: tail bound {achievable:.3e} at M={M} "
            f"exceeds tail_tol={tail_tol:.3e}"
        )


@dataclass(frozen=True)
class TruncationBudget:
    """Cutoff index, tail tolerance and working precision (decimal digits)."""

    M: int = 2000
    tail_tol: float = 1e-6
    digits: int = 15

    def __post_init__(self) -> None:
        if int(self.M) != self.M or self.M < 2:
            raise ValueError(f"cutoff M must be an integer >= 2, got {self.M!r}")
        if not self.tail_tol > 0:
            raise ValueError(f"tail_tol must be positive, got {self.tail_tol!r}")
        if int(self.digits) != self.digits or self.digits < 15:
            raise ValueError(f"digits must be an integer >= 15, got {self.digits!r}")

    def with_M(self, M: int) -> "TruncationBudget":
        return TruncationBudget(M=M, tail_tol=self.tail_tol, digits=self.digits)

    def check(self, tail_bound: float, what: str = "series") -> None:
        if tail_bound > self.tail_tol:
            raise BudgetInsufficient(tail_bound, self.tail_tol, self.M, what)


@dataclass(frozen=True)
class CertifiedValue:
    """A truncated series value together with a bound on the discarded tail.

    ``heuristic`` marks bounds that rest on an empirically calibrated
    constant rather than a proof.
    """

    value: complex
    tail_bound: float
    heuristic: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not self.tail_bound >= 0:
            raise ValueError(f"tail_bound must be nonnegative, got {self.tail_bound!r}")

    @property
    def real(self) -> float:
        return complex(self.value).real

    @property
    def imag(self) -> float:
        return complex(self.value).imag

    def contains(self, other: complex, slack: float = 0.0) -> bool:
        return abs(complex(self.value) - complex(other)) <= self.tail_bound + slack

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {"re": v.real, "im": v.imag, "tail_bound": self.tail_bound, "heuristic": self.heuristic}


def product_bound(x: CertifiedValue, y: CertifiedValue) -> float:
    """Bound on |XY - xy| given |X - x| <= dx and |Y - y| <= dy."""
    ax, ay = abs(complex(x.value)), abs(complex(y.value))
    return ax * y.tail_bound + ay * x.tail_bound + x.tail_bound * y.tail_bound
