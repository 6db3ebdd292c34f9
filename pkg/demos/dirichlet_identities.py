"""Dirichlet-series identities checked against certified truncation budgets.

Each check prints |lhs - rhs| next to the sum of the two tail bounds.

Run: python demos/dirichlet_identities.py
"""

from fejerlift import (
    WeightSpec,
    verify_lerch_bridge,
    verify_lift_factorization,
    verify_polylog_zeta,
    verify_qminus1,
    verify_qnegQ,
    verify_zeta_zeta_prime,
)

checks = [
    verify_polylog_zeta(2, 2),
    verify_polylog_zeta(3, 3, variant="S"),
    verify_qminus1(2),
    verify_qnegQ(2, 2),
    verify_lerch_bridge(4, 1, 2),
    verify_lift_factorization(WeightSpec.power(2), 2),
    verify_zeta_zeta_prime(3),
]
for c in checks:
    print(f"{c.identity_name:20s} s={c.s.real:g}  gap={c.gap:.3e}  budget={c.budget_gap:.3e}  {c.outcome}")
