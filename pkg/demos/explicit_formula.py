"""psi(x) against the explicit formula truncated to the first k zeros.

Run: python demos/explicit_formula.py
"""

from fejerlift import explicit_formula_psi, load_zeros

zeros = load_zeros()
for x in (20.5, 100.5, 1000.5):
    print(f"x = {x}")
    for k in (0, 10, 30, 100):
        r = explicit_formula_psi(x, zeros.head(k), allow_empty=True)
        print(f"  zeros={k:3d}  rhs={r.truncated_rhs:12.6f}  psi={r.direct_psi:12.6f}  residual={r.residual:.4f}")
