"""Integer values of the indicator: zeros sit exactly on the primes.

Run: python demos/prime_anchors.py
"""

from fractions import Fraction

from fejerlift import TruncationBudget, indicator_F, indicator_integer, is_prime

q = Fraction(3, 2)
print(f"q = {q}: exact divisor-sum values")
for n in range(2, 21):
    v = indicator_integer(n, q)
    tag = "prime" if is_prime(n) else ""
    print(f"  n={n:3d}  value={str(v):>22s}  {tag}")

# The series evaluation off the integers interpolates these anchors.
b = TruncationBudget(M=400, tail_tol=1e-10)
print("\nseries value between 6 and 8 (q = 2):")
for x in (6.0, 6.5, 6.99, 7.0, 7.01, 7.5, 8.0):
    r = indicator_F(x, 2, b)
    print(f"  x={x:5.2f}  F={r.value:+.3e}  tail<={r.tail_bound:.1e}  [{r.path}]")

print("\nq = -1 zeros among 2..30 (primes and n = 2 mod 4):")
print(" ", [n for n in range(2, 31) if indicator_integer(n, -1) == 0])
