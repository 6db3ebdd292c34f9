"""Companion zeros just left of each prime and their exponential approach.

The zero x_p in (p-1, p) sits about log(q)/K * q^{-p} below p, so log(p - x_p)
falls on a line of slope -log q.

Run: python demos/companion_zeros.py
"""

import math

import numpy as np

from fejerlift import find_companion, primes_up_to

q = 2.0
zs = [find_companion(p, q) for p in primes_up_to(31) if p >= 11]
print(f"{'p':>3s}  {'Delta = p - x_p':>22s}  {'Delta q^p K/log q':>18s}  digits")
for z in zs:
    print(f"{z.p:3d}  {z.Delta:22.15e}  {z.ratio:18.12f}  {z.digits}")

slope = np.polyfit([z.p for z in zs], [z.log_Delta for z in zs], 1)[0]
print(f"\nfitted slope {slope:.6f} against -log q = {-math.log(q):.6f}")
