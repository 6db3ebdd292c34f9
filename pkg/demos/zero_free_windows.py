"""Zero-free windows for the tangent-matched indicator at q = 2.

Below the threshold P0 the analytic certificate is withheld; from P0 on,
each window gets an analytic lower bound and a conservative grid floor.

Run: python demos/zero_free_windows.py
"""

from fejerlift import compute_constants, primes_up_to, verify_window

c = compute_constants(2.0)
print(f"alpha = {c.alpha:.7f}  delta = {c.deltaSin:.6f}  P0 = {c.P0:.4f}")
print(f"C' = {c.CprimeSin:.5f}  C'' = {c.CdblprimeSin:.5f}\n")

for p in primes_up_to(41):
    if p < 5:
        continue
    r = verify_window(p, 2.0, c)
    floors = ", ".join(f"{w.name}:{w.grid_min:.2e}" for w in r.windows)
    print(f"p={p:3d}  {r.verdict:<55s} {floors}")
    print(f"        contact at p: second difference / expected = "
          f"{r.boundary_contact.second_difference / r.boundary_contact.expected:.4f}")
