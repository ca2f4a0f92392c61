#!/usr/bin/env python3
"""The multiplicative functional equation and why only Gaussians solve it.

On the set of triples with equal sums and equal square sums, extremal
profiles satisfy f(x)f(y)f(z) = f(a)f(b)f(c).  Log-quadratic functions
satisfy it identically (their log-products depend only on the two conserved
quantities); anything else leaves a visible residual.  The golden-ratio
substitution (x, -x, x) ~ (phi x, psi x, 0) shows, in exact integer
arithmetic, that no cubic-or-higher log coefficient can survive.
"""

import numpy as np

from strichartz_lab import (
    constraint_circle,
    golden_power_sums,
    residual_statistic,
)

print("a constraint sextuple through (1.0, -0.3, 0.7):")
cs = constraint_circle(1.0, -0.3, 0.7, theta=1.1)
print(f"  left  = {cs.left}")
print(f"  right = ({cs.right[0]:.6f}, {cs.right[1]:.6f}, {cs.right[2]:.6f})")
print(f"  sums: {sum(cs.left):.12f} = {sum(cs.right):.12f}")
print(f"  square sums: {sum(v * v for v in cs.left):.12f} = "
      f"{sum(v * v for v in cs.right):.12f}\n")

print("product residuals over 10^4 seeded constraint points in [-3,3]^3:")


def log_quadratic(v):
    v = np.asarray(v)
    return np.exp((-1 + 0.5j) * v ** 2 + (2 - 1j) * v + 0.3)


for name, f in [("complex log-quadratic", log_quadratic),
                ("sech", lambda v: 1 / np.cosh(np.asarray(v)))]:
    sup, rms = residual_statistic(f, 10_000, seed=42)
    print(f"  {name:22s} sup = {sup:.3e}   rms = {rms:.3e}")

print("\ngolden-ratio power sums p_k = 2 + (-1)^k - L_k (exact integers):")
rows = golden_power_sums(12)
print(f"  {'k':>3s} {'L_k':>6s} {'p_k':>7s} {'lower bound on -p_k':>22s}")
for r in rows:
    print(f"  {r.k:3d} {r.lucas:6d} {r.p:7d} {str(r.bound):>22s}")

rows = golden_power_sums(200)
print(f"\nall p_k nonzero for 3 <= k <= 200: {all(r.p != 0 for r in rows)}")
print(f"exact rational bounds hold everywhere: {all(r.bound_holds for r in rows)}")
print("hence every log-power-series coefficient beyond degree two vanishes,")
print("and solutions of the functional equation are exactly the Gaussians.")
