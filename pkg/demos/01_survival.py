"""
Survival probabilities
======================

The giant component of a supercritical percolation occupies a fraction y of
the vertices, where y solves y = 1 - exp(-(1+eps) y). For small eps the
root behaves like 2 eps.
"""

import numpy as np

from percolab import binomial_gw_survival, poisson_survival, series_F

for eps in (0.01, 0.05, 0.1, 0.2, 0.5, 1.0):
    y = poisson_survival(eps)
    print(f"eps={eps:<5} y={y.value:.10f}  y/eps={y.value / eps:.4f}  residual={y.residual:.1e}")

# The series F(c) counts the mass of finite components; it complements y.
for c in (1.1, 1.5, 2.0, 3.0):
    print(f"c={c}: F(c) + y(c-1) = {series_F(c).value + poisson_survival(c - 1).value:.15f}")

# Finite degree: Bin(d, p) offspring converge to the Poisson value as d grows.
d_values = np.array([10, 50, 200, 1000, 10**5])
for d in d_values:
    print(f"d={d:>6}: binomial survival at p=1.2/d is {binomial_gw_survival(int(d), 1.2 / d).value:.6f}")
