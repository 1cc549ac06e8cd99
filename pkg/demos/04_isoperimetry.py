"""
Bracketing the isoperimetric constant
=====================================

Exhaustive search is exact but exponential; the spectral bound is cheap
and sits below; random sets give an upper bound. On small graphs all three
can be compared directly.
"""

from percolab import (
    build_graph,
    expansion_core,
    gen_random_regular,
    hypercube,
    iso_exact,
    iso_sampled_upper,
    iso_spectral_lower,
)

for name, g in [("Q^3", hypercube(3)), ("Q^4", hypercube(4)), ("rr(16, 3)", gen_random_regular(16, 3, 2))]:
    lo = iso_spectral_lower(g).value
    ex = iso_exact(g)
    hi = iso_sampled_upper(g, 200, 0).fraction
    print(f"{name:10s} spectral {lo:.4f} <= exact {ex.fraction} (witness {ex.witness.ids.tolist()}) <= sampled {hi}")

# Peeling poorly expanding small sets leaves a core where every small set expands.
# Lollipop: K_6 on 0..5 with a path 5-6-7-8-9 hanging off it.
g = build_graph(10, [(u, v) for u in range(6) for v in range(u + 1, 6)] + [(i, i + 1) for i in range(5, 9)])
res = expansion_core(g, k=12, c1=1.0, c2=0.3, d=5)
print("removed:", [b.ids.tolist() for b in res.removed_sets], "core size:", len(res.surviving))
