"""
Two constructions that stress the giant
=======================================

gadget-A hangs a near-clique off every vertex of a sparse expander: the
graph is d-regular but every block has tiny boundary, so percolation at
p ~ 1/(e^2 d1) leaves only small components. gadget-B glues cliques along
a sparse regular graph; at p = 1.2/d a handful of cliques become isolated.
"""

import math

from percolab import (
    ExperimentConfig,
    GeneratorSpec,
    generate,
    iso_sampled_upper,
    run_experiment,
    structured_sets,
)
from percolab.generators import gadget_a_c_eff

d1, d, n = 4, 60, 24_800
spec_a = GeneratorSpec("gadget-A", {"d1": d1, "d": d, "n": n}, seed=1)
ga = generate(spec_a)
print(f"gadget-A: {ga.n} vertices, {d}-regular: {ga.regular_degree() == d}, C_eff={gadget_a_c_eff(d1, d):.2f}")
print("sampled i(G) bound:", iso_sampled_upper(ga, 10, 0, candidates=structured_sets(spec_a)).fraction)
s = run_experiment(ExperimentConfig(spec_a, p=1 / (math.e**2 * d1), trials=10, base_seed=1), graph=ga)
print(f"largest component over 10 trials: {s.aggregates['L1']['max']:.0f} (3 d ln n = {3 * d * math.log(n):.0f})")

spec_b = GeneratorSpec("gadget-B", {"C": 1, "d": 100, "n": 19_600}, seed=1)
s = run_experiment(ExperimentConfig(spec_b, p=0.012, trials=20, base_seed=1, count_thresholds=(20,)))
print(f"gadget-B: mean isolated classes {s.aggregates['isolated_classes']['mean']:.2f}, "
      f"mean number of components of size >= 20: {s.aggregates['n_ge_20']['mean']:.1f}")
