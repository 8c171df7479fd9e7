"""Torus fixed points of the orbifold Hilbert scheme and slice injectivity."""
# %%
from cornering.orbifold import (
    enumerate_fixed_points,
    fixed_point_module,
    hilb_injectivity_experiment,
    overlapping_covering,
    singleton_covering,
    weight_content,
)

for m, n in [(2, (1, 1)), (3, (1, 1, 1)), (2, (2, 1)), (2, (2, 2))]:
    pts = enumerate_fixed_points(m, n)
    print(f"m={m} n={n}:", [str(p) for p in pts])

# %% each partition is a cyclic module with dims (1, n)
p = enumerate_fixed_points(3, (1, 1, 1))[0]
print(p, "content", weight_content(p, 3), "module dims", fixed_point_module(p, 3).dims)

# %% distinct fixed points differ on some slice
for cov in (singleton_covering(3), overlapping_covering(3)):
    rep = hilb_injectivity_experiment(3, (2, 2, 2), cov)
    print([sorted(I) for I in cov], "->", rep["count"], "points,",
          rep["distinguished_pairs"], "of", len(rep["pairs"]), "pairs distinguished")
