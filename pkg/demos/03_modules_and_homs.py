"""Modules given by arrow matrices, homomorphism spaces and the isomorphism test."""
# %%
from cornering.algebra import INFINITY, mckay_algebra, star_quiver, truncated_algebra
from cornering.fdmod import (
    RelationViolation,
    direct_sum,
    hom_space,
    is_isomorphic,
    is_zero_generated,
    module_from_arrows,
    regular_column,
    simple_module,
)

A = truncated_algebra(star_quiver(2), [], 2)
P0 = regular_column(A, "0")
print("A e0 has dims", P0.dims, "0-generated:", is_zero_generated(P0))

# %%
F = module_from_arrows(A, (1, 1, 1), {"a": [[1]], "b": [[1]]})
G = module_from_arrows(A, (1, 1, 1), {"a": [[3]], "b": [["-1/2"]]})
r = is_isomorphic(F, G)
print("rescaled arrows:", r.status, "via", r.method)
print("dim Hom(A e0, S0 + S1) =", len(hom_space(P0, direct_sum([simple_module(A, "0"), simple_module(A, "1")]))))

# %% bad data is rejected with the offending residual
M = mckay_algebra(2, 2)
try:
    module_from_arrows(M, {INFINITY: 1, "0": 1, "1": 1}, {"b": [[1]], "x0": [[1]], "x0*": [[1]]})
except RelationViolation as err:
    print("rejected:", err)
