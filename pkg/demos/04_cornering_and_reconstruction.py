"""Slicing a module over a covering and gluing it back together."""
# %%
from cornering.algebra import star_quiver, truncated_algebra
from cornering.fdmod import image_module, is_isomorphic, regular_column
from cornering.recollement import (
    Covering,
    coinduce,
    induce,
    nu,
    phi,
    psi,
    reconstruct,
    restrict,
    slice_module,
    splitting_P,
)

A = truncated_algebra(star_quiver(2), [], 2)
F = regular_column(A, "0")
I = {"0", "1"}
N = restrict(F, I)
print("restrict", N.dims, "induce", induce(N, I).dims, "coinduce", coinduce(N, I).dims)
print("image of the comparison map:", image_module(nu(N, I)).dims)

# %% the slice maps
c = Covering.of(A, [{"0", "1"}, {"0", "2"}])
print("rank psi =", psi(F, c).rank(), "= dim F =", F.dim, "; kernel of phi:", phi(F, c).kernel_dim())
print("splitting is a section:", splitting_P(A, c).is_section())

# %% glue the slices back
r = reconstruct(slice_module(F, c))
print("reconstructed dims", r.module.dims, "consistent", r.consistent,
      "isomorphic to F:", is_isomorphic(r.module, F).status)
