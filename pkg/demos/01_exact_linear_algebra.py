"""Exact linear algebra over Q, and over a prime field on request."""
# %%
from fractions import Fraction

from cornering.exactla import Matrix, PrimeField, Subspace, kernel_basis, rank, rref, use_field

m = Matrix([[1, 2, 3], [2, 4, 7], ["1/2", 1, 2]])
R, pivots = rref(m)
print("rref:", R.to_strings(), "pivots", pivots)
print("rank", rank(m), "kernel", [tuple(map(str, v)) for v in kernel_basis(m)])

# %% entries stay exact, no float drift
h = Matrix([[Fraction(1, i + j + 1) for j in range(4)] for i in range(4)])
print("rank of the 4x4 Hilbert matrix:", rank(h))

# %% subspaces compare by span
U = Subspace([(1, 1, 0), (0, 0, 1)], 3)
print((2, 2, 5) in U, (1, 0, 0) in U)

# %% the same code runs mod p
with use_field(PrimeField(5)):
    print("rank mod 5:", rank(Matrix([[1, 2], [3, 1]])))  # det = -5
