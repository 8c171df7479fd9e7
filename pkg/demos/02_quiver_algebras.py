"""Truncated path algebras, the framed McKay algebras and their corners."""
# %%
from cornering.algebra import INFINITY, corner_algebra, loop_quiver, mckay_algebra, star_quiver, truncated_algebra

star = truncated_algebra(star_quiver(2), [], 2)
print("star algebra:", star.dim, "basis paths", [b.path.arrows for b in star.basis])

loops = {L: truncated_algebra(loop_quiver(), [], L).dim for L in (2, 3, 4)}
print("one loop, k[x]/x^(L+1):", loops)

# %% framed McKay Z/m with b* killed; the relation reads xy = yx away from the framing
for m in (2, 3):
    A = mckay_algebra(m, 4)
    tails = {v: len(A.by_tail[v]) for v in A.vertices}
    print(f"Z/{m}: dim {A.dim}, paths by tail {tails}, structure checks {A.check() or 'ok'}")

# %% cornering to a vertex subset containing the framing vertex
A = mckay_algebra(3, 4)
C, embed = corner_algebra(A, {INFINITY, "1"})
print("corner at {inf, 1}:", C.dim, "dimensional, sits inside A at", embed[:5], "...")
