"""Restriction, induction and coinduction along a corner e_I A e_I.

For a corner set I (containing the distinguished vertex) with corner
algebra ``A_I = e_I A e_I``:

* ``restrict(F, I)``  is ``e_I F`` as an ``A_I``-module;
* ``induce(N, I)``    is ``A e_I ⊗_{A_I} N``, presented by generators
  ``x ⊗ n`` (``x`` a basis path with tail in I) modulo the balancing
  relations ``(x h) ⊗ n - x ⊗ (h n)``;
* ``coinduce(N, I)``  is ``Hom_{A_I}(e_I A, N)``.  Because ``e_I`` kills
  ``(1 - e_I) A``, this agrees with ``Hom_{A_I}(A, N)``; a function is
  stored by its values on the basis paths with head in I.

The comparison map ``nu(N, I)`` sends ``x ⊗ n`` to ``a -> (a x) . n``.
Over a covering, ``psi`` and ``phi`` collect the counits and units, and
``reconstruct`` recovers a 0-generated module from its slices.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import FDAlgebra, QuiverError, corner_algebra, corner_set
from .exactla import Echelon, Matrix, block_diag, free_columns, kernel_basis, scalar, sparse_axpy
from .fdmod import (
    FDModule,
    IsoResult,
    ModuleError,
    ModuleHom,
    direct_sum,
    hom_from_sum,
    hom_into_sum,
    hom_sum,
    is_isomorphic,
    is_zero_generated,
    regular_module,
    restrict_to_subspaces,
    submodule_spaces,
)


class AlgebraMismatch(ModuleError):
    pass


class DescentError(RuntimeError):
    """nu failed to vanish on the balancing relations (an implementation bug)."""


class CounterexampleError(RuntimeError):
    """Two non-isomorphic modules with isomorphic slices."""

    def __init__(self, message: str, artifact: dict):
        super().__init__(message)
        self.artifact = artifact


class ReconstructionError(RuntimeError):
    pass


# -- coverings -----------------------------------------------------------------


@dataclass(frozen=True)
class Covering:
    """Ordered list of corner sets whose union is every vertex."""

    sets: tuple[frozenset[str], ...]

    @classmethod
    def of(cls, algebra: FDAlgebra, sets: Iterable[Iterable]) -> "Covering":
        sets = tuple(corner_set(algebra, s) for s in sets)
        if not sets:
            raise QuiverError("a covering needs at least one corner set")
        missing = set(algebra.vertices) - set().union(*sets)
        if missing:
            raise QuiverError(f"covering misses vertices {sorted(missing)}")
        return cls(sets)

    @classmethod
    def parse(cls, algebra: FDAlgebra, text: str) -> "Covering":
        """Parse ``"∞0|∞1,2"``: sets split by ``|``, vertices by commas.

        The distinguished vertex is added to every set; a leading ``∞`` (or
        ``inf``) glued to the first vertex is accepted.
        """
        sets = []
        for part in text.strip().strip("[]").split("|"):
            members = {algebra.source}
            for tok in part.split(","):
                tok = tok.strip()
                if tok not in algebra.vertices:
                    for mark in ("∞", "inf"):
                        if tok.startswith(mark):
                            tok = tok[len(mark):]
                            break
                if tok:
                    members.add(tok)
            sets.append(members)
        return cls.of(algebra, sets)

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def as_lists(self, algebra: FDAlgebra) -> list[list[str]]:
        return [[v for v in algebra.vertices if v in s] for s in self.sets]


def _covering(algebra: FDAlgebra, c) -> Covering:
    return c if isinstance(c, Covering) else Covering.of(algebra, c)


# -- restriction -----------------------------------------------------------------


@functools.lru_cache(maxsize=1024)
def _restrict(F: FDModule, subset: frozenset[str]) -> FDModule:
    corner, emb = corner_algebra(F.algebra, subset)
    dims = tuple(F.dim_at(v) for v in corner.vertices)
    return FDModule(corner, dims, tuple(F.actions[i] for i in emb))


def restrict(F: FDModule, I) -> FDModule:
    """The slice e_I F over the corner algebra (same object on repeat calls)."""
    return _restrict(F, corner_set(F.algebra, I))


def restrict_hom(h: ModuleHom, I) -> ModuleHom:
    s = corner_set(h.source.algebra, I)
    src, tgt = restrict(h.source, s), restrict(h.target, s)
    return ModuleHom(src, tgt, tuple(h.at(v) for v in src.algebra.vertices))


def _check_slice(N: FDModule, I) -> tuple[FDAlgebra, frozenset[str], tuple[int, ...]]:
    parent = N.algebra.parent
    if parent is None:
        raise AlgebraMismatch("module is not over a corner algebra")
    s = corner_set(parent, I)
    corner, emb = corner_algebra(parent, s)
    if corner is not N.algebra:
        raise AlgebraMismatch(f"module is not over the corner algebra of {sorted(s)}")
    return parent, s, emb


# -- induction ---------------------------------------------------------------------


@dataclass(eq=False)
class Induction:
    """Presentation of A e_I ⊗_{A_I} N.

    ``gens[w]`` lists generator pairs ``(x, k)`` with head(x) = w: basis path
    ``x`` of A and basis vector ``k`` of N at tail(x).  ``balancing[w]``
    holds the relation span; the quotient basis at ``w`` is the list
    ``basis[w]`` of non-pivot generator positions.
    """

    algebra: FDAlgebra
    corner_set: frozenset[str]
    slice: FDModule
    gens: dict[str, list[tuple[int, int]]]
    position: dict[str, dict[tuple[int, int], int]]
    balancing: dict[str, Echelon]
    basis: dict[str, list[int]]
    module: FDModule = field(init=False)

    def coords(self, w: str, vec: dict) -> tuple:
        red = self.balancing[w].reduce(vec)
        zero = scalar(0)
        return tuple(red.get(p, zero) for p in self.basis[w])

    def generator(self, w: str, x: int, k: int) -> dict:
        return {self.position[w][(x, k)]: scalar(1)}


@functools.lru_cache(maxsize=512)
def _induction(N: FDModule, subset: frozenset[str]) -> Induction:
    A, s, emb = _check_slice(N, subset)
    corner = N.algebra
    one = scalar(1)
    gens = {w: [] for w in A.vertices}
    for v in corner.vertices:
        for x in A.by_tail[v]:
            for k in range(N.dim_at(v)):
                gens[A.basis[x].head].append((x, k))
    position = {w: {g: i for i, g in enumerate(gens[w])} for w in A.vertices}
    balancing = {w: Echelon() for w in A.vertices}
    for hc in corner.generators:
        h = emb[hc]
        bh = A.basis[h]
        act_h = N.actions[hc]
        for x in A.by_tail[bh.head]:
            w = A.basis[x].head
            pos = position[w]
            xh = A.product(x, h)
            for k in range(N.dim_at(bh.tail)):
                vec: dict = {}
                for z, c in xh.items():
                    sparse_axpy(vec, c, {pos[(z, k)]: one})
                for r, c in enumerate(act_h.column(k)):
                    if c:
                        sparse_axpy(vec, -c, {pos[(x, r)]: one})
                if vec:
                    balancing[w].add(vec)
    basis = {w: [p for p in range(len(gens[w])) if p not in balancing[w].rows] for w in A.vertices}
    pres = Induction(A, s, N, gens, position, balancing, basis)

    blocks = []
    for a, ba in enumerate(A.basis):
        u, w = ba.tail, ba.head
        cols = []
        for p in basis[u]:
            x, k = gens[u][p]
            vec: dict = {}
            for z, c in A.product(a, x).items():
                sparse_axpy(vec, c, {position[w][(z, k)]: one})
            cols.append(pres.coords(w, vec))
        blocks.append(Matrix.from_columns(cols, len(basis[w])))
    dims = tuple(len(basis[w]) for w in A.vertices)
    pres.module = FDModule(A, dims, tuple(blocks)).validate()
    return pres


def induce_presentation(N: FDModule, I) -> Induction:
    parent = N.algebra.parent
    if parent is None:
        raise AlgebraMismatch("module is not over a corner algebra")
    return _induction(N, corner_set(parent, I))


def induce(N: FDModule, I) -> FDModule:
    """j_!(N) = A e_I ⊗_{A_I} N."""
    return induce_presentation(N, I).module


def induce_hom(h: ModuleHom, I) -> ModuleHom:
    src, tgt = induce_presentation(h.source, I), induce_presentation(h.target, I)
    A = src.algebra
    one = scalar(1)
    maps = []
    for w in A.vertices:
        cols = []
        for p in src.basis[w]:
            x, k = src.gens[w][p]
            hv = h.at(A.basis[x].tail).column(k)
            vec: dict = {}
            for r, c in enumerate(hv):
                if c:
                    sparse_axpy(vec, c, {tgt.position[w][(x, r)]: one})
            cols.append(tgt.coords(w, vec))
        maps.append(Matrix.from_columns(cols, len(tgt.basis[w])))
    return ModuleHom(src.module, tgt.module, tuple(maps))


# -- coinduction --------------------------------------------------------------------


@dataclass(eq=False)
class Coinduction:
    """Model of Hom_{A_I}(e_I A, N).

    At vertex ``v`` a function is a vector over ``slots[v]``: pairs
    ``(x, r)`` with tail(x) = v, head(x) in I, and ``r`` a coordinate of
    N at head(x).  ``kernel[v]`` is the standard-form solution basis and
    ``free[v]`` its free slots, so coordinates are entries at ``free[v]``.
    """

    algebra: FDAlgebra
    corner_set: frozenset[str]
    slice: FDModule
    slots: dict[str, list[tuple[int, int]]]
    slot_index: dict[str, dict[tuple[int, int], int]]
    kernel: dict[str, list[tuple]]
    free: dict[str, list[int]]
    module: FDModule = field(init=False)

    def coords(self, v: str, values: Sequence) -> tuple:
        return tuple(values[c] for c in self.free[v])

    def function(self, v: str, j: int) -> tuple:
        return self.kernel[v][j]


@functools.lru_cache(maxsize=512)
def _coinduction(N: FDModule, subset: frozenset[str]) -> Coinduction:
    A, s, emb = _check_slice(N, subset)
    corner = N.algebra
    zero = scalar(0)
    slots = {v: [] for v in A.vertices}
    for v in A.vertices:
        for x in A.by_tail[v]:
            hx = A.basis[x].head
            if hx in s:
                slots[v].extend((x, r) for r in range(N.dim_at(hx)))
    slot_index = {v: {sl: i for i, sl in enumerate(slots[v])} for v in A.vertices}
    kernel, free = {}, {}
    for v in A.vertices:
        n = len(slots[v])
        idx = slot_index[v]
        rows = []
        for hc in corner.generators:
            h = emb[hc]
            bh = A.basis[h]
            act_h = N.actions[hc]
            for x in A.by_head[bh.tail]:
                if A.basis[x].tail != v:
                    continue
                hx = A.product(h, x)
                for r in range(N.dim_at(bh.head)):
                    row = [zero] * n
                    for z, c in hx.items():
                        row[idx[(z, r)]] += c
                    for k, c in enumerate(act_h.rows[r]):
                        if c:
                            row[idx[(x, k)]] -= c
                    if any(row):
                        rows.append(row)
        m = Matrix(rows, n) if rows else Matrix.zeros(0, n)
        kernel[v] = kernel_basis(m)
        free[v] = free_columns(m)
    model = Coinduction(A, s, N, slots, slot_index, kernel, free)

    blocks = []
    for a, ba in enumerate(A.basis):
        src, tgt = ba.tail, ba.head
        cols = []
        for f in kernel[src]:
            g = []
            for x, r in slots[tgt]:
                val = zero
                for z, c in A.product(x, a).items():
                    val += c * f[slot_index[src][(z, r)]]
                g.append(val)
            cols.append(model.coords(tgt, g))
        blocks.append(Matrix.from_columns(cols, len(kernel[tgt])))
    dims = tuple(len(kernel[v]) for v in A.vertices)
    model.module = FDModule(A, dims, tuple(blocks)).validate()
    return model


def coinduce_model(N: FDModule, I) -> Coinduction:
    parent = N.algebra.parent
    if parent is None:
        raise AlgebraMismatch("module is not over a corner algebra")
    return _coinduction(N, corner_set(parent, I))


def coinduce(N: FDModule, I) -> FDModule:
    """j_*(N) = Hom_{A_I}(e_I A, N)."""
    return coinduce_model(N, I).module


def coinduce_hom(h: ModuleHom, I) -> ModuleHom:
    src, tgt = coinduce_model(h.source, I), coinduce_model(h.target, I)
    A = src.algebra
    maps = []
    for v in A.vertices:
        cols = []
        for f in src.kernel[v]:
            g = []
            for x, r in tgt.slots[v]:
                hx = h.at(A.basis[x].head).rows[r]
                total = scalar(0)
                for k, c in enumerate(hx):
                    if c:
                        total += c * f[src.slot_index[v][(x, k)]]
                g.append(total)
            cols.append(tgt.coords(v, g))
        maps.append(Matrix.from_columns(cols, len(tgt.kernel[v])))
    return ModuleHom(src.module, tgt.module, tuple(maps))


# -- canonical maps -----------------------------------------------------------------


def _nu_values(pres: Induction, model: Coinduction, local: dict, w: str, x: int, k: int) -> list:
    """Values of nu(x ⊗ n_k): a -> (a x) . n_k on the slots at w."""
    A = pres.algebra
    zero = scalar(0)
    cache: dict[int, tuple] = {}
    out = []
    for a, r in model.slots[w]:
        if a not in cache:
            vec = [zero] * pres.slice.dim_at(A.basis[a].head)
            for z, c in A.product(a, x).items():
                col = pres.slice.actions[local[z]].column(k)
                vec = [u + c * t for u, t in zip(vec, col)]
            cache[a] = tuple(vec)
        out.append(cache[a][r])
    return out


def nu(N: FDModule, I, check_descent: bool = True) -> ModuleHom:
    """The comparison map j_!(N) -> j_*(N), x ⊗ n -> (a -> (a x) . n)."""
    pres, model = induce_presentation(N, I), coinduce_model(N, I)
    A = pres.algebra
    local = {g: i for i, g in enumerate(N.algebra.embedding)}
    maps = []
    for w in A.vertices:
        if check_descent:
            values = [_nu_values(pres, model, local, w, x, k) for x, k in pres.gens[w]]
            for p, row in pres.balancing[w].rows.items():
                total = [scalar(0)] * len(model.slots[w])
                for g, c in row.items():
                    total = [t + c * u for t, u in zip(total, values[g])]
                if any(total):
                    raise DescentError(f"nu does not vanish on a balancing relation at vertex {w}")
        cols = [model.coords(w, _nu_values(pres, model, local, w, *pres.gens[w][p])) for p in pres.basis[w]]
        maps.append(Matrix.from_columns(cols, len(model.kernel[w])))
    return ModuleHom(pres.module, model.module, tuple(maps))


def counit(F: FDModule, I) -> ModuleHom:
    """j_! j* F -> F, x ⊗ f -> x . f."""
    pres = induce_presentation(restrict(F, I), I)
    A = F.algebra
    maps = []
    for w in A.vertices:
        cols = []
        for p in pres.basis[w]:
            x, k = pres.gens[w][p]
            cols.append(F.actions[x].column(k))
        maps.append(Matrix.from_columns(cols, F.dim_at(w)))
    return ModuleHom(pres.module, F, tuple(maps))


def unit(F: FDModule, I) -> ModuleHom:
    """F -> j_* j* F, f -> (a -> a . f)."""
    model = coinduce_model(restrict(F, I), I)
    A = F.algebra
    maps = []
    for v in A.vertices:
        cols = []
        for j in range(F.dim_at(v)):
            values = [F.actions[x].rows[r][j] for x, r in model.slots[v]]
            cols.append(model.coords(v, values))
        maps.append(Matrix.from_columns(cols, len(model.kernel[v])))
    return ModuleHom(F, model.module, tuple(maps))


def induction_unit(N: FDModule, I) -> ModuleHom:
    """N -> j* j_! N, n -> e ⊗ n."""
    pres = induce_presentation(N, I)
    A = pres.algebra
    target = restrict(pres.module, pres.corner_set)
    maps = []
    for v in N.algebra.vertices:
        e = A.idempotents[v]
        cols = [pres.coords(v, pres.generator(v, e, k)) for k in range(N.dim_at(v))]
        maps.append(Matrix.from_columns(cols, len(pres.basis[v])))
    return ModuleHom(N, target, tuple(maps))


def coinduction_counit(N: FDModule, I) -> ModuleHom:
    """j* j_* N -> N, f -> f(e)."""
    model = coinduce_model(N, I)
    A = model.algebra
    source = restrict(model.module, model.corner_set)
    maps = []
    for v in N.algebra.vertices:
        e = A.idempotents[v]
        idx = model.slot_index[v]
        cols = [tuple(f[idx[(e, r)]] for r in range(N.dim_at(v))) for f in model.kernel[v]]
        maps.append(Matrix.from_columns(cols, N.dim_at(v)))
    return ModuleHom(source, N, tuple(maps))


def psi(F: FDModule, c) -> ModuleHom:
    """⊕_t j_! j*_t F -> F: the sum of the counits."""
    cov = _covering(F.algebra, c)
    counits = [counit(F, I) for I in cov]
    return hom_from_sum(direct_sum([h.source for h in counits]), counits)


def phi(F: FDModule, c) -> ModuleHom:
    """F -> ⊕_t j_* j*_t F: the tuple of the units."""
    cov = _covering(F.algebra, c)
    units = [unit(F, I) for I in cov]
    return hom_into_sum(direct_sum([h.target for h in units]), units)


# -- splitting of Ψ on the regular module ------------------------------------------------


@dataclass(eq=False)
class Splitting:
    """A right-linear section P of Ψ: ⊕_t Ã_t -> A on the regular module."""

    algebra: FDAlgebra
    covering: Covering
    psi: ModuleHom
    maps: tuple[Matrix, ...]  # per vertex: A_j -> (⊕ Ã_t)_j
    presentations: tuple[Induction, ...]
    average: bool

    def composite(self) -> tuple[Matrix, ...]:
        return tuple(self.psi.maps[k] @ self.maps[k] for k in range(len(self.maps)))

    def is_section(self) -> bool:
        return all(m == Matrix.identity(m.nrows) for m in self.composite())

    def _right_on_sum(self, j: str, g: int) -> Matrix:
        A = self.algebra
        one = scalar(1)
        blocks = []
        for pres in self.presentations:
            cols = []
            for p in pres.basis[j]:
                x, k = pres.gens[j][p]
                s = A.basis[x].tail
                q = A.by_head[s][k]
                vec: dict = {}
                for z, c in A.product(q, g).items():
                    sparse_axpy(vec, c, {pres.position[j][(x, A.by_head[s].index(z))]: one})
                cols.append(pres.coords(j, vec))
            blocks.append(Matrix.from_columns(cols, len(pres.basis[j])))
        return block_diag(blocks)

    def _right_on_regular(self, j: str, g: int) -> Matrix:
        A = self.algebra
        row_of = {z: k for k, z in enumerate(A.by_head[j])}
        n = len(row_of)
        cols = []
        for p in A.by_head[j]:
            col = [scalar(0)] * n
            for z, c in A.product(p, g).items():
                col[row_of[z]] = c
            cols.append(col)
        return Matrix.from_columns(cols, n)

    def right_linearity_residuals(self) -> list[str]:
        """Check P(p a) = P(p) a for generators and idempotents a."""
        A = self.algebra
        out = []
        elems = list(A.generators) + list(A.idempotents.values())
        for k, j in enumerate(A.vertices):
            for g in elems:
                lhs = self.maps[k] @ self._right_on_regular(j, g)
                rhs = self._right_on_sum(j, g) @ self.maps[k]
                if lhs != rhs:
                    out.append(f"P is not right linear at vertex {j} for basis element {g}")
        return out


def splitting_P(algebra: FDAlgebra, c, average: bool = False) -> Splitting:
    """Section of Ψ.

    Each e_j A with j not distinguished goes to ``e_j ⊗ p`` in the first
    covering set containing j.  The distinguished block goes to the first
    set with weight 1, or with ``average=True`` to every set with weight
    1/k.
    """
    cov = _covering(algebra, c)
    R = regular_module(algebra)
    press = tuple(induce_presentation(restrict(R, I), I) for I in cov)
    Psi = psi(R, cov)
    k_sets = len(cov)
    maps = []
    for j in algebra.vertices:
        e = algebra.idempotents[j]
        dims = [len(p.basis[j]) for p in press]
        offs = list(itertools.accumulate([0] + dims))
        if j == algebra.source:
            targets = [(t, scalar(Fraction(1, k_sets))) for t in range(k_sets)] if average else [(0, scalar(1))]
        else:
            t = next(t for t, I in enumerate(cov) if j in I)
            targets = [(t, scalar(1))]
        cols = []
        for k in range(len(algebra.by_head[j])):
            col = [scalar(0)] * offs[-1]
            for t, wgt in targets:
                co = press[t].coords(j, press[t].generator(j, e, k))
                for i, val in enumerate(co):
                    col[offs[t] + i] += wgt * val
            cols.append(col)
        maps.append(Matrix.from_columns(cols, offs[-1]))
    return Splitting(algebra, cov, Psi, tuple(maps), press, average)


# -- slicing and reconstruction -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SliceBundle:
    algebra: FDAlgebra
    covering: Covering
    slices: tuple[FDModule, ...]
    provenance: str = "external"
    origin: FDModule | None = None

    def __post_init__(self):
        if len(self.slices) != len(self.covering):
            raise AlgebraMismatch("one slice per covering set is required")
        for I, N in zip(self.covering, self.slices):
            corner, _ = corner_algebra(self.algebra, I)
            if N.algebra is not corner:
                raise AlgebraMismatch(f"slice for {sorted(I)} is not over its corner algebra")


def slice_module(F: FDModule, c) -> SliceBundle:
    cov = _covering(F.algebra, c)
    return SliceBundle(F.algebra, cov, tuple(restrict(F, I) for I in cov), "sliced-from-module", F)


@dataclass(frozen=True, eq=False)
class Reconstruction:
    module: FDModule
    consistent: bool
    nu: ModuleHom
    inclusion: ModuleHom
    slice_checks: tuple[IsoResult, ...]
    matches_origin: bool | None = None


def reconstruct(bundle: SliceBundle) -> Reconstruction:
    """Rebuild a 0-generated module from its slices.

    The block sum of the maps nu(N_t) is evaluated on the diagonal
    generators ``(e_0 ⊗ g_t)_t``, one for each basis vector of the common
    source block, and the submodule they generate is returned.  The
    result is consistent when re-slicing it reproduces every input slice.
    """
    A = bundle.algebra
    cov = bundle.covering
    source_dims = {N.dim_at(A.source) for N in bundle.slices}
    if len(source_dims) != 1:
        raise AlgebraMismatch(f"slices disagree on the distinguished block: {sorted(source_dims)}")
    k = source_dims.pop()
    press = [induce_presentation(N, I) for N, I in zip(bundle.slices, cov)]
    nus = [nu(N, I) for N, I in zip(bundle.slices, cov)]
    S = direct_sum([h.source for h in nus])
    T = direct_sum([h.target for h in nus])
    total = hom_sum(S, T, nus)

    e0 = A.source_idempotent
    src_map = total.at(A.source)
    gens = []
    for j in range(k):
        d = []
        for pres in press:
            d.extend(pres.coords(A.source, pres.generator(A.source, e0, j)))
        image = src_map @ d
        vec = [scalar(0)] * T.dim
        o = T.offsets[A.source]
        vec[o:o + len(image)] = image
        gens.append(vec)
    spaces = submodule_spaces(T, gens)
    module = restrict_to_subspaces(T, spaces)
    incl = ModuleHom(module, T, tuple(Matrix.from_columns(list(spaces[v].basis), T.dim_at(v))
                                      for v in A.vertices))
    checks = tuple(is_isomorphic(restrict(module, I), N) for I, N in zip(cov, bundle.slices))
    consistent = all(r.yes for r in checks)
    matches = None
    if bundle.origin is not None:
        whole = is_isomorphic(module, bundle.origin)
        matches = whole.yes
        if is_zero_generated(bundle.origin) and (whole.no or any(r.no for r in checks)):
            raise ReconstructionError("reconstruction from slices of a 0-generated module failed")
    return Reconstruction(module, consistent, total, incl, checks, matches)


def compare_slices(F: FDModule, G: FDModule, c) -> list[IsoResult]:
    cov = _covering(F.algebra, c)
    return [is_isomorphic(restrict(F, I), restrict(G, I)) for I in cov]


def distinguishing_slice(F: FDModule, G: FDModule, c) -> int | None:
    """Index of the first slice on which F and G differ, else None.

    Raises :class:`CounterexampleError` when F and G are not isomorphic but
    every slice matches.
    """
    cov = _covering(F.algebra, c)
    results = compare_slices(F, G, cov)
    for t, r in enumerate(results):
        if r.no:
            return t
    if any(r.status == "inconclusive" for r in results):
        raise ModuleError("slice comparison inconclusive; cannot certify")
    whole = is_isomorphic(F, G)
    if whole.no:
        from .formats import counterexample_artifact
        raise CounterexampleError("non-isomorphic modules with isomorphic slices",
                                  counterexample_artifact(F, G, cov))
    return None


def distinguishes(F: FDModule, G: FDModule, c) -> bool:
    return distinguishing_slice(F, G, c) is not None
