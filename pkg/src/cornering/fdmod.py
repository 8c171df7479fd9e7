"""Finite-dimensional left modules over an :class:`FDAlgebra`.

A module stores one block matrix per algebra basis element: the block of
basis element ``x`` maps the space at ``tail(x)`` to the space at
``head(x)``.  The total space is the direct sum of the vertex spaces in the
algebra's vertex order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .algebra import FDAlgebra
from .exactla import (
    Matrix,
    Subspace,
    block_diag,
    hstack,
    inverse,
    kernel_basis,
    rank,
    rref,
    scalar,
    spin_closure,
    vstack,
)


class ModuleError(ValueError):
    pass


class RelationViolation(ModuleError):
    def __init__(self, message: str, relation=None, residual: Matrix | None = None):
        super().__init__(message)
        self.relation = relation
        self.residual = residual


@dataclass(frozen=True, eq=False)
class FDModule:
    algebra: FDAlgebra
    dims: tuple[int, ...]
    actions: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.vertex_index[v]]

    def dim_vector(self) -> dict[str, int]:
        return dict(zip(self.algebra.vertices, self.dims))

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, off = {}, 0
        for v, d in zip(self.algebra.vertices, self.dims):
            out[v] = off
            off += d
        return out

    def block(self, x: int) -> Matrix:
        return self.actions[x]

    def act_block(self, element: Mapping[int, object], tail: str, head: str) -> Matrix:
        """Block ``tail -> head`` of a general algebra element."""
        basis = self.algebra.basis
        terms = [(i, c) for i, c in element.items()
                 if c and basis[i].tail == tail and basis[i].head == head]
        if len(terms) == 1 and terms[0][1] == 1:
            return self.actions[terms[0][0]]
        nr, nc = self.dim_at(head), self.dim_at(tail)
        acc = [[scalar(0)] * nc for _ in range(nr)]
        for i, c in terms:
            for r, row in enumerate(self.actions[i].rows):
                out = acc[r]
                for k, a in enumerate(row):
                    if a:
                        out[k] = out[k] + c * a
        return Matrix._raw(tuple(tuple(r) for r in acc), nr, nc)

    def act(self, element) -> Matrix:
        """Action of a basis index or sparse element on the total space."""
        if isinstance(element, int):
            element = {element: scalar(1)}
        n = self.dim
        rows = [[scalar(0)] * n for _ in range(n)]
        for i, c in element.items():
            b = self.algebra.basis[i]
            blk = self.actions[i]
            r0, c0 = self.offsets[b.head], self.offsets[b.tail]
            for r in range(blk.nrows):
                row = rows[r0 + r]
                for s in range(blk.ncols):
                    if blk.rows[r][s]:
                        row[c0 + s] += c * blk.rows[r][s]
        return Matrix(rows, n)

    def split(self, vec: Sequence) -> dict[str, tuple]:
        return {v: tuple(vec[self.offsets[v]: self.offsets[v] + d])
                for v, d in zip(self.algebra.vertices, self.dims)}

    def check(self) -> list[str]:
        """Residual report: idempotents, shapes, and generator x basis products.

        Checking ``act(g) act(y) == act(g y)`` for generators ``g`` and all
        basis elements ``y`` proves multiplicativity on all pairs, since the
        generators and idempotents generate the algebra.
        """
        A = self.algebra
        problems = []
        for i, b in enumerate(A.basis):
            blk = self.actions[i]
            if blk.shape != (self.dim_at(b.head), self.dim_at(b.tail)):
                problems.append(f"block of basis element {i} has shape {blk.shape}")
        if problems:
            return problems
        for v, i in A.idempotents.items():
            if self.actions[i] != Matrix.identity(self.dim_at(v)):
                problems.append(f"e_{v} does not act as the identity on its block")
        for g in A.generators:
            bg = A.basis[g]
            for y in A.by_head[bg.tail]:
                by = A.basis[y]
                lhs = self.actions[g] @ self.actions[y]
                rhs = self.act_block(A.product(g, y), by.tail, bg.head)
                if lhs != rhs:
                    problems.append(f"act({g}) act({y}) != act({g}*{y})")
        return problems

    def check_all_pairs(self) -> list[str]:
        A = self.algebra
        problems = []
        for x in range(A.dim):
            bx = A.basis[x]
            for y in A.by_head[bx.tail]:
                by = A.basis[y]
                if self.actions[x] @ self.actions[y] != self.act_block(A.product(x, y), by.tail, bx.head):
                    problems.append(f"act({x}) act({y}) != act({x}*{y})")
        return problems

    def validate(self) -> "FDModule":
        problems = self.check()
        if problems:
            raise ModuleError("; ".join(problems[:5]))
        return self

    def __repr__(self):
        return f"FDModule(dims={self.dim_vector()})"


def _dims_tuple(algebra: FDAlgebra, dims) -> tuple[int, ...]:
    if isinstance(dims, Mapping):
        dims = {str(k): int(v) for k, v in dims.items()}
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            raise ModuleError(f"dimensions given for unknown vertices {sorted(unknown)}")
        out = tuple(dims.get(v, 0) for v in algebra.vertices)
    else:
        out = tuple(int(d) for d in dims)
        if len(out) != len(algebra.vertices):
            raise ModuleError("dimension vector length does not match the vertex count")
    if any(d < 0 for d in out):
        raise ModuleError("negative dimension")
    return out


def _as_matrix(m, rows: int, cols: int, label: str) -> Matrix:
    if not isinstance(m, Matrix):
        try:
            m = Matrix(m, cols)
        except (ValueError, TypeError) as exc:
            raise ModuleError(f"{label}: {exc}") from None
    if m.shape != (rows, cols):
        raise ModuleError(f"{label}: expected shape {(rows, cols)}, got {m.shape}")
    return m


def module_from_arrows(algebra: FDAlgebra, dims, arrow_matrices: Mapping[str, object]) -> FDModule:
    """Module from quiver arrow matrices; missing arrows act as zero.

    Raises :class:`RelationViolation` naming the first defining relation
    that does not act as zero, with its residual matrix.
    """
    q = algebra.quiver
    if q is None:
        raise ModuleError("module_from_arrows needs an algebra presented by a quiver")
    dims = _dims_tuple(algebra, dims)
    dim_at = dict(zip(algebra.vertices, dims))
    unknown = set(arrow_matrices) - {a.id for a in q.arrows}
    if unknown:
        raise ModuleError(f"matrices given for unknown arrows {sorted(unknown)}")
    mats = {}
    for a in q.arrows:
        m = arrow_matrices.get(a.id)
        if m is None:
            mats[a.id] = Matrix.zeros(dim_at[a.head], dim_at[a.tail])
        else:
            mats[a.id] = _as_matrix(m, dim_at[a.head], dim_at[a.tail], f"arrow {a.id}")

    def path_matrix(path) -> Matrix:
        out = Matrix.identity(dim_at[path.tail])
        for aid in reversed(path.arrows):
            out = mats[aid] @ out
        return out

    for k, rel in enumerate(algebra.relations):
        if not rel.terms:
            continue
        t, h = rel.ends
        res = Matrix.zeros(dim_at[h], dim_at[t])
        for c, p in rel.terms:
            if len(p) <= algebra.truncation:
                res = res + path_matrix(p).scale(c)
        if not res.is_zero():
            raise RelationViolation(f"relation {k} acts nonzero", rel, res)

    actions = tuple(path_matrix(b.path) for b in algebra.basis)
    module = FDModule(algebra, dims, actions)
    # arrows x basis closes the induction path -> normal form
    for a in q.arrows:
        for y in algebra.by_head[a.tail]:
            by = algebra.basis[y]
            prod = by.path.then(q.path((a.id,)))
            nf = algebra.normal_forms.get(prod, {}) if len(prod) <= algebra.truncation else {}
            lhs = mats[a.id] @ actions[y]
            rhs = module.act_block(nf, by.tail, a.head)
            if lhs != rhs:
                raise RelationViolation(
                    f"arrow {a.id} times basis element {y} does not match the truncated algebra",
                    None, lhs - rhs)
    return module


def module_from_actions(algebra: FDAlgebra, dims, actions: Mapping[int, object]) -> FDModule:
    """Module from blocks of every non-idempotent basis element (by index)."""
    dims = _dims_tuple(algebra, dims)
    dim_at = dict(zip(algebra.vertices, dims))
    blocks = []
    for i, b in enumerate(algebra.basis):
        if b.length == 0:
            blocks.append(Matrix.identity(dim_at[b.tail]))
        elif i in actions:
            blocks.append(_as_matrix(actions[i], dim_at[b.head], dim_at[b.tail], f"basis element {i}"))
        else:
            raise ModuleError(f"no action given for basis element {i} ({b.path})")
    return FDModule(algebra, dims, tuple(blocks)).validate()


def zero_module(algebra: FDAlgebra) -> FDModule:
    return FDModule(algebra, (0,) * len(algebra.vertices),
                    tuple(Matrix.zeros(0, 0) for _ in algebra.basis))


def _basis_column(algebra: FDAlgebra, members: list[int]) -> FDModule:
    """Left multiplication on span(members), a left ideal closed under A."""
    pos = {v: [] for v in algebra.vertices}
    for i in members:
        pos[algebra.basis[i].head].append(i)
    local = {i: k for v in pos for k, i in enumerate(pos[v])}
    dims = tuple(len(pos[v]) for v in algebra.vertices)
    blocks = []
    for a, ba in enumerate(algebra.basis):
        rows = [[scalar(0)] * len(pos[ba.tail]) for _ in pos[ba.head]]
        for s, p in enumerate(pos[ba.tail]):
            for k, c in algebra.product(a, p).items():
                rows[local[k]][s] = c
        blocks.append(Matrix(rows, len(pos[ba.tail])))
    return FDModule(algebra, dims, tuple(blocks))


def regular_module(algebra: FDAlgebra) -> FDModule:
    """Left regular module; the block at v is spanned by basis elements with head v."""
    return _basis_column(algebra, list(range(algebra.dim)))


def regular_column(algebra: FDAlgebra, v: str) -> FDModule:
    """The projective summand A e_v (paths with tail v)."""
    return _basis_column(algebra, list(algebra.by_tail[str(v)]))


def column_positions(algebra: FDAlgebra, members: Sequence[int]) -> dict[int, tuple[str, int]]:
    """Basis index -> (vertex, position in block) for a basis-column module."""
    pos = {v: 0 for v in algebra.vertices}
    out = {}
    for i in sorted(members, key=lambda k: (algebra.vertex_index[algebra.basis[k].head], k)):
        v = algebra.basis[i].head
        out[i] = (v, pos[v])
        pos[v] += 1
    return out


def simple_module(algebra: FDAlgebra, v: str) -> FDModule:
    dims = tuple(1 if w == str(v) else 0 for w in algebra.vertices)
    blocks = []
    for b in algebra.basis:
        d = 1 if b.length == 0 and b.tail == str(v) else 0
        blocks.append(Matrix.identity(1) if d else
                      Matrix.zeros(dims[algebra.vertex_index[b.head]], dims[algebra.vertex_index[b.tail]]))
    return FDModule(algebra, dims, tuple(blocks))


def is_zero_generated(module: FDModule) -> bool:
    """Whether the distinguished-vertex block generates the module.

    The zero module counts as 0-generated.
    """
    A = module.algebra
    s = A.source
    for w in A.vertices:
        d = module.dim_at(w)
        if d == 0:
            continue
        cols = [module.actions[x] for x in A.by_tail[s] if A.basis[x].head == w]
        if not cols:
            return False
        if rank(hstack(cols, d)) < d:
            return False
    return True


# -- homomorphisms ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FDModule
    target: FDModule
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise ModuleError("homomorphism between modules over different algebras")
        for v, m in zip(self.source.algebra.vertices, self.maps):
            if m.shape != (self.target.dim_at(v), self.source.dim_at(v)):
                raise ModuleError(f"map at vertex {v} has shape {m.shape}")

    @classmethod
    def from_blocks(cls, source: FDModule, target: FDModule, blocks: Mapping[str, object]) -> "ModuleHom":
        maps = []
        for v in source.algebra.vertices:
            m = blocks.get(v)
            maps.append(Matrix.zeros(target.dim_at(v), source.dim_at(v)) if m is None
                        else _as_matrix(m, target.dim_at(v), source.dim_at(v), f"vertex {v}"))
        return cls(source, target, tuple(maps))

    @classmethod
    def identity(cls, module: FDModule) -> "ModuleHom":
        return cls(module, module, tuple(Matrix.identity(d) for d in module.dims))

    @classmethod
    def zero(cls, source: FDModule, target: FDModule) -> "ModuleHom":
        return cls(source, target, tuple(Matrix.zeros(t, s) for s, t in zip(source.dims, target.dims)))

    def at(self, v: str) -> Matrix:
        return self.maps[self.source.algebra.vertex_index[v]]

    def matrix(self) -> Matrix:
        return block_diag(self.maps)

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target.dims != self.source.dims or other.target.algebra is not self.source.algebra:
            raise ModuleError("composition of incompatible homomorphisms")
        return ModuleHom(other.source, self.target, tuple(a @ b for a, b in zip(self.maps, other.maps)))

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, tuple(a + b for a, b in zip(self.maps, other.maps)))

    def scale(self, c) -> "ModuleHom":
        return ModuleHom(self.source, self.target, tuple(m.scale(c) for m in self.maps))

    def same_matrices(self, other: "ModuleHom") -> bool:
        return self.maps == other.maps

    def residual(self, other: "ModuleHom") -> int:
        """Number of nonzero entries of self - other."""
        return sum(1 for a, b in zip(self.maps, other.maps) for r, s in zip(a.rows, b.rows)
                   for x, y in zip(r, s) if x != y)

    def is_identity(self) -> bool:
        return all(m == Matrix.identity(m.nrows) and m.nrows == m.ncols for m in self.maps)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def rank(self) -> int:
        return sum(rank(m) for m in self.maps)

    def kernel_dim(self) -> int:
        return self.source.dim - self.rank()

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def check(self) -> list[str]:
        A = self.source.algebra
        problems = []
        for g in A.generators:
            b = A.basis[g]
            if self.at(b.head) @ self.source.actions[g] != self.target.actions[g] @ self.at(b.tail):
                problems.append(f"does not commute with basis element {g} ({b.path})")
        return problems

    def is_homomorphism(self) -> bool:
        return not self.check()


def hom_space(M: FDModule, N: FDModule) -> list[ModuleHom]:
    """Basis of Hom_A(M, N)."""
    A = M.algebra
    if N.algebra is not A:
        raise ModuleError("modules over different algebras")
    offs, n = {}, 0
    for v in A.vertices:
        offs[v] = n
        n += N.dim_at(v) * M.dim_at(v)
    if n == 0:
        return []

    def var(v, r, c):
        return offs[v] + r * M.dim_at(v) + c

    rows = []
    for g in A.generators:
        b = A.basis[g]
        s, t = b.tail, b.head
        Mg, Ng = M.actions[g], N.actions[g]
        # (N_g H_s - H_t M_g)[r, c] = 0
        for r in range(N.dim_at(t)):
            for c in range(M.dim_at(s)):
                row = [scalar(0)] * n
                for k in range(N.dim_at(s)):
                    if Ng.rows[r][k]:
                        row[var(s, k, c)] += Ng.rows[r][k]
                for k in range(M.dim_at(t)):
                    if Mg.rows[k][c]:
                        row[var(t, r, k)] -= Mg.rows[k][c]
                if any(row):
                    rows.append(row)
    sol = kernel_basis(Matrix(rows, n)) if rows else [
        tuple(scalar(1) if i == j else scalar(0) for i in range(n)) for j in range(n)]
    out = []
    for vec in sol:
        maps = []
        for v in A.vertices:
            dm, dn = M.dim_at(v), N.dim_at(v)
            maps.append(Matrix([[vec[var(v, r, c)] for c in range(dm)] for r in range(dn)], dm))
        out.append(ModuleHom(M, N, tuple(maps)))
    return out


# -- constructions -----------------------------------------------------------------


def direct_sum(modules: Sequence[FDModule]) -> FDModule:
    """Direct sum; at each vertex the summands appear in list order."""
    if not modules:
        raise ModuleError("empty direct sum")
    A = modules[0].algebra
    if any(m.algebra is not A for m in modules):
        raise ModuleError("direct sum of modules over different algebras")
    dims = tuple(sum(m.dims[k] for m in modules) for k in range(len(A.vertices)))
    actions = tuple(block_diag([m.actions[i] for m in modules]) for i in range(A.dim))
    return FDModule(A, dims, actions)


def hom_from_sum(source: FDModule, parts: Sequence[ModuleHom]) -> ModuleHom:
    """Map out of a direct sum given by its restriction to each summand."""
    target = parts[0].target
    maps = tuple(hstack([p.maps[k] for p in parts], target.dims[k])
                 for k in range(len(target.dims)))
    return ModuleHom(source, target, maps)


def hom_into_sum(target: FDModule, parts: Sequence[ModuleHom]) -> ModuleHom:
    """Map into a direct sum given by its components."""
    source = parts[0].source
    maps = tuple(vstack([p.maps[k] for p in parts], source.dims[k])
                 for k in range(len(source.dims)))
    return ModuleHom(source, target, maps)


def hom_sum(source: FDModule, target: FDModule, parts: Sequence[ModuleHom]) -> ModuleHom:
    """Block-diagonal direct sum of homomorphisms."""
    maps = tuple(block_diag([p.maps[k] for p in parts]) for k in range(len(source.dims)))
    return ModuleHom(source, target, maps)


def restrict_to_subspaces(module: FDModule, spaces: Mapping[str, Subspace]) -> FDModule:
    """Module structure on an invariant family of per-vertex subspaces."""
    A = module.algebra
    dims = tuple(spaces[v].dim for v in A.vertices)
    blocks = []
    for i, b in enumerate(A.basis):
        src, tgt = spaces[b.tail], spaces[b.head]
        cols = []
        for vec in src.basis:
            img = module.actions[i] @ vec
            try:
                cols.append(tgt.coords(img))
            except ValueError:
                raise ModuleError(f"subspaces are not invariant under basis element {i}") from None
        blocks.append(Matrix.from_columns(cols, tgt.dim))
    return FDModule(A, dims, tuple(blocks))


def submodule_spaces(module: FDModule, vectors: Sequence[Sequence]) -> dict[str, Subspace]:
    """Per-vertex pieces of the submodule generated by total-space vectors."""
    A = module.algebra
    ops = [module.act(g) for g in A.generators] + [module.act(e) for e in A.idempotents.values()]
    closure = spin_closure(vectors, ops, module.dim)
    out = {}
    for v in A.vertices:
        o, d = module.offsets[v], module.dim_at(v)
        out[v] = Subspace([vec[o:o + d] for vec in closure if any(vec[o:o + d])], d)
    return out


def submodule(module: FDModule, vectors: Sequence[Sequence]) -> FDModule:
    return restrict_to_subspaces(module, submodule_spaces(module, vectors))


def image_with_maps(h: ModuleHom) -> tuple[FDModule, ModuleHom, ModuleHom]:
    """Image module, the corestriction ``source -> im`` and the inclusion ``im -> target``."""
    A = h.source.algebra
    spaces = {v: Subspace(h.at(v).columns(), h.target.dim_at(v)) for v in A.vertices}
    im = restrict_to_subspaces(h.target, spaces)
    cores = ModuleHom(h.source, im, tuple(
        Matrix.from_columns([spaces[v].coords(c) for c in h.at(v).columns()], spaces[v].dim)
        for v in A.vertices))
    incl = ModuleHom(im, h.target, tuple(
        Matrix.from_columns(list(spaces[v].basis), h.target.dim_at(v)) for v in A.vertices))
    return im, cores, incl


def image_module(h: ModuleHom) -> FDModule:
    return image_with_maps(h)[0]


def quotient_module(module: FDModule, spaces: Mapping[str, Subspace]) -> FDModule:
    """M / U for an invariant family of per-vertex subspaces U."""
    A = module.algebra
    keep = {v: spaces[v].complement_columns() for v in A.vertices}
    dims = tuple(len(keep[v]) for v in A.vertices)
    blocks = []
    for i, b in enumerate(A.basis):
        blk = module.actions[i]
        for vec in spaces[b.tail].basis:
            if any(spaces[b.head].reduce(blk @ vec)):
                raise ModuleError(f"subspaces are not invariant under basis element {i}")
        cols = []
        for c in keep[b.tail]:
            img = spaces[b.head].reduce(blk.column(c))
            cols.append(tuple(img[k] for k in keep[b.head]))
        blocks.append(Matrix.from_columns(cols, len(keep[b.head])))
    return FDModule(A, dims, tuple(blocks))


def dim_vector(module: FDModule) -> dict[str, int]:
    return module.dim_vector()


def act(module: FDModule, element) -> Matrix:
    return module.act(element)


# -- isomorphism ---------------------------------------------------------------------


@dataclass(frozen=True)
class IsoResult:
    status: str  # "yes", "no" or "inconclusive"
    witness: ModuleHom | None = None
    reason: str = ""
    method: str = ""

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"


def evaluation_matrix(module: FDModule) -> tuple[Matrix, list[int]]:
    """Columns x.g for basis elements x with tail at the source, g the
    single source basis vector; rows index the total space."""
    A = module.algebra
    xs = list(A.by_tail[A.source])
    cols = []
    for x in xs:
        b = A.basis[x]
        col = [scalar(0)] * module.dim
        o = module.offsets[b.head]
        for r, val in enumerate(module.actions[x].column(0)):
            col[o + r] = val
        cols.append(col)
    return Matrix.from_columns(cols, module.dim), xs


def annihilator(module: FDModule) -> Subspace:
    """Kernel of A e_0 -> M, x -> x.g (source block must be 1-dimensional)."""
    if module.dim_at(module.algebra.source) != 1:
        raise ModuleError("annihilator needs a 1-dimensional source block")
    ev, xs = evaluation_matrix(module)
    return Subspace(kernel_basis(ev), len(xs))


def _cyclic_witness(M: FDModule, N: FDModule) -> ModuleHom:
    """The map x.g_M -> x.g_N, assuming equal annihilators."""
    A = M.algebra
    evM, xs = evaluation_matrix(M)
    evN, _ = evaluation_matrix(N)
    maps = []
    for v in A.vertices:
        d = M.dim_at(v)
        o = M.offsets[v]
        cols = [k for k, x in enumerate(xs) if A.basis[x].head == v]
        sub_m = Matrix([[evM.rows[o + r][k] for k in cols] for r in range(d)], len(cols))
        _, piv = rref(sub_m)
        chosen = [cols[p] for p in piv]
        bm = Matrix([[evM.rows[o + r][k] for k in chosen] for r in range(d)], d)
        on = N.offsets[v]
        bn = Matrix([[evN.rows[on + r][k] for k in chosen] for r in range(N.dim_at(v))], d)
        maps.append(bn @ inverse(bm) if d else Matrix.zeros(N.dim_at(v), 0))
    return ModuleHom(M, N, tuple(maps))


def _is_invertible(h: ModuleHom) -> bool:
    return all(m.nrows == m.ncols and rank(m) == m.nrows for m in h.maps)


def is_isomorphic(M: FDModule, N: FDModule, tries: int = 24) -> IsoResult:
    """Decide M ≅ N.

    Exact for pairs of 0-generated modules with 1-dimensional source block:
    such modules are A e_0 modulo the annihilator of their generator, and a
    rescaling of the generator does not change it.  Otherwise a witness is
    searched among fixed combinations of a Hom basis; Hom-dimension
    mismatches give a certain "no", anything else is "inconclusive".
    """
    A = M.algebra
    if N.algebra is not A:
        raise ModuleError("modules over different algebras")
    if M.dims != N.dims:
        return IsoResult("no", reason=f"dimension vectors differ: {M.dims} vs {N.dims}", method="dims")
    if M.dim == 0:
        return IsoResult("yes", ModuleHom.identity(M), method="dims")
    zM, zN = is_zero_generated(M), is_zero_generated(N)
    if zM != zN:
        return IsoResult("no", reason="only one module is 0-generated", method="generation")
    if zM and M.dim_at(A.source) == 1:
        aM, aN = annihilator(M), annihilator(N)
        if aM != aN:
            return IsoResult("no", reason="annihilators of the generators differ", method="annihilator")
        w = _cyclic_witness(M, N)
        if not (w.is_homomorphism() and _is_invertible(w)):
            raise AssertionError("annihilator witness failed to be an isomorphism")
        return IsoResult("yes", w, method="annihilator")

    hmn = hom_space(M, N)
    hnm, em, en = hom_space(N, M), hom_space(M, M), hom_space(N, N)
    if not (len(hmn) == len(hnm) == len(em) == len(en)):
        return IsoResult("no", reason=f"Hom dimensions {len(hmn)}, {len(hnm)}, {len(em)}, {len(en)} differ",
                         method="hom-dims")
    rng = random.Random(0)
    candidates = [[1 if i == j else 0 for i in range(len(hmn))] for j in range(len(hmn))]
    candidates += [[rng.randint(-5, 5) for _ in hmn] for _ in range(tries)]
    for coeffs in candidates:
        h = ModuleHom.zero(M, N)
        for c, b in zip(coeffs, hmn):
            if c:
                h = h + b.scale(c)
        if _is_invertible(h):
            return IsoResult("yes", h, method="generic-combination")
    return IsoResult("inconclusive", reason="no invertible combination found", method="generic-combination")
