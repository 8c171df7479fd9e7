"""Finite-dimensional quotients of path algebras and their corners.

Paths compose right to left: the word ``(a_k, ..., a_1)`` first applies
``a_1`` and requires ``head(a_i) == tail(a_{i+1})``.  Words are stored and
serialized in that written order (leftmost arrow applied last), so a path
acts on a left module by the matrix product ``M[a_k] @ ... @ M[a_1]``.

:func:`truncated_algebra` realizes ``kQ / (I + J^(L+1))`` with ``J`` the
arrow ideal.  The ideal is computed as the spin closure of the relation
vectors under left and right multiplication by arrows; the quotient basis
consists of the paths that are not pivots, with long paths ordered first so
that coset representatives are as short as possible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactla import Echelon, get_field, scalar, sparse_axpy, spin_sparse


class QuiverError(ValueError):
    pass


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with one distinguished vertex ``source``.

    ``involution`` optionally pairs each arrow ``a`` with its reverse ``a*``
    (needed for preprojective relations).
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    source: str
    involution: Mapping[str, str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "source", str(self.source))
        arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
            for a in self.arrows
        )
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        if self.source not in self.vertices:
            raise QuiverError(f"distinguished vertex {self.source!r} is not a vertex")
        ids = [a.id for a in arrows]
        if len(set(ids)) != len(ids):
            raise QuiverError("duplicate arrow ids")
        for a in arrows:
            if a.tail not in self.vertices or a.head not in self.vertices:
                raise QuiverError(f"arrow {a.id!r} has an endpoint outside the vertex set")
        if self.involution is not None:
            inv = dict(self.involution)
            for a, b in inv.items():
                if a not in ids or b not in ids or inv.get(b) != a:
                    raise QuiverError(f"involution is not an involution at {a!r}")
                if self.arrow(a).tail != self.arrow(b).head or self.arrow(a).head != self.arrow(b).tail:
                    raise QuiverError(f"{a!r} and {b!r} are not reverse to each other")
            object.__setattr__(self, "involution", inv)

    @cached_property
    def _by_id(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def arrow(self, aid: str) -> Arrow:
        try:
            return self._by_id[aid]
        except KeyError:
            raise QuiverError(f"unknown arrow {aid!r}") from None

    def path(self, word: Sequence[str], vertex: str | None = None) -> "Path":
        """Path for a written word; ``vertex`` is required for a trivial path."""
        word = tuple(word)
        if not word:
            if vertex is None:
                raise QuiverError("a trivial path needs its vertex")
            vertex = str(vertex)
            if vertex not in self.vertices:
                raise QuiverError(f"unknown vertex {vertex!r}")
            return Path(vertex, vertex, ())
        arrows = [self.arrow(a) for a in word]
        for later, earlier in zip(arrows, arrows[1:]):
            if earlier.head != later.tail:
                raise QuiverError(f"word {list(word)} is not composable at {earlier.id}->{later.id}")
        return Path(arrows[-1].tail, arrows[0].head, word)


@dataclass(frozen=True, order=True)
class Path:
    tail: str
    head: str
    arrows: tuple[str, ...]

    def __len__(self):
        return len(self.arrows)

    def then(self, other: "Path") -> "Path | None":
        """``other * self``: apply self first, then other."""
        if self.head != other.tail:
            return None
        return Path(self.tail, other.head, other.arrows + self.arrows)

    def __str__(self):
        return "e_" + self.tail if not self.arrows else "*".join(self.arrows)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths."""

    terms: tuple[tuple[object, Path], ...]

    def __post_init__(self):
        merged: dict[Path, object] = {}
        for c, p in self.terms:
            merged[p] = merged.get(p, 0) + scalar(c)
        terms = tuple((c, p) for p, c in merged.items() if c)
        ends = {(p.tail, p.head) for _, p in terms}
        if len(ends) > 1:
            raise RelationError(f"relation terms are not parallel: {sorted(ends)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_words(cls, quiver: Quiver, terms: Iterable[tuple[object, Sequence[str]]]) -> "Relation":
        terms = [(c, tuple(w)) for c, w in terms]
        paths = [quiver.path(w) for _, w in terms if w]
        ends = {(p.tail, p.head) for p in paths}
        if len(ends) > 1:
            raise RelationError(f"relation terms are not parallel: {sorted(ends)}")
        out = []
        for c, w in terms:
            if w:
                out.append((c, quiver.path(w)))
            else:
                if not ends or next(iter(ends))[0] != next(iter(ends))[1]:
                    raise RelationError("a trivial-path term needs a parallel loop term")
                out.append((c, quiver.path((), next(iter(ends))[0])))
        return cls(tuple(out))

    @property
    def ends(self) -> tuple[str, str] | None:
        return (self.terms[0][1].tail, self.terms[0][1].head) if self.terms else None


@dataclass(frozen=True)
class BasisElement:
    tail: str
    head: str
    path: Path

    @property
    def length(self) -> int:
        return len(self.path)


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    """Finite-dimensional algebra with a basis graded by (tail, head).

    ``mult[(i, j)]`` is the sparse product ``basis[i] * basis[j]`` (apply
    ``j`` first); missing pairs multiply to zero.  Instances compare and
    hash by identity.
    """

    vertices: tuple[str, ...]
    source: str
    basis: tuple[BasisElement, ...]
    mult: Mapping[tuple[int, int], Mapping[int, object]]
    quiver: Quiver | None = None
    relations: tuple[Relation, ...] = ()
    truncation: int | None = None
    parent: "FDAlgebra | None" = None
    embedding: tuple[int, ...] | None = None
    normal_forms: Mapping[Path, Mapping[int, object]] | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def idempotents(self) -> dict[str, int]:
        out = {}
        for i, b in enumerate(self.basis):
            if b.length == 0:
                out[b.tail] = i
        return out

    @property
    def source_idempotent(self) -> int:
        return self.idempotents[self.source]

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def by_tail(self) -> dict[str, list[int]]:
        out = {v: [] for v in self.vertices}
        for i, b in enumerate(self.basis):
            out[b.tail].append(i)
        return out

    @cached_property
    def by_head(self) -> dict[str, list[int]]:
        out = {v: [] for v in self.vertices}
        for i, b in enumerate(self.basis):
            out[b.head].append(i)
        return out

    @cached_property
    def by_ends(self) -> dict[tuple[str, str], list[int]]:
        out: dict[tuple[str, str], list[int]] = {}
        for i, b in enumerate(self.basis):
            out.setdefault((b.tail, b.head), []).append(i)
        return out

    def product(self, i: int, j: int) -> Mapping[int, object]:
        return self.mult.get((i, j), {})

    def multiply(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.mult.get((i, j))
                if p:
                    sparse_axpy(out, a * b, p)
        return out

    def one(self) -> dict[int, object]:
        return {i: scalar(1) for i in self.idempotents.values()}

    def element(self, word: Sequence[str], vertex: str | None = None) -> dict[int, object]:
        """Coordinates of a path (written word) in the basis."""
        if self.normal_forms is None or self.quiver is None:
            raise QuiverError("this algebra has no quiver presentation")
        path = self.quiver.path(word, vertex)
        if len(path) > self.truncation:
            return {}
        return dict(self.normal_forms[path])

    def index_of(self, word: Sequence[str], vertex: str | None = None) -> int:
        """Basis index whose representative is the given path."""
        path = self.quiver.path(word, vertex) if self.quiver else None
        for i, b in enumerate(self.basis):
            if b.path == path:
                return i
        raise KeyError(f"{word!r} is not a basis representative")

    @cached_property
    def radical(self) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.length > 0]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Radical basis elements spanning a complement of J^2 in J.

        Together with the idempotents they generate the algebra, because J
        (spanned by positive-length paths) is nilpotent.
        """
        ech = Echelon()
        rad = self.radical
        for i in rad:
            for j in rad:
                p = self.mult.get((i, j))
                if p:
                    ech.add(p)
        gens = []
        for i in sorted(rad, key=lambda k: (self.basis[k].length, k)):
            if ech.add({i: scalar(1)}) is not None:
                gens.append(i)
        return tuple(sorted(gens))

    def check(self) -> list[str]:
        """Verify unit, orthogonal idempotents, grading and associativity."""
        problems = []
        one = self.one()
        for i in range(self.dim):
            x = {i: scalar(1)}
            if self.multiply(one, x) != x or self.multiply(x, one) != x:
                problems.append(f"unit fails on basis element {i}")
        for u, iu in self.idempotents.items():
            for v, iv in self.idempotents.items():
                expect = {iu: scalar(1)} if u == v else {}
                if dict(self.product(iu, iv)) != expect:
                    problems.append(f"e_{u} e_{v} is wrong")
        for (i, j), p in self.mult.items():
            bi, bj = self.basis[i], self.basis[j]
            if bi.tail != bj.head:
                problems.append(f"product {i}*{j} violates grading")
            for k in p:
                bk = self.basis[k]
                if (bk.tail, bk.head) != (bj.tail, bi.head):
                    problems.append(f"product {i}*{j} has a term outside e_head A e_tail")
        for i in range(self.dim):
            for j in self.by_head[self.basis[i].tail]:
                ij = self.product(i, j)
                for k in self.by_head[self.basis[j].tail]:
                    left = self.multiply(ij, {k: scalar(1)})
                    right = self.multiply({i: scalar(1)}, self.product(j, k))
                    if left != right:
                        problems.append(f"associativity fails on ({i},{j},{k})")
        return problems

    def describe(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "source": self.source,
            "dim": self.dim,
            "truncation_level": self.truncation,
            "basis": [
                {"tail": b.tail, "head": b.head, "path": list(b.path.arrows)} for b in self.basis
            ],
            "dims_by_tail": {v: len(self.by_tail[v]) for v in self.vertices},
        }


def enumerate_paths(quiver: Quiver, max_length: int) -> list[Path]:
    """All paths of length <= max_length; trivial paths first."""
    out = [Path(v, v, ()) for v in quiver.vertices]
    frontier = [p for p in out]
    outgoing: dict[str, list[Arrow]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        outgoing[a.tail].append(a)
    for _ in range(max_length):
        nxt = []
        for p in frontier:
            for a in outgoing[p.head]:
                nxt.append(Path(p.tail, a.head, (a.id,) + p.arrows))
        out.extend(nxt)
        frontier = nxt
    return out


def truncated_algebra(quiver: Quiver, relations: Sequence[Relation], truncation: int) -> FDAlgebra:
    """The algebra kQ / (I + J^(L+1)) with its quotient basis."""
    if truncation < 1:
        raise ValueError("truncation level must be at least 1")
    relations = tuple(relations)
    for r in relations:
        for _, p in r.terms:
            for a in p.arrows:
                quiver.arrow(a)
    paths = enumerate_paths(quiver, truncation)
    arrow_order = {a.id: k for k, a in enumerate(quiver.arrows)}
    # long paths first: pivots land on them, so representatives stay short
    paths.sort(key=lambda p: (-len(p), [arrow_order[a] for a in p.arrows], p.tail))
    col = {p: k for k, p in enumerate(paths)}

    def left_by(a: Arrow):
        def op(v):
            out = {}
            for k, c in v.items():
                p = paths[k]
                if p.head == a.tail and len(p) < truncation:
                    out[col[Path(p.tail, a.head, (a.id,) + p.arrows)]] = c
            return out
        return op

    def right_by(a: Arrow):
        def op(v):
            out = {}
            for k, c in v.items():
                p = paths[k]
                if p.tail == a.head and len(p) < truncation:
                    out[col[Path(a.tail, p.head, p.arrows + (a.id,))]] = c
            return out
        return op

    seeds = []
    for r in relations:
        v = {col[p]: c for c, p in r.terms if len(p) <= truncation}
        if v:
            seeds.append(v)
    ops = [left_by(a) for a in quiver.arrows] + [right_by(a) for a in quiver.arrows]
    ideal = spin_sparse(seeds, ops)

    pivots = set(ideal.pivots)
    survivors = [k for k in range(len(paths)) if k not in pivots]
    survivors.sort(key=lambda k: (len(paths[k]), quiver.vertices.index(paths[k].tail),
                                  quiver.vertices.index(paths[k].head), k))
    basis_of_col = {k: i for i, k in enumerate(survivors)}
    basis = tuple(BasisElement(paths[k].tail, paths[k].head, paths[k]) for k in survivors)

    normal_forms: dict[Path, dict[int, object]] = {}
    for k, p in enumerate(paths):
        red = ideal.reduce({k: scalar(1)})
        normal_forms[p] = {basis_of_col[c]: a for c, a in red.items()}

    mult: dict[tuple[int, int], dict[int, object]] = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            prod = bj.path.then(bi.path)
            if prod is None or len(prod) > truncation:
                continue
            nf = normal_forms[prod]
            if nf:
                mult[(i, j)] = nf
    return FDAlgebra(
        vertices=quiver.vertices,
        source=quiver.source,
        basis=basis,
        mult=mult,
        quiver=quiver,
        relations=relations,
        truncation=truncation,
        normal_forms=normal_forms,
    )


def corner_set(algebra: FDAlgebra, vertices: Iterable) -> frozenset[str]:
    """Validate a corner set: existing vertices including the distinguished one."""
    s = frozenset(str(v) for v in vertices)
    unknown = s - set(algebra.vertices)
    if unknown:
        raise QuiverError(f"unknown vertices {sorted(unknown)}")
    if algebra.source not in s:
        raise QuiverError(f"corner set {sorted(s)} misses the distinguished vertex {algebra.source!r}")
    return s


@functools.lru_cache(maxsize=512)
def _corner(algebra: FDAlgebra, subset: frozenset[str]) -> FDAlgebra:
    keep = [i for i, b in enumerate(algebra.basis) if b.tail in subset and b.head in subset]
    new = {old: k for k, old in enumerate(keep)}
    mult = {}
    for (i, j), p in algebra.mult.items():
        if i in new and j in new:
            mult[(new[i], new[j])] = {new[k]: c for k, c in p.items()}
    return FDAlgebra(
        vertices=tuple(v for v in algebra.vertices if v in subset),
        source=algebra.source,
        basis=tuple(algebra.basis[i] for i in keep),
        mult=mult,
        quiver=None,
        truncation=algebra.truncation,
        parent=algebra,
        embedding=tuple(keep),
    )


def corner_algebra(algebra: FDAlgebra, vertices: Iterable) -> tuple[FDAlgebra, tuple[int, ...]]:
    """The corner e_I A e_I and the embedding of its basis into A's basis.

    Repeated calls with the same set return the same object.
    """
    sub = _corner(algebra, corner_set(algebra, vertices))
    return sub, sub.embedding


# -- framed McKay quivers -------------------------------------------------------

INFINITY = "∞"


def framed_mckay_quiver(m: int) -> Quiver:
    """Framed McKay quiver of the cyclic group Z/m in SL(2).

    Vertices are ``∞, 0, ..., m-1``; ``∞`` is distinguished.  Arrow ``x{i}``
    goes ``i -> i+1`` and ``x{i}*`` goes back; ``b: ∞ -> 0`` and ``b*``.
    """
    if m < 2:
        raise ValueError("group order must be at least 2")
    verts = (INFINITY,) + tuple(str(i) for i in range(m))
    arrows = []
    inv = {}
    for i in range(m):
        j = (i + 1) % m
        arrows.append(Arrow(f"x{i}", str(i), str(j)))
        arrows.append(Arrow(f"x{i}*", str(j), str(i)))
        inv[f"x{i}"], inv[f"x{i}*"] = f"x{i}*", f"x{i}"
    arrows += [Arrow("b", INFINITY, "0"), Arrow("b*", "0", INFINITY)]
    inv["b"], inv["b*"] = "b*", "b"
    return Quiver(verts, tuple(arrows), INFINITY, inv)


def default_signs(quiver: Quiver) -> dict[str, int]:
    """+1 on unstarred arrows, -1 on their partners."""
    if quiver.involution is None:
        raise QuiverError("quiver has no arrow involution")
    signs = {}
    for a in quiver.arrows:
        if a.id in signs:
            continue
        signs[a.id] = 1
        signs[quiver.involution[a.id]] = -1
    return signs


def preprojective_relations(quiver: Quiver, signs: Mapping[str, int] | None = None) -> list[Relation]:
    """One relation per vertex i: sum over arrows a with head i of sign(a) a a*."""
    if quiver.involution is None:
        raise QuiverError("quiver has no arrow involution")
    signs = default_signs(quiver) if signs is None else dict(signs)
    for a in quiver.arrows:
        s, t = signs.get(a.id), signs.get(quiver.involution[a.id])
        if s not in (1, -1) or t not in (1, -1) or s == t:
            raise RelationError(f"signs must be ±1 and differ on {a.id} and its partner")
    rels = []
    for v in quiver.vertices:
        terms = [(signs[a.id], quiver.path((a.id, quiver.involution[a.id])))
                 for a in quiver.arrows if a.head == v]
        rels.append(Relation(tuple(terms)))
    return rels


def kill_arrows(quiver: Quiver, relations: Sequence[Relation], arrows: Iterable[str]) -> list[Relation]:
    out = list(relations)
    for a in arrows:
        out.append(Relation(((1, quiver.path((a,))),)))
    return out


def _field_key():
    f = get_field()
    return getattr(f, "p", 0)


@functools.lru_cache(maxsize=32)
def _mckay(m: int, truncation: int, killed: tuple[str, ...], field_key: int) -> FDAlgebra:
    q = framed_mckay_quiver(m)
    rels = kill_arrows(q, preprojective_relations(q), killed)
    return truncated_algebra(q, rels, truncation)


def mckay_algebra(m: int, truncation: int, killed: Sequence[str] = ("b*",)) -> FDAlgebra:
    """Truncation of the framed preprojective algebra with ``killed`` arrows set to zero."""
    return _mckay(m, truncation, tuple(killed), _field_key())


def star_quiver(k: int = 2) -> Quiver:
    """Vertex 0 with arrows to 1..k (named a, b, c, ...)."""
    names = "abcdefghijklmnopqrstuvwxyz"
    return Quiver(tuple(str(i) for i in range(k + 1)),
                  tuple(Arrow(names[i], "0", str(i + 1)) for i in range(k)), "0")


def loop_quiver() -> Quiver:
    return Quiver(("0",), (Arrow("x", "0", "0"),), "0")
