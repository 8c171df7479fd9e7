"""Exact linear algebra over the rationals or a prime field.

Scalars are :class:`fractions.Fraction` by default.  Inside a
``with use_field(PrimeField(p)):`` block they are :class:`Zp` residues
instead; every routine below is written against the scalar operators, so
the same code runs in both modes.  Prime-field results are advisory (ranks
can drop modulo p); rational results are authoritative.

Dense matrices are immutable :class:`Matrix` objects.  The incremental
:class:`Echelon` works on sparse ``{column: scalar}`` dicts and is the
workhorse behind ideal closures and tensor-product quotients.
"""

from __future__ import annotations

import bisect
import contextlib
import contextvars
from fractions import Fraction
from typing import Callable, Iterable, Sequence


class Zp:
    """A residue modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Zp):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Zp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Zp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Zp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Zp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero residue")
        return Zp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Zp(o, self.p) / self

    def __neg__(self):
        return Zp(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Zp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    name = "rational"

    def __call__(self, x) -> Fraction:
        if type(x) is Fraction:
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, Zp):
            raise TypeError("cannot lift a prime-field residue to Q")
        return Fraction(x)

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"prime:{p}"

    def __call__(self, x) -> Zp:
        if type(x) is Zp and x.p == self.p:
            return x
        if isinstance(x, Zp):
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} in field mod {self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image mod {self.p}")
            return Zp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Zp(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()
_FIELD: contextvars.ContextVar = contextvars.ContextVar("field", default=QQ)


def get_field():
    return _FIELD.get()


@contextlib.contextmanager
def use_field(field):
    token = _FIELD.set(field)
    try:
        yield field
    finally:
        _FIELD.reset(token)


def parse_field(text: str):
    """Parse ``"rational"`` or ``"prime:p"``."""
    if text in ("rational", "QQ", "Q"):
        return QQ
    if text.startswith("prime:"):
        return PrimeField(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown field mode {text!r}")


def scalar(x):
    return _FIELD.get()(x)


def scalar_str(x) -> str:
    """Serialize a scalar as ``"p/q"`` or ``"n"``."""
    if isinstance(x, Zp):
        return str(x.v)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _zero():
    return _FIELD.get()(0)


def _one():
    return _FIELD.get()(1)


# -- dense matrices -----------------------------------------------------------


class Matrix:
    """Immutable dense matrix of exact scalars."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        f = _FIELD.get()
        rows = tuple(tuple(f(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged entry grid")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.nrows, m.ncols = rows, nrows, ncols
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        z = _zero()
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        z, o = _zero(), _one()
        return cls._raw(
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        if not columns:
            return cls.zeros(nrows, 0)
        return cls._raw(
            tuple(tuple(c[i] for c in columns) for i in range(nrows)), nrows, len(columns)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else
                           tuple(() for _ in range(self.ncols)), self.ncols, self.nrows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if other.ncols == 0 or self.nrows == 0:
                return Matrix.zeros(self.nrows, other.ncols)
            z = _zero()
            # row-by-row accumulation over nonzero entries; the inputs are mostly sparse
            nz = [[(j, b) for j, b in enumerate(row) if b] for row in other.rows]
            out = []
            for r in self.rows:
                acc = [z] * other.ncols
                for k, a in enumerate(r):
                    if a:
                        for j, b in nz[k]:
                            acc[j] = acc[j] + a * b
                out.append(tuple(acc))
            return Matrix._raw(tuple(out), self.nrows, other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        z = _zero()
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), z) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows, self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[scalar_str(a) for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(scalar_str(a) for a in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols}>[{body}]"


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack row mismatch")
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows))
    return Matrix._raw(rows, nrows, sum(b.ncols for b in blocks))


def vstack(blocks: Sequence[Matrix], ncols: int) -> Matrix:
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack column mismatch")
    rows = sum((b.rows for b in blocks), ())
    return Matrix._raw(rows, len(rows), ncols)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    ncols = sum(b.ncols for b in blocks)
    z = _zero()
    rows, off = [], 0
    for b in blocks:
        for r in b.rows:
            rows.append((z,) * off + r + (z,) * (ncols - off - b.ncols))
        off += b.ncols
    return Matrix._raw(tuple(rows), len(rows), ncols)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * a for a in rows[r]]
        for i in range(m.nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return Matrix._raw(tuple(tuple(x) for x in rows), m.nrows, m.ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Null-space basis in standard form.

    The vector attached to free column ``c`` has a 1 at ``c`` and zeros at
    every other free column, so coordinates of a null vector in this basis
    are simply its entries at the free columns.
    """
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    z, o = _zero(), _one()
    basis = []
    for c in free:
        v = [z] * m.ncols
        v[c] = o
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][c]
        basis.append(tuple(v))
    return basis


def free_columns(m: Matrix) -> list[int]:
    pivots = set(rref(m)[1])
    return [c for c in range(m.ncols) if c not in pivots]


def image_basis(m: Matrix) -> list[tuple]:
    """Basis of the column space, in RREF (as rows of the reduced transpose)."""
    red, pivots = rref(m.T)
    return [red.rows[i] for i in range(len(pivots))]


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    red, pivots = rref(hstack([m, Matrix.identity(n)], n))
    if sum(1 for p in pivots if p < n) != n:
        raise ZeroDivisionError("singular matrix")
    return Matrix._raw(tuple(r[n:] for r in red.rows), n, n)


def solve_linear(a: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``a x = b`` (free variables zero), or None."""
    b = tuple(scalar(x) for x in b)
    if len(b) != a.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = hstack([a, Matrix.from_columns([b], a.nrows)], a.nrows)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = [_zero()] * a.ncols
    for i, p in enumerate(pivots):
        x[p] = red.rows[i][a.ncols]
    return tuple(x)


class Subspace:
    """A subspace of k^n held as an RREF basis.

    Coordinates of a vector lying in the subspace are its entries at the
    pivot columns.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence], ambient: int):
        vectors = [tuple(scalar(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector outside the ambient space")
        self.ambient = ambient
        if vectors:
            red, piv = rref(Matrix._raw(tuple(vectors), len(vectors), ambient))
            self.basis = red.rows[: len(piv)]
            self.pivots = piv
        else:
            self.basis, self.pivots = (), ()

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Sequence) -> tuple:
        return coset_reduce(v, self.basis, self.pivots)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence) -> tuple:
        if v not in self:
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def coset_reduce(v: Sequence, basis: Sequence[Sequence], pivots: Sequence[int]) -> tuple:
    """Canonical representative of ``v`` modulo the span of an RREF basis."""
    v = list(v)
    for row, p in zip(basis, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def subspace_equal(u: Iterable[Sequence], v: Iterable[Sequence], ambient: int) -> bool:
    return Subspace(u, ambient) == Subspace(v, ambient)


# -- sparse incremental echelon -------------------------------------------------

SparseVec = dict


def sparse_axpy(y: SparseVec, c, x: SparseVec) -> None:
    """In place ``y += c * x``, dropping cancelled entries."""
    for k, a in x.items():
        s = y.get(k)
        s = c * a if s is None else s + c * a
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def sparse_scale(c, x: SparseVec) -> SparseVec:
    return {k: c * a for k, a in x.items()} if c else {}


class Echelon:
    """Incrementally maintained echelon basis of sparse vectors.

    Each stored row has its pivot as the smallest column and is normalized
    to 1 there.  :meth:`reduce` eliminates pivots in increasing order,
    which yields the canonical coset representative (zero at every pivot).
    """

    def __init__(self):
        self.rows: dict[int, SparseVec] = {}
        self._order: list[int] = []

    def __len__(self):
        return len(self._order)

    @property
    def pivots(self) -> list[int]:
        return list(self._order)

    def reduce(self, v: SparseVec) -> SparseVec:
        v = dict(v)
        if not v:
            return v
        lo = min(v)
        start = bisect.bisect_left(self._order, lo)
        for p in self._order[start:]:
            c = v.get(p)
            if c:
                sparse_axpy(v, -c, self.rows[p])
                if not v:
                    break
        return v

    def add(self, v: SparseVec) -> SparseVec | None:
        """Insert ``v``; return the new normalized row, or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p]
        r = {k: inv * a for k, a in r.items()}
        self.rows[p] = r
        bisect.insort(self._order, p)
        return r

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def rref_rows(self) -> list[tuple[int, SparseVec]]:
        """Fully reduced rows, sorted by pivot."""
        out: dict[int, SparseVec] = {}
        for p in reversed(self._order):
            r = dict(self.rows[p])
            for q in [k for k in r if k != p and k in out]:
                c = r.get(q)
                if c:
                    sparse_axpy(r, -c, out[q])
            out[p] = r
        return [(p, out[p]) for p in self._order]


def to_sparse(v: Sequence) -> SparseVec:
    return {i: a for i, a in enumerate(v) if a}


def to_dense(v: SparseVec, n: int) -> tuple:
    z = _zero()
    return tuple(v.get(i, z) for i in range(n))


def spin_sparse(
    vectors: Iterable[SparseVec], operators: Sequence[Callable[[SparseVec], SparseVec]]
) -> Echelon:
    """Smallest operator-invariant subspace containing ``vectors``."""
    ech = Echelon()
    queue = []
    for v in vectors:
        r = ech.add(v)
        if r is not None:
            queue.append(r)
    while queue:
        v = queue.pop()
        for op in operators:
            w = op(v)
            if w:
                r = ech.add(w)
                if r is not None:
                    queue.append(r)
    return ech


def spin_closure(vectors: Iterable[Sequence], operators: Sequence[Matrix], dim: int | None = None) -> list[tuple]:
    """RREF basis of the smallest subspace containing ``vectors`` and
    invariant under every operator."""
    vectors = [tuple(scalar(x) for x in v) for v in vectors]
    if dim is None:
        if vectors:
            dim = len(vectors[0])
        elif operators:
            dim = operators[0].nrows
        else:
            dim = 0
    for op in operators:
        if op.shape != (dim, dim):
            raise ValueError(f"operator of shape {op.shape} on a {dim}-dimensional space")
    for v in vectors:
        if len(v) != dim:
            raise ValueError("vector dimension mismatch")

    def as_op(m: Matrix):
        return lambda v: to_sparse(m @ to_dense(v, dim))

    ech = spin_sparse((to_sparse(v) for v in vectors), [as_op(m) for m in operators])
    return [to_dense(r, dim) for _, r in ech.rref_rows()]
