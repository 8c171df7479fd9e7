"""Torus-fixed points of Hilb^n([C^2 / (Z/m)]) as modules over Π/(b*).

Z/m acts on C^2 with weights (1, -1), so the monomial x^i y^j has
character (i - j) mod m.  A fixed point is a monomial ideal J, recorded
by the partition whose row j holds the boxes (0, j), ..., (λ_j - 1, j),
i.e. the monomials x^i y^j outside J.

In the framed McKay quiver, ``x{k}: k -> k+1`` acts as multiplication by
x on the weight-k piece and ``x{k}*: k+1 -> k`` as multiplication by y;
``b`` sends the framing generator to 1 and ``b*`` is zero.  With the
default signs the preprojective relation at vertex k reads ``xy - yx``,
which holds because x and y commute.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import INFINITY, mckay_algebra
from .exactla import Matrix
from .fdmod import FDModule, is_isomorphic, is_zero_generated, module_from_arrows
from .recollement import CounterexampleError, Covering, distinguishing_slice


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self) -> list[tuple[int, int]]:
        return [(i, j) for j, row in enumerate(self.parts) for i in range(row)]

    def __contains__(self, box) -> bool:
        i, j = box
        return i >= 0 and 0 <= j < len(self.parts) and i < self.parts[j]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def weight_content(p: Partition, m: int) -> tuple[int, ...]:
    """Count of boxes by character (i - j) mod m."""
    if m < 2:
        raise ValueError("group order must be at least 2")
    n = [0] * m
    for i, j in p.boxes():
        n[(i - j) % m] += 1
    return tuple(n)


def partitions(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` in decreasing lexicographic order."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def enumerate_fixed_points(m: int, n: Sequence[int]) -> list[Partition]:
    n = tuple(int(k) for k in n)
    if m < 2:
        raise ValueError("group order must be at least 2")
    if len(n) != m or any(k < 0 for k in n):
        raise ValueError(f"isotype vector must have {m} nonnegative entries")
    out = []
    for parts in partitions(sum(n)):
        p = Partition(parts)
        if weight_content(p, m) == n:
            out.append(p)
    return out


def fixed_point_module(p: Partition, m: int, truncation: int | None = None) -> FDModule:
    """The module H^0(O / J) with framing, dims (1; weight_content(p))."""
    L = p.size if truncation is None else truncation
    if L < p.size:
        raise ValueError(f"truncation {L} is below the partition size {p.size}")
    A = mckay_algebra(m, max(L, 1))
    weight = {box: (box[0] - box[1]) % m for box in p.boxes()}
    by_weight = {k: [b for b in p.boxes() if weight[b] == k] for k in range(m)}
    pos = {b: by_weight[weight[b]].index(b) for b in p.boxes()}
    dims = {INFINITY: 1, **{str(k): len(by_weight[k]) for k in range(m)}}

    def mult(k: int, step: tuple[int, int], target_weight: int) -> Matrix:
        rows = [[0] * len(by_weight[k]) for _ in by_weight[target_weight]]
        for b in by_weight[k]:
            nb = (b[0] + step[0], b[1] + step[1])
            if nb in p:
                rows[pos[nb]][pos[b]] = 1
        return Matrix(rows, len(by_weight[k]))

    arrows = {}
    for k in range(m):
        arrows[f"x{k}"] = mult(k, (1, 0), (k + 1) % m)
        arrows[f"x{k}*"] = mult((k + 1) % m, (0, 1), k)
    b = [[0] for _ in by_weight[0]]
    if p.size:
        b[pos[(0, 0)]][0] = 1
    arrows["b"] = Matrix(b, 1)
    return module_from_arrows(A, dims, arrows)


def singleton_covering(m: int) -> list[set[str]]:
    return [{INFINITY, str(k)} for k in range(m)]


def overlapping_covering(m: int) -> list[set[str]]:
    """Two corner sets {∞, 0, 1} and {∞, 1, ..., m-1}, sharing vertex 1."""
    return [{INFINITY, "0", "1"}, {INFINITY} | {str(k) for k in range(1, m)}]


def hilb_injectivity_experiment(m: int, n: Sequence[int], covering, truncation: int | None = None,
                                timings: bool = False) -> dict:
    """Check that slices separate all fixed points with isotype n.

    Failures are recorded in the report (``ok`` false) rather than raised;
    counterexample artifacts are collected under ``counterexamples``.
    """
    t0 = time.perf_counter()
    n = tuple(int(k) for k in n)
    L = sum(n) if truncation is None else truncation
    points = enumerate_fixed_points(m, n)
    A = mckay_algebra(m, max(L, 1))
    cov = covering if isinstance(covering, Covering) else (
        Covering.parse(A, covering) if isinstance(covering, str) else Covering.of(A, covering))
    modules = [fixed_point_module(p, m, L) for p in points]
    t1 = time.perf_counter()
    pairs, counterexamples, failures = [], [], []
    for (a, pa, Fa), (b, pb, Fb) in itertools.combinations(zip(range(len(points)), points, modules), 2):
        entry = {"a": str(pa), "b": str(pb)}
        iso = is_isomorphic(Fa, Fb)
        entry["isomorphic"] = iso.status
        if not iso.no:
            failures.append(f"{pa} and {pb} are not certified non-isomorphic ({iso.status})")
        try:
            t = distinguishing_slice(Fa, Fb, cov)
        except CounterexampleError as exc:
            counterexamples.append(exc.artifact)
            t = None
        entry["distinguished"] = t is not None
        entry["witness_slice"] = t
        if t is None:
            failures.append(f"{pa} and {pb} are not distinguished")
        pairs.append(entry)
    report = {
        "kind": "hilb-injectivity",
        "m": m,
        "n": list(n),
        "covering": cov.as_lists(A),
        "truncation_level": L,
        "fixed_points": [str(p) for p in points],
        "count": len(points),
        "all_zero_generated": all(is_zero_generated(F) for F in modules),
        "pairs": pairs,
        "distinguished_pairs": sum(1 for e in pairs if e["distinguished"]),
        "failures": failures,
        "counterexamples": counterexamples,
        "ok": not failures and not counterexamples,
    }
    if timings:
        report["timings"] = {"build_s": round(t1 - t0, 4), "pairs_s": round(time.perf_counter() - t1, 4)}
    return report
