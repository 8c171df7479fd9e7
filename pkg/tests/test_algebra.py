import itertools

import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from cornering.algebra import (
    INFINITY,
    Arrow,
    Quiver,
    QuiverError,
    Relation,
    RelationError,
    corner_algebra,
    corner_set,
    framed_mckay_quiver,
    kill_arrows,
    loop_quiver,
    mckay_algebra,
    preprojective_relations,
    star_quiver,
    truncated_algebra,
)


def _words(quiver, L):
    """Composable words (written order) with their ends, enumerated separately."""
    out = [((), v, v) for v in quiver.vertices]
    frontier = [((a.id,), a.tail, a.head) for a in quiver.arrows]
    for _ in range(L):
        out += frontier
        frontier = [((a.id,) + w, t, a.head) for w, t, h in frontier for a in quiver.arrows if a.tail == h]
    return out


def brute_force_dims(quiver, relations, L):
    """dim of kQ/(I + J^(L+1)) per tail vertex, from the span of all p r q."""
    words = _words(quiver, L)
    index = {(w, t, h): k for k, (w, t, h) in enumerate(words)}
    rows = []
    for r in relations:
        (rt, rh) = r.ends
        for p, q in itertools.product(words, words):
            if p[1] != rh or q[2] != rt:
                continue
            vec = {}
            for c, path in r.terms:
                w = p[0] + path.arrows + q[0]
                if len(w) <= L:
                    key = index[(w, q[1], p[2])]
                    vec[key] = vec.get(key, 0) + c
            if any(vec.values()):
                rows.append(vec)
    out = {}
    for v in quiver.vertices:
        cols = [k for k, (w, t, h) in enumerate(words) if t == v]
        sub = [[QQ(row.get(k, 0)) for k in cols] for row in rows]
        sub = [r for r in sub if any(r)]
        rk = DomainMatrix(sub, (len(sub), len(cols)), QQ).rank() if sub else 0
        out[v] = len(cols) - rk
    return out


def _mckay_data(m):
    q = framed_mckay_quiver(m)
    return q, kill_arrows(q, preprojective_relations(q), ["b*"])


@pytest.mark.parametrize("m,L", [(2, 2), (2, 3), (2, 4), (3, 3)])
def test_mckay_dims_match_brute_force(m, L):
    q, rels = _mckay_data(m)
    A = truncated_algebra(q, rels, L)
    got = {v: len(A.by_tail[v]) for v in A.vertices}
    assert got == brute_force_dims(q, rels, L)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_mckay_closed_form_dims(m, L):
    A = mckay_algebra(m, L)
    assert len(A.by_tail[INFINITY]) == 1 + L * (L + 1) // 2
    for i in range(m):
        assert len(A.by_tail[str(i)]) == (L + 1) * (L + 2) // 2


def test_shipped_dimensions(star, mckay2, mckay3):
    assert star.dim == 5
    assert mckay2.dim == 41
    assert mckay3.dim == 56
    for L in (2, 3, 4):
        assert truncated_algebra(loop_quiver(), [], L).dim == L + 1


def test_generator_counts(star, mckay2, mckay3):
    assert len(star.generators) == 2
    # every arrow except the killed b*
    assert len(mckay2.generators) == 5
    assert len(mckay3.generators) == 7


@pytest.mark.parametrize("name", ["star", "loop3", "mckay2", "mckay3"])
def test_structure_checks(name, request):
    A = request.getfixturevalue(name)
    assert A.check() == []


def test_relations_vanish_and_long_paths_die(mckay2):
    for r in mckay2.relations:
        total = {}
        for c, p in r.terms:
            for k, v in mckay2.element(p.arrows, p.tail).items():
                total[k] = total.get(k, 0) + c * v
        assert not any(total.values())
    # five x-arrows in a row exceed the truncation
    word = ("x0", "x1", "x0", "x1", "x0")
    assert mckay2.element(word) == {}


def test_preprojective_relation_shape():
    q = framed_mckay_quiver(2)
    rels = {r.ends: r for r in preprojective_relations(q)}
    at_zero = rels[("0", "0")]
    signs = {p.arrows: c for c, p in at_zero.terms}
    assert signs[("x1", "x1*")] == 1
    assert signs[("x0*", "x0")] == -1
    assert signs[("b", "b*")] == 1


def test_commutation_holds_in_the_algebra(mckay2):
    # the two 2-cycles at vertex 0 agree once b* is killed
    xy = mckay2.element(("x1", "x1*"))
    yx = mckay2.element(("x0*", "x0"))
    assert xy == yx


def test_corner_algebra_embeds_multiplicatively(mckay3):
    C, emb = corner_algebra(mckay3, [INFINITY, "0", "2"])
    assert C.check() == []
    assert corner_algebra(mckay3, {INFINITY, "0", "2"})[0] is C
    for i, j in itertools.product(range(C.dim), repeat=2):
        lhs = {emb[k]: c for k, c in C.product(i, j).items()}
        rhs = {k: c for k, c in mckay3.product(emb[i], emb[j]).items() if c}
        assert lhs == rhs


def test_corner_set_requires_source(star):
    with pytest.raises(QuiverError):
        corner_set(star, ["1", "2"])
    with pytest.raises(QuiverError):
        corner_set(star, ["0", "7"])


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver(("0",), (Arrow("a", "0", "1"),), "0")
    with pytest.raises(QuiverError):
        Quiver(("0", "1"), (Arrow("a", "0", "1"),), "2")
    q = star_quiver(2)
    with pytest.raises(QuiverError):
        q.path(("a", "b"))
    with pytest.raises(QuiverError):
        q.arrow("z")


def test_relation_terms_must_be_parallel():
    q = star_quiver(2)
    with pytest.raises(RelationError):
        Relation.from_words(q, [(1, ["a"]), (1, ["b"])])


def test_relation_terms_merge():
    q = loop_quiver()
    r = Relation.from_words(q, [(1, ["x", "x"]), (-1, ["x", "x"])])
    assert r.terms == ()


def test_truncation_level_must_be_positive():
    with pytest.raises(ValueError):
        truncated_algebra(loop_quiver(), [], 0)


def test_loop_with_relation_is_smaller():
    q = loop_quiver()
    r = Relation.from_words(q, [(1, ["x", "x"])])
    assert truncated_algebra(q, [r], 4).dim == 2


def test_describe_lists_basis(star):
    d = star.describe()
    assert d["dim"] == 5
    assert sorted(tuple(b["path"]) for b in d["basis"]) == [(), (), (), ("a",), ("b",)]
