"""JSON documents for matrices, algebras, modules, slice bundles and reports.

Matrices are nested arrays of strings ``"p/q"`` or ``"n"``.  Arrow words in
paths and relations are written leftmost-applied-last: ``["b", "a"]`` means
"apply a, then b".  Every document carries ``schema_version``; identical
inputs always serialize to identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any, Mapping

from .algebra import (
    Arrow,
    FDAlgebra,
    QuiverError,
    Quiver,
    Relation,
    RelationError,
    corner_algebra,
    default_signs,
    loop_quiver,
    mckay_algebra,
    star_quiver,
    truncated_algebra,
)
from .exactla import Matrix, get_field, scalar, scalar_str
from .fdmod import FDModule, ModuleError, module_from_actions, module_from_arrows

SCHEMA_VERSION = 1
CONVENTION = "leftmost-applied-last"


class FormatError(ValueError):
    """Malformed document; ``where`` is a JSON pointer or ``line:col``."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.detail = message


# -- primitives ------------------------------------------------------------------


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def digest(doc: Any) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def read_json(path) -> Any:
    path = FilePath(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file ({exc.strerror})", str(path)) from None
    return loads(text, str(path))


def write_json(path, doc: Any) -> None:
    FilePath(path).write_text(dumps(doc), encoding="utf-8")


def _need(doc: Mapping, key: str, where: str, kind=None):
    if not isinstance(doc, Mapping):
        raise FormatError("expected an object", where)
    if key not in doc:
        raise FormatError(f"missing field {key!r}", where)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"field {key!r} has the wrong type", f"{where}/{key}")
    return value


def parse_scalar(text: Any, where: str = ""):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise FormatError("scalars are strings 'p/q' or 'n'", where)
    try:
        return scalar(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad scalar {text!r}", where) from None


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def matrix_from_json(data: Any, nrows: int, ncols: int, where: str = "") -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise FormatError("a matrix is a list of rows", where)
    if nrows == 0:
        if data and any(data):
            raise FormatError(f"expected 0 rows, got {len(data)}", where)
        return Matrix.zeros(0, ncols)
    if len(data) != nrows:
        raise FormatError(f"expected {nrows} rows, got {len(data)}", where)
    rows = []
    for i, r in enumerate(data):
        if len(r) != ncols:
            raise FormatError(f"expected {ncols} columns, got {len(r)}", f"{where}/{i}")
        rows.append([parse_scalar(x, f"{where}/{i}/{j}") for j, x in enumerate(r)])
    return Matrix(rows, ncols)


# -- algebras --------------------------------------------------------------------


def algebra_to_json(A: FDAlgebra, extra: Mapping | None = None) -> dict:
    if A.quiver is None:
        raise FormatError("only quiver-presented algebras have an algebra document")
    q = A.quiver
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "algebra",
        "convention": CONVENTION,
        "vertices": list(q.vertices),
        "source": q.source,
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows],
        "relations": [_relation_to_json(r) for r in A.relations],
        "truncation_level": A.truncation,
    }
    if q.involution is not None:
        doc["involution"] = dict(sorted(q.involution.items()))
    if extra:
        doc.update(extra)
    return doc


def _relation_to_json(r: Relation) -> list:
    out = []
    for c, p in r.terms:
        term = [scalar_str(c), list(p.arrows)]
        if not p.arrows:
            term.append(p.tail)
        out.append(term)
    return out


def algebra_from_json(doc: Any, where: str = "") -> FDAlgebra:
    if not isinstance(doc, Mapping):
        raise FormatError("expected an algebra object", where)
    conv = doc.get("convention", CONVENTION)
    if conv != CONVENTION:
        raise FormatError(f"unsupported path convention {conv!r}", f"{where}/convention")
    vertices = _need(doc, "vertices", where, list)
    source = _need(doc, "source", where)
    arrows = []
    for k, a in enumerate(_need(doc, "arrows", where, list)):
        w = f"{where}/arrows/{k}"
        arrows.append(Arrow(str(_need(a, "id", w)), str(_need(a, "tail", w)), str(_need(a, "head", w))))
    L = _need(doc, "truncation_level", where, int)
    try:
        q = Quiver(tuple(str(v) for v in vertices), tuple(arrows), str(source), doc.get("involution"))
    except QuiverError as exc:
        raise FormatError(str(exc), where) from None
    rels = []
    for k, rel in enumerate(_need(doc, "relations", where, list)):
        w = f"{where}/relations/{k}"
        if not isinstance(rel, list) or not rel:
            raise FormatError("a relation is a nonempty list of [coeff, word] terms", w)
        terms = []
        for t, term in enumerate(rel):
            if not isinstance(term, list) or len(term) not in (2, 3) or not isinstance(term[1], list):
                raise FormatError("a term is [coeff, [arrow ids]] or [coeff, [], vertex]", f"{w}/{t}")
            c = parse_scalar(term[0], f"{w}/{t}/0")
            try:
                if term[1]:
                    terms.append((c, q.path(tuple(str(x) for x in term[1]))))
                else:
                    if len(term) != 3:
                        raise FormatError("a trivial-path term must name its vertex", f"{w}/{t}")
                    terms.append((c, q.path((), str(term[2]))))
            except QuiverError as exc:
                raise FormatError(str(exc), f"{w}/{t}/1") from None
        try:
            rels.append(Relation(tuple(terms)))
        except RelationError as exc:
            raise FormatError(str(exc), w) from None
    try:
        return truncated_algebra(q, rels, L)
    except (ValueError, QuiverError) as exc:
        raise FormatError(str(exc), where) from None


def preset_algebra(name: str, truncation: int) -> tuple[FDAlgebra, dict]:
    """Named algebras: ``star:k``, ``loop`` and ``mckay:m`` (with b* killed)."""
    family, _, arg = name.partition(":")
    if family == "star":
        q = star_quiver(int(arg or 2))
        return truncated_algebra(q, [], truncation), {"preset": name}
    if family == "loop":
        return truncated_algebra(loop_quiver(), [], truncation), {"preset": name}
    if family == "mckay":
        A = mckay_algebra(int(arg or 2), truncation)
        return A, {"preset": name, "signs": dict(sorted(default_signs(A.quiver).items()))}
    raise FormatError(f"unknown preset {name!r} (expected star:k, loop or mckay:m)")


def load_algebra(path) -> FDAlgebra:
    return algebra_from_json(read_json(path), str(path))


# -- modules ---------------------------------------------------------------------


def arrow_matrices(F: FDModule) -> dict[str, Matrix]:
    q = F.algebra.quiver
    return {a.id: F.act_block(F.algebra.element((a.id,)), a.tail, a.head) for a in q.arrows}


def module_to_json(F: FDModule, algebra_ref: Any = None) -> dict:
    A = F.algebra
    if A.parent is not None:
        return slice_to_json(F, algebra_ref)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "module",
        "algebra_ref": algebra_ref if algebra_ref is not None else {"digest": digest(algebra_to_json(A))},
        "dims": dict(zip(A.vertices, F.dims)),
        "arrows": {a: matrix_to_json(m) for a, m in arrow_matrices(F).items()},
    }


def _dims_from_json(A: FDAlgebra, data: Any, where: str) -> dict:
    if isinstance(data, list):
        if len(data) != len(A.vertices):
            raise FormatError(f"expected {len(A.vertices)} dimensions", where)
        data = dict(zip(A.vertices, data))
    if not isinstance(data, Mapping):
        raise FormatError("dims is a list or a vertex -> dimension object", where)
    unknown = set(map(str, data)) - set(A.vertices)
    if unknown:
        raise FormatError(f"unknown vertices {sorted(unknown)}", where)
    dims = {}
    for v in A.vertices:
        d = data.get(v, 0)
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise FormatError("dimensions are nonnegative integers", f"{where}/{v}")
        dims[v] = d
    return dims


def check_algebra_ref(doc: Mapping, A: FDAlgebra, where: str = "") -> None:
    ref = doc.get("algebra_ref")
    if isinstance(ref, Mapping) and "digest" in ref and A.quiver is not None:
        if ref["digest"] != digest(algebra_to_json(A)):
            raise FormatError("algebra_ref digest does not match the algebra", f"{where}/algebra_ref")


def module_from_json(doc: Any, A: FDAlgebra, where: str = "") -> FDModule:
    if isinstance(doc, Mapping) and doc.get("kind") == "slice":
        return slice_from_json(doc, A, where)
    check_algebra_ref(doc, A, where)
    dims = _dims_from_json(A, _need(doc, "dims", where), f"{where}/dims")
    arrows = _need(doc, "arrows", where, Mapping)
    mats = {}
    for aid, data in arrows.items():
        try:
            a = A.quiver.arrow(aid)
        except (QuiverError, KeyError):
            raise FormatError(f"unknown arrow {aid!r}", f"{where}/arrows") from None
        mats[aid] = matrix_from_json(data, dims[a.head], dims[a.tail], f"{where}/arrows/{aid}")
    return module_from_arrows(A, dims, mats)


def slice_to_json(N: FDModule, algebra_ref: Any = None) -> dict:
    """A module over a corner algebra, stored by the action of each basis path."""
    C = N.algebra
    parent = C.parent
    actions = []
    for i, b in enumerate(C.basis):
        if b.length:
            actions.append({"path": list(b.path.arrows), "matrix": matrix_to_json(N.block(i))})
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "slice",
        "algebra_ref": algebra_ref if algebra_ref is not None else {"digest": digest(algebra_to_json(parent))},
        "corner": list(C.vertices),
        "dims": dict(zip(C.vertices, N.dims)),
        "actions": actions,
    }


def slice_from_json(doc: Any, A: FDAlgebra, where: str = "") -> FDModule:
    check_algebra_ref(doc, A, where)
    corner = _need(doc, "corner", where, list)
    try:
        C, _ = corner_algebra(A, [str(v) for v in corner])
    except QuiverError as exc:
        raise FormatError(str(exc), f"{where}/corner") from None
    dims = _dims_from_json(C, _need(doc, "dims", where), f"{where}/dims")
    index = {b.path.arrows: i for i, b in enumerate(C.basis) if b.length}
    actions = {}
    for k, entry in enumerate(_need(doc, "actions", where, list)):
        w = f"{where}/actions/{k}"
        word = tuple(str(x) for x in _need(entry, "path", w, list))
        if word not in index:
            raise FormatError(f"{list(word)} is not a basis path of the corner algebra", f"{w}/path")
        b = C.basis[index[word]]
        actions[index[word]] = matrix_from_json(_need(entry, "matrix", w), dims[b.head], dims[b.tail], f"{w}/matrix")
    try:
        return module_from_actions(C, dims, actions)
    except ModuleError as exc:
        raise FormatError(str(exc), where) from None


# -- bundles, reports, artifacts -------------------------------------------------------------


def bundle_to_json(bundle, algebra_ref: Any = None) -> dict:
    A = bundle.algebra
    ref = algebra_ref if algebra_ref is not None else {"digest": digest(algebra_to_json(A))}
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "slice-bundle",
        "algebra_ref": ref,
        "covering": bundle.covering.as_lists(A),
        "slices": [slice_to_json(N, ref) for N in bundle.slices],
        "provenance": bundle.provenance,
    }


def bundle_from_json(doc: Any, A: FDAlgebra, where: str = ""):
    from .recollement import Covering, SliceBundle

    check_algebra_ref(doc, A, where)
    cov_doc = _need(doc, "covering", where, list)
    try:
        cov = Covering.of(A, [[str(v) for v in s] for s in cov_doc])
    except QuiverError as exc:
        raise FormatError(str(exc), f"{where}/covering") from None
    slices = []
    for t, s in enumerate(_need(doc, "slices", where, list)):
        N = slice_from_json(s, A, f"{where}/slices/{t}")
        if frozenset(N.algebra.vertices) != cov.sets[t]:
            raise FormatError("slice corner does not match its covering set", f"{where}/slices/{t}/corner")
        slices.append(N)
    return SliceBundle(A, cov, tuple(slices), str(doc.get("provenance", "external")))


def field_name() -> str:
    f = get_field()
    return f"prime:{f.p}" if hasattr(f, "p") else "rational"


def counterexample_artifact(F: FDModule, G: FDModule, covering) -> dict:
    """Replayable record of two modules that a covering fails to separate."""
    A = F.algebra
    body = {
        "kind": "counterexample",
        "schema_version": SCHEMA_VERSION,
        "field": field_name(),
        "algebra": algebra_to_json(A),
        "covering": covering.as_lists(A),
        "modules": [module_to_json(F), module_to_json(G)],
    }
    body["digest"] = digest(body)
    return body


def report(kind: str, config: Mapping, body: Mapping) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "config": dict(config),
           "config_digest": digest(dict(config))}
    doc.update(body)
    return doc
