"""Command-line front end.

Exit codes: 0 success, 1 a property or consistency check failed, 2 bad
input (parse, reference or validation error), 3 a counterexample was found.
Errors are printed to stderr as one JSON object; with ``--out`` a replayable
failure artifact is also written next to the report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import formats
from .algebra import QuiverError, RelationError
from .checks import run_property_suites
from .exactla import parse_field, use_field
from .fdmod import ModuleError, is_isomorphic, is_zero_generated
from .formats import FormatError
from .orbifold import hilb_injectivity_experiment
from .recollement import Covering, ReconstructionError, reconstruct, slice_module

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class CommandFailure(Exception):
    def __init__(self, code: int, kind: str, message: str, where: str = "", payload: Any = None):
        super().__init__(message)
        self.code, self.kind, self.where, self.payload = code, kind, where, payload


# -- plumbing --------------------------------------------------------------------


def _config(args: argparse.Namespace) -> dict:
    skip = {"func", "out", "timings"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _emit(args, kind: str, body: dict, summary: str, timings: dict | None = None) -> dict:
    doc = formats.report(kind, _config(args), body)
    if args.timings and timings:
        doc["timings"] = {k: round(v, 4) for k, v in timings.items()}
    if args.out:
        formats.write_json(args.out, doc)
    print(summary)
    return doc


def _sidecar(out: str | None, suffix: str) -> Path | None:
    if not out:
        return None
    p = Path(out)
    return p.with_name(p.stem + suffix + ".json")


def _load_algebra(args, doc: dict | None = None, doc_path: str | None = None):
    """The algebra from --algebra/--preset, else from the document's algebra_ref path."""
    if getattr(args, "preset", None):
        A, _ = formats.preset_algebra(args.preset, args.truncation or 4)
        return A
    path = getattr(args, "algebra", None)
    if path is None and doc is not None:
        ref = doc.get("algebra_ref")
        if isinstance(ref, dict) and "path" in ref:
            path = str(Path(doc_path).parent / ref["path"]) if doc_path else ref["path"]
        elif isinstance(ref, str):
            path = str(Path(doc_path).parent / ref) if doc_path else ref
    if path is None:
        raise CommandFailure(EXIT_INPUT, "reference", "no algebra given (use --algebra or --preset)")
    adoc = formats.read_json(path)
    if args.truncation is not None and "truncation_level" in adoc:
        adoc = dict(adoc, truncation_level=args.truncation)
    return formats.algebra_from_json(adoc, path)


def _covering(A, text: str | None) -> Covering:
    if not text:
        raise CommandFailure(EXIT_INPUT, "usage", "--covering is required")
    try:
        return Covering.parse(A, text)
    except QuiverError as exc:
        raise CommandFailure(EXIT_INPUT, "covering", str(exc), "--covering") from None


# -- subcommands --------------------------------------------------------------------


def cmd_algebra(args) -> int:
    t0 = time.perf_counter()
    if args.action == "build":
        if args.preset:
            A, extra = formats.preset_algebra(args.preset, args.truncation or 4)
        elif args.input:
            doc = formats.read_json(args.input)
            if args.truncation is not None:
                doc = dict(doc, truncation_level=args.truncation)
            A, extra = formats.algebra_from_json(doc, args.input), {}
        else:
            raise CommandFailure(EXIT_INPUT, "usage", "algebra build needs an input file or --preset")
        doc = formats.algebra_to_json(A, extra)
        doc["digest"] = formats.digest(formats.algebra_to_json(A))
        doc["dim"] = A.dim
        if args.out:
            formats.write_json(args.out, doc)
        print(f"algebra: {len(A.vertices)} vertices, dimension {A.dim}, truncation {A.truncation}")
        return EXIT_OK
    A = _load_algebra(args)
    problems = A.check()
    body = {
        "algebra_digest": formats.digest(formats.algebra_to_json(A)),
        "dim": A.dim,
        "truncation_level": A.truncation,
        "dims_by_tail": {v: len(A.by_tail[v]) for v in A.vertices},
        "generators": [list(A.basis[g].path.arrows) for g in A.generators],
        "basis": [list(b.path.arrows) or [f"e_{b.tail}"] for b in A.basis],
        "problems": problems,
        "ok": not problems,
    }
    _emit(args, "algebra-inspect", body,
          f"dimension {A.dim}; {len(A.generators)} generators; "
          + ("structure checks pass" if not problems else f"{len(problems)} problems"),
          {"total_s": time.perf_counter() - t0})
    return EXIT_OK if not problems else EXIT_FAILED


def _load_module(args):
    doc = formats.read_json(args.module)
    A = _load_algebra(args, doc, args.module)
    try:
        return A, formats.module_from_json(doc, A, args.module), doc
    except ModuleError as exc:
        payload = None
        residual = getattr(exc, "residual", None)
        if residual is not None:
            payload = {"residual": formats.matrix_to_json(residual)}
        raise CommandFailure(EXIT_INPUT, "validation", str(exc), args.module, payload) from None


def cmd_module(args) -> int:
    A, F, _ = _load_module(args)
    body = {
        "algebra_digest": formats.digest(formats.algebra_to_json(A)),
        "module_digest": formats.digest(formats.module_to_json(F)),
        "dims": dict(zip(A.vertices, F.dims)),
        "dim": F.dim,
        "valid": True,
    }
    if args.action == "info":
        body["zero_generated"] = is_zero_generated(F)
        body["source_dim"] = F.dim_at(A.source)
    _emit(args, f"module-{args.action}", body,
          f"module valid, dims {list(F.dims)}" + (
              f", 0-generated={body['zero_generated']}" if args.action == "info" else ""))
    return EXIT_OK


def cmd_slice(args) -> int:
    A, F, doc = _load_module(args)
    cov = _covering(A, args.covering)
    bundle = slice_module(F, cov)
    ref = doc.get("algebra_ref")
    if isinstance(ref, str):
        ref = {"path": ref}
    if isinstance(ref, dict):
        ref = dict(ref, digest=formats.digest(formats.algebra_to_json(A)))
        if "path" in ref and args.out:
            # paths are relative to the document that names them
            target = Path(args.module).parent / ref["path"]
            ref["path"] = os.path.relpath(target, Path(args.out).parent)
    bdoc = formats.bundle_to_json(bundle, ref)
    bdoc["origin_digest"] = formats.digest(formats.module_to_json(F))
    if args.out:
        formats.write_json(args.out, bdoc)
    print(f"{len(bundle.slices)} slices: " + ", ".join(str(list(N.dims)) for N in bundle.slices))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    t0 = time.perf_counter()
    doc = formats.read_json(args.bundle)
    A = _load_algebra(args, doc, args.bundle)
    bundle = formats.bundle_from_json(doc, A, args.bundle)
    try:
        r = reconstruct(bundle)
    except ModuleError as exc:
        raise CommandFailure(EXIT_INPUT, "bundle", str(exc), args.bundle) from None
    body = {
        "input_digests": {"bundle": formats.digest(doc), "algebra": formats.digest(formats.algebra_to_json(A))},
        "covering": bundle.covering.as_lists(A),
        "dims": dict(zip(A.vertices, r.module.dims)),
        "nu_rank": r.nu.rank(),
        "consistent": r.consistent,
        "slice_checks": [c.status for c in r.slice_checks],
        "module": formats.module_to_json(r.module),
    }
    code = EXIT_OK if r.consistent else EXIT_FAILED
    if args.origin:
        odoc = formats.read_json(args.origin)
        G = formats.module_from_json(odoc, A, args.origin)
        iso = is_isomorphic(r.module, G)
        body["origin_digest"] = formats.digest(odoc)
        body["isomorphic_to_origin"] = iso.status
        body["isomorphism_method"] = iso.method
        if iso.witness is not None:
            body["isomorphism_witness"] = {v: formats.matrix_to_json(iso.witness.at(v)) for v in A.vertices}
        if not iso.yes:
            code = EXIT_FAILED
    _emit(args, "reconstruction", body,
          f"reconstructed dims {list(r.module.dims)}, consistent={r.consistent}"
          + (f", isomorphic to origin: {body['isomorphic_to_origin']}" if args.origin else ""),
          {"total_s": time.perf_counter() - t0})
    return code


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    results = run_property_suites(args.seed, args.modules)
    transcript = [r.line() for r in results]
    body = {
        "seed": args.seed,
        "modules_per_algebra": args.modules,
        "suites": [r.as_dict() for r in results],
        "ok": all(r.passed for r in results),
    }
    _emit(args, "property-check", body, "\n".join(transcript), {"total_s": time.perf_counter() - t0})
    return EXIT_OK if body["ok"] else EXIT_FAILED


def _parse_isotype(text) -> list[int]:
    if isinstance(text, list):
        return [int(k) for k in text]
    try:
        return [int(k) for k in str(text).strip("()[] ").split(",") if k.strip()]
    except ValueError:
        raise CommandFailure(EXIT_INPUT, "usage", f"bad isotype vector {text!r}", "--n") from None


def cmd_hilb(args) -> int:
    cfg = formats.read_json(args.config) if args.config else {}
    m = args.m if args.m is not None else cfg.get("m")
    n = args.n if args.n is not None else cfg.get("n")
    cov = args.covering if args.covering is not None else cfg.get("covering")
    L = args.truncation if args.truncation is not None else cfg.get("truncation_level")
    if m is None or n is None:
        raise CommandFailure(EXIT_INPUT, "usage", "hilb needs --m and --n (or a config file)")
    m, n = int(m), _parse_isotype(n)
    if cov is None:
        cov = [["∞", str(k)] for k in range(m)]
    try:
        rep = hilb_injectivity_experiment(m, n, cov, L, timings=args.timings)
    except (QuiverError, ValueError) as exc:
        raise CommandFailure(EXIT_INPUT, "usage", str(exc)) from None
    timings = rep.pop("timings", None)
    artifacts = rep.pop("counterexamples")
    rep["counterexample_count"] = len(artifacts)
    paths = []
    for k, art in enumerate(artifacts):
        p = _sidecar(args.out, f".counterexample-{k}") or Path(f"counterexample-{k}.json")
        formats.write_json(p, art)
        paths.append(p.name)
    rep["counterexample_files"] = paths
    summary = (f"{rep['count']} fixed points, {len(rep['pairs'])} pairs, "
               f"{rep['distinguished_pairs']} distinguished")
    _emit(args, "hilb-injectivity", rep, summary, timings)
    if artifacts:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK if rep["ok"] else EXIT_FAILED


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rational", help="rational or prime:p")
    common.add_argument("--truncation", type=int, help="truncation level L")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings in the report")

    alg_src = argparse.ArgumentParser(add_help=False)
    alg_src.add_argument("--algebra", help="algebra file (defaults to the document's algebra_ref)")
    alg_src.add_argument("--preset", help="star:k, loop or mckay:m")

    p = argparse.ArgumentParser(prog="cornering", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", parents=[common, alg_src], help="build or inspect an algebra")
    a.add_argument("action", choices=("build", "inspect"))
    a.add_argument("input", nargs="?", help="quiver/relations file for build")
    a.set_defaults(func=cmd_algebra)

    mo = sub.add_parser("module", parents=[common, alg_src], help="validate or describe a module")
    mo.add_argument("action", choices=("validate", "info"))
    mo.add_argument("module")
    mo.set_defaults(func=cmd_module)

    s = sub.add_parser("slice", parents=[common, alg_src], help="slice a module over a covering")
    s.add_argument("module")
    s.add_argument("--covering", required=True, help='e.g. "∞0|∞1,2"')
    s.set_defaults(func=cmd_slice)

    r = sub.add_parser("reconstruct", parents=[common, alg_src], help="rebuild a module from a slice bundle")
    r.add_argument("bundle")
    r.add_argument("--origin", help="module file to compare against")
    r.set_defaults(func=cmd_reconstruct)

    c = sub.add_parser("check", parents=[common], help="run the seeded property suites")
    c.add_argument("--modules", type=int, default=4, help="random modules per algebra")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("hilb", parents=[common], help="slice-injectivity experiment on fixed points")
    h.add_argument("--m", type=int, help="group order")
    h.add_argument("--n", help="isotype vector, e.g. 1,1")
    h.add_argument("--covering", help='corner sets, e.g. "∞0|∞1"')
    h.add_argument("--config", help="JSON file {m, n, covering, truncation_level}")
    h.set_defaults(func=cmd_hilb)
    return p


def _normalize(argv: Sequence[str]) -> list[str]:
    """Accept ``key=value`` operands (``m=2 n=1,1``) as ``--key value``."""
    out = []
    for tok in argv:
        if not tok.startswith("-") and "=" in tok:
            key, value = tok.split("=", 1)
            if key.isidentifier():
                out += [f"--{key}", value]
                continue
        out.append(tok)
    return out


def _fail(args, exc: CommandFailure) -> int:
    err = {"error": {"type": exc.kind, "message": str(exc), "where": exc.where, "exit_code": exc.code}}
    if exc.payload is not None:
        err["error"]["detail"] = exc.payload
    print(json.dumps(err, ensure_ascii=False, sort_keys=True), file=sys.stderr)
    side = _sidecar(getattr(args, "out", None), ".failure")
    if side is not None:
        config = _config(args)
        formats.write_json(side, {"schema_version": formats.SCHEMA_VERSION, "kind": "failure",
                                  "config": config, "config_digest": formats.digest(config), **err})
    return exc.code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_normalize(sys.argv[1:] if argv is None else argv))
    try:
        field = parse_field(args.field)
    except ValueError as exc:
        return _fail(args, CommandFailure(EXIT_INPUT, "usage", str(exc), "--field"))
    try:
        with use_field(field):
            return args.func(args)
    except CommandFailure as exc:
        return _fail(args, exc)
    except FormatError as exc:
        return _fail(args, CommandFailure(EXIT_INPUT, "parse", exc.detail, exc.where))
    except (QuiverError, RelationError, ModuleError) as exc:
        return _fail(args, CommandFailure(EXIT_INPUT, "validation", str(exc)))
    except ReconstructionError as exc:
        return _fail(args, CommandFailure(EXIT_FAILED, "reconstruction", str(exc)))


if __name__ == "__main__":
    sys.exit(main())
