"""Command-line interface.

Exit codes: 0 success, 1 validation failure (or corpus mismatch), 2 the
complex fails the purity/connectivity hypotheses, 3 I/O or parse error,
4 internal disagreement between equivalent procedures.
"""

from __future__ import annotations

import argparse
import sys

from . import corpus as corpus_mod
from .algebra import algebra_of_complex, hilbert_probe
from .cps import build_bicomplex, cps_table
from .errors import DisagreementError, KoszulToolError, ParseError
from .fields import parse_field
from .homology import cohomology, homology, local_homology
from .io import complex_to_json, dumps, load, normalize_document, parse_document
from .strata import check_dimension_bound, check_strengthened_singularity, stratify
from .verdict import CRITERIA, cross_check, koszul, koszul_via_local_homology

DEFAULT_FIELDS = ("q",)


def _load_input(args):
    if args.example:
        try:
            return corpus_mod.get(args.example).complex
        except KeyError:
            raise ParseError(f"no corpus entry named {args.example!r}") from None
    if args.input in (None, "-"):
        return parse_document(sys.stdin.read())
    return load(args.input)


def _fields(args):
    return [parse_field(f) for f in (args.field or DEFAULT_FIELDS)]


def _per_field(args, fn):
    X = _load_input(args)
    results = [fn(X, F) for F in _fields(args)]
    return results[0] if len(results) == 1 else {"results": results}


def cmd_validate(args):
    X = _load_input(args)
    out = {
        "valid": True,
        "dimension": X.dimension,
        "f_vector": X.f_vector(),
        "euler_characteristic": X.euler_characteristic(),
        "pure": X.is_pure(),
    }
    if out["pure"]:
        out["codim1_connected"] = X.is_codim1_connected()
    return out


def cmd_homology(args):
    def run(X, F):
        return {
            "field": F.name,
            "homology": homology(X, F).to_json(),
            "reduced_homology": homology(X, F, reduced=True).to_json(),
            "cohomology": cohomology(X, F).to_json(),
        }
    return _per_field(args, run)


def cmd_local(args):
    return _per_field(args, lambda X, F: {"cell": args.cell, **local_homology(X, args.cell, F).to_json()})


def cmd_cps(args):
    def run(X, F):
        B = build_bicomplex(X, F)
        table = cps_table(B)
        out = table.to_json()
        out["nonvanishing"] = [[n, k] for n, k in table.nonvanishing()]
        out["audit"] = B.audit()
        return out
    return _per_field(args, run)


def cmd_strata(args):
    def run(X, F):
        S = stratify(X, F)
        out = S.to_json()
        out["dimension_bound_violations"] = check_dimension_bound(S, X) if X.is_pure() else None
        out["strengthened_singularity"] = check_strengthened_singularity(S, X, F)
        return out
    return _per_field(args, run)


def cmd_koszul(args):
    def run(X, F):
        if args.criterion == "all":
            report = cross_check(X, F)
            out = report.to_json()
            out["koszul_by_criterion"] = out.pop("koszul")
            out["koszul"] = report.koszul
            return out
        return koszul(X, F, args.criterion).to_json()
    return _per_field(args, run)


def cmd_algebra(args):
    def run(X, F):
        probe = hilbert_probe(X, F, args.max_degree)
        verdict = koszul_via_local_homology(X, F).koszul
        if not probe.passed:
            if verdict:
                raise DisagreementError(
                    f"Hilbert series identity fails over {F.name} for a complex judged Koszul: {probe.deviations}"
                )
            status = "not koszul"
        else:
            status = "consistent" if verdict else "inconclusive"
        return {
            "field": F.name,
            "generators": algebra_of_complex(X, F).generators,
            **probe.to_json(),
            "koszul_verdict": verdict,
            "status": status,
        }
    return _per_field(args, run)


def cmd_examples(args):
    if args.action == "list":
        return [{"name": e.name, "description": e.description} for e in corpus_mod.corpus()]
    if not args.name:
        raise ParseError("examples emit needs an entry name")
    try:
        entry = corpus_mod.get(args.name)
    except KeyError:
        raise ParseError(f"no corpus entry named {args.name!r}") from None
    if args.cw:
        return complex_to_json(entry.complex)
    return normalize_document(entry.document())


def cmd_check_corpus(args):
    fields = args.field or ["q", "gf:2"]
    entries = {}
    for e in corpus_mod.corpus():
        problems = []
        for f in fields:
            problems += corpus_mod.check_entry(e, f)
        entries[e.name] = {"ok": not problems, "problems": problems}
    ok = all(v["ok"] for v in entries.values())
    return {"ok": ok, "fields": [parse_field(f).name for f in fields], "entries": entries}, (0 if ok else 1)


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "local": cmd_local,
    "cps": cmd_cps,
    "strata": cmd_strata,
    "koszul": cmd_koszul,
    "algebra": cmd_algebra,
    "examples": cmd_examples,
    "check-corpus": cmd_check_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", action="append", help="q or gf:P; repeat for several fields")
    common.add_argument("--pretty", action="store_true", help="indented JSON output")
    common.add_argument("--input", help="JSON file (default: stdin)")
    common.add_argument("--example", help="use a built-in corpus entry instead of --input")

    parser = argparse.ArgumentParser(prog="cellkoszul", description="Koszulity of R(X) for regular cell complexes")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the input and report basic structure")
    sub.add_parser("homology", parents=[common], help="Betti numbers")
    p = sub.add_parser("local", parents=[common], help="local homology at a cell")
    p.add_argument("--cell", required=True)
    sub.add_parser("cps", parents=[common], help="table of H^n_k")
    sub.add_parser("strata", parents=[common], help="singular strata S_n")
    p = sub.add_parser("koszul", parents=[common], help="Koszul verdict")
    p.add_argument("--criterion", choices=list(CRITERIA) + ["all"], default="all")
    p = sub.add_parser("algebra", parents=[common], help="graded dimensions and Hilbert series check")
    p.add_argument("--max-degree", type=int, default=4)
    p = sub.add_parser("examples", parents=[common], help="list or emit corpus entries")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--cw", action="store_true", help="emit the built complex in regular-cw/v1")
    sub.add_parser("check-corpus", parents=[common], help="verify every expected corpus fact")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
        code = 0
        if isinstance(result, tuple):
            result, code = result
    except DisagreementError as exc:
        if exc.report is not None:
            stdout.write(dumps(exc.report.to_json(), args.pretty))
        stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except KoszulToolError as exc:
        stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except KeyError as exc:
        stderr.write(f"error: unknown cell {exc}\n")
        return 1
    stdout.write(dumps(result, args.pretty))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
