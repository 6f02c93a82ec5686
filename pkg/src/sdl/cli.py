"""``sdl`` command line: verdicts map to exit codes 0/1, operational errors to 2."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify, unsatisfiable_classes
from .errors import (
    ImportCycle, InconsistentKB, MissingImport, ResourceLimit, SyntaxProblem, UnsupportedFeature,
)
from .kb import resolve_imports
from .lint import LintConfig, errors as lint_errors, lint
from .model import HasValue, Max, Min, OneOf, subconcepts
from .syntax import parse_concept, render_axiom, render_concept, render_name
from .tableau import is_consistent, is_satisfiable, subsumes

OK, NO, FAIL = 0, 1, 2


class _Abort(Exception):
    def __init__(self, message):
        self.message = message


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _resolve_path(path: str) -> Path:
    """A path as given, falling back to the bundled corpus for ``corpus/<file>``."""
    p = Path(path)
    if not p.exists() and p.parent.name == "corpus":
        from .corpus import CORPUS_DIR

        if (CORPUS_DIR / p.name).exists():
            return CORPUS_DIR / p.name
    return p


def _load(args):
    path = _resolve_path(args.file)
    if not path.exists():
        raise _Abort(f"{args.file}:0:0: error: no such file")
    return resolve_imports(path, args.catalog)


def _concept(kb, text, flag):
    try:
        return parse_concept(text, kb.root.prefixes)
    except SyntaxProblem as exc:
        raise exc.with_path(f"<{flag}>") from None


def _axiom_locations(kb, pred):
    for ax, loc in zip(kb.axioms, kb.locations):
        for c in _concepts_of(ax):
            if any(pred(s) for s in subconcepts(c)):
                return loc
    return None


def _concepts_of(ax):
    for attr in ("sub", "sup", "concept"):
        v = getattr(ax, attr, None)
        if v is not None and not hasattr(v, "inverted"):
            yield v
    for m in getattr(ax, "members", ()):
        if not hasattr(m, "inverted"):
            yield m


def _unsupported_site(kb, exc, extra):
    if exc.feature == "nominal":
        pred = lambda s: isinstance(s, (OneOf, HasValue))  # noqa: E731
    else:
        pred = lambda s: isinstance(s, (Min, Max)) and not kb.rbox.is_simple(s.role)  # noqa: E731
    for flag, c in extra:
        if any(pred(s) for s in subconcepts(c)):
            return (f"<{flag}>", 1)
    return _axiom_locations(kb, pred) or (kb.root.path, 0)


def _reason(kb, fn, extra=()):
    try:
        return fn()
    except UnsupportedFeature as exc:
        f, line = _unsupported_site(kb, exc, extra)
        raise _Abort(f"{f}:{line}:1: error: {exc}") from None


def _clash_json(res, kb):
    pf = kb.root.prefixes
    return {
        "verdict": res.verdict,
        "clashKind": res.clash_kind,
        "axioms": [render_axiom(a, pf) for a in res.axioms] if not res.satisfiable else [],
    }


# -- subcommands ---------------------------------------------------------------

def cmd_check(args, out):
    kb = _load(args)
    res = _reason(kb, lambda: is_consistent(kb, args.max_nodes))
    if args.format == "json":
        data = _clash_json(res, kb)
        data["verdict"] = "consistent" if res.satisfiable else "inconsistent"
        print(_dump(data), file=out)
    else:
        print("consistent" if res.satisfiable else f"inconsistent ({res.clash_kind})", file=out)
        for ax in res.axioms:
            print("  " + render_axiom(ax, kb.root.prefixes).replace("\n", " "), file=out)
    return OK if res.satisfiable else NO


def cmd_classify(args, out):
    kb = _load(args)
    try:
        tax = _reason(kb, lambda: classify(kb, args.max_nodes, args.workers))
    except InconsistentKB as exc:
        if args.format == "json":
            print(_dump({"verdict": "inconsistent", "clashKind": exc.result.clash_kind}), file=out)
        else:
            print(f"inconsistent ({exc.result.clash_kind}); no taxonomy", file=out)
        return NO
    print(tax.to_json(kb.root.prefixes) if args.format == "json" else
          tax.to_text(kb.root.prefixes).rstrip("\n"), file=out)
    return OK


def cmd_sat(args, out):
    kb = _load(args)
    c = _concept(kb, args.concept, "concept")
    res = _reason(kb, lambda: is_satisfiable(kb, c, args.max_nodes), [("concept", c)])
    if args.format == "json":
        print(_dump(_clash_json(res, kb)), file=out)
    else:
        line = res.verdict
        if not res.satisfiable:
            line += f" (clash: {res.clash_kind})"
        print(line, file=out)
    return OK if res.satisfiable else NO


def cmd_subsumes(args, out):
    kb = _load(args)
    sub = _concept(kb, args.sub, "sub")
    sup = _concept(kb, args.sup, "sup")
    yes = _reason(kb, lambda: subsumes(kb, sub, sup, args.max_nodes), [("sub", sub), ("sup", sup)])
    if args.format == "json":
        print(_dump({"sub": render_concept(sub, kb.root.prefixes),
                     "sup": render_concept(sup, kb.root.prefixes), "subsumed": yes}), file=out)
    else:
        print("yes" if yes else "no", file=out)
    return OK if yes else NO


def cmd_unsat(args, out):
    kb = _load(args)
    found = _reason(kb, lambda: unsatisfiable_classes(kb, args.max_nodes))
    pf = kb.root.prefixes
    if args.format == "json":
        print(_dump({name: _clash_json(res, kb) for name, res in found.items()}), file=out)
    else:
        for name, res in found.items():
            print(f"{render_name(name, pf)} = owl:Nothing ({res.clash_kind})", file=out)
    return NO if found else OK


def cmd_lint(args, out):
    kb = _load(args)
    config = LintConfig.load(args.config) if args.config else LintConfig()
    if args.include_imports:
        config.includeImports = True
    findings = lint(kb, config)
    for f in findings:
        print(f.to_json() if args.format == "json" else f.to_text(), file=out)
    return NO if lint_errors(findings) else OK


def cmd_corpus_verify(args, out):
    from .corpus import load_corpus, verify

    kb, entries = load_corpus()
    cons = is_consistent(kb, args.max_nodes)
    outcomes = verify(kb, entries, args.max_nodes)
    findings = lint(kb)
    bad = [o for o in outcomes if not o.ok]
    lint_bad = lint_errors(findings)
    passed = cons.satisfiable and not bad and not lint_bad
    if args.format == "json":
        print(_dump({
            "consistent": cons.satisfiable,
            "manifest": {o.entry.id: {"expected": o.entry.expected, "actual": o.actual}
                         for o in outcomes},
            "lintErrors": len(lint_bad),
            "passed": passed,
        }), file=out)
    else:
        print(f"consistency: {'ok' if cons.satisfiable else 'FAILED'}", file=out)
        print(f"manifest: {len(outcomes) - len(bad)}/{len(outcomes)} entries as expected", file=out)
        for o in bad:
            print(f"  {o.entry.id} expected {o.entry.expected}, got {o.actual}: {o.entry.text}", file=out)
        print(f"lint: {len(lint_bad)} errors", file=out)
        print("PASS" if passed else "FAIL", file=out)
    return OK if passed else NO


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, default):
        # accepted before or after the subcommand; SUPPRESS keeps the
        # top-level value when a subcommand does not repeat the flag
        d = (lambda v: argparse.SUPPRESS) if default is None else (lambda v: v)
        parser.add_argument("--catalog", default=d(None),
                            help="catalog.json mapping ontology IRIs to files")
        parser.add_argument("--format", choices=("text", "json"), default=d("text"))
        parser.add_argument("--max-nodes", type=int, default=d(None),
                            help="completion-graph node budget (env SDL_MAX_NODES)")

    p = argparse.ArgumentParser(prog="sdl", description=__doc__)
    global_flags(p, True)
    shared = argparse.ArgumentParser(add_help=False)
    global_flags(shared, None)
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[shared])
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    with_file("check", cmd_check, "consistency of the imports closure")
    sp = with_file("classify", cmd_classify, "print the inferred taxonomy")
    sp.add_argument("--workers", type=int, default=1)
    sp = with_file("sat", cmd_sat, "satisfiability of a class expression")
    sp.add_argument("--concept", required=True)
    sp = with_file("subsumes", cmd_subsumes, "subsumption test")
    sp.add_argument("--sub", required=True)
    sp.add_argument("--sup", required=True)
    with_file("unsat-classes", cmd_unsat, "named classes equivalent to owl:Nothing")
    sp = with_file("lint", cmd_lint, "authoring-discipline checks")
    sp.add_argument("--config")
    sp.add_argument("--include-imports", action="store_true")
    sp = sub.add_parser("corpus-verify", parents=[shared],
                        help="manifest, lint and consistency on the bundled corpus")
    sp.set_defaults(fn=cmd_corpus_verify)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return FAIL if exc.code else OK
    try:
        return args.fn(args, out)
    except SyntaxProblem as exc:
        msg = f"{exc.location()}: error: {exc.message}"
        if exc.path is None:
            msg = f"<input>:{msg}"
        print(msg, file=err)
    except (MissingImport, ImportCycle) as exc:
        f, line = exc.location or (args.file, 0)
        print(f"{f}:{line}:1: error: {exc}", file=err)
    except ResourceLimit as exc:
        print(f"{getattr(args, 'file', '<corpus>')}:0:0: error: {exc}", file=err)
    except _Abort as exc:
        print(exc.message, file=err)
    except (OSError, ValueError) as exc:
        print(f"{getattr(args, 'file', '<input>')}:0:0: error: {exc}", file=err)
    return FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
