"""``nfrsctl``: validate, export, query, and inspect the built-in schemas.

Exit codes: 0 success, 1 validation errors (warnings too under ``--strict``),
2 parse failure, 3 usage error. Set ``NFRSCTL_NO_COLOR`` to disable ANSI
styling of severities.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from enum import IntEnum

from . import export, kernel, queries
from .diagnostics import Diagnostic, render_json, render_text
from .model import Document
from .textformat import ParseFailure, parse
from .validator import ValidationMode, derive_depends_on, has_errors, validate


class ExitCode(IntEnum):
    SUCCESS = 0
    VALIDATION_ERRORS = 1
    PARSE_FAILURE = 2
    USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Fail(Exception):
    def __init__(self, code: ExitCode) -> None:
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise UsageError(message)


def _color_enabled() -> bool:
    if os.environ.get("NFRSCTL_NO_COLOR"):
        return False
    return sys.stdout.isatty()


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_document(path: str) -> Document:
    try:
        return parse(_read_text(path))
    except ParseFailure as failure:
        for error in failure.errors:
            loc = error.location
            print(f"{path}:{loc.line}:{loc.column}: error: {error.message}", file=sys.stderr)
        raise _Fail(ExitCode.PARSE_FAILURE) from None


def _print_diagnostics(diagnostics: list[Diagnostic], path: str, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        print(render_json(diagnostics, path), file=stream)
        return
    color = _color_enabled() and stream is sys.stdout
    for diagnostic in diagnostics:
        print(render_text(diagnostic, path, color=color), file=stream)


def _write_output(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(payload)


# --- commands -----------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> ExitCode:
    doc = _load_document(args.file)
    diagnostics = validate(doc, ValidationMode(args.mode))
    if diagnostics or args.format == "json":
        _print_diagnostics(diagnostics, args.file, args.format)
    if has_errors(diagnostics, strict=args.strict):
        return ExitCode.VALIDATION_ERRORS
    return ExitCode.SUCCESS


def cmd_export(args: argparse.Namespace) -> ExitCode:
    doc = _load_document(args.file)
    referential = [d for d in validate(doc, ValidationMode.MODEL) if d.code == "R-REF"]
    if referential:
        _print_diagnostics(referential, args.file, "text", stream=sys.stderr)
        return ExitCode.VALIDATION_ERRORS
    renderers = {"json": export.to_json, "dot": export.to_dot, "turtle": export.to_turtle}
    _write_output(renderers[args.to](doc), args.output)
    return ExitCode.SUCCESS


def _schema(version: str) -> kernel.OntologySchema:
    try:
        return kernel.builtin_schema(version)
    except kernel.UnknownVersion as exc:
        raise UsageError(str(exc)) from None


def cmd_schema(args: argparse.Namespace) -> ExitCode:
    if args.schema_command == "counts":
        terms, properties, relationships = kernel.schema_counts(_schema(args.version))
        print(f"terms={terms} properties={properties} relationships={relationships}")
    elif args.schema_command == "dump":
        sys.stdout.write(kernel.schema_to_json(_schema(args.version)))
    elif args.schema_command == "stereotypes":
        try:
            chain = kernel.stereotype_chain(_schema(args.version), args.term)
        except kernel.UnknownTerm as exc:
            raise UsageError(str(exc)) from None
        for ref in chain:
            print(f"{ref.component.name}:{ref.term}")
    else:  # diff
        diff = kernel.diff_schemas(_schema(args.old), _schema(args.new))
        if args.format == "json":
            print(_diff_json(diff))
        else:
            for line in _diff_lines(diff):
                print(line)
    return ExitCode.SUCCESS


def _diff_lines(diff: kernel.SchemaDiff) -> list[str]:
    lines = []
    lines += [f"removed term: {t}" for t in diff.removed_terms]
    lines += [f"added term: {t}" for t in diff.added_terms]
    lines += [f"removed relationship: {n} ({s} -> {t})" for n, s, t in diff.removed_relationships]
    lines += [f"added relationship: {n} ({s} -> {t})" for n, s, t in diff.added_relationships]
    lines += [
        f"renamed relationship: {old} -> {new} ({s} -> {t})"
        for old, new, s, t in diff.renamed_relationships
    ]
    lines += [
        f"stereotype {c.change}: {c.term}: {c.stereotype.component.name}:{c.stereotype.term}"
        for c in diff.stereotype_changes
    ]
    return lines


def _diff_json(diff: kernel.SchemaDiff) -> str:
    obj = {
        "added_relationships": [list(r) for r in diff.added_relationships],
        "added_terms": list(diff.added_terms),
        "removed_relationships": [list(r) for r in diff.removed_relationships],
        "removed_terms": list(diff.removed_terms),
        "renamed_relationships": [list(r) for r in diff.renamed_relationships],
        "stereotype_changes": [
            {
                "change": c.change,
                "component": c.stereotype.component.name,
                "stereotype": c.stereotype.term,
                "term": c.term,
            }
            for c in diff.stereotype_changes
        ],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _validated_document(path: str) -> Document:
    doc = _load_document(path)
    diagnostics = validate(doc, ValidationMode.MODEL)
    if has_errors(diagnostics):
        _print_diagnostics(diagnostics, path, "text", stream=sys.stderr)
        raise _Fail(ExitCode.VALIDATION_ERRORS)
    return doc


def cmd_query(args: argparse.Namespace) -> ExitCode:
    doc = _validated_document(args.file)
    try:
        if args.query_command in ("influences", "depends"):
            _query_closure(doc, args)
        elif args.query_command == "leaf-attributes":
            attributes = queries.leaf_attributes(doc, args.model, args.characteristic)
            if args.format == "json":
                print(json.dumps(attributes, ensure_ascii=False, separators=(",", ":")))
            else:
                for name in attributes:
                    print(name)
        elif args.query_command == "coverage":
            _query_coverage(doc, args)
        else:  # trace-fr
            pairs = queries.trace_satisfies(doc, args.name)
            if args.format == "json":
                print(json.dumps([list(p) for p in pairs], ensure_ascii=False, separators=(",", ":")))
            else:
                for model_name, nfr_name in pairs:
                    print(f"{model_name}: {nfr_name}")
    except queries.QueryError as exc:
        raise UsageError(str(exc)) from None
    return ExitCode.SUCCESS


def _query_closure(doc: Document, args: argparse.Namespace) -> None:
    run = queries.influence_closure if args.query_command == "influences" else queries.depends_closure
    result = run(doc, args.view_model, args.origin)
    reached = list(result.reached)
    if not args.transitive:
        vm = doc.view_models[args.view_model]
        edges = vm.influences_edges
        if args.query_command == "depends":
            edges = derive_depends_on(vm).depends_on_edges
        reached = sorted({t for s, t in edges if s == args.origin})
    if args.format == "json":
        print(json.dumps({"origin": args.origin, "reached": reached}, sort_keys=True,
                         ensure_ascii=False, separators=(",", ":")))
    else:
        for name in reached:
            print(name)


def _query_coverage(doc: Document, args: argparse.Namespace) -> None:
    report = queries.mapping_coverage(doc, args.model)
    if args.format == "json":
        obj = {
            "mapped": [[item, list(attrs)] for item, attrs in report.mapped],
            "ratio": float(report.ratio),
            "unmapped": list(report.unmapped),
        }
        print(json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")))
        return
    for item, attrs in report.mapped:
        print(f"mapped {item!r} -> " + ", ".join(attrs))
    for item in report.unmapped:
        print(f"unmapped {item!r}")
    print(f"ratio {float(report.ratio)}")


def cmd_lint_arch(args: argparse.Namespace) -> ExitCode:
    text = _read_text(args.file)
    try:
        spec = kernel.parse_arch(text)
    except kernel.ArchParseError as exc:
        print(f"{args.file}: error: {exc}", file=sys.stderr)
        return ExitCode.PARSE_FAILURE
    diagnostics = kernel.lint_architecture(spec)
    if diagnostics or args.format == "json":
        _print_diagnostics(diagnostics, args.file, args.format)
    return ExitCode.VALIDATION_ERRORS if diagnostics else ExitCode.SUCCESS


# --- argument wiring -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="nfrsctl", description=__doc__)
    commands = parser.add_subparsers(dest="command")

    p = commands.add_parser("validate", help="parse and validate a .nfrs file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["model", "instance"], default="model")
    p.add_argument("--strict", action="store_true", help="warnings also fail the exit code")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_validate)

    p = commands.add_parser("export", help="export a .nfrs file deterministically")
    p.add_argument("file")
    p.add_argument("to", choices=["json", "dot", "turtle"])
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export)

    p = commands.add_parser("schema", help="inspect the built-in ontology schemas")
    schema_commands = p.add_subparsers(dest="schema_command", required=True)
    sp = schema_commands.add_parser("counts")
    sp.add_argument("--version", default="1.2")
    sp = schema_commands.add_parser("dump")
    sp.add_argument("--version", default="1.2")
    sp = schema_commands.add_parser("diff")
    sp.add_argument("old")
    sp.add_argument("new")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp = schema_commands.add_parser("stereotypes")
    sp.add_argument("term")
    sp.add_argument("--version", default="1.2")
    p.set_defaults(func=cmd_schema)

    p = commands.add_parser("query", help="run read-only analyses over a validated file")
    query_commands = p.add_subparsers(dest="query_command", required=True)
    for name in ("influences", "depends"):
        qp = query_commands.add_parser(name)
        qp.add_argument("file")
        qp.add_argument("--view-model", required=True)
        qp.add_argument("--from", dest="origin", required=True)
        qp.add_argument("--transitive", action="store_true")
        qp.add_argument("--format", choices=["text", "json"], default="text")
    qp = query_commands.add_parser("leaf-attributes")
    qp.add_argument("file")
    qp.add_argument("--model", required=True)
    qp.add_argument("--characteristic", required=True)
    qp.add_argument("--format", choices=["text", "json"], default="text")
    qp = query_commands.add_parser("coverage")
    qp.add_argument("file")
    qp.add_argument("--model", required=True)
    qp.add_argument("--format", choices=["text", "json"], default="text")
    qp = query_commands.add_parser("trace-fr")
    qp.add_argument("file")
    qp.add_argument("--name", required=True)
    qp.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_query)

    p = commands.add_parser("lint-arch", help="check an architecture file against the tier rules")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_lint_arch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            parser.print_usage(sys.stderr)
            return int(ExitCode.USAGE_ERROR)
        return int(args.func(args))
    except UsageError as exc:
        print(f"nfrsctl: error: {exc}", file=sys.stderr)
        return int(ExitCode.USAGE_ERROR)
    except _Fail as fail:
        return int(fail.code)


if __name__ == "__main__":
    sys.exit(main())
