"""``ontoforge`` command line.

Exit codes: 0 success/consistent, 1 inconsistent, 2 usage or parse error,
3 I/O, catalog or import-resolution error.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .errors import (
    CatalogError,
    LoadFailure,
    ModelError,
    OntologyError,
    ParseError,
    PrefixConflict,
    UnboundPrefix,
    UnresolvedImport,
)
from .imports import Catalog, default_merged_iri, flatten, merge, resolve_imports
from .model import Iri, Ontology, signature
from .rdfxml import serialize_rdfxml
from .reasoner import Reasoner
from .syntax import parse_functional, serialize_functional

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_IO = 3


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports errors through CliError (exit 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}", EXIT_USAGE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def _load(path: str, catalog_path: str | None = None) -> Ontology:
    text = _read(path)
    try:
        onto = parse_functional(text)
    except ParseError as exc:
        raise CliError(f"{path}:{exc}", EXIT_USAGE) from exc
    if catalog_path is None:
        if onto.imports:
            print(f"warning: {path}: imports not resolved (no --catalog given)", file=sys.stderr)
        return onto
    try:
        closure = resolve_imports(onto, Catalog.load(catalog_path))
        for msg in closure.warnings:
            print(f"warning: {msg}", file=sys.stderr)
        return flatten(closure)
    except (CatalogError, UnresolvedImport, LoadFailure) as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    except (PrefixConflict, ModelError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc


def _resolve_term(onto: Ontology, term: str) -> Iri:
    """CURIE (against the document's prefixes), ``<iri>`` or bare absolute IRI."""
    try:
        if term.startswith("<") and term.endswith(">"):
            return Iri(term[1:-1])
        try:
            return onto.prefixes.expand(term)
        except UnboundPrefix:
            if "://" in term:
                return Iri(term)
            raise
    except (UnboundPrefix, ModelError) as exc:
        raise CliError(f"cannot resolve {term!r}: {exc}", EXIT_USAGE) from exc


def _cmd_check(args) -> int:
    onto = _load(args.file, args.catalog)
    report = Reasoner(onto).check()
    if args.machine:
        for clash in report.clashes:
            subjects = ",".join(s.value for s in clash.subjects)
            print(f"CLASH\t{clash.code.value}\t{subjects}")
        for w in report.warnings:
            print(f"warning: {w.code} <{w.cls}>", file=sys.stderr)
    else:
        status = "consistent" if report.consistent else f"inconsistent ({len(report.clashes)} clash(es))"
        print(f"{args.file}: {status}")
        for clash in report.clashes:
            print(f"  {clash.code.value}: " + " ".join(f"<{s}>" for s in clash.subjects))
            for ax in clash.provenance:
                print(f"      from {_render(onto, ax)}")
        for w in report.warnings:
            print(f"  warning {w.code}: <{w.cls}> can have no instances")
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def _render(onto: Ontology, ax) -> str:
    text = serialize_functional(Ontology(onto.iri, onto.prefixes, axioms=[ax]))
    return text.splitlines()[-2]


def _cmd_infer(args) -> int:
    onto = _load(args.file, args.catalog)
    store = Reasoner(onto).store
    inferred = store.inferred()
    out = onto.copy()
    for fact in inferred:
        out.add_axiom(fact)
    _write(serialize_functional(out, inferred=inferred), args.output)
    return EXIT_OK


def _cmd_convert(args) -> int:
    onto = _load(args.file)
    text = serialize_functional(onto) if args.to == "functional" else serialize_rdfxml(onto)
    _write(text, args.output)
    return EXIT_OK


def _cmd_merge(args) -> int:
    inputs = [_load(path) for path in args.files]
    merged_iri = default_merged_iri(inputs[0].iri)
    if args.iri is not None:
        merged_iri = _resolve_term(Ontology(inputs[0].iri), args.iri)
    try:
        merged, report = merge(inputs, merged_iri)
    except (PrefixConflict, ModelError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    _write(serialize_functional(merged), args.output)
    print(f"merged {len(inputs)} ontologies into <{merged.iri}>: {len(merged)} axioms")
    print(f"duplicate axioms: {report.duplicate_axioms}")
    print(f"introduced clashes: {len(report.introduced_clashes)}")
    for clash in report.introduced_clashes:
        print(f"CLASH\t{clash.code.value}\t" + ",".join(s.value for s in clash.subjects))
    return EXIT_INCONSISTENT if report.introduced_clashes else EXIT_OK


def _cmd_query(args) -> int:
    onto = _load(args.file, args.catalog)
    reasoner = Reasoner(onto)
    if args.subclasses_of:
        result = reasoner.subclasses_of(_resolve_term(onto, args.subclasses_of), args.direct)
    elif args.superclasses_of:
        result = reasoner.superclasses_of(_resolve_term(onto, args.superclasses_of), args.direct)
    else:
        result = reasoner.instances_of(_resolve_term(onto, args.instances_of), args.direct)
    for iri in sorted(result):
        print(iri.value)
    return EXIT_OK


def _cmd_stats(args) -> int:
    onto = _load(args.file, args.catalog)
    entities = Counter(kind.value for kind, _ in signature(onto))
    axioms = Counter(type(ax).__name__ for ax in onto.axioms)
    print(f"ontology\t<{onto.iri}>")
    for name, n in sorted(entities.items()):
        print(f"entities\t{name}\t{n}")
    for name, n in sorted(axioms.items()):
        print(f"axioms\t{name}\t{n}")
    print(f"axioms\ttotal\t{len(onto)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontoforge", description="Parse, check, reason over and merge ontologies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="consistency check")
    p.add_argument("file")
    p.add_argument("--catalog", help="catalog file used to resolve imports")
    p.add_argument("--machine", action="store_true", help="one CLASH line per clash")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("infer", help="write the ontology plus inferred facts")
    p.add_argument("file")
    p.add_argument("--catalog")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("convert", help="re-serialize a document")
    p.add_argument("file")
    p.add_argument("--to", choices=("functional", "rdfxml"), required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("merge", help="merge ontologies and report introduced clashes")
    p.add_argument("files", nargs="+")
    p.add_argument("--iri", help="IRI of the merged ontology")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("query", help="taxonomy and instance queries")
    p.add_argument("file")
    p.add_argument("--catalog")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--subclasses-of", metavar="CLASS")
    group.add_argument("--superclasses-of", metavar="CLASS")
    group.add_argument("--instances-of", metavar="CLASS")
    p.add_argument("--direct", action="store_true")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("stats", help="entity and axiom counts")
    p.add_argument("file")
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_stats)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.status
    except OntologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
