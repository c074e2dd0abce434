"""Import closure resolution through a local catalog, flattening and merging."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    CatalogError,
    LoadFailure,
    ModelError,
    OntologyError,
    PrefixConflict,
    UnresolvedImport,
)
from .model import Iri, Ontology, PrefixMap
from .reasoner import Clash, check_consistency
from .syntax import parse_functional

log = logging.getLogger(__name__)


class Catalog(dict):
    """Ontology IRI -> local document path."""

    @classmethod
    def load(cls, path) -> "Catalog":
        """Read the tab-separated catalog format.

        One ``<iri>\\tpath`` entry per line; blank lines and lines starting
        with ``#`` are skipped. Paths are relative to the catalog file.
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
        catalog = cls()
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            iri_text, sep, location = line.partition("\t")
            if not sep or "\t" in location or not location.strip():
                raise CatalogError(f"{path}:{lineno}: expected '<iri><TAB>path'")
            if not (iri_text.startswith("<") and iri_text.endswith(">")):
                raise CatalogError(f"{path}:{lineno}: IRI must be in angle brackets")
            try:
                iri = Iri(iri_text[1:-1])
            except ModelError as exc:
                raise CatalogError(f"{path}:{lineno}: {exc}") from exc
            target = str(path.parent / location.strip())
            if catalog.get(iri, target) != target:
                raise CatalogError(f"{path}:{lineno}: <{iri}> mapped twice")
            catalog[iri] = target
        return catalog


@dataclass
class ImportClosure:
    root: Iri
    loaded: dict[Iri, Ontology]
    order: list[Iri]
    warnings: list[str] = field(default_factory=list)


def _load(iri: Iri, catalog: Catalog) -> Ontology:
    location = catalog.get(iri)
    if location is None:
        raise UnresolvedImport(iri)
    try:
        text = Path(location).read_text(encoding="utf-8")
        onto = parse_functional(text)
    except (OSError, UnicodeDecodeError, OntologyError) as exc:
        raise LoadFailure(iri, exc) from exc
    if onto.iri != iri:
        raise LoadFailure(iri, f"{location} declares <{onto.iri}>")
    return onto


def resolve_imports(root_doc, catalog: Catalog) -> ImportClosure:
    """Depth-first, load-once traversal of the imports of ``root_doc``.

    ``root_doc`` is document text or an already parsed Ontology. Revisiting
    a loaded IRI (an import cycle or a shared import) only adds a warning.
    """
    root = root_doc if isinstance(root_doc, Ontology) else parse_functional(root_doc)
    closure = ImportClosure(root.iri, {root.iri: root}, [root.iri])

    def visit(onto: Ontology):
        for imp in onto.imports:
            if imp in closure.loaded:
                msg = f"<{onto.iri}> imports already loaded <{imp}>; skipped"
                log.warning(msg)
                closure.warnings.append(msg)
                continue
            child = _load(imp, catalog)
            closure.loaded[imp] = child
            closure.order.append(imp)
            visit(child)

    visit(root)
    return closure


def merge_prefixes(ontologies, strict: bool = True) -> tuple[PrefixMap, list]:
    """Union of prefix maps; conflicting bindings raise unless ``strict`` is off.

    With ``strict=False`` the first binding wins and conflicts are returned.
    """
    merged: dict[str, Iri] = {}
    conflicts = []
    for onto in ontologies:
        for name in sorted(onto.prefixes):
            ns = onto.prefixes[name]
            old = merged.setdefault(name, ns)
            if old != ns:
                a, b = sorted((old, ns))
                conflict = (name, a, b)
                if conflict not in conflicts:
                    conflicts.append(conflict)
    if conflicts and strict:
        raise PrefixConflict(conflicts)
    return PrefixMap(merged), conflicts


def flatten(closure: ImportClosure) -> Ontology:
    ontologies = [closure.loaded[iri] for iri in closure.order]
    prefixes, _ = merge_prefixes(ontologies)
    flat = Ontology(closure.root, prefixes)
    for onto in ontologies:
        for ax in onto.axioms:
            flat.add_axiom(ax)
    return flat


@dataclass
class MergeReport:
    duplicate_axioms: int
    prefix_conflicts: list = field(default_factory=list)
    introduced_clashes: list[Clash] = field(default_factory=list)


def merge(inputs, merged_iri, strict: bool = True) -> tuple[Ontology, MergeReport]:
    """Union of several ontologies under ``merged_iri``.

    The report counts axioms shared by two or more inputs and lists clashes
    that only the merged ontology exhibits.
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("merge needs at least one ontology")
    merged_iri = merged_iri if isinstance(merged_iri, Iri) else Iri(merged_iri)
    prefixes, conflicts = merge_prefixes(inputs, strict=strict)

    seen_in = {}
    for onto in inputs:
        for ax in onto.axioms:
            seen_in[ax] = seen_in.get(ax, 0) + 1
    input_iris = {o.iri for o in inputs} | {merged_iri}
    imports = sorted({imp for o in inputs for imp in o.imports} - input_iris)
    merged = Ontology(merged_iri, prefixes, imports)
    for ax in sorted(seen_in):
        merged.add_axiom(ax)

    before = set()
    for onto in inputs:
        before.update(check_consistency(onto).clashes)
    introduced = [c for c in check_consistency(merged).clashes if c not in before]
    report = MergeReport(
        duplicate_axioms=sum(1 for n in seen_in.values() if n >= 2),
        prefix_conflicts=conflicts,
        introduced_clashes=introduced,
    )
    return merged, report


def default_merged_iri(iri: Iri) -> Iri:
    """``http://x/onto`` -> ``http://x/onto-merged`` (before any trailing / or #)."""
    value = iri.value
    tail = ""
    while value and value[-1] in "/#":
        tail = value[-1] + tail
        value = value[:-1]
    return Iri(value + "-merged" + tail)
