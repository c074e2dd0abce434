"""RDF/XML emitter (write-only).

One element per entity, typed by its declaration, holding every axiom whose
subject is that entity. Elements and their children follow the canonical
axiom order used by the functional writer.
"""
from __future__ import annotations

import re
from collections import defaultdict
from xml.sax.saxutils import escape, quoteattr

from .model import (
    OWL,
    RDF,
    RDFS,
    XSD,
    XSD_STRING,
    AnnotationAssertion,
    Axiom,
    Characteristic,
    ClassAssertion,
    ComplementClasses,
    DataPropertyAssertion,
    DataPropertyDomain,
    DataPropertyRange,
    Declaration,
    DisjointClasses,
    EntityKind,
    Iri,
    Literal,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    PropertyCharacteristic,
    SubClassOf,
)

ELEMENT_FOR_KIND = {
    EntityKind.CLASS: "owl:Class",
    EntityKind.OBJECT_PROPERTY: "owl:ObjectProperty",
    EntityKind.DATA_PROPERTY: "owl:DatatypeProperty",
    EntityKind.ANNOTATION_PROPERTY: "owl:AnnotationProperty",
    EntityKind.NAMED_INDIVIDUAL: "owl:NamedIndividual",
    EntityKind.DATATYPE: "rdfs:Datatype",
}

PROPERTY_TYPE = {ch: OWL[f"{ch.value}Property"] for ch in Characteristic}

COMPLEMENT_NOTE = "complement of "

_FIXED = {"rdf": RDF.base, "rdfs": RDFS.base, "owl": OWL.base, "xsd": XSD.base}
_NCNAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


class _QNames:
    """Assigns XML qualified names to property IRIs used as element names."""

    def __init__(self, o: Ontology, iris):
        self.ns = dict(_FIXED)
        for name in sorted(o.prefixes):
            ns = o.prefixes[name].value
            if not name or name.lower().startswith("xml") or name in self.ns:
                continue
            self.ns[name] = ns
        self.names = {}
        pending = {}
        for iri in sorted(set(iris)):
            qname = self._from_known(iri)
            if qname is None:
                ns, local = _split(iri)
                pending.setdefault(ns, []).append((iri, local))
            else:
                self.names[iri] = qname
        counter = 0
        for ns in sorted(pending):
            counter += 1
            prefix = f"ns{counter}"
            while prefix in self.ns:
                counter += 1
                prefix = f"ns{counter}"
            self.ns[prefix] = ns
            for iri, local in pending[ns]:
                self.names[iri] = f"{prefix}:{local}"

    def _from_known(self, iri: Iri):
        best = None
        for prefix, ns in self.ns.items():
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if _NCNAME.fullmatch(local):
                    key = (-len(ns), prefix)
                    if best is None or key < best[0]:
                        best = (key, f"{prefix}:{local}")
        return best[1] if best else None

    def __getitem__(self, iri: Iri) -> str:
        return self.names[iri]


def _split(iri: Iri) -> tuple[str, str]:
    m = re.search(r"[A-Za-z_][A-Za-z0-9_.\-]*$", iri.value)
    if m is None or m.start() == 0:
        raise ValueError(f"<{iri}> cannot be written as an XML element name")
    return iri.value[:m.start()], m.group()


def _resource(tag: str, iri: Iri) -> str:
    return f"<{tag} rdf:resource={quoteattr(iri.value)}/>"


def _literal(tag: str, lit: Literal) -> str:
    attr = "" if lit.datatype == XSD_STRING else f" rdf:datatype={quoteattr(lit.datatype.value)}"
    return f"<{tag}{attr}>{escape(lit.lexical)}</{tag}>"


def _placements(ax: Axiom, qnames: _QNames):
    """(subject, child XML) pairs an axiom contributes; empty for declarations."""
    if isinstance(ax, SubClassOf):
        return [(ax.sub, _resource("rdfs:subClassOf", ax.sup))]
    if isinstance(ax, DisjointClasses):
        return [(a, _resource("owl:disjointWith", b)) for a, b in ax.pairs()]
    if isinstance(ax, ComplementClasses):
        note = f"<rdfs:comment>{escape(COMPLEMENT_NOTE + ax.b.value)}</rdfs:comment>"
        return [(ax.a, _resource("owl:disjointWith", ax.b)), (ax.a, note)]
    if isinstance(ax, (ObjectPropertyDomain, DataPropertyDomain)):
        return [(ax.p, _resource("rdfs:domain", ax.c))]
    if isinstance(ax, ObjectPropertyRange):
        return [(ax.p, _resource("rdfs:range", ax.c))]
    if isinstance(ax, DataPropertyRange):
        return [(ax.p, _resource("rdfs:range", ax.dt))]
    if isinstance(ax, PropertyCharacteristic):
        return [(ax.p, _resource("rdf:type", PROPERTY_TYPE[ax.ch]))]
    if isinstance(ax, ClassAssertion):
        return [(ax.ind, _resource("rdf:type", ax.c))]
    if isinstance(ax, ObjectPropertyAssertion):
        return [(ax.subj, _resource(qnames[ax.p], ax.obj))]
    if isinstance(ax, DataPropertyAssertion):
        return [(ax.subj, _literal(qnames[ax.p], ax.value))]
    if isinstance(ax, AnnotationAssertion):
        tag = qnames[ax.ap]
        if isinstance(ax.value, Iri):
            return [(ax.subject, _resource(tag, ax.value))]
        return [(ax.subject, _literal(tag, ax.value))]
    return []


def serialize_rdfxml(o: Ontology) -> str:
    axioms = o.sorted_axioms()
    element_props = [
        ax.p for ax in axioms if isinstance(ax, (ObjectPropertyAssertion, DataPropertyAssertion))
    ] + [ax.ap for ax in axioms if isinstance(ax, AnnotationAssertion)]
    qnames = _QNames(o, element_props)

    children = defaultdict(list)
    order = []
    for ax in axioms:
        if isinstance(ax, Declaration):
            order.append(ax.entity)
        for subject, xml in _placements(ax, qnames):
            children[subject].append(xml)
    declared = set(order)
    order.extend(sorted(s for s in children if s not in declared and s != o.iri))

    lines = ['<?xml version="1.0" encoding="utf-8"?>', "<rdf:RDF"]
    lines.extend(f"    xmlns:{p}={quoteattr(ns)}" for p, ns in sorted(qnames.ns.items()))
    lines[-1] += ">"

    head = [_resource("owl:imports", imp) for imp in o.imports] + children.get(o.iri, [])
    lines.extend(_element("owl:Ontology", o.iri, head))
    for entity in order:
        if entity == o.iri:
            continue
        kind = o.kind_of(entity)
        tag = ELEMENT_FOR_KIND[kind] if kind is not None else "rdf:Description"
        lines.extend(_element(tag, entity, children.get(entity, [])))
    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


def _element(tag: str, about: Iri, body: list[str]) -> list[str]:
    open_tag = f"  <{tag} rdf:about={quoteattr(about.value)}"
    if not body:
        return [open_tag + "/>"]
    return [open_tag + ">"] + [f"    {line}" for line in body] + [f"  </{tag}>"]
