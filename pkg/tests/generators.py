"""Seeded random ontology generators for oracle and property tests.

All generators draw from a fixed vocabulary where each IRI has exactly one
entity kind, so any two generated ontologies can be merged without punning.
"""
import random

from ontoforge.model import (
    THING,
    XSD,
    AnnotationAssertion,
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

EX = "http://example.org/gen#"
DEEP = "http://example.org/gen#deep/"
OTHER = "urn:other:"
PREFIXES = {"ex": EX, "deep": DEEP, "xsd": XSD.base}

LEXICALS = ["plain", 'has "quotes"', "back\\slash", "ünïcödé", "", "a # not a comment", "x)y(z"]


def cls(i):
    # some class IRIs fall under the nested namespace or cannot be abbreviated
    if i % 7 == 3:
        return Iri(f"{DEEP}C{i}")
    if i % 11 == 5:
        return Iri(f"{OTHER}C{i}%2F")
    return Iri(f"{EX}C{i}")


def prop(i):
    return Iri(f"{EX}p{i}")


def dprop(i):
    return Iri(f"{EX}d{i}")


def aprop(i):
    return Iri(f"{EX}a{i}")


def ind(i):
    return Iri(f"{EX}i{i}") if i % 5 else Iri(f"{OTHER}ind{i}")


def random_subclass_graph(rng: random.Random, max_classes=64, max_density=0.2):
    n = rng.randint(1, max_classes)
    density = rng.uniform(0, max_density)
    classes = [cls(i) for i in range(n)]
    edges = [(a, b) for a in classes for b in classes if a != b and rng.random() < density]
    o = Ontology("http://example.org/graph", PREFIXES)
    for c in classes:
        o.add_axiom(Declaration(EntityKind.CLASS, c))
    for a, b in edges:
        o.add_axiom(SubClassOf(a, b))
    return o


def random_ontology(rng: random.Random, n_classes=None, n_inds=None, n_props=None,
                    full_syntax=True, iri="http://example.org/gen"):
    """Random ontology over the shared vocabulary.

    ``full_syntax`` adds data properties, annotations and literals that only
    matter to the serializers.
    """
    nc = n_classes if n_classes is not None else rng.randint(0, 12)
    ni = n_inds if n_inds is not None else rng.randint(0, 16)
    npr = n_props if n_props is not None else rng.randint(0, 8)
    classes = [cls(i) for i in range(nc)]
    inds = [ind(i) for i in range(ni)]
    props = [prop(i) for i in range(npr)]
    o = Ontology(iri, PREFIXES)
    add = o.add_axiom

    for c in classes:
        if rng.random() < 0.9:
            add(Declaration(EntityKind.CLASS, c))
    for i in inds:
        if rng.random() < 0.8:
            add(Declaration(EntityKind.NAMED_INDIVIDUAL, i))
    for p in props:
        add(Declaration(EntityKind.OBJECT_PROPERTY, p))
    pool = classes + [THING]
    if classes:
        for _ in range(rng.randint(0, 2 * nc)):
            add(SubClassOf(rng.choice(classes), rng.choice(pool)))
        if nc >= 2:
            for _ in range(rng.randint(0, 2)):
                add(DisjointClasses(rng.sample(classes, rng.randint(2, min(4, nc)))))
            if rng.random() < 0.3:
                a, b = rng.sample(classes, 2)
                add(ComplementClasses(a, b))
        for p in props:
            if rng.random() < 0.4:
                add(ObjectPropertyDomain(p, rng.choice(pool)))
            if rng.random() < 0.4:
                add(ObjectPropertyRange(p, rng.choice(pool)))
        for _ in range(rng.randint(0, ni)):
            if inds:
                add(ClassAssertion(rng.choice(classes), rng.choice(inds)))
    for p in props:
        for ch in Characteristic:
            if rng.random() < 0.25:
                add(PropertyCharacteristic(p, ch))
    if props and inds:
        for _ in range(rng.randint(0, 2 * ni)):
            add(ObjectPropertyAssertion(rng.choice(props), rng.choice(inds), rng.choice(inds)))

    nd = rng.randint(0, 2)
    for k in range(nd):
        d = dprop(k)
        add(Declaration(EntityKind.DATA_PROPERTY, d))
        if classes and rng.random() < 0.6:
            add(DataPropertyDomain(d, rng.choice(classes)))
        if full_syntax and rng.random() < 0.5:
            add(DataPropertyRange(d, rng.choice([XSD.string, XSD.integer])))
        for i in inds:
            if rng.random() < 0.2:
                add(DataPropertyAssertion(d, i, _literal(rng)))

    if full_syntax:
        if rng.random() < 0.3:
            add(Declaration(EntityKind.DATATYPE, Iri(EX + "Version")))
        ap = aprop(0)
        add(Declaration(EntityKind.ANNOTATION_PROPERTY, ap))
        subjects = [o.iri] + classes + props
        for _ in range(rng.randint(0, 3)):
            value = _literal(rng) if rng.random() < 0.7 else rng.choice(subjects)
            add(AnnotationAssertion(ap, rng.choice(subjects), value))
    return o


def _literal(rng):
    lex = rng.choice(LEXICALS)
    if rng.random() < 0.3:
        return Literal(str(rng.randint(-5, 99)), XSD.integer)
    return Literal(lex)


def random_subset(rng: random.Random, o: Ontology, keep=0.6) -> Ontology:
    sub = Ontology(o.iri, o.prefixes, o.imports)
    for ax in o.sorted_axioms():
        if rng.random() < keep:
            sub.add_axiom(ax)
    return sub


def reasoning_ontology(rng: random.Random) -> Ontology:
    """Sized for the materialization oracle: <=16 individuals, <=8 properties."""
    return random_ontology(
        rng, n_classes=rng.randint(1, 10), n_inds=rng.randint(1, 16),
        n_props=rng.randint(1, 8), full_syntax=False,
    )
