"""Forward-chaining materialization and clash detection.

Inference rules (applied to a least fixpoint, semi-naively):

    I1  subclass closure over asserted SubClassOf edges plus the owl:Thing root
    I2  every individual is an owl:Thing
    I3  C(a), SubClassOf(C, D)              => D(a)
    I4  p(a, b), Domain(p, C)               => C(a)   (object and data properties)
    I5  p(a, b), Range(p, C)                => C(b)   (object properties only)
    I6  Symmetric(p), p(a, b)               => p(b, a)
    I7  Transitive(p), p(a, b), p(b, c)     => p(a, c)
    I8  Reflexive(p)                        => p(a, a) for declared individuals

I3 fires over single asserted edges so that every recorded derivation can be
replayed as one rule step; its fixpoint is the same as using the closure.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum

from .model import (
    THING,
    Axiom,
    Characteristic,
    ClassAssertion,
    ComplementClasses,
    DataPropertyAssertion,
    DataPropertyDomain,
    Declaration,
    DisjointClasses,
    EntityKind,
    Iri,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    PropertyCharacteristic,
    SubClassOf,
)


@dataclass(frozen=True)
class Taxonomy:
    """Reflexive-transitive subclass closure, rooted at owl:Thing."""

    pairs: frozenset[tuple[Iri, Iri]]
    classes: frozenset[Iri]

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def superclasses(self, c: Iri) -> set[Iri]:
        return {sup for sub, sup in self.pairs if sub == c}

    def subclasses(self, c: Iri) -> set[Iri]:
        return {sub for sub, sup in self.pairs if sup == c}


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple[Axiom, ...]


@dataclass(frozen=True)
class InferredStore:
    class_assertions: frozenset[ClassAssertion]
    object_assertions: frozenset[ObjectPropertyAssertion]
    asserted: frozenset[Axiom]
    provenance: dict = field(compare=False, hash=False)

    def facts(self) -> frozenset[Axiom]:
        return self.class_assertions | self.object_assertions

    def inferred(self) -> frozenset[Axiom]:
        return self.facts() - self.asserted

    def __contains__(self, fact) -> bool:
        return fact in self.class_assertions or fact in self.object_assertions

    def members(self) -> dict[Iri, set[Iri]]:
        out = defaultdict(set)
        for ca in self.class_assertions:
            out[ca.c].add(ca.ind)
        return out


class ClashCode(str, Enum):
    CHAR_CONFLICT = "CHAR-CONFLICT"
    ASYM_VIOLATION = "ASYM-VIOLATION"
    IRREFLEX_VIOLATION = "IRREFLEX-VIOLATION"
    DISJOINT_VIOLATION = "DISJOINT-VIOLATION"
    COMPLEMENT_VIOLATION = "COMPLEMENT-VIOLATION"
    UNSAT_INSTANTIATED = "UNSAT-INSTANTIATED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Clash:
    code: ClashCode
    subjects: tuple[Iri, ...]
    provenance: tuple[Axiom, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.subjects:
            raise ValueError("a clash needs at least one subject")
        object.__setattr__(self, "code", ClashCode(self.code))

    def sort_key(self):
        return (self.code.value, tuple(s.value for s in self.subjects))


@dataclass(frozen=True)
class UnsatWarning:
    """A class that can have no instances but currently has none."""

    cls: Iri
    provenance: tuple[Axiom, ...] = field(default=(), compare=False)
    code = "UNSAT-CLASS"


@dataclass(frozen=True)
class ConsistencyReport:
    clashes: tuple[Clash, ...]
    warnings: tuple[UnsatWarning, ...] = ()

    @property
    def consistent(self) -> bool:
        return not self.clashes

    def codes(self) -> list[str]:
        return [c.code.value for c in self.clashes]


def _class_vocabulary(o: Ontology) -> set[Iri]:
    """Declared classes plus anything used in a class position, plus Thing."""
    classes = set(o.declared(EntityKind.CLASS))
    classes.add(THING)
    for ax in o.axioms:
        if isinstance(ax, SubClassOf):
            classes.update((ax.sub, ax.sup))
        elif isinstance(ax, DisjointClasses):
            classes.update(ax.members)
        elif isinstance(ax, ComplementClasses):
            classes.update((ax.a, ax.b))
        elif isinstance(ax, (ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain)):
            classes.add(ax.c)
        elif isinstance(ax, ClassAssertion):
            classes.add(ax.c)
    return classes


def _individuals(o: Ontology) -> dict[Iri, Axiom]:
    """Every individual, mapped to the first axiom that introduces it."""
    found = {}
    for ax in o.sorted_axioms():
        if isinstance(ax, Declaration) and ax.kind is EntityKind.NAMED_INDIVIDUAL:
            inds = (ax.entity,)
        elif isinstance(ax, ClassAssertion):
            inds = (ax.ind,)
        elif isinstance(ax, ObjectPropertyAssertion):
            inds = (ax.subj, ax.obj)
        elif isinstance(ax, DataPropertyAssertion):
            inds = (ax.subj,)
        else:
            continue
        for ind in inds:
            found.setdefault(ind, ax)
    return found


def classify(o: Ontology) -> Taxonomy:
    classes = _class_vocabulary(o)
    succ = defaultdict(set)
    for ax in o.of_type(SubClassOf):
        succ[ax.sub].add(ax.sup)
    for c in classes:
        succ[c].add(THING)
    pairs = set()
    for c in classes:
        seen = {c}
        stack = [c]
        while stack:
            for nxt in succ[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        pairs.update((c, sup) for sup in seen)
    return Taxonomy(frozenset(pairs), frozenset(classes))


def materialize(o: Ontology) -> InferredStore:
    sub_edges = defaultdict(list)
    for ax in o.of_type(SubClassOf):
        sub_edges[ax.sub].append(ax)
    domains = defaultdict(list)
    ranges = defaultdict(list)
    data_domains = defaultdict(list)
    for ax in o.of_type(ObjectPropertyDomain):
        domains[ax.p].append(ax)
    for ax in o.of_type(ObjectPropertyRange):
        ranges[ax.p].append(ax)
    for ax in o.of_type(DataPropertyDomain):
        data_domains[ax.p].append(ax)
    chars = defaultdict(dict)
    for ax in o.of_type(PropertyCharacteristic):
        chars[ax.p][ax.ch] = ax

    asserted = frozenset(o.of_type(ClassAssertion, ObjectPropertyAssertion))
    facts: set[Axiom] = set()
    provenance: dict[Axiom, Derivation] = {}
    outgoing = defaultdict(set)  # (p, subj) -> objs
    incoming = defaultdict(set)  # (p, obj) -> subjs
    agenda = deque()

    def insert(fact):
        facts.add(fact)
        if isinstance(fact, ObjectPropertyAssertion):
            outgoing[fact.p, fact.subj].add(fact.obj)
            incoming[fact.p, fact.obj].add(fact.subj)
        agenda.append(fact)

    def derive(fact, rule, *premises):
        if fact not in facts:
            provenance[fact] = Derivation(rule, premises)
            insert(fact)

    for fact in sorted(asserted):
        insert(fact)
    for ind, source in sorted(_individuals(o).items()):
        derive(ClassAssertion(THING, ind), "I2", source)
    for dpa in o.of_type(DataPropertyAssertion):
        for dom in data_domains[dpa.p]:
            derive(ClassAssertion(dom.c, dpa.subj), "I4", dpa, dom)
    declared_inds = o.of_type(Declaration)
    declared_inds = [d for d in declared_inds if d.kind is EntityKind.NAMED_INDIVIDUAL]
    for p in sorted(chars):
        refl = chars[p].get(Characteristic.REFLEXIVE)
        if refl is not None:
            for decl in declared_inds:
                derive(ObjectPropertyAssertion(p, decl.entity, decl.entity), "I8", refl, decl)

    while agenda:
        fact = agenda.popleft()
        if isinstance(fact, ClassAssertion):
            for edge in sub_edges[fact.c]:
                derive(ClassAssertion(edge.sup, fact.ind), "I3", fact, edge)
            continue
        p, a, b = fact.p, fact.subj, fact.obj
        for dom in domains[p]:
            derive(ClassAssertion(dom.c, a), "I4", fact, dom)
        for rng in ranges[p]:
            derive(ClassAssertion(rng.c, b), "I5", fact, rng)
        sym = chars[p].get(Characteristic.SYMMETRIC)
        if sym is not None:
            derive(ObjectPropertyAssertion(p, b, a), "I6", sym, fact)
        trans = chars[p].get(Characteristic.TRANSITIVE)
        if trans is not None:
            for c in sorted(outgoing[p, b]):
                derive(ObjectPropertyAssertion(p, a, c), "I7", trans, fact,
                       ObjectPropertyAssertion(p, b, c))
            for z in sorted(incoming[p, a]):
                derive(ObjectPropertyAssertion(p, z, b), "I7", trans,
                       ObjectPropertyAssertion(p, z, a), fact)

    return InferredStore(
        class_assertions=frozenset(f for f in facts if isinstance(f, ClassAssertion)),
        object_assertions=frozenset(f for f in facts if isinstance(f, ObjectPropertyAssertion)),
        asserted=asserted,
        provenance=provenance,
    )


def _exclusion_pairs(o: Ontology):
    """(a, b, code, axiom) for every pairwise disjointness or complement."""
    for ax in o.of_type(DisjointClasses):
        for a, b in ax.pairs():
            yield a, b, ClashCode.DISJOINT_VIOLATION, ax
    for ax in o.of_type(ComplementClasses):
        yield ax.a, ax.b, ClashCode.COMPLEMENT_VIOLATION, ax


def _unsat(o: Ontology, taxonomy: Taxonomy) -> dict[Iri, Axiom]:
    """Unsatisfiable class -> first exclusion axiom proving it."""
    exclusions = list(_exclusion_pairs(o))
    supers = defaultdict(set)
    for sub, sup in taxonomy.pairs:
        supers[sub].add(sup)
    out = {}
    for c in sorted(taxonomy.classes):
        for a, b, _, ax in exclusions:
            if a in supers[c] and b in supers[c]:
                out[c] = ax
                break
    return out


def unsatisfiable_classes(o: Ontology) -> set[Iri]:
    return set(_unsat(o, classify(o)))


class Reasoner:
    """Caches the taxonomy and materialization of one ontology."""

    def __init__(self, ontology: Ontology):
        self.ontology = ontology
        self._taxonomy = None
        self._store = None
        self._members = None
        self._children = None

    @property
    def taxonomy(self) -> Taxonomy:
        if self._taxonomy is None:
            self._taxonomy = classify(self.ontology)
        return self._taxonomy

    @property
    def store(self) -> InferredStore:
        if self._store is None:
            self._store = materialize(self.ontology)
        return self._store

    @property
    def members(self) -> dict[Iri, set[Iri]]:
        if self._members is None:
            self._members = self.store.members()
        return self._members

    def check(self) -> ConsistencyReport:
        o = self.ontology
        found: dict[tuple, Clash] = {}

        def report(code, subjects, *provenance):
            clash = Clash(code, tuple(subjects), tuple(provenance))
            found.setdefault((clash.code, clash.subjects), clash)

        members = self.members
        for a, b, code, ax in _exclusion_pairs(o):
            for ind in sorted(members.get(a, set()) & members.get(b, set())):
                report(code, (a, b, ind), ax, ClassAssertion(a, ind), ClassAssertion(b, ind))

        chars = defaultdict(dict)
        for ax in o.of_type(PropertyCharacteristic):
            chars[ax.p][ax.ch] = ax
        facts = self.store.object_assertions
        for p in sorted(chars):
            declared = chars[p]
            refl = declared.get(Characteristic.REFLEXIVE)
            conflicting = [
                declared[ch] for ch in (Characteristic.ASYMMETRIC, Characteristic.IRREFLEXIVE)
                if ch in declared
            ]
            if refl is not None and conflicting:
                report(ClashCode.CHAR_CONFLICT, (p,), *conflicting, refl)

            asym = declared.get(Characteristic.ASYMMETRIC)
            irrefl = declared.get(Characteristic.IRREFLEXIVE)
            for f in sorted(x for x in facts if x.p == p):
                if irrefl is not None and f.subj == f.obj:
                    report(ClashCode.IRREFLEX_VIOLATION, (p, f.subj), irrefl, f)
                if asym is not None and f.subj <= f.obj:
                    back = ObjectPropertyAssertion(p, f.obj, f.subj)
                    if f.subj == f.obj:
                        report(ClashCode.ASYM_VIOLATION, (p, f.subj), asym, f)
                    elif back in facts:
                        report(ClashCode.ASYM_VIOLATION, (p, f.subj, f.obj), asym, f, back)

        warnings = []
        for c, ax in sorted(_unsat(o, self.taxonomy).items()):
            instances = sorted(members.get(c, set()))
            if instances:
                report(ClashCode.UNSAT_INSTANTIATED, (c,), ax, ClassAssertion(c, instances[0]))
            else:
                warnings.append(UnsatWarning(c, (ax,)))

        clashes = sorted(found.values(), key=Clash.sort_key)
        return ConsistencyReport(tuple(clashes), tuple(warnings))

    def instances_of(self, c: Iri, direct: bool = False) -> set[Iri]:
        inds = set(self.members.get(c, set()))
        if not direct:
            return inds
        tax = self.taxonomy
        proper = [d for d in tax.subclasses(c) if d != c and (c, d) not in tax]
        for d in proper:
            inds -= self.members.get(d, set())
        return inds

    def subclasses_of(self, c: Iri, direct: bool = False) -> set[Iri]:
        tax = self.taxonomy
        if not direct:
            return {d for d in tax.subclasses(c) if d != c}
        return {d for d in self._children_graph()[c]}

    def superclasses_of(self, c: Iri, direct: bool = False) -> set[Iri]:
        tax = self.taxonomy
        if not direct:
            return {d for d in tax.superclasses(c) if d != c}
        return {sup for sup, subs in self._children_graph().items() if c in subs}

    def _children_graph(self) -> dict[Iri, set[Iri]]:
        """Transitive reduction of asserted edges plus implicit Thing edges."""
        if self._children is not None:
            return self._children
        tax = self.taxonomy
        edges = {(ax.sub, ax.sup) for ax in self.ontology.of_type(SubClassOf) if ax.sub != ax.sup}
        edges.update((c, THING) for c in tax.classes if c != THING)
        children = defaultdict(set)
        for sub, sup in edges:
            # equivalents of either endpoint do not count as intermediates
            between = any(
                (sub, e) in tax and (e, sup) in tax and (e, sub) not in tax and (sup, e) not in tax
                for e in tax.superclasses(sub)
            )
            if not between:
                children[sup].add(sub)
        self._children = children
        return children


def check_consistency(o: Ontology) -> ConsistencyReport:
    return Reasoner(o).check()


def instances_of(o: Ontology, c: Iri, direct: bool = False) -> set[Iri]:
    return Reasoner(o).instances_of(c, direct)


def subclasses_of(o: Ontology, c: Iri, direct: bool = False) -> set[Iri]:
    return Reasoner(o).subclasses_of(c, direct)


def superclasses_of(o: Ontology, c: Iri, direct: bool = False) -> set[Iri]:
    return Reasoner(o).superclasses_of(c, direct)
