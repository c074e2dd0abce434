"""The software-testing teaching ontology and its inconsistent mutants.

Run ``python -m ontoforge.corpus <dir>`` to (re)write ``testing.ofn`` and
``mutants/m1.ofn`` .. ``m6.ofn`` under ``<dir>``.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

from .model import (
    AnnotationAssertion,
    Characteristic,
    ClassAssertion,
    Declaration,
    DisjointClasses,
    EntityKind,
    Literal,
    Namespace,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    PropertyCharacteristic,
    SubClassOf,
)
from .syntax import serialize_functional

TEST = Namespace("http://example.org/testing#")
DC = Namespace("http://purl.org/dc/elements/1.1/")
ONTOLOGY_IRI = "http://example.org/testing"
PREFIXES = {"test": TEST.base, "dc": DC.base}

# parent -> children; None marks a top-level class
HIERARCHY = {
    None: ["TestingTerminology", "TestingPhases", "TestingTechniques", "OOPParadigm",
           "ControlFlowStatements", "ProgrammingLanguage", "AdvancedConcepts"],
    "TestingPhases": ["UnitTesting", "IntegrationTesting"],
    "TestingTechniques": ["ErrorBasedTechnique", "FunctionalTechnique", "StructuralTechnique"],
    "ErrorBasedTechnique": ["ErrorSeeding", "ErrorGuessing", "MutationAnalysis"],
    "OOPParadigm": ["Encapsulation"],
}

# property -> (domain, range)
OBJECT_PROPERTIES = {
    "isAppliedIn": ("TestingTerminology", "OOPParadigm"),
    "utilizes": ("OOPParadigm", "ProgrammingLanguage"),
    "areAutomatedBy": ("TestingTechniques", "AdvancedConcepts"),
}


@dataclass(frozen=True)
class Verdict:
    """Expected reasoner outcome; ``clash_codes`` is a sorted multiset."""

    clash_codes: tuple[str, ...] = ()
    warnings: int = 0

    @property
    def consistent(self) -> bool:
        return not self.clash_codes


CONSISTENT = Verdict()


@dataclass
class CorpusFixture:
    name: str
    stem: str
    ontology: Ontology
    expected: Verdict = field(default=CONSISTENT)


def build_teaching_ontology() -> Ontology:
    o = Ontology(ONTOLOGY_IRI, PREFIXES)
    for parent, children in HIERARCHY.items():
        for child in children:
            o.add_axiom(Declaration(EntityKind.CLASS, TEST[child]))
            if parent is not None:
                o.add_axiom(SubClassOf(TEST[child], TEST[parent]))
    for prop, (domain, range_) in OBJECT_PROPERTIES.items():
        p = TEST[prop]
        o.add_axiom(Declaration(EntityKind.OBJECT_PROPERTY, p))
        o.add_axiom(ObjectPropertyDomain(p, TEST[domain]))
        o.add_axiom(ObjectPropertyRange(p, TEST[range_]))
        o.add_axiom(PropertyCharacteristic(p, Characteristic.ASYMMETRIC))
        o.add_axiom(PropertyCharacteristic(p, Characteristic.IRREFLEXIVE))
    o.add_axiom(DisjointClasses([TEST.TestingPhases, TEST.TestingTechniques]))
    for term in ("creator", "description"):
        o.add_axiom(Declaration(EntityKind.ANNOTATION_PROPERTY, DC[term]))
    o.add_axiom(AnnotationAssertion(DC.creator, o.iri, Literal("ontoforge corpus")))
    o.add_axiom(AnnotationAssertion(
        DC.description, o.iri,
        Literal("Teaching ontology relating software testing concepts to programming foundations"),
    ))
    return o


def _individual(o: Ontology, name: str):
    ind = TEST[name]
    o.add_axiom(Declaration(EntityKind.NAMED_INDIVIDUAL, ind))
    return ind


def build_mutants() -> list[CorpusFixture]:
    m1 = build_teaching_ontology()
    m1.add_axiom(PropertyCharacteristic(TEST.isAppliedIn, Characteristic.REFLEXIVE))

    m2 = build_teaching_ontology()
    i1 = _individual(m2, "i1")
    m2.add_axiom(ClassAssertion(TEST.TestingPhases, i1))
    m2.add_axiom(ClassAssertion(TEST.TestingTechniques, i1))

    m3 = m2.copy()
    m3.remove_axiom(DisjointClasses([TEST.TestingPhases, TEST.TestingTechniques]))

    m4 = build_teaching_ontology()
    a, b = _individual(m4, "oop1"), _individual(m4, "java1")
    m4.add_axiom(ObjectPropertyAssertion(TEST.utilizes, a, b))
    m4.add_axiom(ObjectPropertyAssertion(TEST.utilizes, b, a))

    m5 = build_teaching_ontology()
    t = _individual(m5, "term1")
    m5.add_axiom(ObjectPropertyAssertion(TEST.isAppliedIn, t, t))

    m6 = build_teaching_ontology()
    x = TEST.PhaseTechnique
    m6.add_axiom(Declaration(EntityKind.CLASS, x))
    m6.add_axiom(SubClassOf(x, TEST.TestingPhases))
    m6.add_axiom(SubClassOf(x, TEST.TestingTechniques))

    return [
        CorpusFixture("reflexive-asymmetric", "m1", m1, Verdict(("CHAR-CONFLICT",))),
        CorpusFixture("disjoint-instance", "m2", m2, Verdict(("DISJOINT-VIOLATION",))),
        CorpusFixture("open-world-control", "m3", m3),
        CorpusFixture("asym-pair", "m4", m4, Verdict(("ASYM-VIOLATION",))),
        CorpusFixture("irreflexive-loop", "m5", m5,
                      Verdict(("ASYM-VIOLATION", "IRREFLEX-VIOLATION"))),
        CorpusFixture("unsat-class", "m6", m6, Verdict(warnings=1)),
    ]


def corpus_files() -> dict[str, str]:
    """Relative path -> file content for every shipped fixture."""
    files = {"testing.ofn": serialize_functional(build_teaching_ontology())}
    for fx in build_mutants():
        files[f"mutants/{fx.stem}.ofn"] = serialize_functional(fx.ontology)
    return files


def write_corpus(directory) -> list[Path]:
    root = Path(directory)
    written = []
    for rel, text in corpus_files().items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for path in write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus"):
        print(path)
