import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_ontology, random_subclass_graph, random_subset, reasoning_ontology
from oracles import brute_unsat, fact_key, naive_closure, naive_fixpoint, replay
from ontoforge.model import (
    THING,
    Characteristic,
    ClassAssertion,
    ComplementClasses,
    DataPropertyAssertion,
    DataPropertyDomain,
    Declaration,
    DisjointClasses,
    EntityKind,
    Literal,
    Namespace,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    Ontology,
    PropertyCharacteristic,
    SubClassOf,
)
from ontoforge.reasoner import (
    Clash,
    ClashCode,
    Reasoner,
    check_consistency,
    classify,
    instances_of,
    materialize,
    subclasses_of,
    superclasses_of,
    unsatisfiable_classes,
)

T = Namespace("http://example.org/testing#")
X = Namespace("http://x.org/#")


def _onto(*axioms):
    return Ontology("http://x.org/o", axioms=axioms)


def _pairs(tax):
    return {(a.value, b.value) for a, b in tax.pairs}


class TestClassify:
    def test_corpus_transitive_pair(self, corpus):
        tax = classify(corpus)
        assert (T.ErrorSeeding, T.TestingTechniques) in tax
        assert (T.ErrorSeeding, THING) in tax

    def test_single_class(self):
        tax = classify(_onto(Declaration(EntityKind.CLASS, X.C)))
        assert tax.pairs == {(X.C, X.C), (X.C, THING), (THING, THING)}

    def test_cycle(self):
        tax = classify(_onto(SubClassOf(X.A, X.B), SubClassOf(X.B, X.A)))
        assert (X.A, X.B) in tax and (X.B, X.A) in tax

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_naive_closure(self, seed):
        o = random_subclass_graph(random.Random(seed))
        assert _pairs(classify(o)) == naive_closure(o)


class TestMaterialize:
    def test_domain_typing(self):
        o = _onto(
            ObjectPropertyDomain(T.utilizes, T.OOPParadigm),
            ObjectPropertyAssertion(T.utilizes, T.oop1, T.java1),
        )
        store = materialize(o)
        fact = ClassAssertion(T.OOPParadigm, T.oop1)
        assert fact in store
        assert store.provenance[fact].rule == "I4"

    def test_no_individuals(self, corpus):
        store = materialize(corpus)
        assert store.facts() == frozenset() == store.asserted

    def test_transitive_chain(self):
        p = X.p
        o = _onto(
            PropertyCharacteristic(p, Characteristic.TRANSITIVE),
            ObjectPropertyAssertion(p, X.a, X.b),
            ObjectPropertyAssertion(p, X.b, X.c),
            ObjectPropertyAssertion(p, X.c, X.d),
        )
        store = materialize(o)
        new_edges = {(f.subj, f.obj) for f in store.inferred() if isinstance(f, ObjectPropertyAssertion)}
        assert new_edges == {(X.a, X.c), (X.b, X.d), (X.a, X.d)}
        # matches the brute-force oracle too
        C, R = naive_fixpoint(o)
        assert {fact_key(f) for f in store.facts()} == {("C",) + c for c in C} | {("R",) + r for r in R}

    def test_symmetric_and_reflexive(self):
        o = _onto(
            Declaration(EntityKind.NAMED_INDIVIDUAL, X.a),
            PropertyCharacteristic(X.s, Characteristic.SYMMETRIC),
            PropertyCharacteristic(X.r, Characteristic.REFLEXIVE),
            ObjectPropertyAssertion(X.s, X.a, X.b),
        )
        store = materialize(o)
        assert ObjectPropertyAssertion(X.s, X.b, X.a) in store
        assert ObjectPropertyAssertion(X.r, X.a, X.a) in store
        # b is only mentioned, never declared: no reflexive edge
        assert ObjectPropertyAssertion(X.r, X.b, X.b) not in store

    def test_data_domain(self):
        o = _onto(
            DataPropertyDomain(X.d, X.C),
            DataPropertyAssertion(X.d, X.a, Literal("1")),
        )
        assert ClassAssertion(X.C, X.a) in materialize(o)

    def test_thing_membership(self):
        o = _onto(Declaration(EntityKind.NAMED_INDIVIDUAL, X.a))
        assert materialize(o).facts() == {ClassAssertion(THING, X.a)}

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_naive_fixpoint(self, seed):
        o = reasoning_ontology(random.Random(seed))
        store = materialize(o)
        C, R = naive_fixpoint(o)
        assert {fact_key(f) for f in store.facts()} == {("C",) + c for c in C} | {("R",) + r for r in R}

    @pytest.mark.parametrize("seed", range(30))
    def test_provenance_replays(self, seed):
        o = reasoning_ontology(random.Random(seed))
        store = materialize(o)
        assert set(store.provenance) == store.inferred()
        for fact, why in store.provenance.items():
            for premise in why.premises:
                assert premise in o or premise in store
            assert fact_key(fact) in replay(why.rule, why.premises), (fact, why)

    @pytest.mark.parametrize("seed", range(20))
    def test_fixpoint(self, seed):
        o = reasoning_ontology(random.Random(seed))
        store = materialize(o)
        again = o.copy()
        for fact in store.facts():
            again.add_axiom(fact)
        assert materialize(again).facts() == store.facts()


class TestConsistency:
    def test_empty(self):
        report = check_consistency(_onto())
        assert report.consistent and report.clashes == () and report.warnings == ()

    def test_char_conflict_single_clash(self, corpus):
        corpus.add_axiom(PropertyCharacteristic(T.isAppliedIn, Characteristic.REFLEXIVE))
        report = check_consistency(corpus)
        assert [(c.code, c.subjects) for c in report.clashes] == [
            (ClashCode.CHAR_CONFLICT, (T.isAppliedIn,))
        ]
        assert PropertyCharacteristic(T.isAppliedIn, Characteristic.REFLEXIVE) in report.clashes[0].provenance

    def test_irreflexive_plus_reflexive(self):
        report = check_consistency(_onto(
            PropertyCharacteristic(X.p, Characteristic.IRREFLEXIVE),
            PropertyCharacteristic(X.p, Characteristic.REFLEXIVE),
        ))
        assert report.codes() == ["CHAR-CONFLICT"]

    def test_disjoint_open_world(self, corpus):
        corpus.add_axiom(ClassAssertion(T.TestingPhases, T.i1))
        corpus.add_axiom(ClassAssertion(T.TestingTechniques, T.i1))
        report = check_consistency(corpus)
        assert report.codes() == ["DISJOINT-VIOLATION"]
        assert report.clashes[0].subjects == (T.TestingPhases, T.TestingTechniques, T.i1)
        corpus.remove_axiom(DisjointClasses([T.TestingPhases, T.TestingTechniques]))
        assert check_consistency(corpus).consistent

    def test_disjoint_via_subclass(self, corpus):
        corpus.add_axiom(ClassAssertion(T.UnitTesting, T.i1))
        corpus.add_axiom(ClassAssertion(T.ErrorSeeding, T.i1))
        assert check_consistency(corpus).codes() == ["DISJOINT-VIOLATION"]

    def test_complement_violation(self):
        report = check_consistency(_onto(
            ComplementClasses(X.A, X.B), ClassAssertion(X.A, X.i), ClassAssertion(X.B, X.i),
        ))
        assert report.codes() == ["COMPLEMENT-VIOLATION"]

    def test_asymmetry(self):
        report = check_consistency(_onto(
            PropertyCharacteristic(X.p, Characteristic.ASYMMETRIC),
            ObjectPropertyAssertion(X.p, X.b, X.a),
            ObjectPropertyAssertion(X.p, X.a, X.b),
        ))
        assert [(c.code, c.subjects) for c in report.clashes] == [
            (ClashCode.ASYM_VIOLATION, (X.p, X.a, X.b))
        ]

    def test_asymmetry_via_symmetric(self):
        report = check_consistency(_onto(
            PropertyCharacteristic(X.p, Characteristic.ASYMMETRIC),
            PropertyCharacteristic(X.p, Characteristic.SYMMETRIC),
            ObjectPropertyAssertion(X.p, X.a, X.b),
        ))
        assert report.codes() == ["ASYM-VIOLATION"]

    def test_self_loop_breaks_both(self):
        report = check_consistency(_onto(
            PropertyCharacteristic(X.p, Characteristic.ASYMMETRIC),
            PropertyCharacteristic(X.p, Characteristic.IRREFLEXIVE),
            ObjectPropertyAssertion(X.p, X.a, X.a),
        ))
        assert report.codes() == ["ASYM-VIOLATION", "IRREFLEX-VIOLATION"]

    def test_unsat_warning_then_clash(self):
        o = _onto(
            DisjointClasses([X.A, X.B]), SubClassOf(X.C, X.A), SubClassOf(X.C, X.B),
        )
        report = check_consistency(o)
        assert report.consistent
        assert [w.cls for w in report.warnings] == [X.C]
        o.add_axiom(ClassAssertion(X.C, X.i))
        report = check_consistency(o)
        assert sorted(report.codes()) == ["DISJOINT-VIOLATION", "UNSAT-INSTANTIATED"]
        assert report.warnings == ()

    def test_clash_ordering_and_equality(self):
        a = Clash("ASYM-VIOLATION", (X.p, X.a))
        b = Clash(ClashCode.ASYM_VIOLATION, (X.p, X.a), provenance=(SubClassOf(X.a, X.b),))
        assert a == b
        with pytest.raises(ValueError):
            Clash("NOT-A-CODE", (X.p,))
        with pytest.raises(ValueError):
            Clash("ASYM-VIOLATION", ())

    @pytest.mark.parametrize("seed", range(10))
    def test_deterministic_across_insertion_order(self, seed):
        rng = random.Random(seed)
        o = reasoning_ontology(rng)
        axioms = o.sorted_axioms()
        rng.shuffle(axioms)
        shuffled = Ontology(o.iri, o.prefixes, axioms=axioms)
        r1, r2 = check_consistency(o), check_consistency(shuffled)
        assert r1 == r2
        assert [c.provenance for c in r1.clashes] == [c.provenance for c in r2.clashes]


class TestUnsatisfiable:
    def test_example(self):
        o = _onto(
            SubClassOf(X.X, T.TestingPhases), SubClassOf(X.X, T.TestingTechniques),
            DisjointClasses([T.TestingPhases, T.TestingTechniques]),
        )
        assert unsatisfiable_classes(o) == {X.X}
        assert {c.value for c in unsatisfiable_classes(o)} == brute_unsat(o) == {X.X.value}

    def test_corpus_none(self, corpus):
        assert unsatisfiable_classes(corpus) == set()
        assert brute_unsat(corpus) == set()

    def test_no_disjointness(self):
        assert unsatisfiable_classes(_onto(SubClassOf(X.A, X.B))) == set()

    def test_disjoint_with_own_superclass(self):
        o = _onto(SubClassOf(X.A, X.B), DisjointClasses([X.A, X.B]))
        assert unsatisfiable_classes(o) == {X.A}

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_brute_force(self, seed):
        o = random_ontology(random.Random(seed), full_syntax=False)
        assert {c.value for c in unsatisfiable_classes(o)} == brute_unsat(o)


class TestQueries:
    def _data(self, corpus):
        corpus.add_axiom(ClassAssertion(T.ErrorSeeding, T.m1))
        return corpus

    def test_instances(self, corpus):
        o = self._data(corpus)
        assert T.m1 in instances_of(o, T.TestingTechniques, direct=False)
        assert T.m1 not in instances_of(o, T.TestingTechniques, direct=True)
        assert instances_of(o, T.ErrorSeeding, direct=True) == {T.m1}

    def test_no_assertions(self, corpus):
        r = Reasoner(corpus)
        assert all(r.instances_of(c) == set() for c in r.taxonomy.classes)

    def test_subclasses_direct(self, corpus):
        assert subclasses_of(corpus, T.TestingTechniques, direct=True) == {
            T.ErrorBasedTechnique, T.FunctionalTechnique, T.StructuralTechnique,
        }

    def test_subclasses_all(self, corpus):
        assert subclasses_of(corpus, T.TestingTechniques) == {
            T.ErrorBasedTechnique, T.FunctionalTechnique, T.StructuralTechnique,
            T.ErrorSeeding, T.ErrorGuessing, T.MutationAnalysis,
        }

    def test_subclasses_of_thing(self, corpus):
        declared = set(corpus.declared(EntityKind.CLASS))
        assert subclasses_of(corpus, THING) == declared
        top = subclasses_of(corpus, THING, direct=True)
        assert T.TestingTechniques in top and T.ErrorSeeding not in top

    def test_transitive_reduction_drops_shortcut(self):
        o = _onto(SubClassOf(X.A, X.B), SubClassOf(X.B, X.C), SubClassOf(X.A, X.C))
        assert subclasses_of(o, X.C, direct=True) == {X.B}
        assert superclasses_of(o, X.A, direct=True) == {X.B}
        assert superclasses_of(o, X.A) == {X.B, X.C, THING}

    def test_cycle_members_stay_direct(self):
        o = _onto(SubClassOf(X.A, X.B), SubClassOf(X.B, X.A))
        assert subclasses_of(o, THING, direct=True) == {X.A, X.B}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_monotonicity(seed):
    rng = random.Random(seed)
    big = random_ontology(rng, full_syntax=False)
    small = random_subset(rng, big)
    assert materialize(small).facts() <= materialize(big).facts()
    assert set(check_consistency(small).clashes) <= set(check_consistency(big).clashes)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_removing_exclusion_only_shrinks_clashes(seed):
    o = random_ontology(random.Random(seed), full_syntax=False)
    before = set(check_consistency(o).clashes)
    for ax in o.of_type(DisjointClasses, ComplementClasses):
        o.remove_axiom(ax)
        after = set(check_consistency(o).clashes)
        assert after <= before
        before = after
