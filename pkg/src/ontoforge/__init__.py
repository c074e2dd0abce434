"""Ontology engineering toolkit: parse, check, reason over, merge and serialize."""
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
from .imports import Catalog, ImportClosure, MergeReport, flatten, merge, resolve_imports
from .model import (
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
    Namespace,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    Ontology,
    PrefixMap,
    PropertyCharacteristic,
    SubClassOf,
    add_axiom,
    expand_curie,
    signature,
    undeclared_references,
)
from .rdfxml import serialize_rdfxml
from .reasoner import (
    Clash,
    ClashCode,
    ConsistencyReport,
    InferredStore,
    Reasoner,
    Taxonomy,
    check_consistency,
    classify,
    instances_of,
    materialize,
    subclasses_of,
    superclasses_of,
    unsatisfiable_classes,
)
from .syntax import parse_functional, serialize_functional

__version__ = "0.1.0"
