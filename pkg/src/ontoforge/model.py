"""In-memory ontology model: IRIs, prefixes, axioms and the ontology container.

Axioms are immutable values kept in canonical form, so structural equality
is plain ``==`` and an :class:`Ontology` can hold them in a set.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Union

from .errors import ModelError, UnboundPrefix

_FORBIDDEN = frozenset(' \t\n\r<>"')
_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
PREFIX_NAME = re.compile(r"(?:[A-Za-z][A-Za-z0-9_-]*)?")
# Local parts the functional syntax can read back after abbreviation.
LOCAL_NAME = re.compile(r"[A-Za-z0-9_.\-]+")


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not self.value:
            raise ModelError("IRI must be a non-empty string")
        bad = _FORBIDDEN.intersection(self.value)
        if bad:
            raise ModelError(f"IRI {self.value!r} contains forbidden characters {sorted(bad)}")
        if not _SCHEME.match(self.value):
            raise ModelError(f"IRI {self.value!r} is not absolute")

    def __str__(self):
        return self.value


class Namespace:
    """Attribute/item access shorthand: ``Namespace("http://x#").Foo``."""

    def __init__(self, base: str):
        self.base = base

    def __getitem__(self, local: str) -> Iri:
        return Iri(self.base + local)

    def __getattr__(self, local: str) -> Iri:
        if local.startswith("__"):
            raise AttributeError(local)
        return self[local]

    def __str__(self):
        return self.base


OWL = Namespace("http://www.w3.org/2002/07/owl#")
RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")

THING = OWL.Thing
XSD_STRING = XSD.string
BUILTIN_NAMESPACES = (OWL.base, RDF.base, RDFS.base, XSD.base)


def is_builtin(iri: Iri) -> bool:
    return iri.value.startswith(BUILTIN_NAMESPACES)


class PrefixMap(Mapping):
    """Prefix name to namespace bindings; a name can be bound only once."""

    def __init__(self, bindings=None):
        self._map: dict[str, Iri] = {}
        for name, ns in dict(bindings or {}).items():
            self.bind(name, ns)

    def bind(self, name: str, namespace) -> None:
        if not PREFIX_NAME.fullmatch(name):
            raise ModelError(f"invalid prefix name {name!r}")
        ns = namespace if isinstance(namespace, Iri) else Iri(namespace)
        old = self._map.get(name)
        if old is not None and old != ns:
            raise ModelError(f"prefix {name!r} already bound to <{old}>")
        self._map[name] = ns

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, PrefixMap):
            return self._map == other._map
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"PrefixMap({self._map!r})"

    def expand(self, curie: str) -> Iri:
        prefix, sep, local = curie.partition(":")
        if not sep:
            raise ModelError(f"{curie!r} is not a CURIE")
        if prefix not in self._map:
            raise UnboundPrefix(prefix)
        return Iri(self._map[prefix].value + local)

    def abbreviate(self, iri: Iri) -> str | None:
        """Shortest CURIE for ``iri`` using the longest matching namespace."""
        best = None
        for name, ns in self._map.items():
            if not iri.value.startswith(ns.value):
                continue
            local = iri.value[len(ns.value):]
            if not LOCAL_NAME.fullmatch(local):
                continue
            key = (-len(ns.value), name)
            if best is None or key < best[0]:
                best = (key, f"{name}:{local}")
        return best[1] if best else None


def expand_curie(prefixes: PrefixMap, curie: str) -> Iri:
    return prefixes.expand(curie)


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    ANNOTATION_PROPERTY = "AnnotationProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"
    DATATYPE = "Datatype"

    @property
    def rank(self) -> int:
        return _KIND_ORDER.index(self)


_KIND_ORDER = list(EntityKind)


class Characteristic(Enum):
    ASYMMETRIC = "Asymmetric"
    IRREFLEXIVE = "Irreflexive"
    REFLEXIVE = "Reflexive"
    SYMMETRIC = "Symmetric"
    TRANSITIVE = "Transitive"

    @property
    def rank(self) -> int:
        return _CHAR_ORDER.index(self)


_CHAR_ORDER = list(Characteristic)


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Iri = XSD_STRING

    def __post_init__(self):
        if not isinstance(self.lexical, str):
            raise ModelError("literal lexical form must be a string")
        _check_iri(self.datatype)

    def sort_key(self):
        return (1, self.lexical, self.datatype.value)


def _check_iri(value):
    if not isinstance(value, Iri):
        raise ModelError(f"expected Iri, got {type(value).__name__}")


class Axiom:
    """Base of the axiom variants; subclasses are frozen dataclasses."""

    __slots__ = ()
    rank: ClassVar[int]

    def _key(self) -> tuple:
        raise NotImplementedError

    def sort_key(self) -> tuple:
        return (self.rank, self._key())

    def references(self) -> tuple[Iri, ...]:
        """Every IRI mentioned by the axiom, in field order."""
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, Axiom):
            return NotImplemented
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class Declaration(Axiom):
    kind: EntityKind
    entity: Iri
    rank: ClassVar[int] = 0

    def __post_init__(self):
        if not isinstance(self.kind, EntityKind):
            raise ModelError(f"bad entity kind {self.kind!r}")
        _check_iri(self.entity)

    def _key(self):
        return (self.kind.rank, self.entity.value)

    def references(self):
        return (self.entity,)


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: Iri
    sup: Iri
    rank: ClassVar[int] = 1

    def __post_init__(self):
        _check_iri(self.sub)
        _check_iri(self.sup)

    def _key(self):
        return (self.sub.value, self.sup.value)

    def references(self):
        return (self.sub, self.sup)


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    """n-ary disjointness; members are deduplicated and sorted."""

    members: tuple[Iri, ...]
    rank: ClassVar[int] = 2

    def __init__(self, members: Iterable[Iri]):
        members = tuple(members)
        for m in members:
            _check_iri(m)
        canon = tuple(sorted(set(members)))
        if len(canon) < 2:
            raise ModelError("DisjointClasses needs at least two distinct classes")
        object.__setattr__(self, "members", canon)

    def _key(self):
        return tuple(m.value for m in self.members)

    def references(self):
        return self.members

    def pairs(self) -> Iterator[tuple[Iri, Iri]]:
        ms = self.members
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                yield a, b


@dataclass(frozen=True)
class ComplementClasses(Axiom):
    """Binary symmetric complement; stored with ``a < b``."""

    a: Iri
    b: Iri
    rank: ClassVar[int] = 3

    def __post_init__(self):
        _check_iri(self.a)
        _check_iri(self.b)
        if self.a == self.b:
            raise ModelError(f"class <{self.a}> cannot be its own complement")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    def _key(self):
        return (self.a.value, self.b.value)

    def references(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class ObjectPropertyDomain(Axiom):
    p: Iri
    c: Iri
    rank: ClassVar[int] = 4

    def __post_init__(self):
        _check_iri(self.p)
        _check_iri(self.c)

    def _key(self):
        return (self.p.value, self.c.value)

    def references(self):
        return (self.p, self.c)


@dataclass(frozen=True)
class ObjectPropertyRange(Axiom):
    p: Iri
    c: Iri
    rank: ClassVar[int] = 5

    def __post_init__(self):
        _check_iri(self.p)
        _check_iri(self.c)

    def _key(self):
        return (self.p.value, self.c.value)

    def references(self):
        return (self.p, self.c)


@dataclass(frozen=True)
class DataPropertyDomain(Axiom):
    p: Iri
    c: Iri
    rank: ClassVar[int] = 6

    def __post_init__(self):
        _check_iri(self.p)
        _check_iri(self.c)

    def _key(self):
        return (self.p.value, self.c.value)

    def references(self):
        return (self.p, self.c)


@dataclass(frozen=True)
class DataPropertyRange(Axiom):
    p: Iri
    dt: Iri
    rank: ClassVar[int] = 7

    def __post_init__(self):
        _check_iri(self.p)
        _check_iri(self.dt)

    def _key(self):
        return (self.p.value, self.dt.value)

    def references(self):
        return (self.p, self.dt)


@dataclass(frozen=True)
class PropertyCharacteristic(Axiom):
    p: Iri
    ch: Characteristic
    rank: ClassVar[int] = 8

    def __post_init__(self):
        _check_iri(self.p)
        if not isinstance(self.ch, Characteristic):
            raise ModelError(f"bad characteristic {self.ch!r}")

    def _key(self):
        return (self.p.value, self.ch.rank)

    def references(self):
        return (self.p,)


@dataclass(frozen=True)
class ClassAssertion(Axiom):
    c: Iri
    ind: Iri
    rank: ClassVar[int] = 9

    def __post_init__(self):
        _check_iri(self.c)
        _check_iri(self.ind)

    def _key(self):
        return (self.c.value, self.ind.value)

    def references(self):
        return (self.c, self.ind)


@dataclass(frozen=True)
class ObjectPropertyAssertion(Axiom):
    p: Iri
    subj: Iri
    obj: Iri
    rank: ClassVar[int] = 10

    def __post_init__(self):
        for v in (self.p, self.subj, self.obj):
            _check_iri(v)

    def _key(self):
        return (self.p.value, self.subj.value, self.obj.value)

    def references(self):
        return (self.p, self.subj, self.obj)


@dataclass(frozen=True)
class DataPropertyAssertion(Axiom):
    p: Iri
    subj: Iri
    value: Literal
    rank: ClassVar[int] = 11

    def __post_init__(self):
        _check_iri(self.p)
        _check_iri(self.subj)
        if not isinstance(self.value, Literal):
            raise ModelError("data property value must be a Literal")

    def _key(self):
        return (self.p.value, self.subj.value, self.value.sort_key())

    def references(self):
        return (self.p, self.subj, self.value.datatype)


@dataclass(frozen=True)
class AnnotationAssertion(Axiom):
    ap: Iri
    subject: Iri
    value: Union[Literal, Iri]
    rank: ClassVar[int] = 12

    def __post_init__(self):
        _check_iri(self.ap)
        _check_iri(self.subject)
        if not isinstance(self.value, (Literal, Iri)):
            raise ModelError("annotation value must be a Literal or an Iri")

    def _key(self):
        v = self.value
        vkey = (0, v.value) if isinstance(v, Iri) else v.sort_key()
        return (self.ap.value, self.subject.value, vkey)

    def references(self):
        v = self.value
        return (self.ap, self.subject, v if isinstance(v, Iri) else v.datatype)


AXIOM_TYPES = (
    Declaration, SubClassOf, DisjointClasses, ComplementClasses,
    ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain, DataPropertyRange,
    PropertyCharacteristic, ClassAssertion, ObjectPropertyAssertion,
    DataPropertyAssertion, AnnotationAssertion,
)


@dataclass(frozen=True)
class UndeclaredReference:
    iri: Iri
    axiom: Axiom

    def __str__(self):
        return f"<{self.iri}> is used but never declared (in {type(self.axiom).__name__})"


class Ontology:
    """A named set of axioms plus prefix bindings and an import list.

    Equality is structural: same IRI, prefixes, imports and axiom set.
    """

    def __init__(self, iri, prefixes=None, imports: Iterable = (), axioms: Iterable[Axiom] = ()):
        self.iri = iri if isinstance(iri, Iri) else Iri(iri)
        self.prefixes = prefixes if isinstance(prefixes, PrefixMap) else PrefixMap(prefixes)
        self.imports: list[Iri] = []
        self._axioms: set[Axiom] = set()
        self._kinds: dict[Iri, EntityKind] = {}
        for imp in imports:
            self.add_import(imp)
        for ax in axioms:
            self.add_axiom(ax)

    def add_import(self, iri) -> bool:
        iri = iri if isinstance(iri, Iri) else Iri(iri)
        if iri in self.imports:
            return False
        self.imports.append(iri)
        return True

    def add_axiom(self, ax: Axiom) -> bool:
        """Insert ``ax``; True iff it was not already present.

        Declaring an entity again under a different kind raises ModelError.
        """
        if not isinstance(ax, Axiom):
            raise ModelError(f"not an axiom: {ax!r}")
        if ax in self._axioms:
            return False
        if isinstance(ax, Declaration):
            known = self._kinds.get(ax.entity)
            if known is not None and known is not ax.kind:
                raise ModelError(
                    f"<{ax.entity}> already declared as {known.value}, cannot redeclare as {ax.kind.value}"
                )
            self._kinds[ax.entity] = ax.kind
        self._axioms.add(ax)
        return True

    def remove_axiom(self, ax: Axiom) -> bool:
        if ax not in self._axioms:
            return False
        self._axioms.remove(ax)
        if isinstance(ax, Declaration):
            del self._kinds[ax.entity]
        return True

    @property
    def axioms(self) -> frozenset[Axiom]:
        return frozenset(self._axioms)

    def __len__(self):
        return len(self._axioms)

    def __contains__(self, ax):
        return ax in self._axioms

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.sorted_axioms())

    def sorted_axioms(self) -> list[Axiom]:
        return sorted(self._axioms, key=Axiom.sort_key)

    def of_type(self, *types) -> list:
        return sorted((ax for ax in self._axioms if isinstance(ax, types)), key=Axiom.sort_key)

    def kind_of(self, iri: Iri) -> EntityKind | None:
        return self._kinds.get(iri)

    def declared(self, kind: EntityKind) -> list[Iri]:
        return sorted(i for i, k in self._kinds.items() if k is kind)

    def copy(self, iri=None) -> "Ontology":
        return Ontology(
            iri if iri is not None else self.iri,
            PrefixMap(self.prefixes),
            self.imports,
            self._axioms,
        )

    def __eq__(self, other):
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.iri == other.iri
            and self.prefixes == other.prefixes
            and self.imports == other.imports
            and self._axioms == other._axioms
        )

    __hash__ = None

    def __repr__(self):
        return f"Ontology(<{self.iri}>, {len(self._axioms)} axioms)"


def add_axiom(o: Ontology, ax: Axiom) -> bool:
    return o.add_axiom(ax)


def signature(o: Ontology) -> list[tuple[EntityKind, Iri]]:
    """Declared (kind, entity) pairs, sorted by kind rank then IRI."""
    pairs = {(ax.kind, ax.entity) for ax in o.of_type(Declaration)}
    return sorted(pairs, key=lambda pair: (pair[0].rank, pair[1].value))


def undeclared_references(o: Ontology) -> list[UndeclaredReference]:
    """Lint: IRIs used outside declarations without being declared.

    Annotation subjects and values, built-in vocabulary (owl:, rdf:, rdfs:,
    xsd:) and literal datatypes are exempt.
    """
    warnings = []
    for ax in o.sorted_axioms():
        if isinstance(ax, Declaration):
            continue
        if isinstance(ax, AnnotationAssertion):
            used = (ax.ap,)
        elif isinstance(ax, DataPropertyAssertion):
            used = (ax.p, ax.subj)
        else:
            used = ax.references()
        seen = set()
        for iri in used:
            if iri in seen or is_builtin(iri) or o.kind_of(iri) is not None:
                continue
            seen.add(iri)
            warnings.append(UndeclaredReference(iri, ax))
    return warnings
