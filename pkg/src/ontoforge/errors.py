"""Exception hierarchy shared by every ontoforge module."""


class OntologyError(Exception):
    """Base class for all ontoforge errors."""


class ModelError(OntologyError):
    """An axiom or entity violates a structural rule of the model."""


class UnboundPrefix(OntologyError):
    def __init__(self, prefix: str):
        super().__init__(f"unbound prefix {prefix!r}")
        self.prefix = prefix


class ParseError(OntologyError):
    """Raised at the first syntax error in a functional-style document."""

    def __init__(self, line: int, column: int, message: str, token: str = ""):
        super().__init__(f"{line}:{column}: {message}" + (f" (at {token!r})" if token else ""))
        self.line = line
        self.column = column
        self.message = message
        self.token = token


class PrefixConflict(OntologyError):
    def __init__(self, conflicts):
        self.conflicts = list(conflicts)
        parts = [f"{p!r} -> <{a}> vs <{b}>" for p, a, b in self.conflicts]
        super().__init__("prefix conflict: " + "; ".join(parts))


class CatalogError(OntologyError):
    """A catalog file is unreadable or malformed."""


class UnresolvedImport(OntologyError):
    def __init__(self, iri):
        super().__init__(f"no catalog entry for import <{iri}>")
        self.iri = iri


class LoadFailure(OntologyError):
    def __init__(self, iri, cause):
        super().__init__(f"cannot load <{iri}>: {cause}")
        self.iri = iri
        self.cause = cause
