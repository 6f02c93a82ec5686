"""Abstract syntax for class expressions, roles and axioms.

All nodes are frozen dataclasses so they hash and compare structurally;
tableau labels and knowledge-base indexes rely on that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
DC = "http://purl.org/dc/elements/1.1/"

DEFAULT_PREFIXES = {
    "owl:": OWL,
    "rdf:": RDF,
    "rdfs:": RDFS,
    "xsd:": XSD,
    "skos:": SKOS,
    "dc:": DC,
}

INVERSE_NS = "urn:sdl:inv#"


@dataclass(frozen=True, order=True)
class RoleExpr:
    name: str
    inverted: bool = False

    def inv(self) -> "RoleExpr":
        return RoleExpr(self.name, not self.inverted)

    def __str__(self):
        return f"inverse {self.name}" if self.inverted else self.name


def role(name: str, inverted: bool = False) -> RoleExpr:
    return RoleExpr(name, inverted)


class Concept:
    """Base class of every class-expression node."""

    __slots__ = ()

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Named(Concept):
    name: str


@dataclass(frozen=True)
class Top(Concept):
    pass


@dataclass(frozen=True)
class Bottom(Concept):
    pass


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class And(Concept):
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("And needs at least two operands")


@dataclass(frozen=True)
class Or(Concept):
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("Or needs at least two operands")


@dataclass(frozen=True)
class Not(Concept):
    operand: Concept


@dataclass(frozen=True)
class Some(Concept):
    role: RoleExpr
    filler: Concept


@dataclass(frozen=True)
class Only(Concept):
    role: RoleExpr
    filler: Concept


@dataclass(frozen=True)
class Min(Concept):
    n: int
    role: RoleExpr


@dataclass(frozen=True)
class Max(Concept):
    n: int
    role: RoleExpr


@dataclass(frozen=True)
class Exact(Concept):
    n: int
    role: RoleExpr


@dataclass(frozen=True)
class OneOf(Concept):
    individuals: tuple

    def __post_init__(self):
        object.__setattr__(self, "individuals", tuple(self.individuals))


@dataclass(frozen=True)
class HasValue(Concept):
    role: RoleExpr
    individual: str


ConceptExpr = Concept


def conj(*parts: Concept) -> Concept:
    """And over ``parts``; collapses to the single operand (or Top) when short."""
    if not parts:
        return TOP
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(*parts: Concept) -> Concept:
    if not parts:
        return BOTTOM
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def subconcepts(c: Concept):
    """Yield ``c`` and all nested class expressions, pre-order."""
    yield c
    if isinstance(c, (And, Or)):
        for op in c.operands:
            yield from subconcepts(op)
    elif isinstance(c, Not):
        yield from subconcepts(c.operand)
    elif isinstance(c, (Some, Only)):
        yield from subconcepts(c.filler)


def class_names(c: Concept) -> set:
    return {s.name for s in subconcepts(c) if isinstance(s, Named)}


def role_names(c: Concept) -> set:
    return {s.role.name for s in subconcepts(c) if hasattr(s, "role")}


def depth(c: Concept) -> int:
    if isinstance(c, (And, Or)):
        return 1 + max(depth(o) for o in c.operands)
    if isinstance(c, Not):
        return 1 + depth(c.operand)
    if isinstance(c, (Some, Only)):
        return 1 + depth(c.filler)
    return 0


# -- axioms ---------------------------------------------------------------

DECLARATION_KINDS = ("Class", "ObjectProperty", "AnnotationProperty", "NamedIndividual")


class Axiom:
    __slots__ = ()


@dataclass(frozen=True)
class Declaration(Axiom):
    kind: str
    name: str


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: Concept
    sup: Concept


@dataclass(frozen=True)
class EquivalentClasses(Axiom):
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class SubPropertyOf(Axiom):
    sub: RoleExpr
    sup: RoleExpr


@dataclass(frozen=True)
class EquivalentProperties(Axiom):
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class InverseProperties(Axiom):
    first: RoleExpr
    second: RoleExpr


@dataclass(frozen=True)
class TransitiveProperty(Axiom):
    role: RoleExpr


@dataclass(frozen=True)
class Domain(Axiom):
    role: RoleExpr
    concept: Concept


@dataclass(frozen=True)
class Range(Axiom):
    role: RoleExpr
    concept: Concept


@dataclass(frozen=True)
class ClassAssertion(Axiom):
    individual: str
    concept: Concept


@dataclass(frozen=True)
class PropertyAssertion(Axiom):
    subject: str
    role: RoleExpr
    object: str


@dataclass(frozen=True)
class AnnotationAssertion(Axiom):
    subject: str
    property: str
    value: str


@dataclass(frozen=True)
class Import(Axiom):
    iri: str


CLASS_AXIOMS = (SubClassOf, EquivalentClasses, DisjointClasses, Domain, Range)
ROLE_AXIOMS = (SubPropertyOf, EquivalentProperties, InverseProperties, TransitiveProperty)
ASSERTIONS = (ClassAssertion, PropertyAssertion)


@dataclass
class Ontology:
    """One parsed ``.omn`` document."""

    iri: str | None = None
    prefixes: dict = field(default_factory=dict)
    axioms: list = field(default_factory=list)
    annotations: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    path: str | None = None

    @property
    def imports(self) -> list:
        return [a.iri for a in self.axioms if isinstance(a, Import)]

    def structure(self):
        """Comparable view used by round-trip checks (ignores locations)."""
        return (self.iri, tuple(self.axioms), tuple(self.annotations))


Node = Union[Concept, Ontology]
