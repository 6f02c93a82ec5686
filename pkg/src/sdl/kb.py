"""Import-closure resolution and knowledge-base bookkeeping."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import ImportCycle, MissingImport
from .logic import role_axioms, role_closure, to_gcis
from .model import (
    OWL, RDFS, AnnotationAssertion, ClassAssertion, Declaration, Domain, EquivalentClasses,
    Import, Named, Ontology, PropertyAssertion, Range, SubClassOf, subconcepts,
)
from .syntax import parse_ontology

BUILTIN_ANNOTATION_PROPERTIES = {RDFS + "label", RDFS + "comment", RDFS + "seeAlso",
                                 RDFS + "isDefinedBy", OWL + "versionInfo", OWL + "deprecated"}
BUILTIN_CLASSES = {OWL + "Thing", OWL + "Nothing"}


@dataclass
class Catalog:
    """Maps ontology IRIs to local files."""

    entries: dict = field(default_factory=dict)
    base: Path = field(default_factory=Path.cwd)

    @classmethod
    def load(cls, path) -> "Catalog":
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict) or not all(isinstance(v, str) for v in raw.values()):
            raise ValueError(f"{path}: catalog must be a JSON object of IRI -> path strings")
        return cls(dict(raw), path.parent)

    def resolve(self, iri: str) -> Path | None:
        rel = self.entries.get(iri)
        return None if rel is None else (self.base / rel)


@dataclass
class Signature:
    class_names: set = field(default_factory=set)
    role_names: set = field(default_factory=set)
    annotation_property_names: set = field(default_factory=set)
    individual_names: set = field(default_factory=set)
    undeclared: set = field(default_factory=set)  # (kind, name) pairs

    def as_tuple(self):
        return (self.class_names, self.role_names, self.annotation_property_names,
                self.individual_names)


@dataclass(frozen=True)
class KnowledgeBase:
    """Merged view of an imports closure.

    ``locations[i]`` is the ``(file, line)`` of ``axioms[i]``. The root
    ontology is the last entry of ``ontologies``.
    """

    ontologies: tuple
    axioms: tuple
    locations: tuple
    owners: tuple = ()

    @classmethod
    def from_ontologies(cls, ontologies) -> "KnowledgeBase":
        axioms, locations, owners = [], [], []
        for idx, onto in enumerate(ontologies):
            name = onto.path or onto.iri or f"<ontology {idx}>"
            for ax, line in zip(onto.axioms, onto.lines or [0] * len(onto.axioms)):
                axioms.append(ax)
                locations.append((name, line))
                owners.append(idx)
        return cls(tuple(ontologies), tuple(axioms), tuple(locations), tuple(owners))

    @classmethod
    def from_text(cls, text: str, path: str | None = None) -> "KnowledgeBase":
        return cls.from_ontologies([parse_ontology(text, path)])

    @property
    def root(self) -> Ontology:
        return self.ontologies[-1]

    def root_axioms(self):
        last = len(self.ontologies) - 1
        return [ax for ax, o in zip(self.axioms, self.owners) if o == last]

    @cached_property
    def source_index(self) -> dict:
        """First recorded location of each distinct axiom."""
        index = {}
        for ax, loc in zip(self.axioms, self.locations):
            index.setdefault(ax, loc)
        return index

    def extended(self, extra, path="<extra>") -> "KnowledgeBase":
        """A copy with ``extra`` axioms appended to the root ontology."""
        extra = list(extra)
        last = len(self.ontologies) - 1
        return KnowledgeBase(
            self.ontologies,
            self.axioms + tuple(extra),
            self.locations + tuple((path, 0) for _ in extra),
            self.owners + tuple(last for _ in extra),
        )

    @cached_property
    def gcis(self) -> list:
        return to_gcis(self.axioms)

    @cached_property
    def rbox(self):
        return role_closure(role_axioms(self.axioms), extra_roles=self.signature.role_names)

    @cached_property
    def signature(self) -> Signature:
        return signature(self)

    @cached_property
    def individuals(self) -> list:
        return sorted(self.signature.individual_names)


def _label(onto: Ontology, fallback: str) -> str:
    return onto.iri or fallback


def resolve_imports(root_file, catalog: Catalog | str | Path | None = None) -> KnowledgeBase:
    """Load ``root_file`` and everything it imports, transitively.

    Ontologies are discovered breadth-first and returned in dependency
    order (imports before importers); a diamond import is loaded once.
    """
    root_file = Path(root_file)
    if catalog is None:
        sibling = root_file.parent / "catalog.json"
        catalog = Catalog.load(sibling) if sibling.exists() else Catalog(base=root_file.parent)
    elif not isinstance(catalog, Catalog):
        catalog = Catalog.load(catalog)

    root = _load(root_file)
    root_key = root.iri or str(root_file)
    loaded = {root_key: root}
    queue = deque([root_key])
    while queue:
        key = queue.popleft()
        onto = loaded[key]
        for iri in onto.imports:
            if iri in loaded:
                continue
            path = catalog.resolve(iri)
            if path is None:
                raise MissingImport(iri, _label(onto, key), _import_site(onto, iri))
            child = _load(path)
            loaded[iri] = child
            queue.append(iri)

    order = []
    state = {}

    def visit(key, stack):
        st = state.get(key)
        if st == "done":
            return
        if st == "active":
            cycle = stack[stack.index(key):] + [key]
            raise ImportCycle(cycle, _import_site(loaded[stack[-1]], key))
        state[key] = "active"
        for iri in loaded[key].imports:
            visit(iri, stack + [key])
        state[key] = "done"
        order.append(loaded[key])

    visit(root_key, [])
    return KnowledgeBase.from_ontologies(order)


def _import_site(onto: Ontology, iri: str):
    for ax, line in zip(onto.axioms, onto.lines):
        if isinstance(ax, Import) and ax.iri == iri:
            return (onto.path, line)
    return (onto.path, 0)


def _load(path: Path) -> Ontology:
    text = Path(path).read_text(encoding="utf-8")
    return parse_ontology(text, str(path))


def _entity_uses(ax):
    """Yield (kind, name) for every entity an axiom mentions."""
    concepts, roles, inds, annots = [], [], [], []
    if isinstance(ax, AnnotationAssertion):
        annots.append(ax.property)
    elif isinstance(ax, ClassAssertion):
        inds.append(ax.individual)
        concepts.append(ax.concept)
    elif isinstance(ax, PropertyAssertion):
        inds += [ax.subject, ax.object]
        roles.append(ax.role)
    elif isinstance(ax, (Domain, Range)):
        roles.append(ax.role)
        concepts.append(ax.concept)
    elif isinstance(ax, SubClassOf):
        concepts += [ax.sub, ax.sup]
    elif hasattr(ax, "members"):
        for m in ax.members:
            (roles if hasattr(m, "inverted") else concepts).append(m)
    elif hasattr(ax, "sub"):
        roles += [ax.sub, ax.sup]
    elif hasattr(ax, "first"):
        roles += [ax.first, ax.second]
    elif hasattr(ax, "role"):
        roles.append(ax.role)
    for c in concepts:
        for s in subconcepts(c):
            if isinstance(s, Named):
                yield "Class", s.name
            if hasattr(s, "role"):
                yield "ObjectProperty", s.role.name
            if hasattr(s, "individual"):
                yield "NamedIndividual", s.individual
            if hasattr(s, "individuals"):
                for i in s.individuals:
                    yield "NamedIndividual", i
    for r in roles:
        yield "ObjectProperty", r.name
    for i in inds:
        yield "NamedIndividual", i
    for a in annots:
        yield "AnnotationProperty", a


def signature(kb: KnowledgeBase) -> Signature:
    """Names by kind, declared or used; undeclared uses are collected too."""
    declared = {k: set() for k in ("Class", "ObjectProperty", "AnnotationProperty", "NamedIndividual")}
    used = {k: set() for k in declared}
    for ax in kb.axioms:
        if isinstance(ax, Declaration):
            declared[ax.kind].add(ax.name)
        elif not isinstance(ax, Import):
            for kind, name in _entity_uses(ax):
                used[kind].add(name)
    declared["Class"] -= BUILTIN_CLASSES
    declared["AnnotationProperty"] |= BUILTIN_ANNOTATION_PROPERTIES
    undeclared = {(k, n) for k in used for n in used[k] - declared[k]}
    annots = (declared["AnnotationProperty"] - BUILTIN_ANNOTATION_PROPERTIES) | used["AnnotationProperty"]
    return Signature(
        class_names=declared["Class"] | used["Class"],
        role_names=declared["ObjectProperty"] | used["ObjectProperty"],
        annotation_property_names=annots,
        individual_names=declared["NamedIndividual"] | used["NamedIndividual"],
        undeclared=undeclared,
    )


def told_hierarchy(kb: KnowledgeBase) -> dict:
    """Asserted named-class edges: ``graph[A]`` is the set of told parents of A."""
    graph = {name: set() for name in kb.signature.class_names}
    for ax in kb.axioms:
        if isinstance(ax, SubClassOf) and isinstance(ax.sub, Named) and isinstance(ax.sup, Named):
            graph[ax.sub.name].add(ax.sup.name)
        elif isinstance(ax, EquivalentClasses):
            named = [m.name for m in ax.members if isinstance(m, Named)]
            for a in named:
                for b in named:
                    if a != b:
                        graph[a].add(b)
    return graph
