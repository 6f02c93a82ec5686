"""Authoring-discipline checks: definitions, source provenance, no new roles,
declare-before-use."""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import asdict, dataclass, field

from .kb import _entity_uses
from .model import DEFAULT_PREFIXES, AnnotationAssertion, Declaration, Import

ISO = "isoStandard"
CANONICAL = "otherCanonical"
DICTIONARY = "dictionaryOrWikipedia"
UNKNOWN = "unknown"
CATEGORIES = (ISO, CANONICAL, DICTIONARY, UNKNOWN)
PRIORITY = {ISO: 0, CANONICAL: 1, DICTIONARY: 2, UNKNOWN: 3}

DEFAULT_CANONICAL = [
    "INCOSE Systems Engineering Handbook",
    "INCOSE Needs and Requirements Manual",
    "SEBoK",
    "Systems Engineering Body of Knowledge",
    "NASA Systems Engineering Handbook",
    "DAU Glossary",
    "Defense Acquisition University Glossary",
    "Academic literature",
]

_ISO_RE = re.compile(r"^\s*(ISO|IEC|IEEE)\b")
_DICT_RE = re.compile(r"wikipedia|dictionary|dictionaries|wordnet|merriam-webster|thesaurus", re.I)


@dataclass
class LintConfig:
    definitionProperty: str = "skos:definition"
    sourceProperty: str = "dc:source"
    canonicalPatterns: list = field(default_factory=lambda: list(DEFAULT_CANONICAL))
    includeImports: bool = False

    @classmethod
    def load(cls, path) -> "LintConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        known = set(cls.__dataclass_fields__)
        extra = set(raw) - known
        if extra:
            raise ValueError(f"{path}: unknown lint config keys: {sorted(extra)}")
        return cls(**raw)


@dataclass(frozen=True)
class SourceCategory:
    category: str
    citation: str


@dataclass(frozen=True)
class LintFinding:
    ruleId: str
    severity: str  # error | warning | info
    subject: str
    message: str
    location: tuple  # (file, line)

    def sort_key(self):
        return (str(self.location[0]), self.location[1], self.ruleId, self.subject)

    def to_json(self) -> str:
        d = asdict(self)
        d["location"] = {"file": self.location[0], "line": self.location[1]}
        return json.dumps(d, ensure_ascii=False, sort_keys=True)

    def to_text(self) -> str:
        f, line = self.location
        return f"{f}:{line}: {self.severity} {self.ruleId} {self.subject}: {self.message}"


def categorize(citation: str, canonical=None) -> SourceCategory:
    """Classify a source citation by its text alone."""
    if _ISO_RE.match(citation):
        return SourceCategory(ISO, citation)
    low = citation.lower()
    for pat in DEFAULT_CANONICAL if canonical is None else canonical:
        if pat.lower() in low:
            return SourceCategory(CANONICAL, citation)
    if _DICT_RE.search(citation):
        return SourceCategory(DICTIONARY, citation)
    return SourceCategory(UNKNOWN, citation)


def _expand(name: str, prefixes: dict) -> str:
    table = {**DEFAULT_PREFIXES, **prefixes}
    head, sep, tail = name.partition(":")
    if sep and head + ":" in table:
        return table[head + ":"] + tail
    return name


def _scope(kb, include_imports):
    last = len(kb.ontologies) - 1
    for i, (ax, owner) in enumerate(zip(kb.axioms, kb.owners)):
        if include_imports or owner == last:
            yield ax, kb.locations[i]


def _annotations(kb, prop):
    """subject -> list of (value, location) for one annotation property."""
    out = {}
    for ax, loc in zip(kb.axioms, kb.locations):
        if isinstance(ax, AnnotationAssertion) and ax.property == prop:
            out.setdefault(ax.subject, []).append((ax.value, loc))
    return out


def _scoped_classes(kb, include_imports):
    seen = {}
    for ax, loc in _scope(kb, include_imports):
        if isinstance(ax, Declaration) and ax.kind == "Class":
            seen.setdefault(ax.name, loc)
    return seen


def provenance_summary(kb, config: LintConfig | None = None) -> dict:
    """Per-category class counts, each class counted once by its best source."""
    config = config or LintConfig()
    prop = _expand(config.sourceProperty, kb.root.prefixes)
    sources = _annotations(kb, prop)
    counts = dict.fromkeys(CATEGORIES, 0)
    for name in _scoped_classes(kb, config.includeImports):
        cats = [categorize(v, config.canonicalPatterns).category for v, _ in sources.get(name, ())]
        best = min(cats, key=PRIORITY.__getitem__) if cats else UNKNOWN
        counts[best] += 1
    return counts


def lint(kb, config: LintConfig | None = None) -> list:
    config = config or LintConfig()
    pf = kb.root.prefixes
    def_prop = _expand(config.definitionProperty, pf)
    src_prop = _expand(config.sourceProperty, pf)
    definitions = _annotations(kb, def_prop)
    sources = _annotations(kb, src_prop)
    classes = _scoped_classes(kb, config.includeImports)
    findings = []

    for name, loc in classes.items():
        n = len(definitions.get(name, ()))
        if n != 1:
            findings.append(LintFinding(
                "L1", "error", name,
                f"expected exactly one {config.definitionProperty} annotation, found {n}", loc))
        cited = sources.get(name, ())
        if not cited:
            findings.append(LintFinding(
                "L2", "error", name, f"no {config.sourceProperty} annotation", loc))
        for value, sloc in cited:
            if categorize(value, config.canonicalPatterns).category == UNKNOWN:
                findings.append(LintFinding(
                    "L2", "warning", name, f"source not in a recognised category: {value!r}", sloc))

    for ax, loc in _scope(kb, config.includeImports):
        if isinstance(ax, Declaration) and ax.kind == "ObjectProperty":
            findings.append(LintFinding(
                "L3", "error", ax.name,
                "object property declared in the linted ontology; reuse an imported relation", loc))

    undeclared = kb.signature.undeclared
    reported = set()
    for ax, loc in _scope(kb, config.includeImports):
        if isinstance(ax, (Declaration, Import)):
            continue
        for use in _entity_uses(ax):
            if use in undeclared and use not in reported:
                reported.add(use)
                findings.append(LintFinding(
                    "L4", "error", use[1], f"{use[0]} used but not declared in the imports closure", loc))

    summary = provenance_summary(kb, config)
    root_loc = (kb.root.path or kb.root.iri or "<root>", 0)
    findings.append(LintFinding(
        "L5", "info", kb.root.iri or root_loc[0],
        "source categories: " + ", ".join(f"{k}={summary[k]}" for k in CATEGORIES), root_loc))
    return sorted(findings, key=LintFinding.sort_key)


def errors(findings) -> list:
    return [f for f in findings if f.severity == "error"]


def counts_by_rule(findings) -> Counter:
    return Counter((f.ruleId, f.severity) for f in findings)


__all__ = [
    "CATEGORIES", "LintConfig", "LintFinding", "SourceCategory", "categorize", "counts_by_rule",
    "errors", "lint", "provenance_summary",
]
