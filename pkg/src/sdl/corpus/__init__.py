"""The bundled SDE corpus: two upper-ontology stubs, the SDE fragment and a
manifest of expected entailments."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..kb import KnowledgeBase, resolve_imports
from ..model import Declaration
from ..syntax import parse_ontology

CORPUS_DIR = Path(__file__).resolve().parent
ROOT_FILE = CORPUS_DIR / "sde.omn"
CATALOG_FILE = CORPUS_DIR / "catalog.json"
MANIFEST_FILE = CORPUS_DIR / "manifest.json"


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    kind: str
    text: str
    axiom: object
    expected: bool


@dataclass(frozen=True)
class EntryOutcome:
    entry: ManifestEntry
    actual: bool

    @property
    def ok(self) -> bool:
        return self.actual == self.entry.expected


def parse_manifest_axiom(text: str, prefixes=None):
    """The single logical axiom in a one-frame Manchester string."""
    head = "".join(f"Prefix: {p} <{iri}>\n" for p, iri in (prefixes or {}).items())
    onto = parse_ontology(head + text, "<manifest>")
    axioms = [a for a in onto.axioms if not isinstance(a, Declaration)]
    if len(axioms) != 1:
        raise ValueError(f"manifest entry must hold exactly one axiom: {text!r}")
    return axioms[0]


def load_manifest(path=MANIFEST_FILE, prefixes=None) -> list:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return [
        ManifestEntry(e["id"], e.get("kind", ""), e["axiom"],
                      parse_manifest_axiom(e["axiom"], prefixes), bool(e["expected"]))
        for e in raw["entries"]
    ]


def load_corpus() -> tuple[KnowledgeBase, list]:
    """Resolve the bundled imports closure and parse the manifest."""
    kb = resolve_imports(ROOT_FILE, CATALOG_FILE)
    return kb, load_manifest(MANIFEST_FILE, kb.root.prefixes)


def verify(kb: KnowledgeBase, entries, max_nodes=None) -> list:
    """Check every manifest entry against ``kb``."""
    from ..classify import entails

    return [EntryOutcome(e, entails(kb, e.axiom, max_nodes)) for e in entries]


__all__ = ["CORPUS_DIR", "EntryOutcome", "ManifestEntry", "load_corpus", "load_manifest",
           "parse_manifest_axiom", "verify"]
