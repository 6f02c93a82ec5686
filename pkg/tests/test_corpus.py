import json
from collections import Counter

import pytest

from listings import LISTINGS
from sdl.corpus import (
    CATALOG_FILE, CORPUS_DIR, MANIFEST_FILE, load_manifest, parse_manifest_axiom, verify,
)
from sdl.model import EquivalentClasses, Named, SubClassOf
from sdl.syntax import parse_concept


def test_manifest_size_and_kinds(corpus):
    _, entries = corpus
    assert len(entries) >= 25
    kinds = Counter(e.kind for e in entries)
    for kind in ("caption", "hierarchy", "existential", "converse", "disjointness"):
        assert kinds[kind] >= 1
    assert len({e.id for e in entries}) == len(entries)


def test_manifest_has_negatives(corpus):
    _, entries = corpus
    assert any(not e.expected for e in entries)
    assert all(not e.expected for e in entries if e.kind == "converse")


def test_all_entries_as_expected(corpus):
    kb, entries = corpus
    bad = [o.entry.id for o in verify(kb, entries) if not o.ok]
    assert bad == []


def test_catalog_points_at_bundled_files():
    cat = json.loads(CATALOG_FILE.read_text(encoding="utf-8"))
    assert len(cat) == 3
    assert all((CORPUS_DIR / path).is_file() for path in cat.values())


@pytest.mark.parametrize("name, sup, body", LISTINGS, ids=[n for n, _, _ in LISTINGS])
def test_listing_bodies_present_verbatim(corpus_kb, name, sup, body):
    cls = parse_concept(name)
    assert EquivalentClasses((cls, parse_concept(body))) in corpus_kb.axioms
    assert SubClassOf(cls, parse_concept(sup)) in corpus_kb.axioms


def test_one_frame_one_axiom():
    ax = parse_manifest_axiom("Class: A SubClassOf: B")
    assert ax == SubClassOf(Named("A"), Named("B"))
    with pytest.raises(ValueError):
        parse_manifest_axiom("Class: A SubClassOf: B, C")


def test_manifest_file_round_trip(tmp_path):
    raw = json.loads(MANIFEST_FILE.read_text(encoding="utf-8"))
    raw["entries"] = raw["entries"][:2]
    p = tmp_path / "m.json"
    p.write_text(json.dumps(raw))
    assert [e.id for e in load_manifest(p)] == [e["id"] for e in raw["entries"]]


def test_flipped_expectation_is_reported(corpus):
    kb, entries = corpus
    from dataclasses import replace

    flipped = [replace(entries[0], expected=not entries[0].expected)]
    assert [o.ok for o in verify(kb, flipped)] == [False]
