import json

import pytest

from sdl.errors import ImportCycle, MissingImport
from sdl.kb import Catalog, KnowledgeBase, resolve_imports, signature, told_hierarchy
from sdl.model import Import
from sdl.syntax import parse_ontology, render


def write(tmp_path, files, catalog=True):
    for name, text in files.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    if catalog:
        entries = {f"http://ex.org/{n.split('.')[0]}": n for n in files}
        (tmp_path / "catalog.json").write_text(json.dumps(entries), encoding="utf-8")


def onto(name, imports=(), body=""):
    lines = [f"Ontology: <http://ex.org/{name}>"]
    lines += [f"Import: <http://ex.org/{i}>" for i in imports]
    return "\n".join(lines) + "\n" + body


class TestResolveImports:
    def test_corpus_diamond(self, corpus_kb):
        iris = [o.iri for o in corpus_kb.ontologies]
        assert len(iris) == 3 and len(set(iris)) == 3
        assert iris[0].endswith("bfo") and iris[-1].endswith("/sde/ontology")

    def test_single_file(self, tmp_path):
        write(tmp_path, {"a.omn": onto("a", body="Class: A")})
        kb = resolve_imports(tmp_path / "a.omn")
        assert len(kb.ontologies) == 1

    def test_diamond_loaded_once(self, tmp_path):
        write(tmp_path, {
            "top.omn": onto("top", ["left", "right"], "Class: T SubClassOf: L"),
            "left.omn": onto("left", ["base"], "Class: L SubClassOf: Base"),
            "right.omn": onto("right", ["base"], "Class: R SubClassOf: Base"),
            "base.omn": onto("base", body="Class: Base"),
        })
        kb = resolve_imports(tmp_path / "top.omn")
        names = [o.iri.rsplit("/", 1)[1] for o in kb.ontologies]
        assert sorted(names) == ["base", "left", "right", "top"]
        assert names[0] == "base" and names[-1] == "top"

    def test_cycle(self, tmp_path):
        write(tmp_path, {"A.omn": onto("A", ["B"]), "B.omn": onto("B", ["A"])})
        with pytest.raises(ImportCycle) as info:
            resolve_imports(tmp_path / "A.omn")
        assert info.value.path == ["http://ex.org/A", "http://ex.org/B", "http://ex.org/A"]
        f, line = info.value.location
        assert f.endswith("B.omn") and line == 2

    def test_missing(self, tmp_path):
        write(tmp_path, {"a.omn": onto("a", ["nowhere"])}, catalog=False)
        with pytest.raises(MissingImport) as info:
            resolve_imports(tmp_path / "a.omn")
        assert info.value.iri == "http://ex.org/nowhere"
        assert info.value.location[1] == 2

    def test_explicit_catalog(self, tmp_path):
        (tmp_path / "sub").mkdir()
        write(tmp_path / "sub", {"b.omn": onto("b", body="Class: B")}, catalog=False)
        write(tmp_path, {"a.omn": onto("a", ["b"], "Class: A SubClassOf: B")}, catalog=False)
        cat = tmp_path / "cat.json"
        cat.write_text(json.dumps({"http://ex.org/b": "sub/b.omn"}))
        kb = resolve_imports(tmp_path / "a.omn", cat)
        assert len(kb.ontologies) == 2
        assert Catalog.load(cat).resolve("http://ex.org/zzz") is None

    def test_deterministic(self, corpus_kb):
        from sdl.corpus import CATALOG_FILE, ROOT_FILE

        again = resolve_imports(ROOT_FILE, CATALOG_FILE)
        assert again.axioms == corpus_kb.axioms
        assert again.locations == corpus_kb.locations

    def test_locations_resolve(self, corpus_kb):
        for ax, (f, line) in corpus_kb.source_index.items():
            if not isinstance(ax, Import):
                assert line >= 1 and f.endswith(".omn")


class TestSignature:
    def test_corpus(self, corpus_kb):
        sig = corpus_kb.signature
        assert "Trustworthy Computing Base" in sig.class_names
        assert {"OMG", "SysML"} <= sig.individual_names
        assert len(sig.role_names) == 10
        assert sig.undeclared == set()

    def test_empty(self):
        sig = signature(KnowledgeBase.from_text(""))
        assert sig.class_names == sig.role_names == sig.individual_names == set()
        assert sig.annotation_property_names == set()

    def test_undeclared_role(self):
        sig = signature(KnowledgeBase.from_text("Class: A SubClassOf: prescribes some B"))
        assert "prescribes" in sig.role_names
        assert ("ObjectProperty", "prescribes") in sig.undeclared


class TestToldHierarchy:
    def test_corpus_edge(self, corpus_kb):
        assert "Interface" in told_hierarchy(corpus_kb)["Seamless Interface"]

    def test_empty(self):
        assert told_hierarchy(KnowledgeBase.from_text("")) == {}

    def test_equivalence_both_ways(self):
        g = told_hierarchy(KnowledgeBase.from_text("Class: A EquivalentTo: B"))
        assert g["A"] == {"B"} and g["B"] == {"A"}


@pytest.mark.parametrize("name", ["bfo-stub.omn", "cco-stub.omn", "sde.omn"])
def test_corpus_files_round_trip(name):
    from sdl.corpus import CORPUS_DIR

    first = parse_ontology((CORPUS_DIR / name).read_text(encoding="utf-8"))
    second = parse_ontology(render(first))
    assert second.axioms == first.axioms
    assert second.iri == first.iri
