import json

import pytest

from sdl.kb import KnowledgeBase
from sdl.lint import (
    CANONICAL, DICTIONARY, ISO, UNKNOWN, LintConfig, categorize, counts_by_rule, errors, lint,
    provenance_summary,
)
from sdl.model import AnnotationAssertion, Declaration, Named, SubClassOf

SKOS = "http://www.w3.org/2004/02/skos/core#definition"
HEAD = (
    "Prefix: skos: <http://www.w3.org/2004/02/skos/core#>\n"
    "Prefix: dc: <http://purl.org/dc/elements/1.1/>\n"
    "Ontology: <http://ex.org/t>\n"
    "AnnotationProperty: skos:definition\n"
    "AnnotationProperty: dc:source\n"
)


def kb(body):
    return KnowledgeBase.from_text(HEAD + body, path="t.omn")


def without(kb_, drop):
    keep = [i for i, ax in enumerate(kb_.axioms) if not drop(ax)]
    return KnowledgeBase(
        kb_.ontologies,
        tuple(kb_.axioms[i] for i in keep),
        tuple(kb_.locations[i] for i in keep),
        tuple(kb_.owners[i] for i in keep),
    )


def rules(findings, severity="error"):
    return sorted(f.ruleId for f in findings if f.severity == severity)


class TestCategorize:
    @pytest.mark.parametrize("text, cat", [
        ("ISO/IEC 25010:2023", ISO),
        ("IEEE 1012-2016", ISO),
        ("SEBoK v2.9", CANONICAL),
        ("Academic literature: seamless methods", CANONICAL),
        ("Merriam-Webster", DICTIONARY),
        ("https://en.wikipedia.org/wiki/Paradigm", DICTIONARY),
        ("a blog post", UNKNOWN),
        ("see ISO 9000", UNKNOWN),
    ])
    def test_examples(self, text, cat):
        assert categorize(text).category == cat

    def test_custom_patterns(self):
        assert categorize("Internal glossary", ["internal glossary"]).category == CANONICAL
        assert categorize("SEBoK", []).category == UNKNOWN


class TestCorpus:
    def test_clean(self, corpus_kb):
        assert errors(lint(corpus_kb)) == []

    def test_frozen_provenance(self, corpus_kb):
        assert provenance_summary(corpus_kb) == {ISO: 39, CANONICAL: 11, DICTIONARY: 6, UNKNOWN: 0}

    def test_summary_finding(self, corpus_kb):
        info = [f for f in lint(corpus_kb) if f.ruleId == "L5"]
        assert len(info) == 1 and info[0].severity == "info"
        assert "isoStandard=39" in info[0].message

    def test_drop_one_definition(self, corpus_kb):
        target = "Seamless Interface"
        k = without(corpus_kb, lambda ax: isinstance(ax, AnnotationAssertion)
                    and ax.subject == target and ax.property == SKOS)
        errs = errors(lint(k))
        assert [(f.ruleId, f.subject) for f in errs] == [("L1", target)]

    def test_new_property_in_root(self, corpus_kb):
        k = corpus_kb.extended([Declaration("ObjectProperty", "enables")])
        assert rules(lint(k)) == ["L3"]

    def test_include_imports(self, corpus_kb):
        summary = provenance_summary(corpus_kb, LintConfig(includeImports=True))
        assert sum(summary.values()) > 56
        # the stubs declare their relations, which L3 then sees
        assert "L3" in rules(lint(corpus_kb, LintConfig(includeImports=True)))

    def test_pure_and_sorted(self, corpus_kb):
        first, second = lint(corpus_kb), lint(corpus_kb)
        assert first == second
        assert [f.sort_key() for f in first] == sorted(f.sort_key() for f in first)


class TestSmall:
    def test_unannotated_class(self):
        assert rules(lint(kb("Class: A"))) == ["L1", "L2"]

    def test_annotated_class(self):
        k = kb('Class: A Annotations: skos:definition "An A.", dc:source "ISO 704:2022"')
        assert errors(lint(k)) == []

    def test_two_definitions(self):
        k = kb('Class: A Annotations: skos:definition "x", skos:definition "y", dc:source "SEBoK"')
        assert rules(lint(k)) == ["L1"]

    def test_unknown_source_warns(self):
        k = kb('Class: A Annotations: skos:definition "x", dc:source "my notes"')
        assert errors(lint(k)) == []
        assert rules(lint(k), "warning") == ["L2"]

    def test_iso_beats_wikipedia(self):
        k = kb('Class: A Annotations: skos:definition "x", dc:source "Wikipedia", '
               'dc:source "ISO/IEC/IEEE 15288:2023"')
        assert provenance_summary(k)[ISO] == 1
        assert provenance_summary(k)[DICTIONARY] == 0

    def test_undeclared_use(self):
        k = kb('Class: A Annotations: skos:definition "x", dc:source "SEBoK"\n'
               "    SubClassOf: B")
        found = errors(lint(k))
        assert [(f.ruleId, f.subject) for f in found] == [("L4", "B")]
        assert found[0].location == ("t.omn", 7)

    def test_undeclared_reported_once(self):
        k = kb('Class: A Annotations: skos:definition "x", dc:source "SEBoK"\n'
               "    SubClassOf: B, r some B")
        assert counts_by_rule(lint(k))[("L4", "error")] == 2

    def test_empty_root(self):
        found = lint(kb(""))
        assert errors(found) == []
        assert provenance_summary(kb("")) == dict.fromkeys((ISO, CANONICAL, DICTIONARY, UNKNOWN), 0)

    def test_custom_properties(self):
        k = kb("AnnotationProperty: rdfs:comment\nAnnotationProperty: rdfs:seeAlso\n"
               'Class: A Annotations: rdfs:comment "x", rdfs:seeAlso "SEBoK"')
        cfg = LintConfig(definitionProperty="rdfs:comment", sourceProperty="rdfs:seeAlso")
        assert errors(lint(k, cfg)) == []

    def test_extended_axioms_in_scope(self):
        k = kb('Class: A Annotations: skos:definition "x", dc:source "SEBoK"')
        k = k.extended([SubClassOf(Named("A"), Named("Z"))])
        assert rules(lint(k)) == ["L4"]


class TestConfig:
    def test_load(self, tmp_path):
        p = tmp_path / "lint.json"
        p.write_text(json.dumps({"canonicalPatterns": ["Handbook"], "includeImports": True}))
        cfg = LintConfig.load(p)
        assert cfg.canonicalPatterns == ["Handbook"] and cfg.includeImports
        assert cfg.definitionProperty == "skos:definition"

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "lint.json"
        p.write_text(json.dumps({"severity": "low"}))
        with pytest.raises(ValueError, match="severity"):
            LintConfig.load(p)


def test_finding_serialisation():
    f = errors(lint(kb("Class: A")))[0]
    data = json.loads(f.to_json())
    assert data["location"] == {"file": "t.omn", "line": 6}
    assert f.to_text().startswith("t.omn:6: error L1 A:")
