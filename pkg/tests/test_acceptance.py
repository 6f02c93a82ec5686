"""Acceptance criteria, one test each. Every test prints a single
``[PASS]``/``[FAIL]`` line with its runtime; the lines are repeated in the
terminal summary (see conftest.py)."""
import random
import time
from contextlib import contextmanager

from conftest import random_concept, random_role_axioms
from listings import LISTINGS, frame
from test_classify import INJECTED_UNSAT, check_coherence
from sdl.classify import classify, unsatisfiable_classes
from sdl.cli import run
from sdl.corpus import load_corpus, verify
from sdl.errors import UnsupportedFeature
from sdl.kb import KnowledgeBase
from sdl.lint import errors, lint
from sdl.logic import nnf, role_axioms, role_closure
from sdl.model import AnnotationAssertion, Declaration, DisjointClasses, Named
from sdl.oracle import find_model
from sdl.syntax import parse_ontology, render, render_concept
from sdl.tableau import is_satisfiable, satisfiable

RESULTS = []
SKOS = "http://www.w3.org/2004/02/skos/core#definition"


@contextmanager
def criterion(number, title, budget):
    """Times the block; fails on assertion errors or when over ``budget`` seconds."""
    detail = {}
    start = time.perf_counter()
    ok, why = False, ""
    try:
        yield detail
        ok = True
    except AssertionError as exc:
        why = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed >= budget:
            ok, why = False, f"over budget ({budget:g} s)"
        extra = ", ".join(f"{k}={v}" for k, v in detail.items())
        line = (f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {elapsed:.2f}s"
                f" (< {budget:g}s){'; ' + extra if extra else ''}{'; ' + why if why else ''}")
        RESULTS.append(line)
        print(line)
    assert elapsed < budget, line


def test_1_parse_fidelity():
    with criterion(1, "parse fidelity", 1.0) as d:
        for name, sup, body in LISTINGS:
            onto = parse_ontology(frame(name, sup, body))
            again = parse_ontology(render(onto))
            assert again.axioms == onto.axioms, name
        d["listings"] = len(LISTINGS)


def test_2_corpus_consistency(capsys):
    with criterion(2, "corpus consistency", 10.0) as d:
        code = run(["corpus-verify"])
        out = capsys.readouterr().out
        assert code == 0 and "consistency: ok" in out, out
        kb, _ = load_corpus()
        unsat = unsatisfiable_classes(kb)
        assert unsat == {}, sorted(unsat)
        d["unsatisfiable"] = 0


def test_3_entailment_manifest():
    with criterion(3, "entailment manifest", 30.0) as d:
        kb, entries = load_corpus()
        kinds = {e.kind for e in entries}
        assert len(entries) >= 25
        assert sum(e.kind == "caption" for e in entries) >= len(LISTINGS)
        assert sum(e.kind == "existential" for e in entries) >= 5
        assert sum(e.kind == "converse" and not e.expected for e in entries) >= 5
        outcomes = verify(kb, entries)
        bad = [o.entry.id for o in outcomes if not o.ok]
        d["entries"] = len(entries)
        d["kinds"] = len(kinds)
        assert bad == [], bad


def test_4_nothing_detection():
    with criterion(4, "owl:Nothing detection", 30.0) as d:
        kb, _ = load_corpus()
        kb = kb.extended([DisjointClasses((Named("Product Capability"), Named("Seamless Integration")))])
        found = set(unsatisfiable_classes(kb))
        d["flagged"] = len(found)
        assert "Seamless Integration" in found
        assert found == INJECTED_UNSAT, sorted(found)


def test_5_oracle_equivalence():
    with criterion(5, "oracle equivalence", 300.0) as d:
        rng = random.Random(2024)
        checked = skipped = unsat = 0
        disagreements = []
        while checked < 1000:
            c = random_concept(rng, 3)
            axs = random_role_axioms(rng)
            try:
                res = satisfiable([], role_closure(role_axioms(axs), extra_roles={"r", "s"}), c)
            except UnsupportedFeature:
                skipped += 1  # number restriction on a non-simple role
                continue
            model = find_model(axs, c, 3)
            checked += 1
            unsat += not res.satisfiable
            if model is not None and not res.satisfiable:
                disagreements.append(render_concept(c))
        d.update(concepts=checked, unsat=unsat, skipped=skipped, disagreements=len(disagreements))
        assert disagreements == [], disagreements[:3]


def test_6_termination():
    with criterion(6, "termination by blocking", 1.0) as d:
        kb = KnowledgeBase.from_text("Class: Person SubClassOf: hasParent some Person")
        res = is_satisfiable(kb, Named("Person"))
        assert res.verdict == "Satisfiable"
        d["nodes"] = len(res.witness.labels)


def test_7_classification_coherence():
    with criterion(7, "classification coherence", 60.0) as d:
        kb, _ = load_corpus()
        tax = classify(kb)
        mismatches, redundant = check_coherence(kb, tax)
        d["names"] = len(kb.signature.class_names)
        assert mismatches == [], mismatches[:5]
        assert redundant == [], redundant[:5]


def _without_definition(kb, target):
    keep = [i for i, ax in enumerate(kb.axioms)
            if not (isinstance(ax, AnnotationAssertion) and ax.subject == target
                    and ax.property == SKOS)]
    return KnowledgeBase(kb.ontologies, tuple(kb.axioms[i] for i in keep),
                         tuple(kb.locations[i] for i in keep), tuple(kb.owners[i] for i in keep))


def test_8_lint():
    with criterion(8, "lint", 10.0):
        kb, _ = load_corpus()
        assert errors(lint(kb)) == []
        found = errors(lint(kb.extended([Declaration("ObjectProperty", "enables")])))
        assert [f.ruleId for f in found] == ["L3"], found
        found = errors(lint(_without_definition(kb, "Seamless Interface")))
        assert [f.ruleId for f in found] == ["L1"], found


def test_9_nnf_properties():
    with criterion(9, "nnf properties", 300.0) as d:
        rng = random.Random(99)
        broken = []
        for _ in range(1000):
            c = random_concept(rng, 3)
            n = nnf(c)
            if nnf(n) != n:
                broken.append(("idempotence", c))
            elif (find_model([], c, 3) is None) != (find_model([], n, 3) is None):
                broken.append(("satisfiability", c))
        d["concepts"] = 1000
        assert broken == [], broken[:3]
