import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sdl.corpus import load_corpus  # noqa: E402
from sdl.model import (  # noqa: E402
    BOTTOM, TOP, And, Exact, InverseProperties, Max, Min, Named, Not, Only, Or, RoleExpr, Some,
    SubPropertyOf, TransitiveProperty,
)

CLASS_NAMES = ("A", "B", "C")
ROLE_NAMES = ("r", "s")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_kb(corpus):
    return corpus[0]


# -- hypothesis strategies ------------------------------------------------------

def roles(inverse=True):
    base = st.sampled_from(ROLE_NAMES)
    if not inverse:
        return base.map(RoleExpr)
    return st.builds(RoleExpr, base, st.booleans())


atoms = st.one_of(st.sampled_from([Named(n) for n in CLASS_NAMES]), st.sampled_from([TOP, BOTTOM]))


def concepts(max_leaves=8, inverse=True, cardinality=True):
    rs = roles(inverse)

    def extend(children):
        parts = [
            children.map(Not),
            st.tuples(children, children).map(And),
            st.tuples(children, children).map(Or),
            st.builds(Some, rs, children),
            st.builds(Only, rs, children),
        ]
        return st.one_of(*parts)

    base = atoms
    if cardinality:
        n = st.integers(0, 2)
        base = st.one_of(atoms, st.builds(Min, n, rs), st.builds(Max, n, rs), st.builds(Exact, n, rs))
    return st.recursive(base, extend, max_leaves=max_leaves)


# -- plain random generator (seeded, used by the acceptance sweeps) ---------------

def random_concept(rng: random.Random, depth: int):
    """Depth-bounded concept over A, B, C and roles r, s (with inverses)."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return rng.choice([TOP, BOTTOM])
        return Named(rng.choice(CLASS_NAMES))
    k = rng.randrange(9)
    r = RoleExpr(rng.choice(ROLE_NAMES), rng.random() < 0.2)
    if k == 0:
        return Not(random_concept(rng, depth - 1))
    if k in (1, 2):
        return And((random_concept(rng, depth - 1), random_concept(rng, depth - 1)))
    if k == 3:
        return Or((random_concept(rng, depth - 1), random_concept(rng, depth - 1)))
    if k in (4, 5):
        return Some(r, random_concept(rng, depth - 1))
    if k == 6:
        return Only(r, random_concept(rng, depth - 1))
    return rng.choice([Min, Max, Exact])(rng.randrange(3), r)


def random_role_axioms(rng: random.Random):
    """At most one transitive, one inverse and one sub-role axiom."""
    r, s = RoleExpr("r"), RoleExpr("s")
    axs = []
    if rng.random() < 0.5:
        axs.append(TransitiveProperty(r))
    if rng.random() < 0.5:
        axs.append(InverseProperties(r, s))
    if rng.random() < 0.5:
        axs.append(SubPropertyOf(s, r) if rng.random() < 0.5 else SubPropertyOf(r, s))
    return axs


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
