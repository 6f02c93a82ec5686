from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import concepts
from sdl.errors import UnsupportedFeature
from sdl.logic import GCI, negate, nnf, role_closure, to_gcis
from sdl.model import (
    BOTTOM, TOP, And, DisjointClasses, Domain, EquivalentClasses, EquivalentProperties, Exact,
    HasValue, InverseProperties, Max, Min, Named, Not, OneOf, Only, Or, Range, RoleExpr, Some,
    SubClassOf, SubPropertyOf, TransitiveProperty, subconcepts,
)
from sdl.syntax import parse_concept

A, B, C = Named("A"), Named("B"), Named("C")
r, s, t = RoleExpr("r"), RoleExpr("s"), RoleExpr("t")


class TestToGcis:
    def test_equivalence_gives_two(self):
        rhs = parse_concept(
            "Acceptability and ('specifically depends on' some "
            "('Complete Assurance Case Report' and ('is carrier of' some 'Trustworthiness Quality Claim')))")
        ax = EquivalentClasses((Named("Trustworthiness"), rhs))
        gcis = to_gcis([ax])
        assert [(g.lhs, g.rhs) for g in gcis] == [(Named("Trustworthiness"), rhs),
                                                  (rhs, Named("Trustworthiness"))]
        assert all(g.origin is ax for g in gcis)

    def test_self_equivalence(self):
        assert [(g.lhs, g.rhs) for g in to_gcis([EquivalentClasses((A, A))])] == [(A, A), (A, A)]

    def test_domain(self):
        (g,) = to_gcis([Domain(RoleExpr("prescribes"), Named("Directive Information Content Entity"))])
        assert g.lhs == Some(RoleExpr("prescribes"), TOP)
        assert g.rhs == Named("Directive Information Content Entity")

    def test_range_and_disjoint(self):
        (g,) = to_gcis([Range(r, A)])
        assert (g.lhs, g.rhs) == (TOP, Only(r, A))
        gs = to_gcis([DisjointClasses((A, B, C))])
        assert [(g.lhs, g.rhs) for g in gs] == [(A, Not(B)), (A, Not(C)), (B, Not(C))]

    def test_internal_form(self):
        assert GCI(A, B).internal == Or((Not(A), B))

    def test_role_axioms_ignored(self):
        assert to_gcis([TransitiveProperty(r), SubPropertyOf(r, s)]) == []


class TestNnf:
    def test_de_morgan(self):
        assert nnf(Not(And((A, Some(r, B))))) == Or((Not(A), Only(r, Not(B))))

    def test_cardinality_duality(self):
        assert nnf(Not(Max(2, r))) == Min(3, r)
        assert nnf(Not(Min(3, r))) == Max(2, r)
        assert nnf(Not(Min(0, r))) == BOTTOM
        assert nnf(Min(0, r)) == TOP

    def test_exact_split(self):
        assert nnf(Exact(2, r)) == And((Min(2, r), Max(2, r)))
        assert nnf(Not(Exact(2, r))) == Or((Max(1, r), Min(3, r)))
        assert nnf(Not(Exact(0, r))) == Min(1, r)

    def test_flattening(self):
        assert nnf(And((A, And((B, C))))) == And((A, B, C))

    def test_top_bottom(self):
        assert nnf(Not(TOP)) == BOTTOM and nnf(Not(BOTTOM)) == TOP

    def test_negate(self):
        assert negate(Some(r, A)) == Only(r, Not(A))

    @pytest.mark.parametrize("c", [OneOf(("a",)), HasValue(r, "a")])
    def test_nominals_rejected(self, c):
        with pytest.raises(UnsupportedFeature):
            nnf(c)


def _in_nnf(c):
    for x in subconcepts(c):
        if isinstance(x, Not) and not isinstance(x.operand, Named):
            return False
        if isinstance(x, Exact):
            return False
    return True


@settings(max_examples=500, deadline=None)
@given(concepts(max_leaves=12))
def test_nnf_idempotent_and_normal(c):
    n = nnf(c)
    assert nnf(n) == n
    assert _in_nnf(n)


@settings(max_examples=300, deadline=None)
@given(concepts(max_leaves=12))
def test_double_negation(c):
    assert nnf(Not(Not(c))) == nnf(c)


# -- role closure ---------------------------------------------------------------

class TestRoleClosure:
    def test_chain(self):
        box = role_closure([SubPropertyOf(r, s), SubPropertyOf(s, t)])
        assert box.sub(r, t)
        assert box.sub(r.inv(), t.inv())
        assert not box.sub(t, r)

    def test_inverse_with_subrole(self):
        box = role_closure([InverseProperties(r, s), SubPropertyOf(r, t)])
        assert box.sub(s, t.inv())
        assert box.sub(s.inv(), t)

    def test_identity_only(self):
        box = role_closure([], extra_roles={"r"})
        assert box.closure_pairs() == {(r, r), (r.inv(), r.inv())}

    def test_equivalent_of_transitive_is_transitive(self):
        box = role_closure([TransitiveProperty(r), EquivalentProperties((r, s))])
        assert box.is_transitive(s) and not box.is_simple(s)

    def test_simple(self):
        box = role_closure([TransitiveProperty(r), SubPropertyOf(r, s)], extra_roles={"t"})
        assert not box.is_simple(s)
        assert box.is_simple(t)


def _brute_closure(axioms, names):
    """Fixpoint over explicit pairs, independent of the Warshall pass."""
    roles = [RoleExpr(n, i) for n in names for i in (False, True)]
    rel = {(x, x) for x in roles}
    for ax in axioms:
        if isinstance(ax, SubPropertyOf):
            rel |= {(ax.sub, ax.sup), (ax.sub.inv(), ax.sup.inv())}
        elif isinstance(ax, InverseProperties):
            a, b = ax.first, ax.second
            rel |= {(a, b.inv()), (b.inv(), a), (a.inv(), b), (b, a.inv())}
    while True:
        extra = {(x, z) for (x, y) in rel for (y2, z) in rel if y == y2} - rel
        if not extra:
            return rel
        rel |= extra


_ROLE_AXIOMS = st.lists(
    st.one_of(
        st.builds(SubPropertyOf, st.sampled_from([r, s, t]), st.sampled_from([r, s, t])),
        st.builds(InverseProperties, st.sampled_from([r, s, t]), st.sampled_from([r, s, t])),
    ),
    max_size=5,
)


@settings(max_examples=200, deadline=None)
@given(_ROLE_AXIOMS)
def test_role_closure_matches_brute_force(axioms):
    box = role_closure(axioms, extra_roles={"r", "s", "t"})
    expected = _brute_closure(axioms, ["r", "s", "t"])
    roles = [RoleExpr(n, i) for n, i in product("rst", (False, True))]
    got = {(x, y) for x in roles for y in roles if box.sub(x, y)}
    assert got == expected
