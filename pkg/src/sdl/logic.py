"""Lowering of told axioms into the reasoner's normal form.

Class axioms become general concept inclusions (GCIs) whose internalized
form ``nnf(not lhs or rhs)`` is added to every tableau node. Role axioms
become a :class:`RoleBox` holding the reflexive-transitive sub-role
closure over roles and their inverses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import UnsupportedFeature
from .model import (
    BOTTOM, INVERSE_NS, TOP, And, Axiom, Bottom, Concept, DisjointClasses, Domain,
    EquivalentClasses, EquivalentProperties, Exact, HasValue, InverseProperties,
    Max, Min, Named, Not, OneOf, Only, Or, Range, RoleExpr, Some, SubClassOf,
    SubPropertyOf, Top, TransitiveProperty,
)


@dataclass(frozen=True)
class GCI:
    lhs: Concept
    rhs: Concept
    origin: Axiom | None = None
    internal: Concept = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "internal", nnf(Or((Not(self.lhs), self.rhs))))


def to_gcis(axioms) -> list:
    """Translate class axioms into GCIs, keeping the source axiom as origin.

    Non-class axioms are ignored so a whole KB axiom list can be passed.
    """
    out = []
    for ax in axioms:
        if isinstance(ax, SubClassOf):
            out.append(GCI(ax.sub, ax.sup, ax))
        elif isinstance(ax, EquivalentClasses):
            for a, b in permutations(ax.members, 2):
                out.append(GCI(a, b, ax))
        elif isinstance(ax, DisjointClasses):
            for a, b in combinations(ax.members, 2):
                out.append(GCI(a, Not(b), ax))
        elif isinstance(ax, Domain):
            out.append(GCI(Some(ax.role, TOP), ax.concept, ax))
        elif isinstance(ax, Range):
            out.append(GCI(TOP, Only(ax.role, ax.concept), ax))
    return out


def _check_tier(c: Concept):
    if isinstance(c, OneOf):
        raise UnsupportedFeature("nominal", "ObjectOneOf is parse-only")
    if isinstance(c, HasValue):
        raise UnsupportedFeature("nominal", "ObjectHasValue is parse-only")


def nnf(c: Concept) -> Concept:
    """Negation normal form.

    Negation is pushed onto named classes, exact cardinalities are split into
    min/max pairs, nested conjunctions and disjunctions are flattened, and
    trivial restrictions (``min 0``) become ``owl:Thing``.
    """
    return _nnf(c, False)


def _flat(cls, parts):
    out = []
    for p in parts:
        if isinstance(p, cls):
            out.extend(p.operands)
        else:
            out.append(p)
    return cls(out) if len(out) > 1 else out[0]


def _nnf(c: Concept, neg: bool) -> Concept:
    _check_tier(c)
    if isinstance(c, Named):
        return Not(c) if neg else c
    if isinstance(c, Top):
        return BOTTOM if neg else TOP
    if isinstance(c, Bottom):
        return TOP if neg else BOTTOM
    if isinstance(c, Not):
        return _nnf(c.operand, not neg)
    if isinstance(c, And):
        parts = [_nnf(o, neg) for o in c.operands]
        return _flat(Or if neg else And, parts)
    if isinstance(c, Or):
        parts = [_nnf(o, neg) for o in c.operands]
        return _flat(And if neg else Or, parts)
    if isinstance(c, Some):
        f = _nnf(c.filler, neg)
        return Only(c.role, f) if neg else Some(c.role, f)
    if isinstance(c, Only):
        f = _nnf(c.filler, neg)
        return Some(c.role, f) if neg else Only(c.role, f)
    if isinstance(c, Min):
        if not neg:
            return TOP if c.n == 0 else c
        return BOTTOM if c.n == 0 else Max(c.n - 1, c.role)
    if isinstance(c, Max):
        return Min(c.n + 1, c.role) if neg else c
    if isinstance(c, Exact):
        if neg:
            if c.n == 0:
                return Min(1, c.role)
            return Or((Max(c.n - 1, c.role), Min(c.n + 1, c.role)))
        if c.n == 0:
            return Max(0, c.role)
        return And((Min(c.n, c.role), Max(c.n, c.role)))
    raise TypeError(f"not a class expression: {c!r}")


def negate(c: Concept) -> Concept:
    """nnf of the complement of ``c``."""
    return _nnf(c, True)


@dataclass
class RoleBox:
    roles: frozenset
    supers: dict
    transitive: frozenset
    inverse_map: dict

    def sub(self, r: RoleExpr, s: RoleExpr) -> bool:
        """True iff r is a (reflexive-transitive) sub-role of s."""
        if r == s:
            return True
        return s in self.supers.get(r, ())

    def super_roles(self, r: RoleExpr) -> frozenset:
        return self.supers.get(r, frozenset((r,)))

    def is_transitive(self, r: RoleExpr) -> bool:
        return r in self.transitive

    def is_simple(self, r: RoleExpr) -> bool:
        """No transitive role is a sub-role of ``r``."""
        return not any(self.sub(t, r) for t in self.transitive)

    def closure_pairs(self) -> set:
        return {(r, s) for r, sups in self.supers.items() for s in sups}

    def inverse_name(self, name: str) -> str:
        return self.inverse_map.get(name, INVERSE_NS + name)


def role_closure(axioms, extra_roles=()) -> RoleBox:
    """Close the asserted role hierarchy.

    ``extra_roles`` adds role names that appear only inside class
    expressions so every role has at least its identity pair.
    """
    names = set(extra_roles)
    pairs = set()
    trans = set()
    inverse_map = {}

    def add(r, s):
        pairs.add((r, s))
        pairs.add((r.inv(), s.inv()))

    for ax in axioms:
        if isinstance(ax, SubPropertyOf):
            names |= {ax.sub.name, ax.sup.name}
            add(ax.sub, ax.sup)
        elif isinstance(ax, EquivalentProperties):
            for a, b in permutations(ax.members, 2):
                names |= {a.name, b.name}
                add(a, b)
        elif isinstance(ax, InverseProperties):
            a, b = ax.first, ax.second
            names |= {a.name, b.name}
            add(a, b.inv())
            add(b.inv(), a)
            if not a.inverted and not b.inverted:
                inverse_map.setdefault(a.name, b.name)
                inverse_map.setdefault(b.name, a.name)
        elif isinstance(ax, TransitiveProperty):
            names.add(ax.role.name)
            trans.add(ax.role)
            trans.add(ax.role.inv())

    nodes = sorted({RoleExpr(n, inv) for n in names for inv in (False, True)})
    supers = {r: {r} for r in nodes}
    for r, s in pairs:
        supers[r].add(s)
    # Warshall over a small role set
    for k in nodes:
        for r in nodes:
            if k in supers[r]:
                supers[r] |= supers[k]
    frozen = {r: frozenset(s) for r, s in supers.items()}
    # a role equivalent to a transitive role is transitive too
    for t in list(trans):
        for r in nodes:
            if t in frozen[r] and r in frozen[t]:
                trans.add(r)
                trans.add(r.inv())
    for n in names:
        inverse_map.setdefault(n, INVERSE_NS + n)
    return RoleBox(frozenset(nodes), frozen, frozenset(trans), inverse_map)


def role_axioms(axioms) -> list:
    return [a for a in axioms if isinstance(a, (SubPropertyOf, EquivalentProperties,
                                                InverseProperties, TransitiveProperty))]
