"""Tableau decision procedure for SHIN (no nominals, unqualified numbers).

Completion graphs are trees of blockable nodes hanging off root nodes
(ABox individuals, or the single query node). Every label entry carries a
dependency set: branch-point ids (positive ints) plus provenance tags
(negative ints naming the source axiom). Dependency sets drive backjumping
on clashes and are reported back as the clash provenance.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ResourceLimit, UnsupportedFeature
from .logic import nnf
from .model import (
    BOTTOM, TOP, And, Bottom, ClassAssertion, Concept, Max, Min, Named, Not, Only, Or,
    PropertyAssertion, RoleExpr, Some, Top, subconcepts,
)

DEFAULT_MAX_NODES = 100_000

COMPLEMENT = "complement pair"
BOTTOM_CLASH = "⊥ in label"
CARDINALITY = "cardinality conflict"

EMPTY = frozenset()


def default_max_nodes() -> int:
    env = os.environ.get("SDL_MAX_NODES")
    return int(env) if env else DEFAULT_MAX_NODES


@dataclass
class Clash:
    kind: str
    node: int
    concept: Concept | None
    deps: frozenset

    def branch_deps(self) -> frozenset:
        return frozenset(d for d in self.deps if d > 0)


class _ClashFound(Exception):
    def __init__(self, clash: Clash):
        self.clash = clash


@dataclass
class SatResult:
    satisfiable: bool
    witness: "CompletionGraph | None" = None
    clash: Clash | None = None
    axioms: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "Satisfiable" if self.satisfiable else "Unsatisfiable"

    @property
    def clash_kind(self) -> str | None:
        return self.clash.kind if self.clash else None

    def __bool__(self):
        return self.satisfiable


class CompletionGraph:
    """Mutable tableau state; copied wholesale at each branch point."""

    def __init__(self):
        self.labels = {}
        self.parent = {}
        self.children = {}
        self.out = {}
        self.into = {}
        self.neq = {}
        self.roots = []
        self.names = {}
        self.next_id = 0
        self.dirty = set()     # nodes whose label or edges changed since last visit
        self.deferred = set()  # blocked nodes whose generating rules are pending

    def copy(self) -> "CompletionGraph":
        g = CompletionGraph.__new__(CompletionGraph)
        g.labels = {n: dict(lab) for n, lab in self.labels.items()}
        g.parent = dict(self.parent)
        g.children = {n: list(c) for n, c in self.children.items()}
        g.out = {n: {m: dict(lab) for m, lab in e.items()} for n, e in self.out.items()}
        g.into = {n: set(s) for n, s in self.into.items()}
        g.neq = dict(self.neq)
        g.roots = list(self.roots)
        g.names = dict(self.names)
        g.next_id = self.next_id
        g.dirty = set(self.dirty)
        g.deferred = set(self.deferred)
        return g

    @property
    def nodes(self):
        return sorted(self.labels)

    def is_root(self, x) -> bool:
        return self.parent.get(x) is None

    def new_node(self, parent=None, name=None) -> int:
        x = self.next_id
        self.next_id += 1
        self.labels[x] = {}
        self.parent[x] = parent
        self.children[x] = []
        self.out[x] = {}
        self.into[x] = set()
        if parent is None:
            self.roots.append(x)
        else:
            self.children[parent].append(x)
        if name is not None:
            self.names[x] = name
        self.dirty.add(x)
        return x

    def edge_roles(self, a, b) -> frozenset:
        return frozenset(self.out.get(a, {}).get(b, ()))

    def distinct(self, a, b):
        return self.neq.get(frozenset((a, b)))

    def prune(self, x):
        for c in list(self.children.get(x, ())):
            self.prune(c)
        for m in list(self.out[x]):
            self.into[m].discard(x)
        for m in list(self.into[x]):
            self.out[m].pop(x, None)
        p = self.parent[x]
        if p is not None and p in self.children:
            self.children[p] = [c for c in self.children[p] if c != x]
        if x in self.roots:
            self.roots.remove(x)
        for pair in [k for k in self.neq if x in k]:
            del self.neq[pair]
        for table in (self.labels, self.parent, self.children, self.out, self.into):
            table.pop(x, None)
        self.names.pop(x, None)
        self.dirty.discard(x)
        self.deferred.discard(x)


class Tableau:
    """One satisfiability run over a fixed TBox/RBox."""

    def __init__(self, gcis, rbox, max_nodes=None):
        self.rbox = rbox
        self.max_nodes = max_nodes or default_max_nodes()
        self.gci_items = []
        self.unfold = {}   # class name -> [(concept, deps)] added when the name appears
        self.domains = []  # (role, concept, deps) added when an edge on role exists
        for i, gci in enumerate(gcis):
            tag = frozenset((-(i + 1),))
            if not self._absorb(gci.lhs, gci.rhs, tag) and gci.internal != TOP:
                self.gci_items.append((gci.internal, tag))
        self.gcis = gcis
        self.created = 0
        self.changed = False
        self.next_branch = 1
        self._trans_cache = {}

    def _absorb(self, lhs, rhs, tag) -> bool:
        """Turn ``lhs <= rhs`` into a triggered rule where possible.

        Named left sides are unfolded lazily, conjunctions are absorbed into
        one named conjunct, disjunctions split, and ``r some owl:Thing``
        becomes a domain rule. Returns False when the GCI must stay global.
        """
        if isinstance(lhs, Named):
            self.unfold.setdefault(lhs.name, []).append((nnf(rhs), tag))
            return True
        if isinstance(lhs, And):
            for k, o in enumerate(lhs.operands):
                if isinstance(o, Named):
                    rest = lhs.operands[:k] + lhs.operands[k + 1:]
                    rest = rest[0] if len(rest) == 1 else And(rest)
                    self.unfold.setdefault(o.name, []).append((nnf(Or((Not(rest), rhs))), tag))
                    return True
            return False
        if isinstance(lhs, Or):
            if all(isinstance(o, (Named, And, Or)) or self._domain_like(o) for o in lhs.operands):
                # all-or-nothing: try each part on a scratch copy first
                saved = ({k: list(v) for k, v in self.unfold.items()}, list(self.domains))
                if all(self._absorb(o, rhs, tag) for o in lhs.operands):
                    return True
                self.unfold, self.domains = saved
            return False
        if self._domain_like(lhs):
            self.domains.append((lhs.role, nnf(rhs), tag))
            return True
        return False

    @staticmethod
    def _domain_like(c) -> bool:
        return (isinstance(c, Some) and isinstance(c.filler, Top)) or \
            (isinstance(c, Min) and c.n == 1)

    # -- label helpers ----------------------------------------------------
    def has(self, g, x, c) -> bool:
        return isinstance(c, Top) or c in g.labels[x]

    def add(self, g, x, c, deps) -> bool:
        if isinstance(c, Top):
            return False
        lab = g.labels[x]
        if c in lab:
            return False
        lab[c] = deps
        if isinstance(c, Bottom):
            raise _ClashFound(Clash(BOTTOM_CLASH, x, c, deps))
        if isinstance(c, Named):
            other = lab.get(Not(c))
            if other is not None:
                raise _ClashFound(Clash(COMPLEMENT, x, c, deps | other))
        elif isinstance(c, Not):
            other = lab.get(c.operand)
            if other is not None:
                raise _ClashFound(Clash(COMPLEMENT, x, c.operand, deps | other))
        g.dirty.add(x)
        self.changed = True
        return True

    def create(self, g, parent=None, name=None) -> int:
        self.created += 1
        if self.created > self.max_nodes:
            raise ResourceLimit("maxNodes", self.max_nodes)
        x = g.new_node(parent, name)
        for c, d in self.gci_items:
            self.add(g, x, c, d)
        return x

    def add_edge(self, g, a, b, r: RoleExpr, deps):
        # keep tree edges pointing parent -> child
        if g.parent.get(a) == b and b is not None:
            a, b, r = b, a, r.inv()
        lab = g.out[a].setdefault(b, {})
        g.into[b].add(a)
        if r not in lab:
            lab[r] = deps
            g.dirty.update((a, b))
            self.changed = True

    def neighbours(self, g, x, r: RoleExpr) -> dict:
        """r-neighbours of x mapped to the deps of the justifying edge."""
        sub = self.rbox.sub
        found = {}
        for y, lab in g.out[x].items():
            for s, d in lab.items():
                if sub(s, r):
                    found.setdefault(y, d)
                    break
        for y in g.into[x]:
            for s, d in g.out[y][x].items():
                if sub(s.inv(), r):
                    found.setdefault(y, d)
                    break
        return found

    def transitive_subs(self, r: RoleExpr):
        hit = self._trans_cache.get(r)
        if hit is None:
            hit = [t for t in sorted(self.rbox.transitive) if self.rbox.sub(t, r)]
            self._trans_cache[r] = hit
        return hit

    # -- blocking ---------------------------------------------------------
    def blocking(self, g) -> dict:
        """Map node -> 'direct' | 'indirect' for blocked nodes."""
        status = {}
        keys = {x: frozenset(lab) for x, lab in g.labels.items()}
        order = []
        stack = sorted(g.roots, reverse=True)
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(sorted(g.children[x], reverse=True))
        for x in order:
            p = g.parent[x]
            if p is None:
                continue
            if p in status:
                status[x] = "indirect"
                continue
            lx, lp, ex = keys[x], keys[p], g.edge_roles(p, x)
            y = p
            while g.parent.get(y) is not None:
                yp = g.parent[y]
                if keys[y] == lx and keys[yp] == lp and g.edge_roles(yp, y) == ex:
                    status[x] = "direct"
                    break
                y = yp
        return status

    # -- cardinality helpers ---------------------------------------------
    def distinct_clique(self, g, nodes, size):
        """Some ``size`` pairwise-distinct nodes among ``nodes`` (with deps), or None."""
        nodes = sorted(nodes)
        if size <= 0:
            return [], EMPTY
        if len(nodes) < size:
            return None

        def extend(chosen, deps, start):
            if len(chosen) == size:
                return chosen, deps
            for i in range(start, len(nodes)):
                y = nodes[i]
                extra = deps
                ok = True
                for z in chosen:
                    d = g.distinct(y, z)
                    if d is None:
                        ok = False
                        break
                    extra = extra | d
                if ok:
                    hit = extend(chosen + [y], extra, i + 1)
                    if hit:
                        return hit
            return None

        return extend([], EMPTY, 0)

    # -- deterministic expansion ------------------------------------------
    def expand(self, g):
        """Apply non-branching rules to a fixpoint. Raises _ClashFound.

        Only nodes that changed since their last visit are revisited, plus
        blocked nodes whose generating rules were postponed and that are no
        longer blocked.
        """
        while True:
            status = self.blocking(g)
            work = set(g.dirty)
            work.update(x for x in g.deferred if x not in status)
            if not work:
                return status
            g.dirty.clear()
            for x in sorted(work):
                if x not in g.labels:
                    continue
                st = status.get(x)
                if st is not None:
                    g.deferred.add(x)
                    if st == "indirect":
                        continue
                else:
                    g.deferred.discard(x)
                self.expand_node(g, x, st is None)

    def expand_node(self, g, x, generating):
        lab = g.labels[x]
        for c, d in list(lab.items()):
            if x not in g.labels:
                return
            if isinstance(c, Named):
                for rhs, t in self.unfold.get(c.name, ()):
                    self.add(g, x, rhs, d | t)
            elif isinstance(c, And):
                for o in c.operands:
                    self.add(g, x, o, d)
            elif isinstance(c, Or):
                self.propagate_or(g, x, c, d)
            elif isinstance(c, Only):
                for y, ed in self.neighbours(g, x, c.role).items():
                    self.add(g, y, c.filler, d | ed)
                for t in self.transitive_subs(c.role):
                    for y, ed in self.neighbours(g, x, t).items():
                        self.add(g, y, Only(t, c.filler), d | ed)
            elif isinstance(c, Max):
                nb = self.neighbours(g, x, c.role)
                if len(nb) > c.n:
                    hit = self.distinct_clique(g, nb, c.n + 1)
                    if hit is not None:
                        members, nd = hit
                        deps = d | nd
                        for y in members:
                            deps |= nb[y]
                        raise _ClashFound(Clash(CARDINALITY, x, c, deps))
        for r, rhs, t in self.domains:
            if x not in g.labels:
                return
            nb = self.neighbours(g, x, r)
            if nb:
                self.add(g, x, rhs, next(iter(nb.values())) | t)
        if not generating:
            return
        for c, d in list(lab.items()):
            if x not in g.labels:
                return
            if isinstance(c, Some):
                nb = self.neighbours(g, x, c.role)
                if not any(self.has(g, y, c.filler) for y in nb):
                    y = self.create(g, x)
                    self.add_edge(g, x, y, c.role, d)
                    self.add(g, y, c.filler, d)
                    self.changed = True
            elif isinstance(c, Min):
                nb = self.neighbours(g, x, c.role)
                if self.distinct_clique(g, nb, c.n) is None:
                    fresh = []
                    for _ in range(c.n):
                        y = self.create(g, x)
                        self.add_edge(g, x, y, c.role, d)
                        fresh.append(y)
                    for a, b in combinations(fresh, 2):
                        g.neq[frozenset((a, b))] = d
                    self.changed = True

    def propagate_or(self, g, x, c, d):
        lab = g.labels[x]
        open_ = []
        deps = d
        for o in c.operands:
            if self.has(g, x, o):
                return
            if isinstance(o, Bottom):
                continue
            if isinstance(o, Named) and Not(o) in lab:
                deps = deps | lab[Not(o)]
            elif isinstance(o, Not) and o.operand in lab:
                deps = deps | lab[o.operand]
            else:
                open_.append(o)
                if len(open_) > 1:
                    return
        if not open_:
            raise _ClashFound(Clash(COMPLEMENT, x, c, deps))
        self.add(g, x, open_[0], deps)

    # -- branching ---------------------------------------------------------
    def find_branch(self, g, status):
        """Next branching rule as (base deps, [alternative callables])."""
        for x in sorted(g.labels):
            if status.get(x) == "indirect":
                continue
            lab = g.labels[x]
            for c, d in lab.items():
                if isinstance(c, Max):
                    nb = self.neighbours(g, x, c.role)
                    if len(nb) > c.n:
                        pairs = [(y, z) for y, z in combinations(sorted(nb), 2)
                                 if g.distinct(y, z) is None]
                        base = d.union(*nb.values())
                        return base, [("merge", x, y, z) for y, z in pairs]
            for c, d in lab.items():
                if isinstance(c, Or):
                    if any(self.has(g, x, o) for o in c.operands):
                        continue
                    ops = sorted(c.operands, key=_generation_cost)
                    return d, [("add", x, o) for o in ops]
        return None

    def apply(self, g, alt, deps):
        if alt[0] == "add":
            _, x, c = alt
            self.add(g, x, c, deps)
        else:
            _, x, y, z = alt
            self.merge(g, x, y, z, deps)

    def merge(self, g, x, y, z, deps):
        """Merge one of the r-neighbours y, z of x into the other."""
        keep, gone = z, y
        if g.is_root(y) and not g.is_root(z):
            keep, gone = y, z
        elif g.is_root(z) and not g.is_root(y):
            keep, gone = z, y
        elif g.parent.get(x) in (y, z):
            keep = g.parent[x]
            gone = z if keep == y else y
        else:
            keep, gone = min(y, z), max(y, z)
        for c, d in list(g.labels[gone].items()):
            self.add(g, keep, c, d | deps)
        for pair, d in list(g.neq.items()):
            if gone in pair:
                (w,) = pair - {gone}
                if w == keep:
                    raise _ClashFound(Clash(CARDINALITY, x, None, d | deps))
                g.neq[frozenset((keep, w))] = d | deps
        for w in list(g.into[gone]):
            if w not in g.labels:
                continue
            for s, d in list(g.out[w][gone].items()):
                self.add_edge(g, w, keep, s, d | deps)
        for w, lab in list(g.out[gone].items()):
            if g.parent.get(w) == gone:
                continue
            for s, d in list(lab.items()):
                self.add_edge(g, keep, w, s, d | deps)
        g.prune(gone)
        # new inequalities at keep can complete a clique for any neighbour
        g.dirty.update((x, keep))
        g.dirty.update(g.out[keep])
        g.dirty.update(g.into[keep])
        self.changed = True

    # -- driver -----------------------------------------------------------
    def run(self, g) -> SatResult:
        stack = []
        while True:
            try:
                status = self.expand(g)
                branch = self.find_branch(g, status)
                if branch is None:
                    return SatResult(True, witness=g)
                base, alts = branch
                if not alts:
                    raise AssertionError("branching rule without alternatives")
                bid = self.next_branch
                self.next_branch += 1
                stack.append([g.copy(), base, alts, 0, bid, EMPTY])
                self.apply(g, alts[0], base | {bid})
                continue
            except _ClashFound as found:
                clash = found.clash
            # backtrack
            deps = clash.deps
            while True:
                if not stack:
                    return SatResult(False, clash=Clash(clash.kind, clash.node, clash.concept, deps))
                frame = stack[-1]
                snap, base, alts, idx, bid, acc = frame
                if bid not in deps:
                    stack.pop()
                    continue
                acc = acc | (deps - {bid})
                frame[5] = acc
                idx += 1
                frame[3] = idx
                if idx < len(alts):
                    g = snap.copy()
                    try:
                        self.apply(g, alts[idx], base | {bid})
                    except _ClashFound as found:
                        deps = found.clash.deps
                        clash = found.clash
                        continue
                    break
                stack.pop()
                deps = acc | base


def _generation_cost(c) -> int:
    """Order disjuncts so alternatives that grow the graph are tried last."""
    if isinstance(c, Some):
        return 3
    if isinstance(c, Min):
        return 3 + c.n
    if isinstance(c, (And, Or)):
        return max(_generation_cost(o) for o in c.operands)
    return 0


def _check_supported(concepts, rbox):
    for c in concepts:
        for s in subconcepts(c):
            if isinstance(s, (Min, Max)) and not rbox.is_simple(s.role):
                raise UnsupportedFeature("non-simple role in cardinality restriction", s.role.name)


def _provenance(kb_gcis, sources, deps):
    axioms = []
    seen = set()
    for d in sorted(deps, reverse=True):
        if d >= 0:
            continue
        k = -d - 1
        ax = kb_gcis[k].origin if k < len(kb_gcis) else sources[k - len(kb_gcis)]
        if ax is not None and ax not in seen:
            seen.add(ax)
            axioms.append(ax)
    return axioms


def satisfiable(gcis, rbox, concept, max_nodes=None) -> SatResult:
    """Satisfiability of ``concept`` w.r.t. the given TBox and RBox."""
    c = nnf(concept)
    _check_supported([c] + [g.internal for g in gcis], rbox)
    t = Tableau(gcis, rbox, max_nodes)
    g = CompletionGraph()
    try:
        x = t.create(g)
        t.add(g, x, c, EMPTY)
    except _ClashFound as found:
        res = SatResult(False, clash=found.clash)
    else:
        res = t.run(g)
    if res.clash is not None:
        res.axioms = _provenance(gcis, [], res.clash.deps)
    return res


def consistent(gcis, rbox, assertions, max_nodes=None) -> SatResult:
    """Consistency of TBox + RBox + the given ABox assertions."""
    sources = list(assertions)
    concepts = [(i, nnf(a.concept)) for i, a in enumerate(sources) if isinstance(a, ClassAssertion)]
    _check_supported([c for _, c in concepts] + [g.internal for g in gcis], rbox)
    t = Tableau(gcis, rbox, max_nodes)
    g = CompletionGraph()
    ids = {}
    names = set()
    for a in sources:
        if isinstance(a, ClassAssertion):
            names.add(a.individual)
        elif isinstance(a, PropertyAssertion):
            names |= {a.subject, a.object}
    try:
        for name in sorted(names):
            ids[name] = t.create(g, name=name)
        if not names:
            t.create(g)
        base = len(gcis)
        for i, a in enumerate(sources):
            tag = frozenset((-(base + i + 1),))
            if isinstance(a, PropertyAssertion):
                t.add_edge(g, ids[a.subject], ids[a.object], a.role, tag)
        for i, c in concepts:
            t.add(g, ids[sources[i].individual], c, frozenset((-(len(gcis) + i + 1),)))
    except _ClashFound as found:
        res = SatResult(False, clash=found.clash)
    else:
        res = t.run(g)
    if res.clash is not None:
        res.axioms = _provenance(gcis, sources, res.clash.deps)
    return res


def is_satisfiable(kb, c: Concept, max_nodes=None) -> SatResult:
    return satisfiable(kb.gcis, kb.rbox, c, max_nodes)


def is_consistent(kb, max_nodes=None) -> SatResult:
    assertions = [a for a in kb.axioms if isinstance(a, (ClassAssertion, PropertyAssertion))]
    return consistent(kb.gcis, kb.rbox, assertions, max_nodes)


def subsumes(kb, sub: Concept, sup: Concept, max_nodes=None) -> bool:
    """True iff ``sub`` is subsumed by ``sup`` (refutation of sub and not sup)."""
    return not is_satisfiable(kb, And((sub, Not(sup))), max_nodes).satisfiable


__all__ = [
    "BOTTOM", "Clash", "CompletionGraph", "SatResult", "Tableau", "consistent",
    "is_consistent", "is_satisfiable", "satisfiable", "subsumes",
]
