"""Classification: the inferred taxonomy over named classes."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import InconsistentKB
from .kb import told_hierarchy
from .model import BOTTOM, OWL, TOP, And, DisjointClasses, EquivalentClasses, Named, Not, SubClassOf
from .syntax import render_name
from .tableau import is_consistent, is_satisfiable, subsumes

THING = OWL + "Thing"
NOTHING = OWL + "Nothing"


@dataclass
class Taxonomy:
    groups: list
    edges: list  # [child group, parent group]
    top: int
    bottom: int
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {n: i for i, g in enumerate(self.groups) for n in g}

    def group_of(self, name: str) -> int:
        return self._index[name]

    def parents(self, name: str) -> list:
        g = self.group_of(name)
        return [self.groups[p] for c, p in self.edges if c == g]

    def ancestors(self, group: int) -> set:
        up = {}
        for c, p in self.edges:
            up.setdefault(c, []).append(p)
        seen, stack = set(), [group]
        while stack:
            for p in up.get(stack.pop(), ()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def is_below(self, a: str, b: str) -> bool:
        """True iff a's group is b's group or lies below it."""
        ga, gb = self.group_of(a), self.group_of(b)
        return ga == gb or ga == self.bottom or gb in self.ancestors(ga)

    def to_json(self, prefixes=None) -> str:
        data = {
            "groups": [[render_name(n, prefixes) for n in g] for g in self.groups],
            "edges": [list(e) for e in self.edges],
            "top": self.top,
            "bottom": self.bottom,
        }
        return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True)

    def to_text(self, prefixes=None) -> str:
        """Indented tree from owl:Thing down; the Nothing group is listed last."""
        down = {}
        for c, p in self.edges:
            if c != self.bottom:
                down.setdefault(p, []).append(c)
        lines = []

        def show(g, depth):
            lines.append("    " * depth + " = ".join(render_name(n, prefixes) for n in self.groups[g]))
            for c in sorted(down.get(g, ())):
                show(c, depth + 1)

        show(self.top, 0)
        lines.append("    " + " = ".join(render_name(n, prefixes) for n in self.groups[self.bottom]))
        return "\n".join(lines) + "\n"


def unsatisfiable_classes(kb, max_nodes=None) -> dict:
    """Named classes equivalent to owl:Nothing, mapped to their clash results."""
    out = {}
    for name in sorted(kb.signature.class_names):
        res = is_satisfiable(kb, Named(name), max_nodes)
        if not res.satisfiable:
            out[name] = res
    return out


def _ancestor_closure(graph):
    """Strict told ancestors of every node; a node is never its own ancestor."""
    closed = {}
    for a in graph:
        seen, stack = set(), list(graph[a])
        while stack:
            b = stack.pop()
            if b not in seen:
                seen.add(b)
                stack.extend(graph.get(b, ()))
        seen.discard(a)
        closed[a] = seen
    return closed


def _subsumers(kb, name, told, max_nodes):
    """Named subsumers of ``name`` (assumed satisfiable), or None if unsatisfiable.

    Candidates come from the completed root label of the satisfiability
    witness: a class missing there cannot subsume. Told ancestors and
    candidates derived without any branching need no further test.
    """
    res = is_satisfiable(kb, Named(name), max_nodes)
    if not res.satisfiable:
        return None
    g = res.witness
    root = g.roots[0]
    found = set(told.get(name, ()))
    for c, deps in g.labels[root].items():
        if not isinstance(c, Named) or c.name == name or c.name in found:
            continue
        if not any(d > 0 for d in deps) or subsumes(kb, Named(name), c, max_nodes):
            found.add(c.name)
    return found


def classify(kb, max_nodes=None, workers: int = 1) -> Taxonomy:
    """Compute the taxonomy; raises InconsistentKB for inconsistent input."""
    cons = is_consistent(kb, max_nodes)
    if not cons.satisfiable:
        raise InconsistentKB(cons)
    names = sorted(kb.signature.class_names)
    told = _ancestor_closure(told_hierarchy(kb))

    def job(n):
        return _subsumers(kb, n, told, max_nodes)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, names))
    else:
        results = [job(n) for n in names]
    sups = dict(zip(names, results))

    top_res = is_satisfiable(kb, TOP, max_nodes)
    top_label = top_res.witness.labels[top_res.witness.roots[0]]
    top_equiv = {c.name for c in top_label if isinstance(c, Named)
                 and not is_satisfiable(kb, Not(c), max_nodes).satisfiable}

    unsat = {n for n in names if sups[n] is None}
    sat = [n for n in names if n not in unsat]
    # a cyclic told hierarchy can put n among its own ancestors
    sups = {n: ((sups[n] | top_equiv) & set(sat)) - {n} for n in sat}

    # equivalence groups among satisfiable classes
    member = {}
    groups = []
    for n in sat:
        if n in member:
            continue
        grp = sorted({n} | {m for m in sups[n] if n in sups[m]})
        for m in grp:
            member[m] = len(groups)
        groups.append(grp)
    top_group = None
    for i, grp in enumerate(groups):
        if grp[0] in top_equiv:
            grp.append(THING)
            top_group = i
    if top_group is None:
        groups.append([THING])
        top_group = len(groups) - 1
    groups.append(sorted(unsat) + [NOTHING])
    bottom_group = len(groups) - 1
    for grp in groups:
        grp.sort()

    above = {i: set() for i in range(len(groups))}
    for n in sat:
        gi = member[n]
        for m in sups[n]:
            if member[m] != gi:
                above[gi].add(member[m])
    for i in range(len(groups)):
        if i not in (top_group, bottom_group):
            above[i].add(top_group)
    above[bottom_group] = set(range(len(groups))) - {bottom_group}

    edges = set()
    for i, ups in above.items():
        for j in ups:
            if not any(j in above[k] for k in ups if k != j):
                edges.add((i, j))

    order = sorted(range(len(groups)), key=lambda i: groups[i][0])
    remap = {old: new for new, old in enumerate(order)}
    return Taxonomy(
        groups=[groups[i] for i in order],
        edges=sorted((remap[a], remap[b]) for a, b in edges),
        top=remap[top_group],
        bottom=remap[bottom_group],
    )


def entails(kb, axiom, max_nodes=None) -> bool:
    """Whether ``kb`` entails a SubClassOf / EquivalentClasses / DisjointClasses axiom."""
    if isinstance(axiom, SubClassOf):
        return subsumes(kb, axiom.sub, axiom.sup, max_nodes)
    if isinstance(axiom, EquivalentClasses):
        ms = axiom.members
        return all(subsumes(kb, a, b, max_nodes) for a in ms for b in ms if a is not b)
    if isinstance(axiom, DisjointClasses):
        ms = axiom.members
        return all(not is_satisfiable(kb, And((a, b)), max_nodes).satisfiable
                   for i, a in enumerate(ms) for b in ms[i + 1:])
    raise TypeError(f"entailment check not supported for {type(axiom).__name__}")


__all__ = ["Taxonomy", "classify", "entails", "unsatisfiable_classes", "BOTTOM"]
