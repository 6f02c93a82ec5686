"""Brute-force finite model enumeration, used as a testing oracle.

Interpretations over domains {0..k-1} are enumerated exhaustively. To keep
that affordable the first (up to ``PARALLEL_BITS``) boolean atoms -- role
edges first, then class memberships -- are evaluated bit-parallel: every
extension is a Python int whose bit ``i`` answers the question for the
``i``-th assignment of those atoms. The remaining atoms are looped over.

Nothing here shares code with the tableau: concepts are evaluated directly
from their set semantics, and axioms are checked as written (no NNF, no
GCI translation).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ResourceLimit, UnsupportedFeature
from .model import (
    And, Bottom, ClassAssertion, Concept, DisjointClasses, Domain, EquivalentClasses,
    EquivalentProperties, Exact, HasValue, InverseProperties, Max, Min, Named, Not,
    OneOf, Only, Or, PropertyAssertion, Range, RoleExpr, Some, SubClassOf, SubPropertyOf,
    Top, TransitiveProperty, class_names, role_names,
)

PARALLEL_BITS = 20
MAX_LOOP_BITS = 16


@dataclass(frozen=True)
class Interpretation:
    size: int
    classes: dict
    roles: dict

    def role_pairs(self, r: RoleExpr) -> frozenset:
        pairs = self.roles.get(r.name, frozenset())
        return frozenset((b, a) for a, b in pairs) if r.inverted else pairs

    def extension(self, c: Concept) -> frozenset:
        """Plain set-based evaluation (slow, independent of the bit tricks)."""
        dom = range(self.size)
        if isinstance(c, Top):
            return frozenset(dom)
        if isinstance(c, Bottom):
            return frozenset()
        if isinstance(c, Named):
            return self.classes.get(c.name, frozenset())
        if isinstance(c, Not):
            return frozenset(dom) - self.extension(c.operand)
        if isinstance(c, And):
            out = frozenset(dom)
            for o in c.operands:
                out &= self.extension(o)
            return out
        if isinstance(c, Or):
            out = frozenset()
            for o in c.operands:
                out |= self.extension(o)
            return out
        pairs = self.role_pairs(c.role) if hasattr(c, "role") else None
        succ = {d: {e for a, e in pairs if a == d} for d in dom} if pairs is not None else {}
        if isinstance(c, Some):
            f = self.extension(c.filler)
            return frozenset(d for d in dom if succ[d] & f)
        if isinstance(c, Only):
            f = self.extension(c.filler)
            return frozenset(d for d in dom if succ[d] <= f)
        if isinstance(c, Min):
            return frozenset(d for d in dom if len(succ[d]) >= c.n)
        if isinstance(c, Max):
            return frozenset(d for d in dom if len(succ[d]) <= c.n)
        if isinstance(c, Exact):
            return frozenset(d for d in dom if len(succ[d]) == c.n)
        raise UnsupportedFeature("nominal", "the model enumerator has no individuals")

    def satisfies(self, axiom) -> bool:
        ext = self.extension
        if isinstance(axiom, SubClassOf):
            return ext(axiom.sub) <= ext(axiom.sup)
        if isinstance(axiom, EquivalentClasses):
            exts = [ext(m) for m in axiom.members]
            return all(e == exts[0] for e in exts)
        if isinstance(axiom, DisjointClasses):
            exts = [ext(m) for m in axiom.members]
            return all(not (a & b) for i, a in enumerate(exts) for b in exts[i + 1:])
        if isinstance(axiom, Domain):
            return {a for a, _ in self.role_pairs(axiom.role)} <= ext(axiom.concept)
        if isinstance(axiom, Range):
            return {b for _, b in self.role_pairs(axiom.role)} <= ext(axiom.concept)
        if isinstance(axiom, SubPropertyOf):
            return self.role_pairs(axiom.sub) <= self.role_pairs(axiom.sup)
        if isinstance(axiom, EquivalentProperties):
            ps = [self.role_pairs(m) for m in axiom.members]
            return all(p == ps[0] for p in ps)
        if isinstance(axiom, InverseProperties):
            return self.role_pairs(axiom.first) == self.role_pairs(axiom.second.inv())
        if isinstance(axiom, TransitiveProperty):
            p = self.role_pairs(axiom.role)
            return all((a, d) in p for a, b in p for c, d in p if b == c)
        return True


@lru_cache(maxsize=None)
def _pattern(j: int, bits: int) -> int:
    """Int whose bit i is bit j of i, for i < 2**bits."""
    width = 1 << j
    block = ((1 << width) - 1) << width
    length = width << 1
    total = 1 << bits
    while length < total:
        block |= block << length
        length <<= 1
    return block


class _Evaluator:
    def __init__(self, k, role_bits, class_bits, full):
        self.k = k
        self.role_bits = role_bits    # name -> [[bits for (d, e)]]
        self.class_bits = class_bits  # name -> [bits for d]
        self.full = full

    def rel(self, r: RoleExpr, d, e):
        m = self.role_bits.get(r.name)
        if m is None:
            return 0
        return m[e][d] if r.inverted else m[d][e]

    def at_least(self, r, d, n):
        if n <= 0:
            return self.full
        dp = [self.full] + [0] * n
        for e in range(self.k):
            x = self.rel(r, d, e)
            for j in range(n, 0, -1):
                dp[j] |= dp[j - 1] & x
        return dp[n]

    def ext(self, c: Concept) -> list:
        k, full = self.k, self.full
        if isinstance(c, Top):
            return [full] * k
        if isinstance(c, Bottom):
            return [0] * k
        if isinstance(c, Named):
            return list(self.class_bits.get(c.name, [0] * k))
        if isinstance(c, Not):
            return [full ^ v for v in self.ext(c.operand)]
        if isinstance(c, And):
            out = [full] * k
            for o in c.operands:
                out = [a & b for a, b in zip(out, self.ext(o))]
            return out
        if isinstance(c, Or):
            out = [0] * k
            for o in c.operands:
                out = [a | b for a, b in zip(out, self.ext(o))]
            return out
        if isinstance(c, Some):
            f = self.ext(c.filler)
            out = []
            for d in range(k):
                v = 0
                for e in range(k):
                    v |= self.rel(c.role, d, e) & f[e]
                out.append(v)
            return out
        if isinstance(c, Only):
            f = self.ext(c.filler)
            out = []
            for d in range(k):
                bad = 0
                for e in range(k):
                    bad |= self.rel(c.role, d, e) & (full ^ f[e])
                out.append(full ^ bad)
            return out
        if isinstance(c, Min):
            return [self.at_least(c.role, d, c.n) for d in range(k)]
        if isinstance(c, Max):
            return [full ^ self.at_least(c.role, d, c.n + 1) for d in range(k)]
        if isinstance(c, Exact):
            return [self.at_least(c.role, d, c.n) & ~self.at_least(c.role, d, c.n + 1)
                    for d in range(k)]
        if isinstance(c, (OneOf, HasValue)):
            raise UnsupportedFeature("nominal", "the model enumerator has no individuals")
        raise TypeError(f"not a class expression: {c!r}")

    def holds(self, axiom) -> int:
        """Bitmask of assignments satisfying ``axiom``."""
        k, full = self.k, self.full
        ok = full
        if isinstance(axiom, SubClassOf):
            a, b = self.ext(axiom.sub), self.ext(axiom.sup)
            for d in range(k):
                ok &= ~a[d] | b[d]
        elif isinstance(axiom, EquivalentClasses):
            exts = [self.ext(m) for m in axiom.members]
            for other in exts[1:]:
                for d in range(k):
                    ok &= ~(exts[0][d] ^ other[d])
        elif isinstance(axiom, DisjointClasses):
            exts = [self.ext(m) for m in axiom.members]
            for i, a in enumerate(exts):
                for b in exts[i + 1:]:
                    for d in range(k):
                        ok &= ~(a[d] & b[d])
        elif isinstance(axiom, (Domain, Range)):
            c = self.ext(axiom.concept)
            for d in range(k):
                for e in range(k):
                    if isinstance(axiom, Domain):
                        ok &= ~self.rel(axiom.role, d, e) | c[d]
                    else:
                        ok &= ~self.rel(axiom.role, d, e) | c[e]
        elif isinstance(axiom, (SubPropertyOf, EquivalentProperties, InverseProperties)):
            if isinstance(axiom, SubPropertyOf):
                pairs = [(axiom.sub, axiom.sup)]
            elif isinstance(axiom, EquivalentProperties):
                m = axiom.members
                pairs = [(a, b) for a in m for b in m if a != b]
            else:
                a, b = axiom.first, axiom.second.inv()
                pairs = [(a, b), (b, a)]
            for r, s in pairs:
                for d in range(k):
                    for e in range(k):
                        ok &= ~self.rel(r, d, e) | self.rel(s, d, e)
        elif isinstance(axiom, TransitiveProperty):
            r = axiom.role
            for d in range(k):
                for e in range(k):
                    de = self.rel(r, d, e)
                    for f in range(k):
                        ok &= ~(de & self.rel(r, e, f)) | self.rel(r, d, f)
        return ok & full


def _tbox(axioms):
    return [a for a in axioms if not isinstance(a, (ClassAssertion, PropertyAssertion))
            and type(a).__name__ not in ("Declaration", "AnnotationAssertion", "Import")]


def _signature(axioms, c):
    classes, roles = set(class_names(c)), set(role_names(c))
    for ax in axioms:
        for part in vars(ax).values():
            items = part if isinstance(part, tuple) else (part,)
            for it in items:
                if isinstance(it, RoleExpr):
                    roles.add(it.name)
                elif isinstance(it, Concept):
                    classes |= class_names(it)
                    roles |= role_names(it)
    return sorted(classes), sorted(roles)


def iter_models(axioms, c: Concept, max_domain: int, min_domain: int = 1):
    """Yield every model (domain sizes ascending) of ``axioms`` where ``c`` is non-empty."""
    axioms = _tbox(axioms)
    classes, roles = _signature(axioms, c)
    for k in range(min_domain, max_domain + 1):
        atoms = [("r", r, d, e) for r in roles for d in range(k) for e in range(k)]
        atoms += [("c", a, d, None) for a in classes for d in range(k)]
        bits = min(len(atoms), PARALLEL_BITS)
        loop = len(atoms) - bits
        if loop > MAX_LOOP_BITS:
            raise ResourceLimit("oracle signature atoms", bits + MAX_LOOP_BITS)
        full = (1 << (1 << bits)) - 1
        values = [_pattern(j, bits) for j in range(bits)]
        for tail in product((0, full), repeat=loop):
            vals = values + list(tail)
            role_bits = {r: [[0] * k for _ in range(k)] for r in roles}
            class_bits = {a: [0] * k for a in classes}
            for atom, v in zip(atoms, vals):
                if atom[0] == "r":
                    role_bits[atom[1]][atom[2]][atom[3]] = v
                else:
                    class_bits[atom[1]][atom[2]] = v
            ev = _Evaluator(k, role_bits, class_bits, full)
            ok = full
            for ax in axioms:
                ok &= ev.holds(ax)
                if not ok:
                    break
            if not ok:
                continue
            nonempty = 0
            for v in ev.ext(c):
                nonempty |= v
            ok &= nonempty
            while ok:
                low = ok & -ok
                i = low.bit_length() - 1
                ok ^= low
                yield _decode(k, atoms, bits, i, tail)


def _decode(k, atoms, bits, index, tail):
    classes, roles = {}, {}
    for j, atom in enumerate(atoms):
        on = (index >> j) & 1 if j < bits else bool(tail[j - bits])
        kind, name, d, e = atom
        if kind == "r":
            roles.setdefault(name, set())
            if on:
                roles[name].add((d, e))
        else:
            classes.setdefault(name, set())
            if on:
                classes[name].add(d)
    return Interpretation(k, {n: frozenset(s) for n, s in classes.items()},
                          {n: frozenset(s) for n, s in roles.items()})


def _axioms_of(kb_or_axioms):
    return list(getattr(kb_or_axioms, "axioms", kb_or_axioms))


def enumerate_models(kb, c: Concept, max_domain: int, limit: int | None = None) -> list:
    """All models up to ``max_domain`` elements (at most ``limit`` of them)."""
    out = []
    for m in iter_models(_axioms_of(kb), c, max_domain):
        out.append(m)
        if limit is not None and len(out) >= limit:
            break
    return out


def find_model(kb, c: Concept, max_domain: int):
    for m in iter_models(_axioms_of(kb), c, max_domain):
        return m
    return None
