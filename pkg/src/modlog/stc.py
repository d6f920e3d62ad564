"""Symmetric-transitive closure module for ``R(x,y), R(y,z) -> R(x,z)`` plus ``R(x,y) -> R(y,x)``.

R is treated as an undirected graph; the module keeps its connected
components in a union-find whose roots carry explicit member lists, and the
closure of R is the set of all pairs inside each component.
"""
from __future__ import annotations

from .datalog import Atom
from .factstore import FactSet


class Components:
    """Union-find (union by size, path halving) with member lists per root."""

    def __init__(self):
        self.parent: dict[str, str] = {}
        self.members: dict[str, list] = {}

    def __contains__(self, x):
        return x in self.parent

    def __len__(self):
        return len(self.members)

    def make(self, x):
        self.parent[x] = x
        self.members[x] = [x]

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, ra, rb):
        if len(self.members[ra]) < len(self.members[rb]):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.members[ra].extend(self.members.pop(rb))
        return ra

    def discard_component(self, root):
        for x in self.members.pop(root):
            del self.parent[x]

    def groups(self):
        return [list(m) for m in self.members.values()]

    def closure(self, predicate):
        return {Atom(predicate, (a, b)) for m in self.members.values() for a in m for b in m}


class SymmetricTransitiveModule:
    kind = "stc"

    def __init__(self, predicate: str, rules=(), counters=None):
        self.predicate = predicate
        self.rules = tuple(rules)
        self.counters = counters
        self.components = Components()
        self.pending = FactSet()  # facts of dismantled components kept alive by nonrecursive support

    def __repr__(self):
        return f"SymmetricTransitiveModule({self.predicate}, components={len(self.components)})"

    def _joins(self, n=1):
        if self.counters is not None:
            self.counters.joins(n)

    def close_edges(self, delta) -> FactSet:
        R = self.predicate
        C = self.components
        J = FactSet()
        for f in delta:
            if f.pred != R:
                continue
            u, v = f.args
            for x in (u, v):
                if x not in C:
                    C.make(x)
                    self._joins()
                    J.insert(Atom(R, (x, x)))
            ru, rv = C.find(u), C.find(v)
            if ru == rv:
                continue
            U, V = C.members[ru], C.members[rv]
            for a in U:
                for b in V:
                    self._joins()
                    J.insert(Atom(R, (a, b)))
                    J.insert(Atom(R, (b, a)))
            C.union(ru, rv)
        return J

    def add(self, i_pos, i_neg, delta) -> FactSet:
        return self.close_edges(delta).minus(i_pos)

    def delete(self, i_pos, i_neg, delta, nr) -> FactSet:
        R = self.predicate
        C = self.components
        J = FactSet()
        for f in delta:
            if f.pred != R:
                continue
            u, v = f.args
            if u not in C or v not in C:
                continue
            root = C.find(u)
            if C.find(v) != root:
                continue
            U = C.members[root]
            for a in U:
                for b in U:
                    self._joins()
                    g = Atom(R, (a, b))
                    if nr.get(g, 0) == 0:
                        J.insert(g)
                    else:
                        self.pending.insert(g)
            C.discard_component(root)
        return J.minus(delta)

    def red(self, i_pos, i_neg, delta) -> FactSet:
        J = self.close_edges(self.pending).intersect(delta)
        self.pending = FactSet()
        return J

    def diff(self, i_pos, d_pos, d_neg) -> FactSet:
        return FactSet()
