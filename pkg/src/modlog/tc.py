"""Transitive-closure module for a single rule ``R(x,y), R(y,z) -> R(x,z)``.

The module keeps ``external``, the R-facts handed to it from outside (other
modules, nonrecursive rules, explicit facts).  Every R-fact it derives is the
end of a chain of external facts, so closing R only needs joins where the
left-hand fact is external.
"""
from __future__ import annotations

from collections import deque

from .datalog import Atom
from .factstore import FactSet


class TransitiveModule:
    kind = "tc"

    def __init__(self, predicate: str, rules=(), counters=None):
        self.predicate = predicate
        self.rules = tuple(rules)
        self.counters = counters
        self.external = FactSet()

    def __repr__(self):
        return f"TransitiveModule({self.predicate}, |X|={len(self.external)})"

    def _joins(self, n=1):
        if self.counters is not None:
            self.counters.joins(n)

    def _own(self, delta):
        R = self.predicate
        return [f for f in delta if f.pred == R]

    def add(self, i_pos, i_neg, delta) -> FactSet:
        R = self.predicate
        d = self._own(delta)
        X = self.external
        X.update(d)
        J = FactSet()
        queue = deque(d)
        for f in d:
            u, v = f.args
            for g in i_pos.lookup(R, 0, v):
                if g in delta:
                    continue
                self._joins()
                h = Atom(R, (u, g.args[1]))
                # the guard also applies here so that J never repeats facts of i_pos
                if h not in i_pos and J.insert(h):
                    queue.append(h)
        while queue:
            v, w = queue.popleft().args
            for g in X.lookup(R, 1, v):
                self._joins()
                h = Atom(R, (g.args[0], w))
                if h not in i_pos and J.insert(h):
                    queue.append(h)
        return J

    def delete(self, i_pos, i_neg, delta, nr) -> FactSet:
        R = self.predicate
        d = self._own(delta)
        X = self.external
        J = FactSet()
        seen = set(d)
        queue = deque(d)
        for f in d:
            u, v = f.args
            for g in list(i_pos.lookup(R, 0, v)):
                if g in seen:
                    continue
                self._joins()
                h = Atom(R, (u, g.args[1]))
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
                if nr.get(h, 0) == 0:
                    J.insert(h)
        while queue:
            v, w = queue.popleft().args
            for g in X.lookup(R, 1, v):
                self._joins()
                h = Atom(R, (g.args[0], w))
                if h in i_pos and h not in seen:
                    seen.add(h)
                    queue.append(h)
                    if nr.get(h, 0) == 0:
                        J.insert(h)
        # X shrinks only now: deleted pairs with both facts in delta must still be joined,
        # and facts overdeleted here may no longer serve as chain links for red
        for f in d:
            X.remove(f)
        for f in J:
            X.remove(f)
        return J.minus(delta)

    def red(self, i_pos, i_neg, delta) -> FactSet:
        R = self.predicate
        X = self.external
        J = FactSet()
        sources = dict.fromkeys(f.args[0] for f in delta if f.pred == R)
        for u in sources:
            reached = set()
            stack = [u]
            while stack:
                x = stack.pop()
                for g in X.lookup(R, 0, x):
                    self._joins()
                    w = g.args[1]
                    if w not in reached:
                        reached.add(w)
                        stack.append(w)
                        J.insert(Atom(R, (u, w)))
        return J.intersect(delta)

    def diff(self, i_pos, d_pos, d_neg) -> FactSet:
        return FactSet()
