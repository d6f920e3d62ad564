"""Indexed fact storage.

Every dataset the engine touches supports the same small read protocol:
``fact in ds``, ``ds.scan(pred)``, ``ds.lookup(pred, pos, value)`` and
``ds.indexed(arity, pos)``.  :class:`FactSet` implements it with hash
indexes; :class:`DatasetView` composes datasets into ``(base - minus) | plus``
without copying.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .datalog import Atom


class NegativeCounter(RuntimeError):
    """A nonrecursive derivation counter would drop below zero."""


def _indexed(arity, pos):
    # binary predicates get both adjacency directions, everything else the first argument only
    return pos == 0 or (arity == 2 and pos == 1)


class FactSet:
    """Insertion-ordered set of facts with per-predicate argument indexes."""

    def __init__(self, facts: Iterable[Atom] = ()):
        self._facts: dict[Atom, None] = {}
        self._by_pred: dict[str, dict[Atom, None]] = {}
        self._index: dict[tuple, dict[Atom, None]] = {}
        for f in facts:
            self.insert(f)

    def insert(self, f: Atom) -> bool:
        if f in self._facts:
            return False
        self._facts[f] = None
        self._by_pred.setdefault(f.pred, {})[f] = None
        args = f.args
        if args:
            self._index.setdefault((f.pred, 0, args[0]), {})[f] = None
            if len(args) == 2:
                self._index.setdefault((f.pred, 1, args[1]), {})[f] = None
        return True

    def remove(self, f: Atom) -> bool:
        if f not in self._facts:
            return False
        del self._facts[f]
        self._drop(self._by_pred, f.pred, f)
        args = f.args
        if args:
            self._drop(self._index, (f.pred, 0, args[0]), f)
            if len(args) == 2:
                self._drop(self._index, (f.pred, 1, args[1]), f)
        return True

    @staticmethod
    def _drop(table, key, f):
        bucket = table[key]
        del bucket[f]
        if not bucket:
            del table[key]

    add = insert
    discard = remove

    def update(self, facts: Iterable[Atom]) -> None:
        for f in facts:
            self.insert(f)

    def contains(self, f: Atom) -> bool:
        return f in self._facts

    def __contains__(self, f) -> bool:
        return f in self._facts

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._facts)

    def __len__(self) -> int:
        return len(self._facts)

    def __bool__(self) -> bool:
        return bool(self._facts)

    def __eq__(self, other):
        if isinstance(other, FactSet):
            return self._facts.keys() == other._facts.keys()
        if isinstance(other, (set, frozenset)):
            return self._facts.keys() == other
        return NotImplemented

    def __repr__(self):
        return "FactSet({" + ", ".join(map(str, self._facts)) + "})"

    def copy(self) -> "FactSet":
        return FactSet(self._facts)

    def predicates(self):
        return list(self._by_pred)

    def indexed(self, arity: int, pos: int) -> bool:
        return _indexed(arity, pos)

    def scan(self, pred: str):
        return self._by_pred.get(pred, ())

    def lookup(self, pred: str, pos: int, value: str):
        if pos == 0 or (pos == 1 and self._is_binary(pred)):
            return self._index.get((pred, pos, value), ())
        return [f for f in self.scan(pred) if f.args[pos] == value]

    def _is_binary(self, pred):
        bucket = self._by_pred.get(pred)
        return bool(bucket) and len(next(iter(bucket)).args) == 2

    def minus(self, other) -> "FactSet":
        return FactSet(f for f in self._facts if f not in other)

    def intersect(self, other) -> "FactSet":
        return FactSet(f for f in self._facts if f in other)

    def union(self, *others) -> "FactSet":
        out = self.copy()
        for o in others:
            out.update(o)
        return out


class Difference:
    """Live membership test for ``a - b`` (used as a view's ``minus``)."""

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __contains__(self, f):
        return f in self.a and f not in self.b


class DatasetView:
    """Read-only view of ``(base - minus) | plus``; minus applies to the base only."""

    def __init__(self, base, minus=(), plus=()):
        self.base = base
        self.minus = tuple(minus)
        self.plus = tuple(plus)

    def _in_base(self, f):
        return f in self.base and not any(f in m for m in self.minus)

    def __contains__(self, f) -> bool:
        return self._in_base(f) or any(f in p for p in self.plus)

    def indexed(self, arity, pos):
        return _indexed(arity, pos)

    def _merge(self, get):
        minus = self.minus
        for f in get(self.base):
            if not any(f in m for m in minus):
                yield f
        for i, p in enumerate(self.plus):
            earlier = self.plus[:i]
            for f in get(p):
                if not self._in_base(f) and not any(f in q for q in earlier):
                    yield f

    def scan(self, pred):
        return self._merge(lambda ds: ds.scan(pred))

    def lookup(self, pred, pos, value):
        return self._merge(lambda ds: ds.lookup(pred, pos, value))

    def __iter__(self):
        return self._merge(iter)

    def __len__(self):
        return sum(1 for _ in self)

    def materialise(self) -> FactSet:
        return FactSet(self)


class FactStore(FactSet):
    """A FactSet carrying per-fact nonrecursive derivation counters."""

    def __init__(self, facts: Iterable[Atom] = ()):
        super().__init__(facts)
        self.nr: dict[Atom, int] = {}

    def adjust_nr(self, f: Atom, delta: int) -> int:
        n = self.nr.get(f, 0) + delta
        if n < 0:
            raise NegativeCounter(f"nonrecursive counter of {f} would become {n}")
        if n:
            self.nr[f] = n
        else:
            self.nr.pop(f, None)
        return n

    def nr_count(self, f: Atom) -> int:
        return self.nr.get(f, 0)


def match(pattern: Atom, view) -> Iterator[dict]:
    """Substitutions grounding ``pattern`` inside ``view``, in index order."""
    from .apply import solve

    for binding in solve([pattern], [view], {}):
        yield dict(binding)


def to_factset(facts) -> FactSet:
    return facts if isinstance(facts, FactSet) else FactSet(facts)


__all__ = ["FactSet", "FactStore", "DatasetView", "Difference", "NegativeCounter", "match",
           "to_factset"]
