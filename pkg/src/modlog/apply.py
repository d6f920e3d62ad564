"""Rule-instance enumeration and the restricted rule-application operator.

``apply_rules(rules, i_pos, i_neg, d_pos, d_neg)`` returns the heads of all
instances whose positive body lies in ``i_pos``, whose negative body misses
``i_neg``, and which touch ``d_pos`` positively or ``d_neg`` negatively.
Omitting both deltas drops the last condition.
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, fields

from .datalog import Atom, Rule, Var
from .factstore import DatasetView, FactSet


@dataclass
class PhaseStats:
    rule_instances: int = 0
    join_results: int = 0
    facts_deleted: int = 0
    facts_rederived: int = 0
    facts_added: int = 0
    wall_ms: float = 0.0

    def as_row(self, phase):
        return {"phase": phase, **{f.name: getattr(self, f.name) for f in fields(self)}}


PHASES = ["materialise", "overdelete", "rederive", "insert"]
CSV_COLUMNS = ["phase", "rule_instances", "join_results", "facts_deleted",
               "facts_rederived", "facts_added", "wall_ms"]


class Counters:
    """Per-phase work counters.

    ``rule_instances`` counts rule instances considered by generic evaluation,
    ``join_results`` the pair/edge considerations inside the TC and STC
    algorithms.  With ``trace=True`` every enumerated instance is also kept as
    ``(phase, stratum, rule, binding)`` so repeated instances can be detected.
    """

    def __init__(self, trace: bool = False):
        self.phases: dict[str, PhaseStats] = {}
        self.current = "default"
        self.stratum = 0
        self.trace = [] if trace else None

    def reset(self):
        self.phases.clear()
        if self.trace is not None:
            self.trace.clear()

    def _stats(self) -> PhaseStats:
        st = self.phases.get(self.current)
        if st is None:
            st = self.phases[self.current] = PhaseStats()
        return st

    def instance(self, rule, binding):
        self._stats().rule_instances += 1
        if self.trace is not None:
            self.trace.append((self.current, self.stratum, rule, tuple(sorted(
                ((v.name, c) for v, c in binding.items()), key=lambda kv: kv[0]))))

    def joins(self, n: int = 1):
        self._stats().join_results += n

    def bump(self, name: str, n: int):
        st = self._stats()
        setattr(st, name, getattr(st, name) + n)

    @contextmanager
    def phase(self, name: str):
        prev = self.current
        self.current = name
        st = self._stats()
        t0 = time.perf_counter()
        try:
            yield st
        finally:
            st.wall_ms += (time.perf_counter() - t0) * 1000.0
            self.current = prev

    def total(self, name: str) -> int:
        return sum(getattr(st, name) for st in self.phases.values())

    def rows(self):
        order = {ph: i for i, ph in enumerate(PHASES)}
        names = sorted(self.phases, key=lambda ph: order.get(ph, len(order)))
        return [self.phases[ph].as_row(ph) for ph in names]


def solve(atoms, sources, binding):
    """Backtracking join of ``atoms[i]`` against ``sources[i]``.

    Yields the same (mutated) binding dict once per solution; callers copy it
    if they keep it.
    """
    n = len(atoms)

    def step(i):
        if i == n:
            yield binding
            return
        atom, src = atoms[i], sources[i]
        args = atom.args
        arity = len(args)
        cands = None
        for pos, t in enumerate(args):
            v = binding.get(t) if isinstance(t, Var) else t
            if v is not None and src.indexed(arity, pos):
                cands = src.lookup(atom.pred, pos, v)
                break
        if cands is None:
            cands = src.scan(atom.pred)
        for f in cands:
            fargs = f.args
            if len(fargs) != arity:
                continue
            added = []
            ok = True
            for t, c in zip(args, fargs):
                if isinstance(t, Var):
                    b = binding.get(t)
                    if b is None:
                        binding[t] = c
                        added.append(t)
                    elif b != c:
                        ok = False
                        break
                elif t != c:
                    ok = False
                    break
            if ok:
                yield from step(i + 1)
            for t in added:
                del binding[t]

    return step(0)


def _neg_ok(rule, binding, i_neg):
    return all(a.substitute(binding) not in i_neg for a in rule.neg)


def match_rule_instances(rule: Rule, i_pos, i_neg, d_pos=None, d_neg=None, initial=None):
    """Yield one binding dict per qualifying instance of ``rule``.

    Restricted enumeration uses the seminaive decomposition: for positive atom
    ``j`` matched in ``d_pos``, atoms before ``j`` come from ``i_pos - d_pos``
    and atoms after it from ``i_pos``; one further pass (all positive atoms in
    ``i_pos - d_pos``) picks up instances touching ``d_neg`` only.  Every
    qualifying instance is produced exactly once.
    """
    pos = list(rule.pos)
    start = dict(initial or {})
    if d_pos is None and d_neg is None:
        for b in solve(pos, [i_pos] * len(pos), start):
            if _neg_ok(rule, b, i_neg):
                yield dict(b)
        return
    if d_pos:
        old = DatasetView(i_pos, minus=(d_pos,))
        for j in range(len(pos)):
            order = [pos[j]] + pos[:j] + pos[j + 1:]
            srcs = [d_pos] + [old] * j + [i_pos] * (len(pos) - j - 1)
            for b in solve(order, srcs, start):
                if _neg_ok(rule, b, i_neg):
                    yield dict(b)
    if d_neg and rule.neg:
        old = DatasetView(i_pos, minus=(d_pos,)) if d_pos else i_pos
        for b in solve(pos, [old] * len(pos), start):
            if _neg_ok(rule, b, i_neg) and any(a.substitute(b) in d_neg for a in rule.neg):
                yield dict(b)


def apply_rules(rules, i_pos, i_neg=None, d_pos=None, d_neg=None, counters=None, on_instance=None) -> FactSet:
    """Heads of all qualifying instances of ``rules`` (see module docstring).

    ``on_instance(rule, binding, head)`` is called for every instance, which
    is how the engine maintains nonrecursive counters.
    """
    if i_neg is None:
        i_neg = i_pos
    out = FactSet()
    for rule in rules:
        for b in match_rule_instances(rule, i_pos, i_neg, d_pos, d_neg):
            head = rule.head.substitute(b)
            if counters is not None:
                counters.instance(rule, b)
            if on_instance is not None:
                on_instance(rule, b, head)
            out.insert(head)
    return out


def unify_head(rule: Rule, f: Atom):
    """Binding that maps ``rule.head`` onto ``f``, or None."""
    h = rule.head
    if h.pred != f.pred or len(h.args) != len(f.args):
        return None
    b = {}
    for t, c in zip(h.args, f.args):
        if isinstance(t, Var):
            if b.setdefault(t, c) != c:
                return None
        elif t != c:
            return None
    return b
