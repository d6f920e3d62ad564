"""Seminaive realisation of the four module functions for arbitrary rules.

All functions take datasets implementing the read protocol of
:mod:`modlog.factstore` and return a fresh :class:`FactSet`.
"""
from __future__ import annotations

from .apply import apply_rules, match_rule_instances, unify_head
from .factstore import DatasetView, FactSet


def semi(rules, i_pos, i_neg, delta, counters=None) -> FactSet:
    """Smallest J closing ``i_pos | J`` under the instances that depend on ``delta | J``."""
    J = FactSet()
    frontier = delta
    while frontier:
        cur = DatasetView(i_pos, plus=(J,))
        derived = apply_rules(rules, cur, i_neg, frontier, None, counters)
        new = FactSet(f for f in derived if f not in cur)
        J.update(new)
        frontier = new
    return J


def _inv_semi(rules, i_pos, i_neg, delta, keep, counters):
    # body atoms range over i_pos minus everything already processed, so no instance repeats
    J = FactSet()
    processed = FactSet()
    frontier = FactSet(f for f in delta if f in i_pos)
    while frontier:
        body = DatasetView(i_pos, minus=(processed,))
        derived = apply_rules(rules, body, i_neg, frontier, None, counters)
        processed.update(frontier)
        new = FactSet()
        for f in derived:
            if f not in delta and f not in J and keep(f):
                new.insert(f)
        J.update(new)
        frontier = FactSet(f for f in new if f in i_pos and f not in processed)
    return J


def inv_semi(rules, i_pos, i_neg, delta, counters=None) -> FactSet:
    """Upper overdeletion bound: everything depending on ``delta`` (DRed)."""
    return _inv_semi(rules, i_pos, i_neg, delta, lambda f: True, counters)


def inv_semi_c(rules, i_pos, i_neg, delta, nr, counters=None) -> FactSet:
    """Lower overdeletion bound: propagation stops at facts with a nonzero counter (DRed^c)."""
    return _inv_semi(rules, i_pos, i_neg, delta, lambda f: nr.get(f, 0) == 0, counters)


def generic_red(rules, i_pos, i_neg, delta, counters=None) -> FactSet:
    """Facts of ``delta`` derivable from ``i_pos - delta`` in one or more steps."""
    survivors = DatasetView(i_pos, minus=(delta,))
    J = FactSet()
    # one-step seed: match each deleted fact against the rule heads
    for f in delta:
        if _derivable(rules, f, survivors, i_neg, counters):
            J.insert(f)
    frontier = J.copy()
    while frontier:
        cur = DatasetView(i_pos, minus=(delta,), plus=(J,))
        derived = apply_rules(rules, cur, i_neg, frontier, None, counters)
        new = FactSet(f for f in derived if f in delta and f not in J)
        J.update(new)
        frontier = new
    return J


def _derivable(rules, f, body, i_neg, counters):
    for rule in rules:
        b0 = unify_head(rule, f)
        if b0 is None:
            continue
        for b in match_rule_instances(rule, body, i_neg, initial=b0):
            if counters is not None:
                counters.instance(rule, b)
            return True
    return False


def generic_diff(rules, i_pos, d_pos, d_neg, counters=None) -> FactSet:
    """Consequences touched by changes to lower-strata facts."""
    if not d_pos and not d_neg:
        return FactSet()
    return apply_rules(rules, i_pos, i_pos, d_pos, d_neg, counters)


class GenericModule:
    kind = "generic"
    predicate = None

    def __init__(self, rules, counters=None):
        self.rules = tuple(rules)
        self.counters = counters

    def __repr__(self):
        return f"GenericModule({len(self.rules)} rules)"

    def add(self, i_pos, i_neg, delta):
        return semi(self.rules, i_pos, i_neg, delta, self.counters)

    def delete(self, i_pos, i_neg, delta, nr):
        return inv_semi_c(self.rules, i_pos, i_neg, delta, nr, self.counters)

    def red(self, i_pos, i_neg, delta):
        return generic_red(self.rules, i_pos, i_neg, delta, self.counters)

    def diff(self, i_pos, d_pos, d_neg):
        return generic_diff(self.rules, i_pos, d_pos, d_neg, self.counters)
