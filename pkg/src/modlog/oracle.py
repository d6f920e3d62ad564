"""Slow reference implementations used to check the engine.

Nothing here shares matching code with :mod:`modlog.apply`: rules are
evaluated by nested loops over plain Python sets, and every operator is the
direct set-theoretic definition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .datalog import Atom, Var, compute_lambda


def _match(atom, f, binding):
    if atom.pred != f.pred or len(atom.args) != len(f.args):
        return None
    b = dict(binding)
    for t, c in zip(atom.args, f.args):
        if isinstance(t, Var):
            if b.setdefault(t, c) != c:
                return None
        elif t != c:
            return None
    return b


def _ground(atom, b):
    return Atom(atom.pred, tuple(b[t] if isinstance(t, Var) else t for t in atom.args))


def instances(rule, i_pos, i_neg):
    """All (binding, positive body, head) of applicable instances of ``rule``."""
    partial = [{}]
    for atom in rule.pos:
        partial = [b2 for b in partial for f in i_pos if (b2 := _match(atom, f, b)) is not None]
    for b in partial:
        if any(_ground(a, b) in i_neg for a in rule.neg):
            continue
        yield b, [_ground(a, b) for a in rule.pos], [_ground(a, b) for a in rule.neg], _ground(rule.head, b)


def naive_apply(rules, i_pos, i_neg=None, d_pos=None, d_neg=None) -> set:
    """``Pi[i_pos, i_neg :: d_pos, d_neg]`` straight from the definition."""
    i_pos = set(i_pos)
    i_neg = i_pos if i_neg is None else set(i_neg)
    restricted = d_pos is not None or d_neg is not None
    d_pos, d_neg = set(d_pos or ()), set(d_neg or ())
    out = set()
    for rule in rules:
        for _, pos, neg, head in instances(rule, i_pos, i_neg):
            if restricted and not (any(a in d_pos for a in pos) or any(a in d_neg for a in neg)):
                continue
            out.add(head)
    return out


def naive_fixpoint(program, lam=None, explicit=()) -> set:
    """Materialisation by full re-application per stratum until nothing changes."""
    lam = compute_lambda(program) if lam is None else lam
    explicit = set(explicit)
    level = lambda p: lam.get(p, 1)  # noqa: E731
    top = max([1, *lam.values(), *(level(f.pred) for f in explicit)])
    I = set()
    for s in range(1, top + 1):
        rules = [r for r in program if level(r.head.pred) == s]
        I |= {f for f in explicit if level(f.pred) == s}
        while True:
            new = naive_apply(rules, I) - I
            if not new:
                break
            I |= new
    return I


def least_closed(step) -> set:
    """Least J with ``step(J) <= J``, by iteration from the empty set."""
    J = set()
    while True:
        nxt = J | step(J)
        if nxt == J:
            return J
        J = nxt


def semi_oracle(rules, i_pos, i_neg, delta) -> set:
    """Smallest J with ``Pi[I+ | J, I- :: delta | J] <= I+ | J``, minus I+."""
    i_pos = set(i_pos)
    return least_closed(lambda J: naive_apply(rules, i_pos | J, i_neg, set(delta) | J) - i_pos)


def del_bounds(rules, i_pos, i_neg, delta, nr):
    """Lower and upper bounds on a valid overdeletion result."""
    delta = set(delta)
    lower = least_closed(lambda J: {f for f in naive_apply(rules, i_pos, i_neg, delta | J)
                                    if f not in delta and nr.get(f, 0) == 0})
    upper = least_closed(lambda J: naive_apply(rules, i_pos, i_neg, delta | J) - delta)
    return lower, upper


def red_oracle(rules, i_pos, i_neg, delta) -> set:
    """Smallest J with ``Pi[(I+ - delta) | J, I-] & delta <= J``."""
    delta = set(delta)
    base = set(i_pos) - delta
    return least_closed(lambda J: naive_apply(rules, base | J, i_neg) & delta)


def diff_oracle(rules, i_pos, d_pos, d_neg) -> set:
    return naive_apply(rules, i_pos, i_pos, d_pos, d_neg)


def recompute(program, explicit, deletions=(), insertions=(), lam=None) -> set:
    E = (set(explicit) - set(deletions)) | set(insertions)
    return naive_fixpoint(program, lam, E)


def dred_reference(program, explicit, materialisation, deletions=(), insertions=(), lam=None) -> set:
    """Classic DRed per stratum, no modules and no counters.

    Overdeletion follows every instance touching a deleted fact, rederivation
    is one step over the survivors, insertion is a plain fixpoint.
    """
    lam = compute_lambda(program) if lam is None else lam
    level = lambda p: lam.get(p, 1)  # noqa: E731
    E = set(explicit)
    dels = (set(deletions) & E) - set(insertions)
    ins = set(insertions) - E
    new_E = (E - dels) | ins
    I = set(materialisation)
    top = max([1, *lam.values(), *(level(f.pred) for f in ins)])
    D, A = set(), set()
    for s in range(1, top + 1):
        rules = [r for r in program if level(r.head.pred) == s]
        old = I
        # overdelete: consequences over the old materialisation of removed/added lower facts
        seed = {f for f in dels if level(f.pred) == s}
        seed |= naive_apply(rules, old, old, D - A, A - D)
        over = set(seed)
        frontier = set(seed)
        while frontier:
            nxt = naive_apply(rules, old, old, frontier, set()) - over
            over |= nxt
            frontier = nxt
        over = {f for f in over if level(f.pred) == s}
        D |= over
        cur = (old - D) | A
        # one-step rederivation, then insertion to a fixpoint
        redo = {f for f in over if f in new_E} | (naive_apply(rules, cur) & over)
        add = {f for f in ins if level(f.pred) == s} | redo
        cur |= add
        while True:
            nxt = naive_apply(rules, cur) - cur
            if not nxt:
                break
            cur |= nxt
        A |= cur - ((old - D) | A)
    return (I - D) | A


@dataclass
class OracleReport:
    expected: set
    actual: set
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.missing and not self.extra

    def __str__(self):
        lines = [f"expected {len(self.expected)} facts, got {len(self.actual)}: "
                 + ("OK" if self.ok else "MISMATCH")]
        lines += [f"  missing {f}" for f in self.missing]
        lines += [f"  extra   {f}" for f in self.extra]
        return "\n".join(lines)


def verify(actual, expected) -> OracleReport:
    actual, expected = set(actual), set(expected)
    return OracleReport(expected, actual, sorted(expected - actual), sorted(actual - expected))


def all_subsets(facts, max_size):
    facts = sorted(facts)
    for k in range(max_size + 1):
        yield from (set(c) for c in itertools.combinations(facts, k))
