"""Terms, atoms, rules and programs, plus stratification and module detection.

Constants are interned ``str`` values and variables are :class:`Var`
instances, so the two namespaces never collide.  Facts are :class:`Atom`
tuples whose arguments are all constants.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Union

import networkx as nx


class DatalogError(Exception):
    """Base class for load-time errors."""


class UnsafeRule(DatalogError):
    def __init__(self, rule, variable):
        self.rule = rule
        self.variable = variable
        super().__init__(f"unsafe rule {rule}: variable {variable} does not occur in a positive body atom")


class ArityClash(DatalogError):
    def __init__(self, predicate, arities):
        self.predicate = predicate
        self.arities = tuple(sorted(arities))
        super().__init__(f"predicate {predicate} used with arities {self.arities}")


class NotStratifiable(DatalogError):
    def __init__(self, cycle):
        # cycle: list of (body_pred, head_pred, negative) edges closing a loop
        self.cycle = cycle
        path = " ".join(f"{a} -{'not' if neg else ''}-> {b}" for a, b, neg in cycle)
        super().__init__(f"program is not stratifiable: {path}")


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return f"?{self.name}"


Term = Union[str, Var]


def const(symbol: str) -> str:
    return sys.intern(symbol)


def var(name: str) -> Var:
    return Var(sys.intern(name))


class Atom(NamedTuple):
    pred: str
    args: tuple

    def __str__(self):
        return f"{self.pred}({','.join(map(str, self.args))})"

    @property
    def arity(self):
        return len(self.args)

    def is_ground(self):
        return not any(isinstance(t, Var) for t in self.args)

    def variables(self):
        return [t for t in self.args if isinstance(t, Var)]

    def substitute(self, binding) -> "Atom":
        return Atom(self.pred, tuple(binding[t] if isinstance(t, Var) else t for t in self.args))


Fact = Atom


def fact(pred: str, *args: str) -> Atom:
    return Atom(sys.intern(pred), tuple(sys.intern(a) for a in args))


@dataclass(frozen=True)
class Rule:
    head: Atom
    pos: tuple = ()
    neg: tuple = ()

    def __str__(self):
        body = [str(a) for a in self.pos] + [f"not {a}" for a in self.neg]
        return f"{', '.join(body)} -> {self.head}."

    def atoms(self):
        return (self.head, *self.pos, *self.neg)

    def variables(self):
        seen = {}
        for atom in (*self.pos, *self.neg, self.head):
            for t in atom.variables():
                seen.setdefault(t, None)
        return list(seen)

    def body_predicates(self):
        return {a.pred for a in self.pos}, {a.pred for a in self.neg}

    def canonical(self) -> "Rule":
        """The same rule with variables renamed in order of first occurrence."""
        names = {v: Var(f"v{i}") for i, v in enumerate(self.variables())}
        ren = lambda a: Atom(a.pred, tuple(names.get(t, t) for t in a.args))
        return Rule(ren(self.head), tuple(map(ren, self.pos)), tuple(map(ren, self.neg)))


def check_safety(rule: Rule) -> None:
    bound = {t for a in rule.pos for t in a.variables()}
    for atom in (rule.head, *rule.neg):
        for t in atom.variables():
            if t not in bound:
                raise UnsafeRule(rule, t)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    arities: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_rules(cls, rules: Iterable[Rule]) -> "Program":
        kept, seen = [], set()
        arities: dict[str, set] = {}
        for rule in rules:
            check_safety(rule)
            for atom in rule.atoms():
                arities.setdefault(atom.pred, set()).add(atom.arity)
            key = rule.canonical()
            if key not in seen:
                seen.add(key)
                kept.append(rule)
        for pred, ks in arities.items():
            if len(ks) > 1:
                raise ArityClash(pred, ks)
        return cls(tuple(kept), {p: next(iter(ks)) for p, ks in arities.items()})

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def predicates(self):
        preds = {}
        for rule in self.rules:
            for atom in rule.atoms():
                preds.setdefault(atom.pred, None)
        return list(preds)

    def head_predicates(self):
        return {r.head.pred for r in self.rules}


# -- module detection --------------------------------------------------------

def is_transitive_rule(rule: Rule) -> bool:
    """R(x,y), R(y,z) -> R(x,z) up to renaming and body order."""
    if rule.neg or len(rule.pos) != 2:
        return False
    h = rule.head
    if h.arity != 2 or any(a.pred != h.pred or a.arity != 2 for a in rule.pos):
        return False
    if not all(isinstance(t, Var) for a in rule.atoms() for t in a.args):
        return False
    for left, right in (rule.pos, rule.pos[::-1]):
        x, y = left.args
        y2, z = right.args
        if y == y2 and len({x, y, z}) == 3 and h.args == (x, z):
            return True
    return False


def is_symmetric_rule(rule: Rule) -> bool:
    """R(x,y) -> R(y,x) up to renaming."""
    if rule.neg or len(rule.pos) != 1:
        return False
    (b,), h = rule.pos, rule.head
    if b.pred != h.pred or h.arity != 2:
        return False
    x, y = b.args
    return isinstance(x, Var) and isinstance(y, Var) and x != y and h.args == (y, x)


@dataclass(frozen=True)
class ModuleSpec:
    kind: str  # "generic" | "tc" | "stc"
    rules: tuple
    predicate: str | None = None

    def __str__(self):
        label = self.kind if self.predicate is None else f"{self.kind}({self.predicate})"
        return f"{label}[{len(self.rules)} rules]"


def detect_modules(recursive_rules, modules: str = "auto") -> list[ModuleSpec]:
    """Partition one stratum's recursive rules into TC, STC and generic modules."""
    rules = list(recursive_rules)
    if not rules:
        return []
    if modules == "off":
        return [ModuleSpec("generic", tuple(rules))]
    if modules != "auto":
        raise ValueError(f"unknown modules setting {modules!r}")
    trans, sym = {}, {}
    for r in rules:
        if is_transitive_rule(r):
            trans.setdefault(r.head.pred, r)
        elif is_symmetric_rule(r):
            sym.setdefault(r.head.pred, r)
    specs, used = [], set()
    for pred, r in trans.items():
        if pred in sym:
            specs.append(ModuleSpec("stc", (r, sym[pred]), pred))
            used.update((r, sym[pred]))
        else:
            specs.append(ModuleSpec("tc", (r,), pred))
            used.add(r)
    rest = tuple(r for r in rules if r not in used)
    if rest:
        specs.append(ModuleSpec("generic", rest))
    return specs


# -- stratification ----------------------------------------------------------

@dataclass
class Stratification:
    lam: dict
    max_stratum: int
    nonrecursive: dict  # stratum -> list of rules
    recursive: dict  # stratum -> list of rules
    modules: dict  # stratum -> list of ModuleSpec

    def stratum(self, pred: str) -> int:
        # predicates unknown to the program live in stratum 1
        return self.lam.get(pred, 1)

    def strata(self):
        return range(1, self.max_stratum + 1)


def dependency_graph(program: Program) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(program.predicates())
    for rule in program:
        pos, neg = rule.body_predicates()
        for p in pos:
            if not g.has_edge(p, rule.head.pred):
                g.add_edge(p, rule.head.pred, negative=False)
        for p in neg:
            g.add_edge(p, rule.head.pred, negative=True)
    return g


def is_valid_stratification(program: Program, lam: dict) -> bool:
    for rule in program:
        h = lam[rule.head.pred]
        pos, neg = rule.body_predicates()
        if any(lam[p] > h for p in pos) or any(lam[p] >= h for p in neg):
            return False
    return True


def compute_lambda(program: Program) -> dict:
    """Minimal stratification: SCC condensation, longest path with negative edges weighing 1."""
    g = dependency_graph(program)
    cond = nx.condensation(g)
    members = cond.graph["mapping"]
    for u, v, data in g.edges(data=True):
        if data["negative"] and members[u] == members[v]:
            raise NotStratifiable(_negative_cycle(g, u, v))
    level = {}
    for c in nx.topological_sort(cond):
        lv = 1
        for p in cond.predecessors(c):
            w = any(g.edges[a, b]["negative"]
                    for a in cond.nodes[p]["members"] for b in cond.nodes[c]["members"]
                    if g.has_edge(a, b))
            lv = max(lv, level[p] + int(w))
        level[c] = lv
    return {pred: level[members[pred]] for pred in g.nodes}


def _negative_cycle(g, u, v):
    path = nx.shortest_path(g, v, u)
    cycle = [(u, v, True)]
    for a, b in zip(path, path[1:]):
        cycle.append((a, b, g.edges[a, b]["negative"]))
    return cycle


def stratify(program: Program, modules: str = "auto", lam: dict | None = None) -> Stratification:
    """Stratify ``program``; an explicit ``lam`` is validated and used instead of the canonical one."""
    if lam is None:
        lam = compute_lambda(program)
    else:
        lam = dict(lam)
        missing = [p for p in program.predicates() if p not in lam]
        if missing:
            raise ValueError(f"stratification misses predicates {missing}")
        if not is_valid_stratification(program, lam):
            raise ValueError("given map is not a stratification of the program")
    top = max(lam.values(), default=1)
    nonrec = {s: [] for s in range(1, top + 1)}
    rec = {s: [] for s in range(1, top + 1)}
    for rule in program:
        s = lam[rule.head.pred]
        if any(lam[a.pred] == s for a in rule.pos):
            rec[s].append(rule)
        else:
            nonrec[s].append(rule)
    mods = {s: detect_modules(rec[s], modules) for s in rec}
    return Stratification(lam, top, nonrec, rec, mods)
