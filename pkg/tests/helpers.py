"""Random programs and datasets for property tests."""
from __future__ import annotations

from modlog.datalog import Atom, NotStratifiable, Program, Rule, UnsafeRule, Var, compute_lambda

CONSTANTS = ("a", "b", "c", "d")
X, Y, Z = Var("x"), Var("y"), Var("z")
TRANS = "R(?x,?y), R(?y,?z) -> R(?x,?z)."
SYM = "R(?x,?y) -> R(?y,?x)."


def random_atom(rng, preds, arities, variables):
    p = rng.choice(preds)
    return Atom(p, tuple(rng.choice(variables) if rng.random() < 0.85 else rng.choice(CONSTANTS[:2])
                         for _ in range(arities[p])))


def random_rule(rng, preds, arities, allow_neg=True):
    variables = [X, Y, Z]
    for _ in range(50):
        pos = tuple(random_atom(rng, preds, arities, variables) for _ in range(rng.randint(1, 2)))
        neg = ()
        if allow_neg and rng.random() < 0.35:
            neg = (random_atom(rng, preds, arities, variables),)
        head = random_atom(rng, preds, arities, variables)
        bound = {t for a in pos for t in a.args if isinstance(t, Var)}
        if all(t in bound for a in (head,) + neg for t in a.args if isinstance(t, Var)):
            return Rule(head, pos, neg)
    return None


def random_program(rng, max_rules=5, preds=("A", "B", "R"), extra=()):
    """A stratifiable program with at most ``max_rules`` rules over ``preds``."""
    arities = {"A": 1, "B": 2, "R": 2}
    while True:
        rules = [rng_rule for _ in range(rng.randint(1, max_rules))
                 if (rng_rule := random_rule(rng, list(preds), arities)) is not None]
        rules = rules[:max(0, max_rules - len(extra))] + list(extra)
        try:
            prog = Program.from_rules(rules)
            compute_lambda(prog)
        except (NotStratifiable, UnsafeRule):
            continue
        return prog


def random_facts(rng, n, preds=("A", "B", "R"), constants=CONSTANTS):
    arities = {"A": 1, "B": 2, "R": 2}
    out = set()
    for _ in range(n):
        p = rng.choice(preds)
        out.add(Atom(p, tuple(rng.choice(constants) for _ in range(arities[p]))))
    return out


def random_kind_program(rng, kind):
    """TC-, STC- or mixed program: the closure rules plus random extra rules."""
    from modlog.parser import parse_rule

    extra = [parse_rule(TRANS)]
    if kind in ("stc", "mixed") and (kind == "stc" or rng.random() < 0.5):
        extra.append(parse_rule(SYM))
    if kind == "tc" or kind == "stc":
        n_rand = rng.randint(0, 2)
    else:
        n_rand = rng.randint(1, 3)
    return random_program(rng, max_rules=n_rand + len(extra), extra=extra)
