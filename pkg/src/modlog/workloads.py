"""Synthetic graph workloads: chains, cycles, random DAGs and cliques over ``R``."""
from __future__ import annotations

import random

from .datalog import fact
from .factstore import FactSet
from .parser import parse_program

TC_PROGRAM = "R(?x,?y), R(?y,?z) -> R(?x,?z).\n"
STC_PROGRAM = TC_PROGRAM + "R(?x,?y) -> R(?y,?x).\n"


def tc_program():
    return parse_program(TC_PROGRAM)


def stc_program():
    return parse_program(STC_PROGRAM)


def chain(n: int, pred: str = "R") -> FactSet:
    """``R(c0,c1), ..., R(c_{n-1},c_n)``."""
    return FactSet(fact(pred, f"c{i}", f"c{i + 1}") for i in range(n))


def cycle(n: int, pred: str = "R") -> FactSet:
    """``R(c1,c2), ..., R(c_{n-1},c_n), R(c_n,c1)``."""
    return FactSet(fact(pred, f"c{i}", f"c{i % n + 1}") for i in range(1, n + 1))


def clique(n: int, pred: str = "R") -> FactSet:
    """All ordered pairs of distinct vertices ``c1..cn``."""
    return FactSet(fact(pred, f"c{i}", f"c{j}")
                   for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def dag(nodes: int, edges: int, seed: int = 0, pred: str = "R") -> FactSet:
    """``edges`` distinct edges drawn uniformly among pairs ``i < j`` of ``nodes`` vertices."""
    total = nodes * (nodes - 1) // 2
    if nodes < 1 or edges < 0 or edges > total:
        raise ValueError(f"cannot draw {edges} edges among {nodes} nodes")
    rng = random.Random(seed)
    out = FactSet()
    for k in sorted(rng.sample(range(total), edges)):
        i, j = _pair(k, nodes)
        out.insert(fact(pred, f"c{i}", f"c{j}"))
    return out


def _pair(k, n):
    # k-th pair (i, j), i < j, in row-major order
    i = 0
    while k >= n - 1 - i:
        k -= n - 1 - i
        i += 1
    return i, i + 1 + k


def sample(facts, fraction: float, seed: int = 0) -> FactSet:
    rng = random.Random(seed)
    items = sorted(facts)
    k = max(1, round(len(items) * fraction)) if items else 0
    return FactSet(sorted(rng.sample(items, k)))


GENERATORS = {"chain": chain, "cycle": cycle, "clique": clique}
