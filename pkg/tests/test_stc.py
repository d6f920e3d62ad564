from hypothesis import given, settings
from hypothesis import strategies as st

from modlog import workloads
from modlog.datalog import fact
from modlog.engine import materialise
from modlog.factstore import FactSet
from modlog.oracle import del_bounds, naive_fixpoint, red_oracle, semi_oracle
from modlog.stc import Components, SymmetricTransitiveModule

STC = workloads.stc_program().rules


def R(a, b):
    return fact("R", a, b)


def test_close_edges_examples():
    m = SymmetricTransitiveModule("R")
    assert m.close_edges([R("a", "b")]) == {R("a", "a"), R("b", "b"), R("a", "b"), R("b", "a")}
    assert m.components.groups() == [["a", "b"]]
    m2 = SymmetricTransitiveModule("R")
    m2.close_edges([R("a", "a")])
    assert m2.close_edges([R("a", "a")]) == set()
    got = m.close_edges([R("b", "c")])
    assert got == {R("c", "c"), R("a", "c"), R("c", "a"), R("b", "c"), R("c", "b")}
    assert got == semi_oracle(STC, {R("a", "b"), R("b", "a"), R("a", "a"), R("b", "b"), R("b", "c")},
                              set(), {R("b", "c")}) | {R("b", "c")}


def test_add_cycle():
    cyc = workloads.cycle(3)
    m = SymmetricTransitiveModule("R")
    full = {R(f"c{i}", f"c{j}") for i in range(1, 4) for j in range(1, 4)}
    assert m.add(cyc, cyc, cyc) == full - set(cyc)
    assert m.add(cyc, cyc, FactSet()) == set()
    assert m.add(cyc, cyc, FactSet([R("c1", "c3")])) == set()


def _module_on(edges):
    st = materialise(workloads.stc_program(), edges)
    return st, st.modules[1][0]


def test_delete_examples():
    tri = FactSet([R("a", "b"), R("b", "c")])
    st_, m = _module_on(tri)
    I = st_.facts
    got = m.delete(I, I, FactSet([R("a", "b")]), {})
    assert got == {R(x, y) for x in "abc" for y in "abc"} - {R("a", "b")}
    st_, m = _module_on(tri)
    got = m.delete(st_.facts, st_.facts, FactSet([R("a", "b")]), {R("b", "c"): 1})
    assert R("b", "c") not in got and R("b", "c") in m.pending
    assert len(m.components) == 0


def test_delete_across_components_is_noop():
    st_, m = _module_on(FactSet([R("a", "b"), R("c", "d")]))
    assert m.delete(st_.facts, st_.facts, FactSet([R("a", "c")]), {}) == set()
    assert len(m.components) == 2


def test_red_examples():
    m = SymmetricTransitiveModule("R")
    assert m.red(FactSet(), FactSet(), FactSet([R("a", "b")])) == set()
    m.pending.update([R("a", "b")])
    d = FactSet([R("a", "a"), R("b", "a"), R("c", "c")])
    assert m.red(FactSet(), FactSet(), d) == {R("a", "a"), R("b", "a")}
    assert not m.pending


def test_union_find():
    c = Components()
    for x in "abcd":
        c.make(x)
    r = c.union(c.find("a"), c.find("b"))
    r = c.union(r, c.find("c"))
    assert sorted(c.members[c.find("a")]) == ["a", "b", "c"]
    assert c.find("a") == c.find("c") != c.find("d")
    assert len(c.closure("R")) == 9 + 1


def test_diff_is_empty():
    assert SymmetricTransitiveModule("R").diff(FactSet(), FactSet([fact("P", "a")]), FactSet()) == set()


edges_st = st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(edges_st, st.randoms(use_true_random=False))
def test_add_equals_semi(edges, rnd):
    E = FactSet(R(f"v{a}", f"v{b}") for a, b in edges)
    old = FactSet(f for f in E if rnd.random() < 0.5)
    st_, m = _module_on(old)
    d = E.minus(st_.facts)
    I = st_.facts.union(d)
    assert m.add(I, I, d) == semi_oracle(STC, set(I), set(I), set(d))


@settings(max_examples=150, deadline=None)
@given(edges_st, st.randoms(use_true_random=False))
def test_delete_within_bounds_and_red_is_smallest(edges, rnd):
    E = FactSet(R(f"v{a}", f"v{b}") for a, b in edges)
    st_, m = _module_on(E)
    I = st_.facts
    assert m.components.closure("R") == set(I)
    d = FactSet(f for f in E if rnd.random() < 0.4)
    nr = {f: 1 for f in E if f not in d}
    got = m.delete(I, I, d, nr)
    lo, hi = del_bounds(STC, set(I), set(I), set(d), nr)
    assert lo - set(d) <= set(got) <= hi
    D = d.union(got)
    assert m.red(I, I, D) == red_oracle(STC, set(I), set(I), set(D))
    # rebuilt components plus untouched ones cover exactly the survivors
    survivors = naive_fixpoint(workloads.stc_program(), None, E.minus(d))
    assert m.components.closure("R") == survivors


def test_clique_work_is_quadratic():
    n = 20
    st_ = materialise(workloads.stc_program(), workloads.cycle(n))
    assert len(st_.facts) == n * n
    assert st_.counters.total("join_results") == n + n * (n - 1) // 2
