import itertools

import pytest

from modlog.datalog import (ArityClash, NotStratifiable, Program, UnsafeRule, Var, check_safety,
                            compute_lambda, detect_modules, fact, is_symmetric_rule,
                            is_transitive_rule, is_valid_stratification, stratify)
from modlog.parser import parse_program, parse_rule

TRANS = "R(?x,?y), R(?y,?z) -> R(?x,?z)."
SYM = "R(?x,?y) -> R(?y,?x)."


def test_constants_and_variables_never_collide():
    assert Var("x") != "x"
    assert fact("R", "a", "b").is_ground()
    assert not parse_rule(TRANS).head.is_ground()


def test_safety_examples():
    check_safety(parse_rule(TRANS))
    check_safety(parse_rule("-> P(a)."))
    with pytest.raises(UnsafeRule) as e:
        parse_program("P(?x), not Q(?y) -> S(?x).")
    assert e.value.variable == Var("y")


def test_head_variable_must_be_bound():
    with pytest.raises(UnsafeRule):
        parse_program("P(?x) -> S(?x,?y).")


def test_arity_clash_and_duplicates():
    with pytest.raises(ArityClash):
        parse_program("P(?x) -> Q(?x).\nQ(?x,?y) -> P(?x).")
    prog = parse_program(TRANS + "\nR(?a,?b), R(?b,?c) -> R(?a,?c).")
    assert len(prog) == 1


def test_single_transitive_rule_is_one_recursive_stratum():
    st = stratify(parse_program(TRANS))
    assert st.max_stratum == 1
    assert st.nonrecursive[1] == [] and len(st.recursive[1]) == 1


def test_minimal_stratification_example():
    prog = parse_program("E(?x,?y) -> R(?x,?y).\nR(?x,?y), not E(?x,?y) -> D(?x,?y).")
    lam = compute_lambda(prog)
    assert lam == {"E": 1, "R": 1, "D": 2}
    valid = [dict(zip("ERD", ls)) for ls in itertools.product((1, 2, 3), repeat=3)
             if is_valid_stratification(prog, dict(zip("ERD", ls)))]
    assert lam in valid
    # canonical map is pointwise minimal among all valid ones
    assert all(all(lam[p] <= other[p] for p in lam) for other in valid)


def test_negation_in_cycle_is_rejected():
    with pytest.raises(NotStratifiable) as e:
        parse_program_and_stratify("P(?x), not P(?x) -> Q(?x).\nQ(?x) -> P(?x).")
    assert any(neg for _, _, neg in e.value.cycle)


def parse_program_and_stratify(text):
    return stratify(parse_program(text))


def test_explicit_lambda_is_validated():
    prog = parse_program("A(?x), not B(?x) -> C(?x).")
    st = stratify(prog, lam={"A": 1, "B": 1, "C": 3})
    assert st.max_stratum == 3
    with pytest.raises(ValueError):
        stratify(prog, lam={"A": 1, "B": 2, "C": 2})


@pytest.mark.parametrize("text,kind", [
    (TRANS, "tc"),
    ("R(?b,?c), R(?a,?b) -> R(?a,?c).", "tc"),
    (SYM, "sym"),
    ("R(?x,?y), R(?y,?x) -> R(?x,?x).", None),
    ("R(?x,?y), S(?y,?z) -> R(?x,?z).", None),
    ("R(?x,?x) -> R(?x,?x).", None),
])
def test_shape_detection(text, kind):
    r = parse_rule(text)
    assert is_transitive_rule(r) == (kind == "tc")
    assert is_symmetric_rule(r) == (kind == "sym")


def test_module_detection_examples():
    tc = parse_program(TRANS).rules
    assert [m.kind for m in detect_modules(tc)] == ["tc"]
    stc = parse_program(TRANS + SYM).rules
    mods = detect_modules(stc)
    assert [m.kind for m in mods] == ["stc"] and len(mods[0].rules) == 2
    mixed = parse_program(TRANS + "P(?x,?y), R(?y,?z) -> R(?x,?z).").rules
    assert [m.kind for m in detect_modules(mixed)] == ["tc", "generic"]
    assert [m.kind for m in detect_modules(mixed, "off")] == ["generic"]
    assert detect_modules([]) == []


def test_stratification_inequalities_hold(rng_programs):
    for prog in rng_programs:
        lam = compute_lambda(prog)
        assert is_valid_stratification(prog, lam)


@pytest.fixture
def rng_programs():
    import random

    from helpers import random_program
    rng = random.Random(3)
    return [random_program(rng) for _ in range(100)]


def test_program_is_hashable_value():
    a, b = parse_program(TRANS), parse_program(TRANS)
    assert a == b and isinstance(a, Program)
