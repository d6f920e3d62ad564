import csv

import pytest

from modlog.cli import main
from modlog.parser import parse_facts

TC = "R(?x,?y), R(?y,?z) -> R(?x,?z).\n"


@pytest.fixture
def files(tmp_path):
    prog = tmp_path / "prog.dl"
    prog.write_text(TC)
    facts = tmp_path / "facts.dl"
    assert main(["generate", "--kind", "chain", "--n", "3", "-o", str(facts)]) == 0
    return tmp_path, prog, facts


def test_generate_shapes(tmp_path):
    out = tmp_path / "f.dl"
    main(["generate", "--kind", "chain", "--n", "3", "-o", str(out)])
    assert out.read_text() == "R(c0,c1).\nR(c1,c2).\nR(c2,c3).\n"
    main(["generate", "--kind", "cycle", "--n", "3", "-o", str(out)])
    assert "R(c3,c1)." in out.read_text() and len(parse_facts(out.read_text())) == 3
    a, b = tmp_path / "a.dl", tmp_path / "b.dl"
    main(["generate", "--kind", "dag", "--n", "10", "--edges", "20", "--seed", "7", "-o", str(a)])
    main(["generate", "--kind", "dag", "--n", "10", "--edges", "20", "--seed", "7", "-o", str(b)])
    assert a.read_text() == b.read_text() and len(parse_facts(a.read_text())) == 20


def test_generate_rejects_bad_params(tmp_path):
    assert main(["generate", "--kind", "chain", "--n", "0"]) == 1
    assert main(["generate", "--kind", "dag", "--n", "3", "--edges", "9"]) == 1
    with pytest.raises(SystemExit) as e:
        main(["generate", "--kind", "star", "--n", "3"])
    assert e.value.code == 1


def test_materialise_writes_sorted_output_and_stats(files, capsys):
    d, prog, facts = files
    out, stats = d / "out.dl", d / "stats.csv"
    assert main(["materialise", "-p", str(prog), "-f", str(facts), "-o", str(out),
                 "--stats", str(stats)]) == 0
    assert len(parse_facts(out.read_text())) == 6
    assert out.read_text().splitlines() == sorted(out.read_text().splitlines())
    err = capsys.readouterr().err
    assert "|I|" in err and " 6" in err
    rows = list(csv.DictReader(stats.open()))
    assert list(rows[0]) == ["phase", "rule_instances", "join_results", "facts_deleted",
                             "facts_rederived", "facts_added", "wall_ms"]
    assert rows[0]["phase"] == "materialise"


def test_materialise_empty_and_errors(files, tmp_path):
    d, prog, facts = files
    empty = d / "empty.dl"
    empty.write_text("")
    out = d / "out.dl"
    assert main(["materialise", "-p", str(prog), "-f", str(empty), "-o", str(out)]) == 0
    assert out.read_text() == ""
    bad = d / "bad.dl"
    bad.write_text("R(?x,?y) -> R(?y,?x)")
    assert main(["materialise", "-p", str(bad), "-f", str(facts)]) == 1
    neg = d / "neg.dl"
    neg.write_text("P(?x), not Q(?x) -> Q(?x).\n")
    assert main(["materialise", "-p", str(neg), "-f", str(facts)]) == 2


def test_update_round_trip(files):
    d, prog, facts = files
    orig, out, back = d / "orig.dl", d / "out.dl", d / "back.dl"
    main(["materialise", "-p", str(prog), "-f", str(facts), "-o", str(orig)])
    dels = d / "del.dl"
    dels.write_text("R(c1,c2).\n")
    assert main(["update", "-p", str(prog), "-f", str(facts), "--delete", str(dels), "-o", str(out)]) == 0
    assert "R(c0,c2)." not in out.read_text()
    # reinserting the sample gives back the original file
    short = d / "short.dl"
    short.write_text("R(c0,c1).\nR(c2,c3).\n")
    assert main(["update", "-p", str(prog), "-f", str(short), "--insert", str(dels), "-o", str(back)]) == 0
    assert back.read_text() == orig.read_text()
    none = d / "none.dl"
    none.write_text("")
    assert main(["update", "-p", str(prog), "-f", str(facts), "--delete", str(none),
                 "--insert", str(none), "-o", str(out)]) == 0
    assert out.read_text() == orig.read_text()
    assert main(["update", "-p", str(prog), "-f", str(facts), "--delete", str(dels),
                 "--insert", str(dels), "-o", str(out)]) == 0
    assert out.read_text() == orig.read_text()


def test_verify(files, capsys):
    d, prog, facts = files
    assert main(["verify", "-p", str(prog), "-f", str(facts)]) == 0
    assert "OK" in capsys.readouterr().out
    bogus = d / "bogus.dl"
    bogus.write_text("R(c0,c1).\n")
    assert main(["verify", "-p", str(prog), "-f", str(facts), "--against", str(bogus)]) == 3
    empty = d / "empty_prog.dl"
    empty.write_text("")
    assert main(["verify", "-p", str(empty), "-f", str(facts)]) == 0
