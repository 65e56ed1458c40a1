import json

import pytest

from kafmp.automata import Nfa, antimirov_automaton, language_equiv
from kafmp.cli import main
from kafmp.syntax import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_roundtrip(capsys):
    code, out, _ = run(capsys, "parse", " (a . b)* . a ")
    assert code == 0 and out.strip() == "(a.b)*.a"
    code, out, _ = run(capsys, "parse", out.strip())
    assert out.strip() == "(a.b)*.a"


def test_parse_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["parse", "a+"])
    assert info.value.code == 2
    assert "position 2" in capsys.readouterr().err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_member_and_enumerate(capsys):
    assert run(capsys, "member", "aba", "a.(b.a)*")[:2] == (0, "yes\n")
    assert run(capsys, "member", "ab", "a.(b.a)*")[:2] == (1, "no\n")
    code, out, _ = run(capsys, "enumerate", "(a.b)*.a", "--maxlen", "3")
    assert out.split() == ["a", "aba"]
    code, out, _ = run(capsys, "enumerate", "1", "--json")
    assert json.loads(out) == [""]


def test_equiv(capsys):
    assert run(capsys, "equiv", "(a.b)*.a", "(a.b)*.a")[:2] == (0, "equivalent\n")
    code, out, _ = run(capsys, "equiv", "a.b", "b.a", "--json")
    assert code == 1 and json.loads(out) == {"equivalent": False, "counterexample": "ab",
                                             "in": "left"}


def test_countermodel(capsys):
    code, out, _ = run(capsys, "countermodel", "a.b", "b.a")
    assert code == 1
    data = json.loads(out)
    assert data["word"] == "ab" and data["point"] == [0, 2]
    code, out, _ = run(capsys, "countermodel", "a*", "1+a.a*")
    assert code == 0


def test_antimirov_dot_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "antimirov", "a.(b.a)*", "--dot")
    assert code == 0 and out.count("shape=doublecircle") + out.count("shape=circle") == 5
    code, out, _ = run(capsys, "antimirov", "a.(b.a)*", "--json")
    path = tmp_path / "a.json"
    path.write_text(out)
    A = Nfa.from_json(out)
    assert A.size == 5
    code, out, _ = run(capsys, "solve", str(path), "--json")
    data = json.loads(out)
    assert len(data["sol"]) == 5
    soli = parse(data["soli"])
    assert language_equiv(antimirov_automaton(soli), antimirov_automaton(parse("a.(b.a)*")))


def test_solve_expression(capsys):
    code, out, _ = run(capsys, "solve", "(a.b)*.a", "--simplify")
    assert code == 0 and out.splitlines()[-1].startswith("soli = ")


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", "a.(b.a)*")
    assert code == 0 and "6 elements" in out
    code, out, _ = run(capsys, "transform", "a.(b.a)*", "--relation", "d_ba", "--json")
    data = json.loads(out)
    assert data["states"][data["final"][0]] == "d_ba"
    code, out, _ = run(capsys, "transform", "a.(b.a)*", "--relation", "[[0, 0]]")
    assert code == 0 and "R" in out
    code, _, err = run(capsys, "transform", "a.(b.a)*", "--relation", "nonsense")
    assert code == 2 and "relation" in err


def test_budget_error(capsys):
    code, _, err = run(capsys, "transform", "(a+b)*.a.(a+b).(a+b)", "--budget", "3")
    assert code == 2 and "exceeds" in err


def test_interp(capsys):
    code, out, _ = run(capsys, "interp", "a.b*.a", "--model", "canonical:a.(b.a)*", "--json")
    assert sorted(json.loads(out)["value"]) == ["d_a", "d_aa=empty"]
    code, out, _ = run(capsys, "interp", "a.b", "--model", "word:ab", "--json")
    assert json.loads(out)["value"] == [[0, 2]]
    code, out, _ = run(capsys, "interp", "a*", "--model", "rel:1", "--assign",
                       '{"a": [[0, 1]]}', "--json")
    assert json.loads(out)["value"] == [[0, 0], [0, 1], [1, 1]]
    first = run(capsys, "interp", "a.b+b", "--model", "rel:2", "--seed", "3")
    assert first == run(capsys, "interp", "a.b+b", "--model", "rel:2", "--seed", "3")
    assert run(capsys, "interp", "a", "--model", "bogus:1")[0] == 2


def test_fmp_check(capsys):
    code, out, _ = run(capsys, "fmp-check", "a*", "1+a.a*")
    assert code == 0 and "certified" in out
    code, out, _ = run(capsys, "fmp-check", "a.b", "b.a", "--json")
    assert code == 1 and json.loads(out)["certified"] is False


def test_lemma_suite(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("# two expressions\na*\n\n(a.b)*.a\n")
    code, out, _ = run(capsys, "lemma-suite", "--corpus", str(corpus))
    assert code == 0 and out.splitlines()[-1].endswith("0 failures")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
