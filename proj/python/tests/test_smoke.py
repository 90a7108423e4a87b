import math

import pytest

import ffoil


@pytest.fixture(scope="module")
def plus():
    return ffoil.Dataset.parse(ffoil.gen_task("plus"))


def test_dataset_roundtrip(plus):
    assert plus.target == "plus"
    assert len(plus.positives) == 6
    assert len(plus.closed_world_negatives()) == 21
    assert ffoil.Dataset.parse(plus.render()).positives == plus.positives


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="no positive tuples"):
        ffoil.Dataset.parse("type t: a\ntarget f(t)\n.\n")


def test_information():
    assert ffoil.information(6, 21) == pytest.approx(-math.log2(6 / 27))


def test_learn_both_modes(plus):
    ff = ffoil.learn(plus, mode="ffoil")
    assert ff.complete
    assert ff.peak_rows <= 6
    assert ff.definition.splitlines()[-1] == "plus(A,B,2)."
    fo = ffoil.learn(plus, mode="foil", allow_negation=False)
    assert fo.definition.splitlines()[0] == "plus(0,B,B)."
    assert fo.peak_rows == 27


def test_solve_counts_goals(plus):
    ff = ffoil.learn(plus, mode="ffoil").definition
    fo = ffoil.learn(plus, mode="foil", allow_negation=False).definition
    a = ffoil.solve(ff, plus, "plus(1,1,X)")
    b = ffoil.solve(fo, plus, "plus(1,1,X)")
    assert a["answers"] == [["1", "1", "2"]]
    assert b["answers"] == [["1", "1", "2"]]
    assert b["goal_count"] >= 5 * a["goal_count"]


def test_score_and_nonfunctional(plus):
    ff = ffoil.learn(plus).definition
    assert ffoil.score(ff, plus, plus.positives) == 1.0
    bad = ffoil.Dataset.parse("type t: a\ntype n: 1, 2\ntarget f(t, n)\na, 1\na, 2\n.\n")
    with pytest.raises(RuntimeError, match="target not functional"):
        ffoil.learn(bad)


def test_vocabulary():
    assert len(ffoil.list_vocabulary(3, 3)) == 40
    assert len(ffoil.list_vocabulary(4, 4, repeats=False)) == 65
    assert "gcd" in ffoil.task_names()
