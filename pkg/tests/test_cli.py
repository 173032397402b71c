import json

import pytest

from surfinv.cli import main

S0 = ["--degree", "3", "--a", "1 1", "--b", "1 2 1 1 2 1"]
S1 = ["--degree", "3", "--a", "1 1 2 2", "--b", "1 2 1 1 2 1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_rank_three(capsys):
    code, out, _ = run(capsys, "group", *S0)
    assert code == 0
    assert "free abelian of rank 3 CERTIFIED" in out


def test_group_rank_four(capsys):
    code, out, _ = run(capsys, "group", "--degree", "4", "--a", "1 1 2 2 3 3",
                       "--b", "1 2 3 1 2 1 1 2 3 1 2 1")
    assert code == 0 and "rank 4 CERTIFIED" in out


def test_group_noncommuting_warns(capsys):
    code, _, err = run(capsys, "group", "--degree", "3", "--a", "1", "--b", "2")
    assert code == 0
    assert "warning: braids do not commute" in err


def test_group_inconclusive_exit_code(capsys):
    code, out, _ = run(capsys, "group", *S1, "--limits", "max_rules=5")
    assert code == 2 and "INCONCLUSIVE" in out


def test_invariant_examples(capsys):
    assert "Phi = 2*t^-4 + 21 + 4*t^2" in run(capsys, "invariant", *S1)[1]
    assert "Phi = 4*t^-2 + 21 + 2*t^4" in run(capsys, "invariant", *S0,
                                              "--cocycle", "builtin:theta_x")[1]
    assert "Phi = 27" in run(capsys, "invariant", *S0, "--cocycle", "builtin:zero")[1]


def test_invariant_table(capsys):
    _, out, _ = run(capsys, "invariant", *S1, "--table")
    assert "  + (b, a, c)" in out and "  - (c, b, a)" in out


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", *S0, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["invariant"]["terms"] == {"-2": 4, "0": 21, "4": 2}
    assert data["colorings"] == 27 and data["whiteVertices"] == 4


def test_output_independent_of_threads(capsys, monkeypatch):
    outputs = []
    for threads in ("1", "3", "8"):
        monkeypatch.setenv("SURFINV_THREADS", threads)
        outputs.append(run(capsys, "invariant", *S1, "--table")[1])
    assert outputs[0] == outputs[1] == outputs[2]


def test_movie_file_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "movie", *S0, "--format", "json")
    assert code == 0
    path = tmp_path / "movie.json"
    path.write_text(out)
    _, out2, _ = run(capsys, "invariant", "--movie", str(path))
    assert "Phi = 4*t^-2 + 21 + 2*t^4" in out2


def test_custom_quandle_and_cocycle_files(capsys, tmp_path):
    from surfinv.quandles import theta_x, trivial_quandle
    q = tmp_path / "q.json"
    q.write_text(trivial_quandle(3).to_json())
    c = tmp_path / "c.json"
    c.write_text(theta_x().to_json())
    _, out, _ = run(capsys, "invariant", *S0, "--quandle", str(q), "--cocycle", str(c))
    assert "Phi = 4*t^-2 + 21 + 2*t^4" in out


def test_triple_bound(capsys):
    code, out, _ = run(capsys, "triple-bound", "--max", "3")
    assert code == 0
    assert "lower bound 4 CERTIFIED" in out
    assert "triple point number of S_0 = 4" in out
    assert "consistent: 44295" in out


def test_triple_bound_small(capsys):
    out1 = run(capsys, "triple-bound", "--max", "1")[1]
    assert "all cases with a type (i) triple point are inconsistent" in out1
    assert "vacuous" in run(capsys, "triple-bound", "--max", "0")[1]


@pytest.mark.parametrize("argv", [
    ["group", "--degree", "3", "--a", "5", "--b", "1"],
    ["group", "--a", "1"],
    ["invariant", *S0, "--quandle", "builtin:Q9"],
    ["invariant", *S0, "--cocycle", "/nonexistent.json"],
    ["invariant", "--degree", "3", "--a", "1", "--b", "2"],
    ["group", *S0, "--limits", "bogus=3"],
    ["triple-bound", "--max", "7"],
])
def test_input_errors_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_search_exhaustion_exit_two(capsys):
    code, _, err = run(capsys, "invariant", *S1, "--limits", "max_states=2,max_extra=0")
    assert code == 2 and "max_states=2" in err
