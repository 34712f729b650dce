import json
import subprocess
import sys
from pathlib import Path

import pytest

from pcalab.cli import ParseError, make_pca, parse_term, run
from pcalab.core import Value, eval_term
from pcalab.k1 import K1_PCA

GOLDEN = Path(__file__).parent / "golden" / "cli.json"

CASES = [
    ["eval", "#15 #7"],
    ["eval", "--trace", "S K K 5"],
    ["eval", "K 3 (IFZ 0 1 2)"],
    ["eval", "--pca", "trivial", "S K K *"],
    ["eval", "--fuel", "3", "S K K 5"],
    ["eval", "(\\x y. y x) 4 SUCC"],
    ["eval", "(\\x. x"],
    ["eval", "--pca", "nope", "K"],
    ["k1", "run", "--trace", "#10", "7"],
    ["k1", "run", "#28", "0", "4", "9"],
    ["s19", "run", "<1,1>", "4"],
    ["s19", "run", "--trace", "<5,2,<3,1>,<6,3,1,<4,3,<9,1,2>,<2,3,25>>>>", "3", "4"],
    ["s19", "run", "<7,1,0>", "3"],
    ["s19", "compile", "<1,1>", "6"],
    ["oracle", "run", "--oracle", "double", "--trace", "QUERY", "7"],
    ["oracle", "run", "--oracle", "half", "QUERY", "3"],
    ["functional", "run", "--functional", "bounded_E(3)", "QUERY", "LIFT (K 0)"],
    ["strict", "eval", "EMBED SUCC 7"],
    ["strict", "eval", "--clauses", "3", "EMBED SUCC 7"],
    ["laws", "--pca", "k1", "--samples", "30", "--seed", "4"],
]


def invoke(argv):
    proc = subprocess.run([sys.executable, "-m", "pcalab", *argv], capture_output=True)
    return {"argv": argv, "exit": proc.returncode, "stdout": proc.stdout.decode()}


def record():
    GOLDEN.write_text(json.dumps([invoke(a) for a in CASES], indent=1) + "\n")


@pytest.fixture(scope="module")
def golden():
    return json.loads(GOLDEN.read_text())


def test_golden_covers_cases(golden):
    assert len(CASES) == 20
    assert [g["argv"] for g in golden] == CASES


@pytest.mark.parametrize("i", range(len(CASES)))
def test_golden_byte_identical(golden, i):
    first, second = invoke(CASES[i]), invoke(CASES[i])
    assert first == second
    assert first == golden[i]


def test_parse_terms():
    t = parse_term("S K K 5")
    assert eval_term(K1_PCA, t, 100) == Value(5)
    t = parse_term("(\\x y. x) 7 8")
    assert eval_term(K1_PCA, t, 1000) == Value(7)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_term("K (K")
    assert exc.value.line == 1 and exc.value.column == 5


def test_selectors():
    assert make_pca("k1").name == "k1"
    assert make_pca("strict:k1").name == "strict:k1"
    assert make_pca("k1[double]").name == "k1[double]"
    assert make_pca("k1[at_zero]").name == "k1[at_zero]"
    assert make_pca("k1^at_zero").name == "k1^at_zero"
    with pytest.raises(Exception):
        make_pca("nope")


def test_exit_codes():
    assert run(["eval", "SUCC 4"]) == (0, ["VALUE 5"])
    assert run(["eval", "--fuel", "0", "SUCC 4"]) == (1, ["EXHAUSTED"])
    assert run(["eval", "#12 1 2 3 4"])[0] in (0, 1)
    code, lines = run(["eval", "--fuel", "-1", "K"])
    assert code == 2 and lines[0].startswith("ERROR")


def test_numerals_and_naturals():
    # N<k> is a Curry numeral, bare digits are the natural as data
    assert run(["eval", "P0 (P1 N1)"]) == (0, ["VALUE 0"])
    assert run(["eval", "--pca", "strict:k1", "EMBED SUCC 7"]) == (0, ["VALUE 8"])


if __name__ == "__main__" and "--record" in sys.argv:
    record()
