import io
import json

import pytest

from c2finite.c2 import fib, fib_identity_recurrences
from c2finite.cli import main
from c2finite.cfinite import cf_const, cf_fibonacci
from c2finite.cfmatrix import CFMatrixSeq
from c2finite.graphs import materialize
from c2finite.catalog import get_family
from c2finite.graphpoly import dichromatic
from c2finite.rings import QQ
from conftest import FIXTURES


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_seq_terms_and_ops():
    code, out = run("seq", "--seq", "fib", "--count", "8")
    assert code == 0 and json.loads(out)["terms"] == ["0", "1", "1", "2", "3", "5", "8", "13"]
    code, out = run("seq", "--seq", "fib", "--op", "mul", "--other", "lucas", "--count", "6")
    assert json.loads(out)["terms"] == [str(fib(2 * n)) for n in range(6)]
    code, out = run("seq", "--seq", "fib", "--op", "subseq", "--t", "3", "--r", "1", "--count", "5")
    assert json.loads(out)["terms"] == [str(fib(3 * n + 1)) for n in range(5)]
    code, out = run("seq", "--seq", "geom:2", "--op", "zero-pattern")
    assert code == 0 and "period" in out


def test_seq_add_needs_other():
    assert run("seq", "--seq", "fib", "--op", "add")[0] == 2


def test_subseq_with_verify(tmp_path):
    path = tmp_path / "fib.json"
    path.write_text(json.dumps(cf_fibonacci(QQ).to_json()))
    code, out = run("subseq", "--seq", str(path), "--c", "2", "--d", "1", "--verify", "15")
    obj = json.loads(out)
    assert code == 0 and obj["verify"]["ok"]


def test_extract_from_matrix_json(tmp_path):
    k = lambda c: cf_const(QQ, c)  # noqa: E731
    M = CFMatrixSeq(QQ, [[k(1), k(1)], [k(1), k(0)]])
    path = tmp_path / "m.json"
    path.write_text(json.dumps(M.to_json()))
    code, out = run("extract", "--matrix", str(path), "--v0", "1,0", "--output", "1",
                    "--mode", "functional", "--params", "4,3,24")
    assert code == 0
    from c2finite.c2 import C2Recurrence
    rec = C2Recurrence.from_json(json.loads(out)["recurrence"])
    assert rec.terms(15) == [fib(n) for n in range(15)]


def test_verify_good_and_bad(tmp_path):
    sq, _ = fib_identity_recurrences(20)
    rec = tmp_path / "rec.json"
    rec.write_text(json.dumps(sq.to_json()))
    good = [fib(n * n) for n in range(16)]
    terms = tmp_path / "t.json"
    terms.write_text(json.dumps(good))
    assert run("verify", "--rec", str(rec), "--terms", str(terms))[0] == 0
    good[10] += 1
    terms.write_text(json.dumps(good))
    code, out = run("verify", "--rec", str(rec), "--terms", str(terms))
    assert code == 1 and json.loads(out)["first_violation"] == 8


def test_guess_g2():
    code, out = run("guess", "--g2-terms", "20", "--order", "2", "--ansatz", "1,n")
    assert code == 0 and json.loads(out)["recurrence"]["proof_status"] == "guessed-holdout"


def test_guess_needs_input():
    assert run("guess", "--order", "2")[0] == 2


def test_family_commands():
    code, out = run("family", "list")
    assert code == 0 and "G4" in out and "grid" in out
    code, out = run("family", "materialize", "--name", "G4", "--n", "1", "--format", "dot")
    assert out.count("--") == 7
    code, out = run("family", "counts", "--name", "G5", "--n", "5")
    assert code == 0 and "False" not in out
    code, out = run("family", "analyze", "--name", "G3")
    assert json.loads(out)["bounded"] is False
    assert run("family", "materialize", "--name", "nope")[0] == 2


def test_family_spec_round_trip(tmp_path):
    code, out = run("family", "spec", "--name", "G6")
    path = tmp_path / "g6.json"
    path.write_text(out)
    code, out2 = run("family", "materialize", "--spec", str(path), "--n", "2")
    code, out3 = run("family", "materialize", "--name", "G6", "--n", "2")
    assert out2 == out3


def test_poly_commands(tmp_path):
    code, out = run("poly", "tutte", "--name", "G4", "--n", "0")
    assert code == 0
    code, out = run("poly", "chromatic", "--name", "G4", "--n", "1", "--q", "3")
    assert json.loads(out)["value"] == "30"
    code, out = run("poly", "dichromatic", "--name", "G4", "--n", "1", "--eval", "1,1")
    assert json.loads(out)["value"] == str(2 ** 7)
    g = tmp_path / "k3.txt"
    g.write_text("# vertices 3 edges 3\n0 1\n1 2\n0 2\n")
    code, out = run("poly", "independence", "--graph", str(g), "--eval", "1")
    assert json.loads(out)["value"] == "4"
    assert run("poly", "chromatic", "--name", "G4")[0] == 2


def test_famrec_g4_tables():
    code, out = run("famrec", "g4", "--eval", "3,-1")
    rows = out.strip().splitlines()
    assert rows[0] == "m,value" and len(rows) == 8
    vals = [int(r.split(",")[1]) for r in rows[1:4]]
    direct = [int(dichromatic(materialize(get_family("G4"), m)).eval({"X": 3, "Y": -1}))
              for m in range(3)]
    assert vals == direct


def test_famrec_verify_exit_codes():
    assert run("famrec", "g2", "--verify", "5")[0] == 0
    assert run("famrec", "g2", "--printed", "--verify", "5")[0] == 1
    assert run("famrec", "g4", "--upto", "3", "--verify", "3")[0] == 0
    assert run("famrec", "g4", "--upto", "3", "--printed", "--verify", "3")[0] == 1


def test_oeis_with_fixture():
    code, out = run("oeis", "--id", "A054783", "--seq", "fib-square",
                    "--bfile", str(FIXTURES / "b054783.txt"))
    assert code == 0 and json.loads(out)["shift"] == 0
    code, _ = run("oeis", "--id", "A054783", "--seq", "fib-triangle",
                  "--bfile", str(FIXTURES / "b054783.txt"))
    assert code == 1
    code, _ = run("oeis", "--id", "A054783", "--seq", "fib-triangle", "--soft",
                  "--bfile", str(FIXTURES / "b054783.txt"))
    assert code == 0
    assert run("oeis", "--id", "A054783", "--seq", "fib-square")[0] == 2


def test_reproduce_reference():
    code, out = run("reproduce-paper", "--upto", "6")
    assert code == 0
    assert "4198550862" in out and "3011536790874" in out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["seq"], ["seq", "--seq", "/nonexistent.json"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bound_exceeded_exit_code(tmp_path):
    # rank pattern of period 4 cannot be found with p_max = 3
    seq = tmp_path / "s.json"
    from c2finite.cfinite import CFiniteSeq
    seq.write_text(json.dumps(CFiniteSeq(QQ, [-2, 2], [1, 2]).to_json()))
    assert run("subseq", "--seq", str(seq), "--c", "1", "--params", "4,3,24")[0] == 3
