import pytest

from c2finite.c2 import fib
from c2finite.famrec import g2_independence
from c2finite.oeis import align, crosscheck, load_bfile, normalize_id, parse_bfile, write_bfile
from conftest import FIXTURES


def test_parse_and_comments():
    ref = parse_bfile("# header\n0 1\n1 1 # trailing\n\n2 2\n")
    assert ref == [(0, 1), (1, 1), (2, 2)]


@pytest.mark.parametrize("text", ["0 1\n2 3\n", "0\n", "a b\n"])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_bfile(text)


def test_normalize_id():
    assert normalize_id("54783") == "A054783"
    assert normalize_id("a000045") == "A000045"
    with pytest.raises(ValueError):
        normalize_id("B12")


def test_align_finds_shift():
    ref = [(n, n * n) for n in range(1, 20)]
    ours = [n * n for n in range(15)]
    rep = align("A000290", ours, ref)
    assert rep.ok and rep.shift == 0 and rep.agree >= 5
    rep2 = align("A000290", [(n + 2) ** 2 for n in range(15)], ref)
    assert rep2.ok and rep2.shift == -2


def test_align_reports_mismatch():
    ref = [(n, 2 ** n) for n in range(20)]
    rep = align("A000079", [3 ** n for n in range(20)], ref)
    assert not rep.ok and rep.first_mismatch is not None
    assert rep.to_json()["ok"] is False


def test_write_then_parse_round_trip():
    text = write_bfile([5, 8, 13], offset=4, header="local\ntest")
    assert parse_bfile(text) == [(4, 5), (5, 8), (6, 13)]


def test_fibonacci_squares_fixture():
    rep = crosscheck("A054783", [fib(n * n) for n in range(25)], path=FIXTURES / "b054783.txt")
    assert rep.ok and rep.shift == 0


def test_fibonacci_triangular_fixture():
    ours = [fib(n * (n - 1) // 2) for n in range(25)]
    rep = crosscheck("A081667", ours, path=FIXTURES / "b081667.txt")
    assert rep.ok and rep.shift == 1


def test_g2_independent_sets_fixture():
    ours = [int(g2_independence(n).eval({"x": 1})) for n in range(12)]
    rep = crosscheck("A052169", ours, path=FIXTURES / "b052169.txt")
    assert rep.ok and rep.shift == 0


def test_network_disabled_needs_path():
    with pytest.raises(ValueError):
        crosscheck("A000045", [0, 1, 1, 2, 3])


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_bfile(tmp_path / "nope.txt")
