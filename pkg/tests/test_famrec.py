from fractions import Fraction
from itertools import permutations

import pytest

from c2finite.c2 import ExtractionParams, c2_guess, c2_reduce, c2_verify, extract_recurrence
from c2finite.catalog import get_family
from c2finite.cfinite import CFiniteSeq, cf_const
from c2finite.famrec import (QX, calibrate_g2_offset, derangements, family_recurrence_verify,
                             g2_independence, g2_scalar_recurrence, g2_transfer, g2_transfer_cfmatrix,
                             g4_combined_stream, g4_dichromatic, g4_dichromatic_stream, g4_evaluations,
                             g4_split_stream, nonderangement_diagnostic, nonderangements_over)
from c2finite.graphpoly import dichromatic, dichromatic_bruteforce, independence_poly
from c2finite.graphs import materialize, materialize_all
from c2finite.rings import MPoly

G2, G4 = get_family("G2"), get_family("G4")
x = MPoly.var(("x",), "x")


def oracle_g2(n):
    return independence_poly(materialize(G2, n))


# --- G2 independence --------------------------------------------------------

def test_g2_transfer_matches_graphs():
    rep = family_recurrence_verify(G2, independence_poly, g2_transfer(), 6)
    assert rep.ok and rep.checked_upto == 6
    assert rep.to_json()["status"] == "ok"


def test_g2_small_values():
    assert g2_independence(0) == 1 + x
    assert g2_independence(1) == 1 + 3 * x + x * x
    assert g2_independence(2) == 1 + 6 * x + 9 * x * x + 3 * x ** 3


def test_g2_calibrated_offset_is_one():
    assert calibrate_g2_offset(oracle_g2) == 1
    assert all(g2_scalar_recurrence(n, 1).as_poly() == oracle_g2(n) for n in range(6))


def test_g2_uncalibrated_form_mismatches_at_two():
    rep = family_recurrence_verify(G2, independence_poly, lambda n: g2_scalar_recurrence(n, 0), 5)
    assert not rep.ok and rep.mismatch_at == 2
    assert rep.to_json()["status"]["mismatch_at"] == 2


def test_g2_extraction_closes_the_loop():
    one = QX.one
    xq = QX.convert(x)
    M = g2_transfer_cfmatrix()
    rec = extract_recurrence(M, cf_const(QX, one), [xq, one], ExtractionParams(4, 3, 24),
                             output=[1, 1], mode="functional")
    rec = c2_reduce(rec)
    assert rec.order == 2
    assert c2_verify(rec, lambda n: QX.convert(oracle_g2(n)), 6).ok


def test_g2_guess_recovers_three_term_relation():
    terms = [QX.convert(v) for v in g2_transfer().values(19)]
    n_seq = CFiniteSeq(QX, [-QX.one, 2 * QX.one], [QX.zero, QX.one])
    rec = c2_guess(terms, 2, [cf_const(QX, QX.one), n_seq], holdout=8, domain=QX)
    assert rec.terms(20) == terms
    xq = QX.convert(x)
    for n in range(6):
        q0, q1, q2 = (c.term(n) for c in rec.coeffs)
        assert q1 / q2 == QX.one + (n + 2) * xq
        assert q0 / q2 == xq * (QX.one + (n + 1) * xq)


# --- G4 dichromatic ---------------------------------------------------------

def test_g4_split_recurrence_matches_graphs():
    for m, (z0, z1) in enumerate(g4_split_stream(2)):
        assert (z0 + z1).as_poly() == dichromatic_bruteforce(materialize(G4, m))
    rep = family_recurrence_verify(G4, dichromatic, g4_dichromatic, 5)
    assert rep.ok


def test_g4_combined_recurrence_agrees_with_split():
    split = g4_dichromatic_stream(6)
    assert [z.as_poly() for z in g4_combined_stream(6)] == split


def test_g4_shorter_combined_form_disagrees():
    printed = g4_combined_stream(3, printed=True)
    full = g4_dichromatic_stream(3)
    assert [p.as_poly() for p in printed[:2]] == full[:2]
    assert printed[2] != full[2]


def test_g4_tables():
    assert [int(v) for v in g4_evaluations(6, (2, 1))] == \
        [int(dichromatic(g).eval({"X": 2, "Y": 1})) for g in materialize_all(G4, 6)]
    assert g4_dichromatic(0).eval({"X": 1, "Y": 1}) == 8


def test_g4_rejects_negative():
    with pytest.raises(ValueError):
        g4_dichromatic(-1)


# --- derangement diagnostic -------------------------------------------------

def test_derangements_bruteforce():
    for n in range(7):
        brute = sum(1 for p in permutations(range(n)) if all(p[i] != i for i in range(n)))
        assert derangements(n) == brute


def test_nonderangement_alignment():
    d = nonderangement_diagnostic(6)
    assert d["all_match_n"] is True
    assert d["all_match_n+1"] is False
    assert [nonderangements_over(n) for n in range(4)] == [2, 5, 19, 91]
    assert all(isinstance(nonderangements_over(n), Fraction) for n in range(3))
