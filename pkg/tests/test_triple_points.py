import itertools
from collections import Counter

import pytest

from surfinv.triple_points import (E_of, E_table, TriplePointProfile, all_profiles,
                                   case_label, certify_lower_bound, classify_type, hypotheses,
                                   pairing_consistent, weight_sweep)


def P(triple, eps, sign=1):
    return TriplePointProfile(tuple(triple), eps, sign)


@pytest.mark.parametrize("triple,kind", [("abc", "i"), ("aba", "ii"), ("aab", "iii"),
                                         ("abb", "iv"), ("ccc", "v")])
def test_classify(triple, kind):
    assert classify_type(triple) == kind


def test_E_matches_case_table_exhaustively():
    for p in all_profiles():
        assert E_of(p) == E_table(p)


def test_case_two_example_pairs():
    assert pairing_consistent([P("abc", 1), P("abc", -1)])


def test_pairable_implies_zero_E_but_not_conversely():
    hyp = [P("abc", 1), P("acb", -1)]
    assert sum(map(E_of, hyp)) == 0
    assert not pairing_consistent(hyp)


def test_single_type_i_never_pairs():
    for p in all_profiles():
        if classify_type(p.color_triple) == "i":
            assert not pairing_consistent([p])


def test_sweep_verdicts():
    assert weight_sweep([P("abc", 1, 1), P("abc", -1, -1)]).verdict() == "W1"
    assert weight_sweep([P("abc", 1, 1), P("abc", -1, 1)]).verdict() == "W2"
    assert weight_sweep([P("aab", 1, 1)]).verdict() == "W1"


def test_max_zero_is_vacuous():
    report = certify_lower_bound(0)
    assert report.hypotheses == 1 and report.certified and report.lower_bound == 1


def test_max_one_has_no_consistent_type_i():
    report = certify_lower_bound(1)
    assert report.certified
    assert set(report.verdict_counts()) == {"0", "no type (i)"}


def test_enumerator_agrees_with_brute_force():
    fast = certify_lower_bound(2)
    hyps = list(hypotheses(2))
    kept = [h for h in hyps if pairing_consistent(h)]
    assert fast.hypotheses == len(hyps)
    assert len(fast.cases) == len(kept)
    slow = Counter((case_label(h), weight_sweep(h).verdict()) for h in kept)
    assert Counter((c.case, c.verdict) for c in fast.cases) == slow


@pytest.fixture(scope="module")
def report3():
    return certify_lower_bound(3)


def test_max_three_certified(report3):
    assert report3.certified and report3.lower_bound == 4
    assert report3.hypotheses == 221815
    counts = report3.verdict_counts()
    assert set(counts) == {"0", "2", "3.1", "3.2", "no type (i)"}
    assert counts["3.2"].get("W3", 0) > 0


def test_case_records_recheck(report3):
    for rec in report3.cases[::97]:
        assert pairing_consistent(rec.profiles)
        assert weight_sweep(rec.profiles).verdict() == rec.verdict


def test_relabelling_symmetry(report3):
    seen = {tuple(sorted(rec.profiles)) for rec in report3.cases if rec.case != "no type (i)"}
    for rho in itertools.permutations("abc"):
        m = dict(zip("abc", rho))
        for profiles in sorted(seen)[:200]:
            moved = tuple(sorted(P("".join(m[s] for s in p.color_triple), p.epsilon,
                                   p.weight_sign) for p in profiles))
            assert moved in seen


def test_report_json(report3):
    d = report3.to_dict()
    assert d["lowerBound"] == 4 and d["consistent"] == len(report3.cases)
    assert "cases" in certify_lower_bound(1).to_dict(details=True)


def test_bounds_on_max():
    with pytest.raises(ValueError):
        certify_lower_bound(5)
    with pytest.raises(ValueError):
        certify_lower_bound(-1)
