import json

import pytest

from crucialperm import oracle
from crucialperm.errors import BudgetError
from crucialperm.formulas import length_bounds
from crucialperm.permcore import ALL_CLASSES, Params

RIGHT, BI, TRI, QUADRO = ALL_CLASSES


@pytest.mark.parametrize(
    "n, k, ell, cls, expected",
    [(6, 4, 3, BI, 25), (5, 4, 3, QUADRO, 1), (8, 4, 4, TRI, 540)],
)
def test_count_via_tableaux_examples(n, k, ell, cls, expected):
    assert oracle.count_via_tableaux(n, Params(k, ell), cls) == expected


def test_count_via_tableaux_budget():
    with pytest.raises(BudgetError):
        oracle.count_via_tableaux(17, Params(6, 5), BI)


# --- cross validation ---------------------------------------------------------


def test_cross_validate_agree():
    r = oracle.cross_validate(Params(4, 3), TRI, 6)
    assert r.verdict == oracle.AGREE
    assert (r.brute_count, r.tableau_count, r.formula_count) == (25, 25, 25)


def test_cross_validate_reports_quadro_4_4_disagreement():
    r = oracle.cross_validate(Params(4, 4), QUADRO, 8)
    assert r.verdict == oracle.DISAGREE
    assert r.documented
    assert (r.brute_count, r.tableau_count) == (324, 324)
    assert r.formula_counts == {"quadrocrucial_next": 756}
    assert any("756" in note and "324" in note for note in r.notes)


def test_cross_validate_flags_unexplained_disagreement():
    r = oracle.cross_validate(Params(5, 3), TRI, 7, tri_policy="printed")
    assert r.verdict == oracle.DISAGREE
    assert not r.documented
    assert not oracle.is_acceptable(r)
    assert any("UNEXPLAINED" in note for note in r.notes)


def test_cross_validate_records_budget_overrun():
    r = oracle.cross_validate(Params(4, 3), BI, 6, brute_cap=5)
    assert r.brute_count is None
    assert any("skipped" in note for note in r.notes)
    assert r.verdict == oracle.AGREE and r.count == 25


def test_cross_validate_without_formula():
    r = oracle.cross_validate(Params(4, 4), BI, 9)
    assert r.verdict == oracle.FORMULA_NA
    assert r.brute_count == r.tableau_count == 1764
    assert any(note.startswith("bound anomaly") for note in r.notes)


def test_verbose_report_has_partition_counts():
    r = oracle.cross_validate(Params(4, 3), BI, 6, verbose=True)
    assert len(r.partition_counts) == 6
    assert sum(r.partition_counts) == r.brute_count
    assert "partition_counts" in r.to_dict()
    assert "elapsed_ms" not in r.to_dict()
    assert "elapsed_ms" in r.to_dict(timing=True)


# --- adjudication ----------------------------------------------------------------------


def test_adjudication_5_3():
    adj = oracle.adjudicate_tricrucial_next(Params(5, 3))
    assert adj["brute_count"] == 36
    assert adj["policies"]["corrected"] == {"value": 36, "matches": True}
    assert adj["policies"]["printed"]["matches"] is False
    assert "delta_orientation" not in adj


def test_adjudication_5_4():
    adj = oracle.adjudicate_tricrucial_next(Params(5, 4))
    assert adj["brute_count"] == 376
    assert adj["policies"]["corrected"]["matches"]
    assert adj["delta_orientation"]["printed"]["matches"]
    assert not adj["delta_orientation"]["swapped"]["matches"]


# --- lemmas ----------------------------------------------------------------------------


def test_verify_lemma_examples():
    assert oracle.verify_lemma("hook_row_chain", Params(4, 4))
    case = oracle.check_lemma_case("hook_row_chain", Params(4, 4))
    assert case.closed_form == case.enumerated == 4
    assert oracle.verify_lemma("full_rows_both_chains", Params(5, 4))
    assert oracle.verify_lemma("corner_bijection", Params(5, 4))


def test_bijection_check_details():
    case = oracle.check_lemma_case("corner_bijection", Params(5, 4))
    assert case.ok and case.detail.startswith("bijective")


def test_lemma_family_out_of_domain_mismatch_is_visible():
    # the closed form k+2l-7 is not meant for k = 4; the family there is larger
    shape, member = oracle.lemma_family("wide_both_chains", Params(4, 4))
    assert shape == (3, 3, 2)
    assert sum(1 for t in oracle._syt(shape) if member(t)) == 18


# --- sweep -------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def sweep_4():
    limits = oracle.SweepLimits(4, 4, 8)
    return limits, oracle.full_sweep(limits)


def test_sweep_cells_cover_bounds():
    cells = list(oracle.sweep_cells(oracle.SweepLimits(4, 4, 20)))
    assert (RIGHT, Params(3, 4), 4) in cells
    assert all(p.k >= p.ell for cls, p, _ in cells if cls is not RIGHT)
    tri_43 = [n for cls, p, n in cells if cls is TRI and p == Params(4, 3)]
    assert tri_43 == [4, 5, 6, 7]


def test_sweep_small_is_acceptable(sweep_4):
    _, reports = sweep_4
    assert all(oracle.is_acceptable(r) for r in reports)
    disagreements = {(r.cls, r.params, r.n) for r in reports if r.verdict == oracle.DISAGREE}
    assert disagreements == {(QUADRO, Params(4, 4), 8), (TRI, Params(3, 3), 5), (QUADRO, Params(3, 3), 5)}


def test_sweep_verdicts_follow_counts(sweep_4):
    _, reports = sweep_4
    for r in reports:
        counts = {c for c in (r.brute_count, r.tableau_count, *r.formula_counts.values()) if c is not None}
        assert (r.verdict == oracle.DISAGREE) == (len(counts) > 1)


def test_sweep_below_minimum_is_empty(sweep_4):
    _, reports = sweep_4
    for r in reports:
        if r.n < length_bounds(r.params, r.cls)[0]:
            assert r.brute_count == r.tableau_count == 0


def test_sweep_flags_4_3_bound_anomaly(sweep_4):
    _, reports = sweep_4
    flagged = [r for r in reports if r.params == Params(4, 3) and r.n == 6 and any("bound anomaly" in x for x in r.notes)]
    assert {r.cls for r in flagged} == set(ALL_CLASSES)


def test_report_serialization_is_stable(sweep_4):
    limits, reports = sweep_4
    text = oracle.dumps(oracle.sweep_document(limits, reports))
    assert oracle.dumps(json.loads(text)) == text
    again = oracle.dumps(oracle.sweep_document(limits, oracle.full_sweep(limits)))
    assert again == text
