"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (the lines are also
collected in the terminal summary) or as a script with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
from itertools import permutations
from pathlib import Path

from crucialperm import oracle
from crucialperm.cli import adjudications_for
from crucialperm.formulas import formulas_for, length_bounds, lemma_index_range
from crucialperm.permcore import ALL_CLASSES, Params, count_crucial, lds, lis, reverse
from crucialperm.rsk import inverse_rsk, rsk
from crucialperm.tableau import conjugate, enumerate_syt, hook_count, partitions, transpose

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a plain script
    ACCEPTANCE_LINES = {}

RIGHT, BI, TRI, QUADRO = ALL_CLASSES
REPORT = Path(__file__).resolve().parents[1] / "reports" / "verification_report.json"
REPORT_LIMITS = oracle.SweepLimits(5, 5, 9)


def record(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


_brute_cache: dict[tuple[int, int, int], tuple[dict, float]] = {}


def brute(params: Params, n: int):
    key = (params.k, params.ell, n)
    if key not in _brute_cache:
        start = time.perf_counter()
        counts = count_crucial(n, params, cap=max(n, 11), workers=1)
        _brute_cache[key] = (counts, time.perf_counter() - start)
    return _brute_cache[key]


# 1 -------------------------------------------------------------------------------


PAPER_CONSTANTS = [
    (BI, 4, 3, 25), (BI, 4, 4, 756),
    (TRI, 4, 3, 25), (TRI, 4, 4, 540),
    (QUADRO, 4, 3, 25), (QUADRO, 4, 4, 756),
]


def test_criterion_1_paper_constants():
    failures = []
    for cls, k, ell, stated in PAPER_CONSTANTS:
        params, n = Params(k, ell), k + 2 * ell - 4
        counts, brute_s = brute(params, n)
        start = time.perf_counter()
        tab = oracle.count_via_tableaux(n, params, cls)
        tab_s = time.perf_counter() - start
        if counts[cls] != stated or tab != stated or brute_s > 60 or tab_s > 60:
            failures.append(
                f"{cls.value} {params} n={n}: stated {stated}, brute force {counts[cls]} ({brute_s:.1f}s), "
                f"tableau pairs {tab} ({tab_s:.1f}s)"
            )
    detail = f"{len(PAPER_CONSTANTS) - len(failures)}/{len(PAPER_CONSTANTS)} constants reproduced"
    if failures:
        detail += "; " + "; ".join(failures)
    line = record(1, not failures, detail)
    assert not failures, line


# 2 -------------------------------------------------------------------------------


def _criterion_2_cells():
    for k, ell in [(3, 3), (4, 3), (3, 4), (4, 4)]:
        yield "right_crucial_next", RIGHT, Params(k, ell), k + ell - 2
    for k, ell in [(4, 3), (5, 3), (4, 4)]:
        yield "tricrucial_min", TRI, Params(k, ell), k + 2 * ell - 5
    for k in (4, 5):
        for n in range(k + 1, 2 * k - 1):
            yield "bicrucial_k3", BI, Params(k, 3), n
            yield "tricrucial_k3", TRI, Params(k, 3), n
            yield "quadrocrucial_k3", QUADRO, Params(k, 3), n
    for k, ell in [(5, 3), (5, 4)]:
        yield "quadrocrucial_next", QUADRO, Params(k, ell), k + 2 * ell - 4
    yield "bicrucial_next", BI, Params(5, 3), 7


def test_criterion_2_formulas_vs_brute_force():
    failures, checked, slowest = [], 0, 0.0
    for theorem, cls, params, n in _criterion_2_cells():
        values = {r.theorem_id: r.value for r in formulas_for(cls, params, n)}
        counts, seconds = brute(params, n)
        slowest = max(slowest, seconds)
        checked += 1
        if theorem not in values:
            failures.append(f"{theorem} does not cover {params} n={n}")
        elif values[theorem] != counts[cls] or seconds > 300:
            failures.append(f"{theorem} {params} n={n}: formula {values[theorem]}, brute force {counts[cls]}")
    detail = f"{checked - len(failures)}/{checked} formula cells exact (slowest brute force {slowest:.1f}s)"
    if failures:
        detail += "; " + "; ".join(failures)
    line = record(2, not failures, detail)
    assert not failures, line


# 3 -------------------------------------------------------------------------------


def test_criterion_3_characterization_equivalence():
    failures, checked = [], 0
    for k in range(3, 6):
        for ell in range(3, 6):
            params = Params(k, ell)
            classes = ALL_CLASSES if k >= ell else (RIGHT,)
            for n in range(1, 10):
                counts, _ = brute(params, n)
                for cls in classes:
                    checked += 1
                    tab = oracle.count_via_tableaux(n, params, cls)
                    if tab != counts[cls]:
                        failures.append(f"{cls.value} {params} n={n}: brute {counts[cls]} vs tableau {tab}")
    detail = f"{checked - len(failures)}/{checked} (class, k, l, n) cells equal"
    if failures:
        detail += "; " + "; ".join(failures[:10])
    line = record(3, not failures, detail)
    assert not failures, line


# 4 -------------------------------------------------------------------------------


def _criterion_4_cases():
    for k in range(3, 7):
        for ell in range(3, 7):
            for lemma in ("corner_split", "wide_inner_corner", "wide_outer_corner",
                          "hook_row_chain", "wide_both_chains", "tall_both_chains"):
                yield lemma, Params(k, ell)
    for k in range(4, 8):
        yield "two_row_column_chain", Params(k, 3)
    for k in range(5, 9):
        yield "full_rows_both_chains", Params(k, k - 1)
    for k in range(3, 8):
        for ell in range(3, k + 1):
            yield "corner_bijection", Params(k, ell)


def test_criterion_4_lemma_suite():
    failures, families, cases = [], 0, 0
    for lemma, params in _criterion_4_cases():
        indices = lemma_index_range(lemma, params)
        if not indices:
            continue
        families += 1
        for idx in indices:
            cases += 1
            result = oracle.check_lemma_case(lemma, params, syt_cap=18, **idx)
            if not result.ok:
                failures.append(
                    f"{lemma} {params} {idx}: closed form {result.closed_form}, enumerated {result.enumerated} {result.detail}"
                )
    detail = f"{cases - len(failures)}/{cases} index assignments over {families} (lemma, k, l) families verified"
    if failures:
        detail += "; " + "; ".join(failures[:10])
    line = record(4, not failures, detail)
    assert not failures, line


# 5 -------------------------------------------------------------------------------


def test_criterion_5_rsk_properties():
    failures = []
    for n in range(1, 9):
        for p in permutations(range(1, n + 1)):
            pair = rsk(p)
            if pair.shape[0] != lis(p) or len(pair.shape) != lds(p):
                failures.append(f"Schensted fails at {p}")
            if n <= 7:
                if inverse_rsk(pair) != p:
                    failures.append(f"round trip fails at {p}")
                rev = rsk(reverse(p))
                if rev.shape != conjugate(pair.shape) or rev.P != transpose(pair.P):
                    failures.append(f"reverse/transpose duality fails at {p}")
    detail = "round trip and reverse/transpose duality for n <= 7, Schensted for n <= 8"
    if failures:
        detail += "; " + "; ".join(failures[:10])
    line = record(5, not failures, detail)
    assert not failures, line


# 6 -------------------------------------------------------------------------------


def test_criterion_6_hook_length_vs_backtracking():
    failures, shapes = [], 0
    for n in range(1, 13):
        for shape in partitions(n):
            shapes += 1
            found = sum(1 for _ in enumerate_syt(shape))
            if found != hook_count(shape):
                failures.append(f"{shape}: backtracking {found}, hook length {hook_count(shape)}")
    detail = f"{shapes - len(failures)}/{shapes} shapes with at most 12 cells agree"
    if failures:
        detail += "; " + "; ".join(failures[:10])
    line = record(6, not failures, detail)
    assert not failures, line


# 7 -------------------------------------------------------------------------------


def test_criterion_7_support_bounds():
    failures = []
    for k in (3, 4):
        for ell in (3, 4):
            params = Params(k, ell)
            for cls in ALL_CLASSES if k >= ell else (RIGHT,):
                low = length_bounds(params, cls)[0]
                for n in range(1, low):
                    if brute(params, n)[0][cls]:
                        failures.append(f"{cls.value} {params} has crucial permutations of length {n} < {low}")

    reports = oracle.full_sweep(oracle.SweepLimits(4, 4, 8))
    hidden = [
        r for r in reports
        if r.n > length_bounds(r.params, r.cls)[2] and r.count and not any(x.startswith("bound anomaly") for x in r.notes)
    ]
    failures += [f"unflagged count above the stated maximum: {r.cls.value} {r.params} n={r.n}" for r in hidden]
    anomaly = [
        r for r in reports
        if r.params == Params(4, 3) and r.n == 6 and any(x.startswith("bound anomaly") for x in r.notes)
    ]
    if {r.cls for r in anomaly} != set(ALL_CLASSES):
        failures.append("(4,3) length-6 counts are not flagged as exceeding the stated maximum 5")
    flagged = sum(any(x.startswith("bound anomaly") for x in r.notes) for r in reports)
    detail = f"no crucial permutations below the minimal length for k,l <= 4; {flagged} sweep cells flagged above the stated maximum, (4,3) n=6 included"
    if failures:
        detail = "; ".join(failures[:10])
    line = record(7, not failures, detail)
    assert not failures, line


# 8 -------------------------------------------------------------------------------


def test_criterion_8_frozen_adjudication_report():
    failures = []
    reports = oracle.full_sweep(REPORT_LIMITS)
    doc = oracle.sweep_document(REPORT_LIMITS, reports, adjudications_for(REPORT_LIMITS))
    text = oracle.dumps(doc)
    if not REPORT.exists():
        failures.append(f"missing frozen report {REPORT}")
    elif REPORT.read_text(encoding="utf-8") != text:
        failures.append(f"regenerated report differs from {REPORT.name}")

    adj = {(a["k"], a["l"]): a for a in doc["tricrucial_next_adjudication"]}
    for key in ((5, 3), (5, 4)):
        a = adj.get(key)
        if a is None:
            failures.append(f"no adjudication for {key}")
            continue
        winners = sorted(p for p, v in a["policies"].items() if v["matches"])
        if "corrected" not in winners:
            failures.append(f"default policy does not match brute force at {key}")
    delta = adj.get((5, 4), {}).get("delta_orientation", {})
    if not delta.get("printed", {}).get("matches") or delta.get("swapped", {}).get("matches"):
        failures.append("delta-term orientation at (5,4) is not resolved in favour of the printed form")
    a53, a54 = adj.get((5, 3)), adj.get((5, 4))
    detail = "report regenerated byte-for-byte"
    if a53 and a54:
        detail += (
            f"; signed summand: brute {a53['brute_count']}/{a54['brute_count']} at (5,3)/(5,4), "
            f"printed {a53['policies']['printed']['value']}/{a54['policies']['printed']['value']}, "
            f"corrected {a53['policies']['corrected']['value']}/{a54['policies']['corrected']['value']}; "
            f"delta term at (5,4): printed {delta.get('printed', {}).get('value')}, swapped {delta.get('swapped', {}).get('value')}"
        )
    if failures:
        detail = "; ".join(failures)
    line = record(8, not failures, detail)
    assert not failures, line


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
    sys.exit(status)
