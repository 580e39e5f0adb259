"""Acceptance gate: the twelve verification-suite checks, one test each.

Each test runs its check once (results are cached across tests) and prints
one summary line; the test passes exactly when the check does.
"""

from __future__ import annotations

import json

from cutofflab import verification

_cache: dict[str, verification.CheckResult] = {}


def _result(name: str) -> verification.CheckResult:
    if name not in _cache:
        threads = 4 if name == "monte-carlo-concordance" else 1
        _cache[name] = verification.run_check(name, threads=threads)
    result = _cache[name]
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {result.name} ({result.elapsed:.1f}s): "
          f"{json.dumps(result.detail, default=str)[:400]}")
    return result


def test_criterion_01_unitary_dimensions_match_tableau_counts():
    assert _result("su-dimensions-vs-tableaux").passed


def test_criterion_02_symplectic_column_dimensions_are_catalan():
    assert _result("catalan-symplectic").passed


def test_criterion_03_minimal_weights_match_brute_force():
    assert _result("minimal-weight-argmin").passed


def test_criterion_04_per_term_bounds_at_cut_off():
    assert _result("per-term-bounds").passed


def test_criterion_05_series_chains_hold_after_cut_off():
    assert _result("series-chains").passed


def test_criterion_06_closed_form_moments_match_the_generator():
    assert _result("moment-generator-vs-closed-forms").passed


def test_criterion_07_eigen_tables_verify():
    assert _result("eigen-tables").passed


def test_criterion_08_zonal_squares_agree_between_routes():
    assert _result("zonal-square-consistency").passed


def test_criterion_09_character_square_identities():
    assert _result("character-square-identities").passed


def test_criterion_10_variance_caps_hold_on_the_window():
    assert _result("variance-window-bounds").passed


def test_criterion_11_monte_carlo_concordance():
    assert _result("monte-carlo-concordance").passed


def test_criterion_12_orthogonal_profiles_reproduce():
    assert _result("profile-bounds").passed
