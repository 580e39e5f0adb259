"""Dominating series, certified tails, per-term sweeps, growth quotients,
and explicit densities."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from cutofflab.errors import (
    HalfPartitionUnsupported,
    InvalidRank,
    UnsupportedSpace,
)
from cutofflab.heatseries import (
    _term_table,
    density,
    dominating_series,
    eta_quotient,
    per_term_bound_sweep,
    per_term_exceeds,
    per_term_value,
    series_terms,
    t_zero,
    tv_upper_bound,
)
from cutofflab.partitions import Weight, WeightKind
from cutofflab.repchar import casimir_exponent, dimension
from cutofflab.spaces import describe, indexing_set, minimal_weight

ALL_FAMILIES = [
    ("SO", 11, None), ("SO", 10, None), ("SU", 4, None), ("USp", 3, None),
    ("GrR", 11, 3), ("GrC", 5, 2), ("GrH", 4, 2), ("SO2n_Un", 5, None),
    ("SUn_SOn", 4, None), ("SU2n_USpn", 3, None), ("USpn_Un", 4, None),
]


# -- series terms ----------------------------------------------------------


@pytest.mark.parametrize("family,n,q", ALL_FAMILIES)
def test_terms_sorted_by_size_and_skip_trivial(family, n, q):
    d = describe(family, n, q)
    terms = series_terms(d, 6)
    sizes = [t.weight.size for t in terms]
    assert sizes == sorted(sizes)
    assert all(not t.weight.is_zero for t in terms)
    assert all(t.b_exp > 0 for t in terms)


@pytest.mark.parametrize("family,n,q", ALL_FAMILIES)
def test_term_coefficients(family, n, q):
    d = describe(family, n, q)
    factor_two = family == "SO" and n % 2 == 0
    for term in series_terms(d, 5):
        dim = dimension(d, term.weight)
        if d.is_group:
            expect = dim * dim * (2 if factor_two else 1)
        else:
            expect = dim
        assert term.a_coeff == expect
        assert term.b_exp == casimir_exponent(d, term.weight)


@pytest.mark.parametrize("family,n,q", ALL_FAMILIES)
def test_vectorized_table_matches_exact_terms(family, n, q):
    d = describe(family, n, q)
    terms = series_terms(d, 8)
    table = _term_table(d, 8)
    assert len(terms) == len(table.weights)
    for i, term in enumerate(terms):
        assert term.weight == table.weights[i]
        log_a = (math.log(term.a_coeff.numerator)
                 - math.log(term.a_coeff.denominator))
        assert abs(log_a - table.log_a[i]) < 1e-10 * max(1.0, abs(log_a))
        assert abs(float(term.b_exp) - table.b[i]) < 1e-12


def test_leading_term_is_minimal_weight():
    for family, n, q in ALL_FAMILIES:
        d = describe(family, n, q)
        lam, a_min, b_min = minimal_weight(d)
        terms = series_terms(d, 6)
        first_b = min(t.b_exp for t in terms)
        assert first_b == b_min
        match = [t for t in terms if t.weight == lam]
        # even orthogonal series carry a uniform factor 2 on every label,
        # while a_min is the squared-mean coefficient of the single label
        even_so = family == "SO" and n % 2 == 0
        assert len(match) == 1
        assert match[0].a_coeff == a_min * (2 if even_so else 1)


def test_term_evaluation_is_exponential():
    d = describe("USp", 3)
    term = series_terms(d, 2)[0]
    t = 3.7
    expect = float(term.a_coeff) * math.exp(-t * float(term.b_exp))
    assert abs(term.term(t) - expect) < 1e-12 * expect


# -- dominating series and tails ------------------------------------------


def test_report_brackets_the_true_value():
    # partial at a larger cap must stay below partial + tail at the small cap
    for family, n, q, t_mult in [("USp", 3, None, 1.4), ("SU", 4, None, 1.3),
                                 ("SO", 11, None, 1.5), ("GrC", 5, 2, 1.6),
                                 ("SO2n_Un", 5, None, 1.5)]:
        d = describe(family, n, q)
        t = t_mult * t_zero(d)
        small = dominating_series(d, t, size_cap=12)
        big = dominating_series(d, t, size_cap=30)
        assert big.partial_sum >= small.partial_sum - 1e-15
        assert big.partial_sum <= small.total + 1e-12
        assert big.tail_bound <= small.tail_bound


def test_partial_sum_decreases_in_time():
    d = describe("SO2n_Un", 6)
    tz = t_zero(d)
    totals = [dominating_series(d, mult * tz).total
              for mult in (1.1, 1.5, 2.5)]
    assert totals[0] > totals[1] > totals[2]


def test_below_cutoff_reports_infinite_tail():
    d = describe("SO", 11)
    report = dominating_series(d, 0.5 * t_zero(d))
    assert math.isinf(report.tail_bound)
    assert report.to_json_dict()["tail_bound"] == "inf"
    assert tv_upper_bound(d, 0.5 * t_zero(d)) == 1.0


def test_unproven_rank_reports_infinite_tail():
    d = describe("SO", 8)
    report = dominating_series(d, 3.0 * t_zero(d))
    assert math.isinf(report.tail_bound)
    assert report.partial_sum > 0.0


def test_time_must_be_positive():
    d = describe("USp", 3)
    with pytest.raises(ValueError):
        dominating_series(d, 0.0)
    with pytest.raises(ValueError):
        dominating_series(d, 1.0, size_cap=0)


@pytest.mark.parametrize("family,n,q,s_target,power", [
    ("USp", 3, None, 36.0, 1.0),
    ("SO", 11, None, 144.0, 1.0),
    ("SO", 10, None, 144.0, 1.0),
    ("SU", 4, None, 400.0, 2.0),
    ("GrR", 11, 3, 16.0, 0.5),
    ("GrC", 5, 2, 16.0, 1.0),
    ("GrH", 4, 2, 16.0, 0.5),
    ("SO2n_Un", 5, None, 16.0, 0.5),
    ("SUn_SOn", 4, None, 256.0, 1.0),
    ("SU2n_USpn", 3, None, 256.0, 1.0),
    ("USpn_Un", 4, None, 16.0, 0.5),
])
def test_series_beats_family_chain_constant_at_unit_eps(family, n, q,
                                                        s_target, power):
    d = describe(family, n, q)
    eps = 1.0
    t = (1.0 + eps) * d.alpha_cutoff * math.log(d.param)
    report = dominating_series(d, t)
    assert math.isfinite(report.tail_bound)
    assert report.total <= s_target / d.param ** (power * eps)


def test_tv_bound_examples():
    d = describe("SO", 11)
    tv = tv_upper_bound(d, 4.0 * math.log(11))
    assert tv <= 6.0 / math.sqrt(11.0)
    assert 0.0 < tv < 0.1
    # just past cut-off the certified sum still exceeds 4, so the bound caps at 1
    assert tv_upper_bound(d, 2.05 * math.log(11)) == 1.0


# -- per-term sweep --------------------------------------------------------


def test_sweep_vector_maxima():
    sw = per_term_bound_sweep(describe("USp", 3), 40)
    assert abs(sw.max_value - 6.0 * 3.0 ** (-7.0 / 6.0)) < 1e-12
    assert sw.argmax.parts == (1, 0, 0)
    assert sw.max_value <= 8.0 / 3.0
    assert sw.certified

    sw = per_term_bound_sweep(describe("SU", 2), 40)
    assert abs(sw.max_value - 2.0 ** 0.25) < 1e-12
    assert sw.certified

    sw = per_term_bound_sweep(describe("SO", 11), 40)
    assert abs(sw.max_integer - 11.0 ** (1.0 / 11.0)) < 1e-12
    assert sw.argmax_integer.parts == (1, 0, 0, 0, 0)
    assert sw.max_half is not None and sw.max_half <= 11.0 / 5.0
    assert sw.certified


def test_sweep_even_orthogonal_constants():
    sw = per_term_bound_sweep(describe("SO", 10), 40)
    assert abs(sw.max_integer - 10.0 ** 0.1) < 1e-12
    assert sw.max_integer <= 4.0 / 3.0
    assert sw.max_half <= 48.0 / 15.0
    assert sw.certified


def test_sweep_quotient_below_one():
    sw = per_term_bound_sweep(describe("GrC", 6, 2), 30)
    assert sw.max_value <= 1.0
    assert sw.max_half is None


def test_sweep_rank_floors():
    with pytest.raises(InvalidRank):
        per_term_bound_sweep(describe("SO", 8))
    with pytest.raises(InvalidRank):
        per_term_bound_sweep(describe("USp", 2))
    with pytest.raises(ValueError):
        per_term_bound_sweep(describe("USp", 3), size_cap=1)


def test_sweep_json_shape():
    out = per_term_bound_sweep(describe("SO", 11), 20).to_json_dict()
    assert {"max_value", "argmax_weight", "certified", "max_integer",
            "argmax_integer", "max_half", "argmax_half",
            "size_cap"} <= set(out)


def test_per_term_exact_comparison_on_rational_value():
    # label with integer decay exponent: the per-term value is exactly 15/16
    d = describe("SU", 4)
    w = Weight.of((2, 1, 1), WeightKind.Y)
    assert casimir_exponent(d, w) == 2
    assert dimension(d, w) == 15
    value = Fraction(15, 16)
    assert not per_term_exceeds(d, w, value)
    assert per_term_exceeds(d, w, value - Fraction(1, 10**15))
    assert not per_term_exceeds(d, w, value + Fraction(1, 10**15))
    assert abs(per_term_value(d, w) - 15.0 / 16.0) < 1e-14


def test_per_term_float_filter_far_from_bound():
    d = describe("SO", 11)
    w = Weight.of((1, 0, 0, 0, 0), WeightKind.halfY)
    assert per_term_exceeds(d, w, Fraction(11, 10))
    assert not per_term_exceeds(d, w, Fraction(5, 4))


# -- growth-step quotients -------------------------------------------------


def test_eta_first_step_gives_param_root():
    for n in (11, 25):
        d = describe("SO", n)
        zero = Weight.zero(n // 2, WeightKind.halfY)
        got = eta_quotient(d, zero, 1, 1)
        assert abs(got - n ** (1.0 / n)) < 1e-12


def test_eta_symplectic_first_steps_bounded():
    for n in (3, 6, 12):
        d = describe("USp", n)
        zero = Weight.zero(n, WeightKind.Y)
        assert eta_quotient(d, zero, 1, 1) <= 2.0
        assert eta_quotient(d, zero, 2, 1) <= 7.0 / 3.0
        assert eta_quotient(d, zero, 1, 12) < 1.0


def test_eta_matches_explicit_ratio():
    d = describe("SU", 4)
    base = Weight.of((1, 1, 0), WeightKind.Y)
    t0 = t_zero(d)
    grown = Weight.of((2, 2, 0), WeightKind.Y)
    rho = dimension(d, grown) / dimension(d, base)
    delta = casimir_exponent(d, grown) - casimir_exponent(d, base)
    expect = float(rho) * math.exp(-t0 * float(delta) / 2.0)
    assert abs(eta_quotient(d, base, 2, 1) - expect) < 1e-12


def test_eta_rejects_bad_bases():
    d = describe("SO", 11)
    half = Weight.of((Fraction(1, 2),) * 5, WeightKind.halfY)
    with pytest.raises(HalfPartitionUnsupported):
        eta_quotient(d, half, 1, 1)
    stepped = Weight.of((2, 1, 0, 0, 0), WeightKind.halfY)
    with pytest.raises(ValueError):
        eta_quotient(d, stepped, 2, 1)
    zero = Weight.zero(5, WeightKind.halfY)
    with pytest.raises(ValueError):
        eta_quotient(d, zero, 0, 1)
    with pytest.raises(ValueError):
        eta_quotient(d, zero, 1, 0)


# -- densities -------------------------------------------------------------


def test_circle_density_value_and_mass():
    val = density("circle", {"theta": 0.0}, 2.0, 60)
    expect = 1.0 + 2.0 * sum(math.exp(-k * k) for k in range(1, 61))
    assert abs(val - expect) < 1e-14
    thetas = np.linspace(0.0, 2.0 * math.pi, 2001)
    vals = [density("circle", {"theta": th}, 0.7, 60) for th in thetas]
    mass = np.trapezoid(vals, thetas) / (2.0 * math.pi)
    assert abs(mass - 1.0) < 1e-6


def test_su2_alphabet_and_angle_routes_agree():
    d = describe("SU", 2)
    for theta, t in [(0.7, 1.3), (2.1, 0.8), (0.05, 2.5)]:
        z = [cmath.exp(1j * theta), cmath.exp(-1j * theta)]
        a = density(d, {"alphabet": z}, t, 60)
        b = density(d, {"theta": theta}, t, 60)
        assert abs(a - b) < 1e-9


def test_so3_angle_density_long_time_limit():
    d = describe("SO", 3)
    assert abs(density(d, {"theta": 0.3}, 50.0, 40) - 1.0) < 1e-9
    assert density(d, {"theta": 0.0}, 0.5, 80) > 10.0


def test_group_density_near_cutoff_is_positive():
    d = describe("USp", 3)
    z = [cmath.exp(1j * t) for t in (0.4, 1.2, 2.2)]
    val = density(d, {"alphabet": z}, 2.0 * t_zero(d), 20)
    assert val > 0.0


def test_rank_one_zonal_density_matches_series_at_half_time():
    d = describe("GrC", 6, 1)
    t = 1.2 * t_zero(d)
    rho = density(d, {"zonal_values": [1.0] * 30}, t, 25)
    ser = dominating_series(d, t / 2.0, size_cap=25)
    assert abs(rho - 1.0 - ser.partial_sum) < 1e-9


@pytest.mark.parametrize("family,n,expected", [
    ("GrR", 9, [1, 9, 44, 156]),
    ("GrC", 6, [1, 35, 405, 2695]),
    ("GrH", 5, [1, 44, 780, 8250]),
])
def test_rank_one_multiplicities_match_closed_forms(family, n, expected):
    d = describe(family, n, 1)
    idx = indexing_set(d)
    for k, want in enumerate(expected):
        parts = ((k, k) if family == "GrH" else (k,))
        w = Weight.of(parts + (0,) * (idx.length - len(parts)), idx.kind)
        assert dimension(d, w) == want


def test_density_error_paths():
    with pytest.raises(UnsupportedSpace):
        density("torus", {"theta": 0.1}, 1.0)
    d = describe("GrC", 6, 2)
    with pytest.raises(UnsupportedSpace):
        density(d, {"alphabet": [1j, -1j]}, 1.0)
    with pytest.raises(UnsupportedSpace):
        density(d, {"zonal_values": [1.0]}, 1.0)  # q=2 is not rank one
    with pytest.raises(UnsupportedSpace):
        density(describe("SU", 3), {"zonal_values": [1.0]}, 1.0)
    with pytest.raises(UnsupportedSpace):
        density(describe("SU", 3), {}, 1.0)
    with pytest.raises(ValueError):
        density("circle", {"theta": 0.0}, 0.0)
    with pytest.raises(ValueError):
        density(describe("SU", 3), {"alphabet": [1j, -1j]}, 1.0)  # wrong size
