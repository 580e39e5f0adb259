"""Tests for the tensor-moment generators and closed-form moment tables."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from cutofflab import moments as mo
from cutofflab import spaces
from cutofflab.errors import (
    InvalidRank,
    TooLarge,
    UnsupportedPattern,
    UnsupportedSpace,
)
from cutofflab.partitions import WeightKind


@pytest.mark.parametrize("algebra,n", [("so", 4), ("so", 7), ("su", 2),
                                       ("su", 5), ("usp", 2), ("usp", 4)])
def test_contraction_gives_scalar_drift(algebra, n):
    ct = mo.casimir(algebra, n)
    want = float(ct.drift_coefficient) * np.eye(ct.dim)
    assert np.abs(ct.contracted() - want).max() < 1e-12


@pytest.mark.parametrize("algebra,n,count", [
    ("so", 5, 10), ("su", 4, 15), ("usp", 3, 21)])
def test_basis_sizes_match_group_dimension(algebra, n, count):
    assert len(mo.casimir(algebra, n).basis) == count


@pytest.mark.parametrize("algebra,n", [("so", 4), ("su", 3), ("usp", 2)])
def test_basis_is_orthonormal_and_anti_hermitian(algebra, n):
    basis = mo.casimir(algebra, n).basis
    scale = {"so": n / 2, "su": n, "usp": n}[algebra]
    for a, x in enumerate(basis):
        xd = x.toarray()
        assert np.abs(xd + xd.conj().T).max() < 1e-12
        for b, y in enumerate(basis):
            inner = -scale * np.trace(xd @ y.toarray()).real
            assert abs(inner - (1.0 if a == b else 0.0)) < 1e-10


@pytest.mark.parametrize("algebra,n,k,l", [
    ("so", 4, 2, 0), ("so", 4, 4, 0), ("su", 3, 1, 1),
    ("su", 3, 2, 2), ("usp", 2, 2, 0)])
def test_generator_is_hermitian(algebra, n, k, l):
    gen = mo.moment_generator(algebra, n, k, l).generator
    assert abs(gen - gen.conj().T).max() < 1e-12


@pytest.mark.parametrize("algebra", ["so", "su", "usp"])
@pytest.mark.parametrize("t", [0.3, 1.5])
def test_single_entry_moment_decays_at_the_drift_rate(algebra, t):
    n = 4
    ct = mo.casimir(algebra, n)
    rate = float(ct.drift_coefficient) / 2
    d = ct.dim
    for i, j in [(0, 0), (1, 1), (0, 1)]:
        got = mo.moment(algebra, n, [(i, j)], t)
        want = np.exp(rate * t) if i == j else 0.0
        assert abs(got - want) < 1e-12
    assert abs(mo.moment(algebra, n, [(d - 1, d - 1)], t)
               - np.exp(rate * t)) < 1e-12


@pytest.mark.parametrize("algebra,ns", [
    ("so", (4, 5)), ("su", (3, 4)), ("usp", (3, 4))])
@pytest.mark.parametrize("t", [0.25, 1.0])
def test_closed_forms_match_generator_route(algebra, ns, t):
    for n in ns:
        for name in mo.closed_form_names(algebra):
            try:
                mo.pattern_monomials(algebra, n, name)
            except InvalidRank:
                continue
            want = mo.closed_form_value(algebra, n, name, t)
            got = mo.generator_moment(algebra, n, name, t)
            assert abs(got - want) < 1e-9, (algebra, n, name)


def test_haar_limit_of_squared_entries():
    # as t grows the second moments approach the uniform-measure values
    t = 60.0
    assert abs(mo.closed_form_value("so", 5, "ii^2", t) - 1 / 5) < 1e-9
    assert abs(mo.closed_form_value("su", 5, "|ij|^2", t) - 1 / 5) < 1e-9
    assert abs(mo.closed_form_value("usp", 3, "q|ii|^2", t) - 1 / 3) < 1e-9


def test_conjugate_pair_moment_for_complex_entries():
    n, t = 4, 0.9
    got = mo.moment("su", n, [(0, 0), (1, 1, True)], t)
    assert abs(got - np.exp(-t)) < 1e-12


def test_moments_start_at_identity_values():
    for algebra, n in [("so", 4), ("su", 3), ("usp", 2)]:
        assert abs(mo.moment(algebra, n, [(0, 0), (1, 1)], 0.0) - 1.0) < 1e-12
        assert abs(mo.moment(algebra, n, [(0, 1), (1, 0)], 0.0)) < 1e-12


@pytest.mark.parametrize("pattern,relabeled", [
    ((((0, 1), (0, 1), (2, 3), (2, 3))), (((1, 2), (1, 2), (3, 0), (3, 0)))),
    ((((0, 0), (1, 1))), (((2, 2), (3, 3)))),
])
def test_moment_invariance_under_index_relabeling(pattern, relabeled):
    n, t = 5, 0.6
    for algebra in ("so", "su"):
        a = mo.moment(algebra, n, pattern, t)
        b = mo.moment(algebra, n, relabeled, t)
        assert abs(a - b) < 1e-11


def test_quaternionic_moment_invariance_under_block_relabeling():
    n, t = 4, 0.8
    # swap quaternion blocks 0 and 2, keeping offsets within each block
    def swap(idx):
        block, off = divmod(idx, 2)
        block = {0: 2, 2: 0}.get(block, block)
        return 2 * block + off
    pattern = ((0, 2), (0, 2), (1, 3), (1, 3))
    moved = tuple((swap(i), swap(j)) for i, j in pattern)
    a = mo.moment("usp", n, pattern, t)
    b = mo.moment("usp", n, moved, t)
    assert abs(a - b) < 1e-11


def test_batched_entries_agree_with_single_extraction():
    n, t = 4, 0.5
    pairs = [((0, 0, 1, 1), (0, 0, 1, 1)), ((0, 1, 1, 0), (1, 0, 0, 1)),
             ((0, 0, 0, 0), (0, 0, 0, 0))]
    batch = mo.expectation_entries("so", n, 4, 0, pairs, t, chunk=2)
    for (row, col), got in zip(pairs, batch):
        pattern = [(r, c) for r, c in zip(row, col)]
        assert abs(got - mo.moment("so", n, pattern, t)) < 1e-11


@pytest.mark.parametrize("algebra,n,spec", [
    ("so", 4, 2), ("so", 5, 2), ("so", 4, 4), ("so", 5, 4),
    ("su", 4, (1, 1)), ("su", 5, (1, 1)), ("su", 4, (2, 2)), ("su", 5, (2, 2)),
    ("usp", 4, 2), ("usp", 5, 2), ("usp", 3, 4)])
def test_eigen_tables_verify(algebra, n, spec):
    report = mo.verify_eigentable(algebra, n, spec)
    assert report.verified
    assert report.dims_match
    total = sum(e.computed_mult for e in report.entries)
    d = 2 * n if algebra == "usp" else n
    k = sum(spec) if isinstance(spec, tuple) else spec
    assert total == d ** k
    payload = report.to_json_dict()
    assert payload["verified"] is True
    assert all("max_residual" in e for e in payload["entries"])


def test_eigen_table_multiplicities_merge_at_coinciding_values():
    # at n = 6 one parameter-dependent eigenvalue collides with a constant one
    report = mo.verify_eigentable("so", 6, 4)
    assert report.verified
    six = [e for e in report.entries if e.eigenvalue == 6]
    assert len(six) == 1
    assert six[0].claimed_mult == 3 * 6 * 5 + 6 * 5 * 4 * 3 // 24


def test_symplectic_degree_four_table_lists_values_only():
    report = mo.verify_eigentable("usp", 3, 4)
    assert all(e.claimed_mult is None for e in report.entries)
    assert report.dims_match


@pytest.mark.parametrize("algebra,n", [("so", 2), ("su", 1), ("usp", 1)])
def test_rank_floor_is_enforced(algebra, n):
    with pytest.raises(InvalidRank):
        mo.casimir(algebra, n)


def test_oversized_tensor_space_is_refused():
    with pytest.raises(TooLarge):
        mo.moment_generator("so", 60, 4)


def test_degree_above_four_is_refused():
    with pytest.raises(UnsupportedPattern):
        mo.moment("so", 5, [(0, 0)] * 5, 1.0)


def test_conjugate_slots_require_complex_entries():
    with pytest.raises(ValueError):
        mo.moment_generator("so", 5, 1, 1)


def test_unknown_pattern_name_is_rejected():
    with pytest.raises(UnsupportedPattern):
        mo.closed_form_value("so", 5, "nope", 1.0)


# -- squared zonal functions ----------------------------------------------


_ALL_QUOTIENTS = [("GrR", 10, 3), ("GrR", 13, 6), ("GrC", 2, 1), ("GrC", 5, 2),
                  ("GrH", 3, 1), ("GrH", 6, 3), ("SO2n_Un", 2, None),
                  ("SO2n_Un", 3, None), ("SO2n_Un", 10, None),
                  ("SUn_SOn", 2, None), ("SUn_SOn", 5, None),
                  ("SU2n_USpn", 2, None), ("SU2n_USpn", 5, None),
                  ("USpn_Un", 3, None), ("USpn_Un", 6, None)]


@pytest.mark.parametrize("family,n,q", _ALL_QUOTIENTS)
def test_zonal_square_coefficients_sum_to_one(family, n, q):
    desc = spaces.describe(family, n, q)
    expansion = mo.zonal_square_expansion(desc)
    assert sum(expansion.values()) == 1
    assert all(c >= 0 for c in expansion.values())
    kind = spaces.indexing_set(desc).kind
    assert all(w.kind is kind for w in expansion)


@pytest.mark.parametrize("family,n,q", [(f, n, q) for f, n, q in _ALL_QUOTIENTS
                                        if (f, n) not in (("SO2n_Un", 2),)])
def test_zonal_square_constant_is_inverse_dimension(family, n, q):
    desc = spaces.describe(family, n, q)
    _, a_min, _ = spaces.minimal_weight(desc)
    expansion = mo.zonal_square_expansion(desc)
    const = next(c for w, c in expansion.items() if w.is_zero)
    assert const == Fraction(1) / a_min


def test_two_sphere_expansions_match_the_legendre_identity():
    # three rank-degenerate spaces are two-spheres; the squared first
    # Legendre polynomial has constant coefficient one third
    for family, n, q in [("GrC", 2, 1), ("SUn_SOn", 2, None),
                         ("SO2n_Un", 2, None)]:
        desc = spaces.describe(family, n, q)
        expansion = mo.zonal_square_expansion(desc)
        const = sum(c for w, c in expansion.items() if w.is_zero)
        assert const == Fraction(1, 3)
        assert sum(expansion.values()) == 1


def test_real_projective_space_drops_the_two_column_label():
    desc = spaces.describe("GrR", 11, 1)
    expansion = mo.zonal_square_expansion(desc)
    assert all(len([p for p in w.parts if p]) <= 1 for w in expansion)
    assert sum(expansion.values()) == 1


def test_group_descriptor_has_no_zonal_square_expansion():
    with pytest.raises(UnsupportedSpace):
        mo.zonal_square_expansion(spaces.describe("SU", 5))


def test_rank_three_unitary_structure_space_folds_the_four_row_label():
    desc = spaces.describe("SO2n_Un", 3)
    expansion = mo.zonal_square_expansion(desc)
    labels = {tuple(int(p) for p in w.parts) for w in expansion}
    assert labels == {(0, 0, 0), (1, 1, 0), (2, 2, 0)}
    assert sum(expansion.values()) == 1
