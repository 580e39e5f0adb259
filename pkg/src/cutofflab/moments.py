"""Exact joint moments of matrix coefficients under the heat flow.

The expectation of a tensor power of the running matrix solves a linear ODE
whose generator is assembled from the quadratic Casimir tensor of the Lie
algebra.  This module builds those generators sparsely, extracts arbitrary
joint moments of degree at most four from their exponentials, verifies the
known eigen-structure of the generators, and records the closed-form moment
formulas together with the expansion of squared basepoint-normalized zonal
functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigvalsh
from scipy.sparse.linalg import expm_multiply

from .errors import (
    InvalidRank,
    TooLarge,
    UnsupportedPattern,
    UnsupportedSpace,
)
from .partitions import Weight, WeightKind
from .spaces import Family, SpaceDescriptor

__all__ = [
    "CasimirTensor",
    "MomentTensor",
    "EigenEntry",
    "EigenReport",
    "casimir",
    "moment_generator",
    "moment",
    "expectation_entries",
    "verify_eigentable",
    "closed_form_names",
    "closed_form_value",
    "pattern_monomials",
    "generator_moment",
    "zonal_square_expansion",
]

_ALGEBRAS = ("so", "su", "usp")
_MAX_TENSOR_DIM = 10_000_000
_MAX_DENSE_EIG = 20_000


def _check_algebra(algebra: str, n: int) -> None:
    if algebra not in _ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}")
    floor = 3 if algebra == "so" else 2
    if n < floor:
        raise InvalidRank(f"{algebra}({n}): rank must be >= {floor}")


def _embedding_dim(algebra: str, n: int) -> int:
    return 2 * n if algebra == "usp" else n


def _quaternion_unit(unit: str, i: int, j: int, n: int) -> sp.coo_matrix:
    """Complex 2n x 2n image of a quaternion unit times an elementary matrix."""
    r, c = 2 * i, 2 * j
    if unit == "1":
        rows, cols, vals = [r, r + 1], [c, c + 1], [1.0, 1.0]
    elif unit == "i":
        rows, cols, vals = [r, r + 1], [c, c + 1], [1.0j, -1.0j]
    elif unit == "j":
        rows, cols, vals = [r, r + 1], [c + 1, c], [1.0, -1.0]
    elif unit == "k":
        rows, cols, vals = [r, r + 1], [c + 1, c], [1.0j, 1.0j]
    else:  # pragma: no cover - internal misuse
        raise ValueError(unit)
    return sp.coo_matrix((vals, (rows, cols)), shape=(2 * n, 2 * n), dtype=complex)


def _orthonormal_basis(algebra: str, n: int) -> tuple[sp.csr_matrix, ...]:
    """Anti-Hermitian basis whose tensor squares sum to the Casimir tensor."""
    out: list[sp.csr_matrix] = []
    if algebra == "so":
        s = 1.0 / np.sqrt(n)
        for i in range(n):
            for j in range(i + 1, n):
                out.append(sp.coo_matrix(
                    ([s, -s], ([i, j], [j, i])), shape=(n, n)).tocsr())
        return tuple(out)
    if algebra == "su":
        # traceless diagonal block: any factorization V V^T of the covariance
        # (1/n)(I - J/n) yields the same tensor square
        cov = (np.eye(n) - np.full((n, n), 1.0 / n)) / n
        vals, vecs = np.linalg.eigh(cov)
        for a in range(n):
            if vals[a] > 1e-12:
                d = 1j * vecs[:, a] * np.sqrt(vals[a])
                out.append(sp.coo_matrix(
                    (d, (range(n), range(n))), shape=(n, n), dtype=complex).tocsr())
        s = 1.0 / np.sqrt(2 * n)
        for i in range(n):
            for j in range(i + 1, n):
                out.append(sp.coo_matrix(
                    ([s, -s], ([i, j], [j, i])), shape=(n, n), dtype=complex).tocsr())
                out.append(sp.coo_matrix(
                    ([1j * s, 1j * s], ([i, j], [j, i])),
                    shape=(n, n), dtype=complex).tocsr())
        return tuple(out)
    sd = 1.0 / np.sqrt(2 * n)
    so = 1.0 / np.sqrt(4 * n)
    for i in range(n):
        for unit in ("i", "j", "k"):
            out.append((sd * _quaternion_unit(unit, i, i, n)).tocsr())
    for i in range(n):
        for j in range(i + 1, n):
            out.append((so * (_quaternion_unit("1", i, j, n)
                              - _quaternion_unit("1", j, i, n))).tocsr())
            for unit in ("i", "j", "k"):
                out.append((so * (_quaternion_unit(unit, i, j, n)
                                  + _quaternion_unit(unit, j, i, n))).tocsr())
    return tuple(out)


@dataclass(frozen=True)
class CasimirTensor:
    """Sum of tensor squares of an orthonormal anti-Hermitian basis."""

    algebra: str
    n: int
    dim: int
    matrix: sp.csr_matrix
    basis: tuple[sp.csr_matrix, ...]

    @property
    def drift_coefficient(self) -> Fraction:
        """Scalar alpha with sum X_a X_a = alpha * I on the defining space."""
        n = self.n
        if self.algebra == "so":
            return Fraction(-(n - 1), n)
        if self.algebra == "su":
            return Fraction(-(n * n - 1), n * n)
        return Fraction(-(2 * n + 1), 2 * n)

    def contracted(self) -> np.ndarray:
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for x in self.basis:
            total += (x @ x).toarray()
        return total


def casimir(algebra: str, n: int) -> CasimirTensor:
    """Assemble the Casimir tensor of so(n), su(n) or usp(n)."""
    _check_algebra(algebra, n)
    basis = _orthonormal_basis(algebra, n)
    d = _embedding_dim(algebra, n)
    total = sp.coo_matrix((d * d, d * d), dtype=basis[0].dtype)
    for x in basis:
        total = total + sp.kron(x, x, format="coo")
    return CasimirTensor(algebra, n, d, total.tocsr(), basis)


def _pair_block(ct: CasimirTensor, left_conj: bool, right_conj: bool) -> sp.csr_matrix:
    """Two-slot Casimir block with the sign and transpose rules for conjugated slots."""
    if not left_conj and not right_conj:
        return ct.matrix
    d = ct.dim
    total = sp.coo_matrix((d * d, d * d), dtype=complex)
    for x in ct.basis:
        left = x.T.tocsr() if left_conj else x
        right = x.T.tocsr() if right_conj else x
        total = total + sp.kron(left, right, format="coo")
    sign = -1.0 if left_conj != right_conj else 1.0
    return (sign * total).tocsr()


def _embed_pair(block: sp.csr_matrix, d: int, slots: int,
                slot_i: int, slot_j: int) -> sp.coo_matrix:
    """Place a two-slot operator at positions (slot_i, slot_j) of a tensor power."""
    coo = block.tocoo()
    r1, r2 = np.divmod(coo.row, d)
    c1, c2 = np.divmod(coo.col, d)
    rest = [s for s in range(slots) if s not in (slot_i, slot_j)]
    strides = d ** (slots - 1 - np.arange(slots))
    side = d ** len(rest)
    # identity multi-indices on the untouched slots
    combos = np.arange(side)
    digits = []
    for pos in range(len(rest)):
        digits.append((combos // d ** (len(rest) - 1 - pos)) % d)
    rows = r1[:, None] * strides[slot_i] + r2[:, None] * strides[slot_j]
    cols = c1[:, None] * strides[slot_i] + c2[:, None] * strides[slot_j]
    for pos, s in enumerate(rest):
        rows = rows + digits[pos][None, :] * strides[s]
        cols = cols + digits[pos][None, :] * strides[s]
    data = np.broadcast_to(coo.data[:, None], rows.shape)
    size = d ** slots
    return sp.coo_matrix(
        (data.ravel(), (rows.ravel(), cols.ravel())), shape=(size, size))


@lru_cache(maxsize=16)
def _eta_sum(algebra: str, n: int, k: int, l: int) -> sp.csr_matrix:
    """Sum over slot pairs of the (possibly conjugated) Casimir embeddings."""
    ct = casimir(algebra, n)
    d = ct.dim
    slots = k + l
    size = d ** slots
    total = sp.coo_matrix((size, size), dtype=ct.matrix.dtype if l == 0 else complex)
    for i in range(slots):
        for j in range(i + 1, slots):
            block = _pair_block(ct, i >= k, j >= k)
            total = total + _embed_pair(block, d, slots, i, j)
    return total.tocsr()


@dataclass(frozen=True)
class MomentTensor:
    """Generator of the tensor-moment flow: drift plus pairwise Casimir terms."""

    algebra: str
    n: int
    k: int
    l: int
    dim: int
    generator: sp.csr_matrix

    def expectation_entry(self, row: Sequence[int], col: Sequence[int],
                          t: float) -> complex:
        size = self.dim ** (self.k + self.l)
        r = _flat_index(row, self.dim)
        c = _flat_index(col, self.dim)
        basis_vec = np.zeros(size, dtype=self.generator.dtype)
        basis_vec[c] = 1.0
        out = expm_multiply(self.generator * t, basis_vec)
        return complex(out[r])


def _flat_index(multi: Sequence[int], d: int) -> int:
    idx = 0
    for v in multi:
        if not 0 <= v < d:
            raise ValueError(f"index {v} out of range for dimension {d}")
        idx = idx * d + v
    return idx


def moment_generator(algebra: str, n: int, k: int, l: int = 0) -> MomentTensor:
    """Generator whose exponential gives joint moments of k plain and l conjugated copies."""
    _check_algebra(algebra, n)
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError("need at least one tensor slot")
    if l > 0 and algebra != "su":
        raise ValueError("conjugated slots only make sense for complex entries")
    d = _embedding_dim(algebra, n)
    if d ** (k + l) > _MAX_TENSOR_DIM:
        raise TooLarge(f"tensor space of dimension {d}^{k + l} exceeds the guard")
    eta = _eta_sum(algebra, n, k, l)
    ct = casimir(algebra, n)
    drift = float((k + l) * ct.drift_coefficient / 2)
    size = d ** (k + l)
    gen = (eta + drift * sp.identity(size, dtype=eta.dtype, format="csr")).tocsr()
    return MomentTensor(algebra, n, k, l, d, gen)


@lru_cache(maxsize=16)
def _cached_generator(algebra: str, n: int, k: int, l: int) -> MomentTensor:
    return moment_generator(algebra, n, k, l)


def _split_pattern(pattern: Iterable) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    plain: list[tuple[int, int]] = []
    conj: list[tuple[int, int]] = []
    for item in pattern:
        item = tuple(item)
        if len(item) == 2:
            plain.append((int(item[0]), int(item[1])))
        elif len(item) == 3:
            (conj if item[2] else plain).append((int(item[0]), int(item[1])))
        else:
            raise ValueError(f"bad pattern item {item!r}")
    return plain, conj


def moment(algebra: str, n: int, pattern: Iterable, t: float) -> complex:
    """Joint moment of matrix entries at time t via the generator exponential.

    Each pattern item is (row, col) for a plain factor or (row, col, True)
    for a conjugated factor (complex entries only).  Indices are 0-based in
    the defining dimension (2n for the quaternionic embedding).
    """
    plain, conj = _split_pattern(pattern)
    degree = len(plain) + len(conj)
    if degree == 0:
        return 1.0 + 0.0j
    if degree > 4:
        raise UnsupportedPattern(f"degree {degree} exceeds the tabulated range")
    mt = _cached_generator(algebra, n, len(plain), len(conj))
    row = [i for i, _ in plain] + [i for i, _ in conj]
    col = [j for _, j in plain] + [j for _, j in conj]
    value = mt.expectation_entry(row, col, t)
    if algebra == "so":
        return value.real
    return value


def expectation_entries(algebra: str, n: int, k: int, l: int,
                        pairs: Sequence[tuple[Sequence[int], Sequence[int]]],
                        t: float, chunk: int = 16) -> np.ndarray:
    """Batched extraction of exp(t*generator) entries, grouped by column."""
    mt = _cached_generator(algebra, n, k, l)
    size = mt.dim ** (k + l)
    flat = [(_flat_index(r, mt.dim), _flat_index(c, mt.dim)) for r, c in pairs]
    cols = sorted({c for _, c in flat})
    col_pos = {c: p for p, c in enumerate(cols)}
    values = np.zeros(len(flat), dtype=complex)
    scaled = mt.generator * t
    for start in range(0, len(cols), chunk):
        block = cols[start:start + chunk]
        rhs = np.zeros((size, len(block)), dtype=mt.generator.dtype)
        for p, c in enumerate(block):
            rhs[c, p] = 1.0
        out = expm_multiply(scaled, rhs)
        for idx, (r, c) in enumerate(flat):
            p = col_pos[c]
            if start <= p < start + len(block):
                values[idx] = out[r, p - start]
    return values


# -- eigen-structure verification ------------------------------------------


@dataclass(frozen=True)
class EigenEntry:
    eigenvalue: Fraction
    claimed_mult: int | None
    computed_mult: int
    max_residual: float

    def to_json_dict(self) -> dict:
        return {
            "eigenvalue": str(self.eigenvalue),
            "claimed_mult": self.claimed_mult,
            "computed_mult": self.computed_mult,
            "max_residual": self.max_residual,
        }


@dataclass(frozen=True)
class EigenReport:
    algebra: str
    n: int
    k: int
    l: int
    entries: tuple[EigenEntry, ...]
    dims_match: bool
    verified: bool

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "entries": [e.to_json_dict() for e in self.entries],
            "dims_match": self.dims_match,
            "verified": self.verified,
        }


def _claimed_eigentable(algebra: str, n: int, k: int,
                        l: int) -> tuple[dict[Fraction, int | None], int]:
    """Known (eigenvalue, multiplicity) pairs and the scale tying them to the generator."""
    if algebra == "so" and (k, l) == (2, 0):
        table = {
            Fraction(n - 1): 1,
            Fraction(1): n * (n - 1) // 2,
            Fraction(-1): (n + 2) * (n - 1) // 2,
        }
        return table, n
    if algebra == "so" and (k, l) == (4, 0):
        raw = [
            (Fraction(2 * n - 2), 3),
            (Fraction(n), 3 * n * (n - 1)),
            (Fraction(n - 2), 3 * (n + 2) * (n - 1)),
            (Fraction(6), n * (n - 1) * (n - 2) * (n - 3) // 24),
            (Fraction(2), 3 * n * (n + 2) * (n - 1) * (n - 3) // 8),
            (Fraction(0), n * (n + 1) * (n + 2) * (n - 3) // 6),
            (Fraction(-2), 3 * (n - 1) * (n - 2) * (n + 1) * (n + 4) // 8),
            (Fraction(-6), n * (n - 1) * (n + 1) * (n + 6) // 24),
        ]
        table: dict[Fraction, int | None] = {}
        for value, mult in raw:
            table[value] = table.get(value, 0) + mult
        return {v: m for v, m in table.items() if m}, n
    if algebra == "su" and (k, l) == (1, 1):
        return {Fraction(n * n - 1): 1, Fraction(-1): n * n - 1}, n * n
    if algebra == "su" and (k, l) == (2, 2):
        raw = [
            (Fraction(2 * n * n - 2), 2),
            (Fraction(n * n - 2), 4 * (n + 1) * (n - 1)),
            (Fraction(2 * n - 2), n * n * (n + 1) * (n - 3) // 4),
            (Fraction(-2), (n + 2) * (n + 1) * (n - 1) * (n - 2) // 2),
            (Fraction(-2 * n - 2), n * n * (n - 1) * (n + 3) // 4),
        ]
        table = {}
        for value, mult in raw:
            table[value] = table.get(value, 0) + mult
        return {v: m for v, m in table.items() if m}, n * n
    if algebra == "usp" and (k, l) == (2, 0):
        table = {
            Fraction(2 * n + 1, 2): 1,
            Fraction(1, 2): (n - 1) * (2 * n + 1),
            Fraction(-1, 2): n * (2 * n + 1),
        }
        return table, n
    if algebra == "usp" and (k, l) == (4, 0):
        values = [2 * n + 1, n + 1, n, 3, 1, 0, -1, -3]
        return {Fraction(v): None for v in values}, n
    raise ValueError(f"no tabulated eigen-structure for {algebra} k={k} l={l}")


def verify_eigentable(algebra: str, n: int, k_or_kl) -> EigenReport:
    """Diagonalize the pairwise Casimir sum and compare with the known table."""
    if isinstance(k_or_kl, tuple):
        k, l = k_or_kl
    else:
        k, l = int(k_or_kl), 0
    _check_algebra(algebra, n)
    claimed, scale = _claimed_eigentable(algebra, n, k, l)
    d = _embedding_dim(algebra, n)
    size = d ** (k + l)
    if size > _MAX_DENSE_EIG:
        raise TooLarge(f"dense diagonalization of size {size} refused")
    mat = (_eta_sum(algebra, n, k, l) * scale).toarray()
    spectrum = eigvalsh(mat)
    targets = sorted(claimed, key=float)
    target_vals = np.array([float(v) for v in targets])
    nearest = np.argmin(np.abs(spectrum[:, None] - target_vals[None, :]), axis=1)
    entries = []
    ok = True
    for idx, value in enumerate(targets):
        mask = nearest == idx
        count = int(mask.sum())
        residual = float(np.abs(spectrum[mask] - target_vals[idx]).max()) if count else 0.0
        want = claimed[value]
        good = residual <= 1e-8 and (want is None or count == want)
        ok = ok and good
        entries.append(EigenEntry(value, want, count, residual))
    dims_match = sum(e.computed_mult for e in entries) == size
    return EigenReport(algebra, n, k, l, tuple(entries),
                       dims_match, ok and dims_match)


# -- closed-form moments ---------------------------------------------------

# each entry: (monomial assembly, value) where the assembly is a list of
# (coefficient, ((row, col, conj), ...)) terms over concrete small indices
# and the value is the rational-exponential formula

_P = tuple[int, int, bool]


def _e(x: float) -> float:
    return float(np.exp(x))


def _so_forms() -> dict[str, tuple[Callable[[int], list], Callable[[int, float], float]]]:
    def mono(*entries: tuple[int, int]) -> list:
        return [(1.0, tuple((i, j, False) for i, j in entries))]

    return {
        "ii^2": (lambda n: mono((0, 0), (0, 0)),
                 lambda n, t: 1 / n + (1 - 1 / n) * _e(-t)),
        "ij^2": (lambda n: mono((0, 1), (0, 1)),
                 lambda n, t: (1 - _e(-t)) / n),
        "ii.jj": (lambda n: mono((0, 0), (1, 1)),
                  lambda n, t: 0.5 * (_e(-t) + _e(-(n - 2) * t / n))),
        "ij.ji": (lambda n: mono((0, 1), (1, 0)),
                  lambda n, t: 0.5 * (_e(-t) - _e(-(n - 2) * t / n))),
        "ii.ij": (lambda n: mono((0, 0), (0, 1)), lambda n, t: 0.0),
        "ij.kl": (lambda n: mono((0, 1), (2, 3)), lambda n, t: 0.0),
        "ii^4": (lambda n: mono((0, 0), (0, 0), (0, 0), (0, 0)),
                 lambda n, t: 3 / (n * (n + 2))
                 + 6 * (n - 1) / (n * (n + 4)) * _e(-t)
                 + (n + 1) * (n - 1) / ((n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ij^4": (lambda n: mono((0, 1), (0, 1), (0, 1), (0, 1)),
                 lambda n, t: 3 / (n * (n + 2))
                 - 6 / (n * (n + 4)) * _e(-t)
                 + 3 / ((n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ii^2.ij^2": (lambda n: mono((0, 0), (0, 0), (0, 1), (0, 1)),
                      lambda n, t: 1 / (n * (n + 2))
                      + (n - 2) / (n * (n + 4)) * _e(-t)
                      - (n + 1) / ((n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ij^2.ik^2": (lambda n: mono((0, 1), (0, 1), (0, 2), (0, 2)),
                      lambda n, t: 1 / (n * (n + 2))
                      - 2 / (n * (n + 4)) * _e(-t)
                      + 1 / ((n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ii^2.jj^2": (lambda n: mono((0, 0), (0, 0), (1, 1), (1, 1)),
                      lambda n, t: (n + 1) / ((n - 1) * n * (n + 2))
                      + 2 * (n + 3) / (n * (n + 4)) * _e(-t)
                      + (n - 3) / (3 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                      + (n - 2) / (2 * n) * _e(-2 * t)
                      + (n * n + 4 * n + 6) / (6 * (n + 2) * (n + 4))
                      * _e(-(2 * n + 4) * t / n)),
        "ij^2.ji^2": (lambda n: mono((0, 1), (0, 1), (1, 0), (1, 0)),
                      lambda n, t: (n + 1) / (n * (n - 1) * (n + 2))
                      - 2 / (n * (n + 4)) * _e(-t)
                      + (n - 3) / (3 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                      - (n - 2) / (2 * n) * _e(-2 * t)
                      + (n * n + 4 * n + 6) / (6 * (n + 2) * (n + 4))
                      * _e(-(2 * n + 4) * t / n)),
        "ii^2.jk^2": (lambda n: mono((0, 0), (0, 0), (1, 2), (1, 2)),
                      lambda n, t: (n + 1) / (n * (n - 1) * (n + 2))
                      + (n * n - 8) / (n * (n - 2) * (n + 4)) * _e(-t)
                      - (n - 3) / (3 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                      - 1 / (2 * n) * _e(-2 * t)
                      - n / (6 * (n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ij^2.jk^2": (lambda n: mono((0, 1), (0, 1), (1, 2), (1, 2)),
                      lambda n, t: (n + 1) / (n * (n - 1) * (n + 2))
                      - 2 / ((n - 2) * (n + 4)) * _e(-t)
                      - (n - 3) / (3 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                      + 1 / (2 * n) * _e(-2 * t)
                      - n / (6 * (n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ij^2.kl^2": (lambda n: mono((0, 1), (0, 1), (2, 3), (2, 3)),
                      lambda n, t: (n + 1) / (n * (n - 1) * (n + 2))
                      - 2 * (n + 2) / (n * (n - 2) * (n + 4)) * _e(-t)
                      + 2 / (3 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                      + 1 / (3 * (n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ii.ij.jj.ji": (lambda n: mono((0, 0), (0, 1), (1, 1), (1, 0)),
                        lambda n, t: -1 / (n * (n - 1) * (n + 2))
                        - 2 / (n * (n + 4)) * _e(-t)
                        - (n - 3) / (6 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                        + (n * n + 4 * n + 6) / (6 * (n + 2) * (n + 4))
                        * _e(-(2 * n + 4) * t / n)),
        "ik.il.jk.jl": (lambda n: mono((0, 2), (0, 3), (1, 2), (1, 3)),
                        lambda n, t: -1 / (n * (n - 1) * (n + 2))
                        + 4 / (n * (n - 2) * (n + 4)) * _e(-t)
                        - 1 / (3 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                        + 1 / (3 * (n + 2) * (n + 4)) * _e(-(2 * n + 4) * t / n)),
        "ii.jj.kk.ll": (lambda n: mono((0, 0), (1, 1), (2, 2), (3, 3)),
                        lambda n, t: _e(-(2 * n - 8) * t / n) / 24
                        + 3 * _e(-(2 * n - 4) * t / n) / 8
                        + _e(-(2 * n - 2) * t / n) / 6
                        + 3 * _e(-2 * t) / 8
                        + _e(-(2 * n + 4) * t / n) / 24),
        "ij.jk.kl.li": (lambda n: mono((0, 1), (1, 2), (2, 3), (3, 0)),
                        lambda n, t: -_e(-(2 * n - 8) * t / n) / 24
                        + _e(-(2 * n - 4) * t / n) / 8
                        - _e(-2 * t) / 8
                        + _e(-(2 * n + 4) * t / n) / 24),
        "ii.jj.kl.lk": (lambda n: mono((0, 0), (1, 1), (2, 3), (3, 2)),
                        lambda n, t: -_e(-(2 * n - 8) * t / n) / 24
                        - _e(-(2 * n - 4) * t / n) / 8
                        + _e(-2 * t) / 8
                        + _e(-(2 * n + 4) * t / n) / 24),
        "ij.ji.kl.lk": (lambda n: mono((0, 1), (1, 0), (2, 3), (3, 2)),
                        lambda n, t: _e(-(2 * n - 8) * t / n) / 24
                        - _e(-(2 * n - 4) * t / n) / 8
                        + _e(-(2 * n - 2) * t / n) / 6
                        - _e(-2 * t) / 8
                        + _e(-(2 * n + 4) * t / n) / 24),
        "ij.ik.il^2": (lambda n: mono((0, 1), (0, 2), (0, 3), (0, 3)),
                       lambda n, t: 0.0),
    }


def _su_forms() -> dict[str, tuple[Callable[[int], list], Callable[[int, float], float]]]:
    def mono(plain: Sequence[tuple[int, int]],
             conj: Sequence[tuple[int, int]]) -> list:
        term = tuple([(i, j, False) for i, j in plain]
                     + [(i, j, True) for i, j in conj])
        return [(1.0, term)]

    def sq(*entries: tuple[int, int]) -> list:
        # product of square moduli: each entry contributes one plain and one
        # conjugated copy
        return mono(list(entries), list(entries))

    return {
        "|ii|^2": (lambda n: sq((0, 0)),
                   lambda n, t: 1 / n + (1 - 1 / n) * _e(-t)),
        "|ij|^2": (lambda n: sq((0, 1)),
                   lambda n, t: (1 - _e(-t)) / n),
        "ii.cjj": (lambda n: mono([(0, 0)], [(1, 1)]),
                   lambda n, t: _e(-t)),
        "|ii|^4": (lambda n: sq((0, 0), (0, 0)),
                   lambda n, t: 2 / (n * (n + 1))
                   + 4 * (n - 1) / (n * (n + 2)) * _e(-t)
                   + n * (n - 1) / ((n + 1) * (n + 2)) * _e(-(2 * n + 2) * t / n)),
        "|ij|^4": (lambda n: sq((0, 1), (0, 1)),
                   lambda n, t: 2 / (n * (n + 1))
                   - 4 / (n * (n + 2)) * _e(-t)
                   + 2 / ((n + 1) * (n + 2)) * _e(-(2 * n + 2) * t / n)),
        "|ii|^2.|ij|^2": (lambda n: sq((0, 0), (0, 1)),
                          lambda n, t: 1 / (n * (n + 1))
                          + (n - 2) / (n * (n + 2)) * _e(-t)
                          - n / ((n + 1) * (n + 2)) * _e(-(2 * n + 2) * t / n)),
        "|ij|^2.|ik|^2": (lambda n: sq((0, 1), (0, 2)),
                          lambda n, t: 1 / (n * (n + 1))
                          - 2 / (n * (n + 2)) * _e(-t)
                          + 1 / ((n + 1) * (n + 2)) * _e(-(2 * n + 2) * t / n)),
        "|ii|^2.|jj|^2": (lambda n: sq((0, 0), (1, 1)),
                          lambda n, t: 1 / ((n - 1) * (n + 1))
                          + 2 * (n + 1) / (n * (n + 2)) * _e(-t)
                          + (n - 3) / (4 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                          + (n - 2) / (2 * n) * _e(-2 * t)
                          + (n * n + n + 2) / (4 * (n + 1) * (n + 2))
                          * _e(-(2 * n + 2) * t / n)),
        "|ij|^2.|ji|^2": (lambda n: sq((0, 1), (1, 0)),
                          lambda n, t: 1 / ((n - 1) * (n + 1))
                          - 2 / (n * (n + 2)) * _e(-t)
                          + (n - 3) / (4 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                          - (n - 2) / (2 * n) * _e(-2 * t)
                          + (n * n + n + 2) / (4 * (n + 1) * (n + 2))
                          * _e(-(2 * n + 2) * t / n)),
        "|ii|^2.|jk|^2": (lambda n: sq((0, 0), (1, 2)),
                          lambda n, t: 1 / ((n - 1) * (n + 1))
                          + (n * n - 2 * n - 2) / (n * (n - 2) * (n + 2)) * _e(-t)
                          - (n - 3) / (4 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                          - 1 / (2 * n) * _e(-2 * t)
                          - (n - 1) / (4 * (n + 1) * (n + 2))
                          * _e(-(2 * n + 2) * t / n)),
        "|ij|^2.|jk|^2": (lambda n: sq((0, 1), (1, 2)),
                          lambda n, t: 1 / ((n - 1) * (n + 1))
                          - 2 * (n - 1) / (n * (n - 2) * (n + 2)) * _e(-t)
                          - (n - 3) / (4 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                          + 1 / (2 * n) * _e(-2 * t)
                          - (n - 1) / (4 * (n + 1) * (n + 2))
                          * _e(-(2 * n + 2) * t / n)),
        "|ij|^2.|kl|^2": (lambda n: sq((0, 1), (2, 3)),
                          lambda n, t: 1 / ((n - 1) * (n + 1))
                          - 2 / ((n - 2) * (n + 2)) * _e(-t)
                          + 1 / (2 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                          + 1 / (2 * (n + 1) * (n + 2)) * _e(-(2 * n + 2) * t / n)),
    }


def _usp_forms() -> dict[str, tuple[Callable[[int], list], Callable[[int, float], float]]]:
    def mono(*entries: tuple[int, int]) -> list:
        return [(1.0, tuple((a, b, False) for a, b in entries))]

    def qnorm(i: int, j: int) -> list:
        # squared quaternion norm of a block entry, as a determinant of the
        # 2 x 2 complex block
        a, b = 2 * i, 2 * j
        return [(1.0, ((a, b, False), (a + 1, b + 1, False))),
                (-1.0, ((a, b + 1, False), (a + 1, b, False)))]

    def qprod(first: tuple[int, int], second: tuple[int, int]) -> list:
        out = []
        for c1, m1 in qnorm(*first):
            for c2, m2 in qnorm(*second):
                out.append((c1 * c2, m1 + m2))
        return out

    return {
        "q|ii|^2": (lambda n: qnorm(0, 0),
                    lambda n, t: 1 / n + (n - 1) / n * _e(-t)),
        "q|ij|^2": (lambda n: qnorm(0, 1),
                    lambda n, t: (1 - _e(-t)) / n),
        "d_aa^2": (lambda n: mono((0, 0), (0, 0)),
                   lambda n, t: _e(-(n + 1) * t / n)),
        "d_ab^2": (lambda n: mono((0, 1), (0, 1)), lambda n, t: 0.0),
        "d_aa^4": (lambda n: mono((0, 0), (0, 0), (0, 0), (0, 0)),
                   lambda n, t: _e(-(2 * n + 4) * t / n)),
        "d_ab^4": (lambda n: mono((0, 1), (0, 1), (0, 1), (0, 1)),
                   lambda n, t: 0.0),
        "d_aa^2.ab^2": (lambda n: mono((0, 0), (0, 0), (0, 1), (0, 1)),
                        lambda n, t: 0.0),
        "d_ab^2.ac^2": (lambda n: mono((0, 1), (0, 1), (0, 2), (0, 2)),
                        lambda n, t: 0.0),
        "pair_diag^2": (lambda n: mono((0, 0), (0, 0), (1, 1), (1, 1)),
                        lambda n, t: 1 / (n * (2 * n + 1))
                        + (n - 1) / (n * (n + 1)) * _e(-t)
                        + 1 / (n + 1) * _e(-(n + 1) * t / n)
                        + (2 * n - 1) * (2 * n - 2)
                        / (3 * (2 * n + 1) * (2 * n + 2)) * _e(-(2 * n + 1) * t / n)
                        + (n - 1) / (2 * (n + 1)) * _e(-(2 * n + 2) * t / n)
                        + _e(-(2 * n + 4) * t / n) / 6),
        "pair_anti^2": (lambda n: mono((0, 1), (0, 1), (1, 0), (1, 0)),
                        lambda n, t: 1 / (n * (2 * n + 1))
                        + (n - 1) / (n * (n + 1)) * _e(-t)
                        - 1 / (n + 1) * _e(-(n + 1) * t / n)
                        + (2 * n - 1) * (2 * n - 2)
                        / (3 * (2 * n + 1) * (2 * n + 2)) * _e(-(2 * n + 1) * t / n)
                        - (n - 1) / (2 * (n + 1)) * _e(-(2 * n + 2) * t / n)
                        + _e(-(2 * n + 4) * t / n) / 6),
        "cross_diag^2": (lambda n: mono((0, 2), (0, 2), (1, 3), (1, 3)),
                         lambda n, t: 1 / (n * (2 * n + 1))
                         - 1 / (n * (n + 1)) * _e(-t)
                         + 1 / ((2 * n + 1) * (n + 1)) * _e(-(2 * n + 1) * t / n)),
        "cross_anti^2": (lambda n: mono((0, 3), (0, 3), (1, 2), (1, 2)),
                         lambda n, t: 1 / (n * (2 * n + 1))
                         - 1 / (n * (n + 1)) * _e(-t)
                         + 1 / ((2 * n + 1) * (n + 1)) * _e(-(2 * n + 1) * t / n)),
        "nonpair_diag^2": (lambda n: mono((0, 0), (0, 0), (2, 2), (2, 2)),
                           lambda n, t: _e(-(2 * n + 1) * t / n) / 3
                           + _e(-(2 * n + 2) * t / n) / 2
                           + _e(-(2 * n + 4) * t / n) / 6),
        "nonpair_swap^2": (lambda n: mono((0, 2), (0, 2), (2, 0), (2, 0)),
                           lambda n, t: _e(-(2 * n + 1) * t / n) / 3
                           - _e(-(2 * n + 2) * t / n) / 2
                           + _e(-(2 * n + 4) * t / n) / 6),
        "mixed_pair": (lambda n: mono((0, 0), (0, 1), (1, 1), (1, 0)),
                       lambda n, t: -1 / (2 * n * (2 * n + 1))
                       - (n - 1) / (2 * n * (n + 1)) * _e(-t)
                       - (2 * n - 1) * (2 * n - 2)
                       / (6 * (2 * n + 1) * (2 * n + 2)) * _e(-(2 * n + 1) * t / n)
                       + _e(-(2 * n + 4) * t / n) / 6),
        "q|ii|^4": (lambda n: qprod((0, 0), (0, 0)),
                    lambda n, t: 3 / (n * (2 * n + 1))
                    + 3 * (n - 1) / (n * (n + 1)) * _e(-t)
                    + (2 * n - 1) * (2 * n - 2) / ((2 * n + 1) * (2 * n + 2))
                    * _e(-(2 * n + 1) * t / n)),
        "q|ij|^4": (lambda n: qprod((0, 1), (0, 1)),
                    lambda n, t: 3 / (n * (2 * n + 1))
                    - 3 / (n * (n + 1)) * _e(-t)
                    + 3 / ((2 * n + 1) * (n + 1)) * _e(-(2 * n + 1) * t / n)),
        "q|ii|^2.|ij|^2": (lambda n: qprod((0, 0), (0, 1)),
                           lambda n, t: 2 / (n * (2 * n + 1))
                           + (n - 2) / (n * (n + 1)) * _e(-t)
                           - 2 * (2 * n - 1) / ((2 * n + 1) * (2 * n + 2))
                           * _e(-(2 * n + 1) * t / n)),
        "q|ij|^2.|ik|^2": (lambda n: qprod((0, 1), (0, 2)),
                           lambda n, t: 2 / (n * (2 * n + 1))
                           - 2 / (n * (n + 1)) * _e(-t)
                           + 2 / ((2 * n + 1) * (n + 1)) * _e(-(2 * n + 1) * t / n)),
        "q|ii|^2.|jj|^2": (lambda n: qprod((0, 0), (1, 1)),
                           lambda n, t: (2 * n - 1) / (n * (n - 1) * (2 * n + 1))
                           + 2 / (n + 1) * _e(-t)
                           + (n - 3) / (6 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                           + (n - 2) / (2 * n) * _e(-2 * t)
                           + (2 * n * n - n + 3) / (3 * (n + 1) * (2 * n + 1))
                           * _e(-(2 * n + 1) * t / n)),
        "q|ij|^2.|ji|^2": (lambda n: qprod((0, 1), (1, 0)),
                           lambda n, t: (2 * n - 1) / (n * (n - 1) * (2 * n + 1))
                           - 2 / (n * (n + 1)) * _e(-t)
                           + (n - 3) / (6 * (n - 1)) * _e(-(2 * n - 2) * t / n)
                           - (n - 2) / (2 * n) * _e(-2 * t)
                           + (2 * n * n - n + 3) / (3 * (n + 1) * (2 * n + 1))
                           * _e(-(2 * n + 1) * t / n)),
        "q|ii|^2.|jk|^2": (lambda n: qprod((0, 0), (1, 2)),
                           lambda n, t: (2 * n - 1) / (n * (n - 1) * (2 * n + 1))
                           + (n * n - 3 * n + 1) / (n * (n + 1) * (n - 2)) * _e(-t)
                           - (n - 3) / (6 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                           - 1 / (2 * n) * _e(-2 * t)
                           - (2 * n - 3) / (3 * (n + 1) * (2 * n + 1))
                           * _e(-(2 * n + 1) * t / n)),
        "q|ij|^2.|jk|^2": (lambda n: qprod((0, 1), (1, 2)),
                           lambda n, t: (2 * n - 1) / (n * (n - 1) * (2 * n + 1))
                           - (2 * n - 3) / (n * (n + 1) * (n - 2)) * _e(-t)
                           - (n - 3) / (6 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                           + 1 / (2 * n) * _e(-2 * t)
                           - (2 * n - 3) / (3 * (n + 1) * (2 * n + 1))
                           * _e(-(2 * n + 1) * t / n)),
        "q|ij|^2.|kl|^2": (lambda n: qprod((0, 1), (2, 3)),
                           lambda n, t: (2 * n - 1) / (n * (n - 1) * (2 * n + 1))
                           - (2 * n - 2) / (n * (n + 1) * (n - 2)) * _e(-t)
                           + 1 / (3 * (n - 1) * (n - 2)) * _e(-(2 * n - 2) * t / n)
                           + 4 / (3 * (n + 1) * (2 * n + 1))
                           * _e(-(2 * n + 1) * t / n)),
    }


_FORM_TABLES: dict[str, dict] = {}


def _forms(algebra: str) -> dict:
    if algebra not in _FORM_TABLES:
        builder = {"so": _so_forms, "su": _su_forms, "usp": _usp_forms}[algebra]
        _FORM_TABLES[algebra] = builder()
    return _FORM_TABLES[algebra]


def closed_form_names(algebra: str) -> tuple[str, ...]:
    """Names of the tabulated closed-form moment patterns."""
    if algebra not in _ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}")
    return tuple(_forms(algebra))


def pattern_monomials(algebra: str, n: int, name: str) -> list:
    """Signed monomials (coefficient, entries) realizing a named pattern."""
    _check_algebra(algebra, n)
    try:
        build, _ = _forms(algebra)[name]
    except KeyError:
        raise UnsupportedPattern(f"unknown pattern {name!r}") from None
    terms = build(n)
    d = _embedding_dim(algebra, n)
    symbols = {i for _, term in terms for e in term for i in e[:2]}
    if max(symbols) >= d:
        raise InvalidRank(f"pattern {name!r} needs dimension > {max(symbols)}")
    return terms


def closed_form_value(algebra: str, n: int, name: str, t: float) -> float:
    """Evaluate a tabulated closed-form moment."""
    _check_algebra(algebra, n)
    try:
        _, value = _forms(algebra)[name]
    except KeyError:
        raise UnsupportedPattern(f"unknown pattern {name!r}") from None
    return float(value(n, t))


def generator_moment(algebra: str, n: int, name: str, t: float) -> complex:
    """Evaluate a named pattern through the generator exponential."""
    terms = pattern_monomials(algebra, n, name)
    total = 0.0 + 0.0j
    for coeff, term in terms:
        total += coeff * complex(moment(algebra, n, term, t))
    return total


# -- squared zonal functions in the zonal basis ----------------------------


def _weight(parts: Sequence[int], kind: WeightKind, length: int) -> Weight:
    padded = tuple(parts) + (0,) * (length - len(parts))
    return Weight.of(padded, kind)


def zonal_square_expansion(descriptor: SpaceDescriptor) -> dict[Weight, Fraction]:
    """Coefficients of the squared discriminating zonal function.

    The square (or squared modulus) of the basepoint-normalized zonal
    function attached to the minimal spherical label expands over finitely
    many zonal functions; the coefficients are rational in n, p, q and sum
    to one.  Labels that do not exist at the given rank are omitted after
    folding their would-be contribution into coinciding terms.
    """
    fam = descriptor.family
    n = descriptor.n
    if fam in (Family.SO, Family.SU, Family.USp):
        raise UnsupportedSpace("expansion applies to quotient spaces only")
    out: dict[Weight, Fraction] = {}
    if fam in (Family.GrR, Family.GrC, Family.GrH):
        q = descriptor.q
        p = n - q
        pq = p * q
    if fam is Family.GrR:
        kind, length = WeightKind.evenOrOddY, descriptor.q
        out[_weight((), kind, length)] = Fraction(2, n * n + n - 2)
        out[_weight((2,), kind, length)] = (
            Fraction(4 * n * n - 16 * pq, pq * (n - 2) * (n + 4)))
        if length >= 2:
            out[_weight((2, 2), kind, length)] = Fraction(2 * n * n, 3) * (
                Fraction(1, (n - 1) * (n - 2)) - Fraction(1, pq * (n - 2)))
        out[_weight((4,), kind, length)] = Fraction(n * n, 3) * (
            Fraction(1, (n + 2) * (n + 4)) + Fraction(2, pq * (n + 4)))
    elif fam is Family.GrC:
        kind, length = WeightKind.Y, descriptor.q
        out[_weight((), kind, length)] = Fraction(1, n * n - 1)
        if n == 2:
            # the generic numerator 2n^2 - 8pq vanishes together with its
            # denominator; the coefficient sum fixes the value at zero
            out[_weight((1,), kind, length)] = Fraction(0)
        else:
            out[_weight((1,), kind, length)] = (
                Fraction(2 * n * n - 8 * pq, pq * (n * n - 4)))
        if length >= 2:
            out[_weight((1, 1), kind, length)] = Fraction(n * n, 2) * (
                Fraction(1, (n - 1) * (n - 2)) - Fraction(1, pq * (n - 2)))
        out[_weight((2,), kind, length)] = Fraction(n * n, 2) * (
            Fraction(1, (n + 1) * (n + 2)) + Fraction(1, pq * (n + 2)))
    elif fam is Family.GrH:
        kind, length = WeightKind.doubledY, 2 * descriptor.q
        out[_weight((), kind, length)] = Fraction(1, 2 * n * n - n - 1)
        if n == 2:
            out[_weight((1, 1), kind, length)] = Fraction(0)
        else:
            out[_weight((1, 1), kind, length)] = (
                Fraction(n * n - 4 * pq, pq * (n - 2) * (n + 1)))
        if length >= 4:
            out[_weight((1, 1, 1, 1), kind, length)] = Fraction(n * n, 3) * (
                Fraction(1, (n - 1) * (n - 2)) - Fraction(1, pq * (n - 2)))
        out[_weight((2, 2), kind, length)] = Fraction(n * n, 3) * (
            Fraction(4, (n + 1) * (2 * n + 1)) + Fraction(1, pq * (n + 1)))
    elif fam is Family.SO2n_Un:
        kind, length = WeightKind.doubledY, n
        flat = Fraction(n - 1, 3 * n)
        out[_weight((), kind, length)] = Fraction(1, 2 * n * n - n)
        if length >= 4:
            out[_weight((1, 1, 1, 1), kind, length)] = flat
        elif n == 3:
            # at rank three the four-row label folds onto a single pair of
            # ones, whose decay rate coincides there
            out[_weight((1, 1), kind, length)] = flat
        else:
            # at rank two it degenerates onto the constant (zero rate)
            out[_weight((), kind, length)] += flat
        out[_weight((2, 2), kind, length)] = (
            Fraction(4 * (n - 1) * (n + 1), 3 * n * (2 * n - 1)))
    elif fam is Family.SUn_SOn:
        kind, length = WeightKind.evenY, n - 1
        out[_weight((), kind, length)] = Fraction(2, n * n + n)
        top = (4,) + (2,) * (length - 1)
        out[_weight(top, kind, length)] = Fraction(n * n + n - 2, n * n + n)
    elif fam is Family.SU2n_USpn:
        kind, length = WeightKind.doubledY, 2 * n - 1
        out[_weight((), kind, length)] = Fraction(1, 2 * n * n - n)
        mixed = (2, 2) + (1,) * (length - 3) + (0,)
        out[_weight(mixed, kind, length)] = (
            Fraction(2 * n * n - n - 1, 2 * n * n - n))
    elif fam is Family.USpn_Un:
        kind, length = WeightKind.evenY, n
        out[_weight((), kind, length)] = Fraction(1, 2 * n * n + n)
        if length >= 2:
            out[_weight((2, 2), kind, length)] = (
                Fraction(4 * (n - 1) * (n + 1), 3 * n * (2 * n + 1)))
        out[_weight((4,), kind, length)] = Fraction(n + 1, 3 * n)
    else:  # pragma: no cover - family enum is exhaustive
        raise UnsupportedSpace(str(fam))
    return out
