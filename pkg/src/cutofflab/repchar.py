"""Dimension products, Casimir exponents, and determinant-ratio character
evaluation for the four classical root types."""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateAlphabet, InvalidRank, WeightKindMismatch
from .partitions import Weight, WeightKind
from .spaces import Family, SpaceDescriptor, indexing_set

_DEGENERACY_FLOOR = 1e-10


class CharType(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class EigenAlphabet:
    """Unit-modulus eigenvalues z_1..z_n; reciprocals/fixed points implied by type."""

    values: tuple[complex, ...]

    def __post_init__(self) -> None:
        for z in self.values:
            if abs(abs(z) - 1.0) > 1e-12:
                raise ValueError(f"alphabet entry {z} is not unit-modulus")

    def __len__(self) -> int:
        return len(self.values)


def _alphabet_values(alphabet: "EigenAlphabet | Sequence[complex]") -> tuple[complex, ...]:
    if isinstance(alphabet, EigenAlphabet):
        return alphabet.values
    return tuple(complex(z) for z in alphabet)


def _check_membership(descriptor: SpaceDescriptor, weight: Weight) -> None:
    idx = indexing_set(descriptor)
    if weight.kind is not idx.kind or weight.length != idx.length:
        raise WeightKindMismatch(
            f"weight {weight} of kind {weight.kind.value}/{weight.length} does not "
            f"index {descriptor} (needs {idx.kind.value}/{idx.length})")


def _halves(weight: Weight) -> list[Fraction]:
    """Signed true parts as exact fractions."""
    return list(weight.parts)


def _type_a_product(parts: Sequence[Fraction], n: int) -> Fraction:
    """prod_{i<j<=n} (l_i - l_j + j - i)/(j - i) over the padded label."""
    lam = list(parts) + [Fraction(0)] * (n - len(parts))
    out = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            out *= (lam[i] - lam[j] + (j - i)) / (j - i)
    return out


def _type_bcd_product(parts: Sequence[Fraction], rank: int, char_type: CharType) -> Fraction:
    lam = list(parts) + [Fraction(0)] * (rank - len(parts))
    out = Fraction(1)
    for i in range(rank):
        for j in range(i + 1, rank):
            out *= (lam[i] - lam[j] + (j - i)) / (j - i)
    if char_type is CharType.B:
        offset, strict = 2 * rank + 1, False
    elif char_type is CharType.C:
        offset, strict = 2 * rank + 2, False
    else:
        offset, strict = 2 * rank, True
    for i in range(rank):
        j0 = i + 1 if strict else i
        for j in range(j0, rank):
            num = lam[i] + lam[j] + offset - (i + 1) - (j + 1)
            den = offset - (i + 1) - (j + 1)
            out *= num / den
    return out


def _grc_full_label(weight: Weight, n: int) -> list[Fraction]:
    """(l_1..l_q, 0,...,0, -l_q..-l_1): the symmetric ambient label."""
    head = list(weight.parts)
    return head + [Fraction(0)] * (n - 2 * len(head)) + [-v for v in reversed(head)]


def dimension(descriptor: SpaceDescriptor, weight: Weight) -> Fraction:
    """Exact dimension of the representation labelled by the weight."""
    _check_membership(descriptor, weight)
    fam, n = descriptor.family, descriptor.n
    parts = _halves(weight)
    if fam is Family.SU:
        return _type_a_product(parts, n)
    if fam is Family.SUn_SOn:
        return _type_a_product(parts, n)
    if fam is Family.SU2n_USpn:
        return _type_a_product(parts, 2 * n)
    if fam is Family.GrC:
        return _type_a_product(_grc_full_label(weight, n), n)
    if fam is Family.USp:
        return _type_bcd_product(parts, n, CharType.C)
    if fam in (Family.GrH, Family.USpn_Un):
        return _type_bcd_product(parts, n, CharType.C)
    if fam in (Family.SO, Family.GrR):
        rank = n // 2
        ctype = CharType.B if n % 2 else CharType.D
        return _type_bcd_product(parts, rank, ctype)
    if fam is Family.SO2n_Un:
        return _type_bcd_product(parts, n, CharType.D)
    raise WeightKindMismatch(str(fam))  # pragma: no cover


def _so_exponent(parts: Sequence[Fraction], big_n: int) -> Fraction:
    total = Fraction(0)
    for i, v in enumerate(parts, start=1):
        total += v * v + (big_n - 2 * i) * v
    return total / big_n


def _su_type_exponent(parts: Sequence[Fraction], big_n: int) -> Fraction:
    size = sum(parts)
    total = Fraction(0)
    for i, v in enumerate(parts, start=1):
        total += v * v + (big_n + 1 - 2 * i) * v
    return total / big_n - size * size / Fraction(big_n * big_n)


def _usp_type_exponent(parts: Sequence[Fraction], n: int) -> Fraction:
    total = Fraction(0)
    for i, v in enumerate(parts, start=1):
        total += v * v + (2 * n + 2 - 2 * i) * v
    return total / (2 * n)


def casimir_exponent(descriptor: SpaceDescriptor, weight: Weight) -> Fraction:
    """B_n(lambda): the heat-semigroup decay rate of the lambda-block."""
    _check_membership(descriptor, weight)
    fam, n = descriptor.family, descriptor.n
    parts = _halves(weight)
    if fam in (Family.SO, Family.GrR):
        return _so_exponent(parts, n)
    if fam is Family.SO2n_Un:
        return _so_exponent(parts, 2 * n)
    if fam in (Family.SU, Family.SUn_SOn):
        return _su_type_exponent(parts, n)
    if fam is Family.SU2n_USpn:
        return _su_type_exponent(parts, 2 * n)
    if fam is Family.GrC:
        total = Fraction(0)
        for i, v in enumerate(parts, start=1):
            total += v * v + (n + 1 - 2 * i) * v
        return 2 * total / n
    if fam in (Family.USp, Family.GrH, Family.USpn_Un):
        return _usp_type_exponent(parts, n)
    raise WeightKindMismatch(str(fam))  # pragma: no cover


# -- determinant-ratio characters ------------------------------------------


def _power_matrix(thetas: Sequence[float], exponents: Sequence[Fraction],
                  combine: str) -> np.ndarray:
    """M[i,j] built from e^{i a_j theta_i}, optionally +- the reciprocal power."""
    n = len(thetas)
    mat = np.empty((n, len(exponents)), dtype=complex)
    for j, a in enumerate(exponents):
        af = float(a)
        for i, th in enumerate(thetas):
            zp = cmath.exp(1j * af * th)
            if combine == "plain":
                mat[i, j] = zp
            elif combine == "diff":
                mat[i, j] = zp - cmath.exp(-1j * af * th)
            else:
                mat[i, j] = zp + cmath.exp(-1j * af * th)
    return mat


def _det(mat: np.ndarray) -> complex:
    return complex(np.linalg.det(mat))


def schur(char_type: CharType | str, lam: "Weight | Sequence[Fraction]",
          alphabet: "EigenAlphabet | Sequence[complex]") -> complex:
    """Character value at the alphabet via the determinant-ratio formula.

    Type D returns the sum over both signs of the last part when it is non-zero
    and the plain value when it is zero.
    """
    if isinstance(char_type, str):
        char_type = CharType(char_type)
    values = _alphabet_values(alphabet)
    n = len(values)
    if isinstance(lam, Weight):
        parts = list(lam.parts)
    else:
        parts = [Fraction(v) for v in lam]
    if len(parts) > n:
        raise ValueError(f"label longer than alphabet: {parts} vs n={n}")
    parts = parts + [Fraction(0)] * (n - len(parts))
    thetas = [cmath.phase(z) for z in values]

    if char_type is CharType.A:
        num_exp = [parts[j] + (n - 1 - j) for j in range(n)]
        den_exp = [Fraction(n - 1 - j) for j in range(n)]
        den = _det(_power_matrix(thetas, den_exp, "plain"))
        if abs(den) < _DEGENERACY_FLOOR:
            raise DegenerateAlphabet(f"Vandermonde {abs(den):.3e} below floor")
        return _det(_power_matrix(thetas, num_exp, "plain")) / den
    if char_type is CharType.B:
        num_exp = [parts[j] + (n - 1 - j) + Fraction(1, 2) for j in range(n)]
        den_exp = [Fraction(2 * (n - 1 - j) + 1, 2) for j in range(n)]
        den = _det(_power_matrix(thetas, den_exp, "diff"))
        if abs(den) < _DEGENERACY_FLOOR:
            raise DegenerateAlphabet(f"denominator {abs(den):.3e} below floor")
        return _det(_power_matrix(thetas, num_exp, "diff")) / den
    if char_type is CharType.C:
        num_exp = [parts[j] + (n - j) for j in range(n)]
        den_exp = [Fraction(n - j) for j in range(n)]
        den = _det(_power_matrix(thetas, den_exp, "diff"))
        if abs(den) < _DEGENERACY_FLOOR:
            raise DegenerateAlphabet(f"denominator {abs(den):.3e} below floor")
        return _det(_power_matrix(thetas, num_exp, "diff")) / den
    # type D
    num_exp = [parts[j] + (n - 1 - j) for j in range(n)]
    den_exp = [Fraction(n - 1 - j) for j in range(n)]
    den = _det(_power_matrix(thetas, den_exp, "sum"))
    if abs(den) < _DEGENERACY_FLOOR:
        raise DegenerateAlphabet(f"denominator {abs(den):.3e} below floor")
    total = _det(_power_matrix(thetas, num_exp, "sum"))
    if parts[-1] != 0:
        # the denominator's zero-exponent row carries a factor 2 that the
        # numerator lacks once the last exponent is non-zero
        total *= 2.0
    return total / den


def verify_square_identity(char_type: CharType | str, n: int,
                           alphabet: "EigenAlphabet | Sequence[complex]") -> float:
    """|LHS - RHS| for the tensor-square decomposition of the defining character."""
    if isinstance(char_type, str):
        char_type = CharType(char_type)
    if n < 2:
        raise InvalidRank("square identities need rank >= 2")
    values = _alphabet_values(alphabet)
    if len(values) != n:
        raise ValueError(f"alphabet size {len(values)} != n={n}")

    def lbl(head: tuple[int, ...]) -> list[Fraction]:
        return [Fraction(v) for v in head + (0,) * (n - len(head))]

    if char_type is CharType.A:
        prod = 1.0 + 0.0j
        for z in values:
            prod *= z
        if abs(prod - 1.0) > 1e-8:
            raise ValueError("type A identity needs a product-one alphabet")
        tr = sum(values)
        lhs = tr * sum(1.0 / z for z in values)
        rhs = schur(CharType.A, lbl((2,) + (1,) * (n - 2)), values) + 1.0
        return abs(lhs - rhs)
    tr = sum(values) + sum(1.0 / z for z in values)
    if char_type is CharType.B:
        tr += 1.0
    lhs = tr * tr
    rhs = (schur(char_type, lbl((2,)), values)
           + schur(char_type, lbl((1, 1)), values) + 1.0)
    return abs(lhs - rhs)
