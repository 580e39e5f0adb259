"""Catalog of the ten classical families: normalization and cut-off constants,
series indexing sets, minimal weights, and ambient-group bookkeeping."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidRank, UnknownFamily
from .partitions import IndexingSetKind, Weight, WeightKind


class Family(enum.Enum):
    SO = "SO"
    SU = "SU"
    USp = "USp"
    GrR = "GrR"
    GrC = "GrC"
    GrH = "GrH"
    SO2n_Un = "SO2n_Un"
    SUn_SOn = "SUn_SOn"
    SU2n_USpn = "SU2n_USpn"
    USpn_Un = "USpn_Un"


FAMILY_NAMES = tuple(f.value for f in Family)

_GRASSMANN = {Family.GrR, Family.GrC, Family.GrH}
_GROUPS = {Family.SO, Family.SU, Family.USp}

# family -> (beta, alpha_cutoff, gamma_b, gamma_a, n0, c_lower, C_upper)
_TABLE: dict[Family, tuple[int, int, int, int, int, int, int]] = {
    Family.SO: (1, 2, 2, 2, 10, 36, 6),
    Family.SU: (2, 2, 2, 4, 2, 8, 10),
    Family.USp: (4, 2, 2, 2, 3, 5, 3),
    Family.GrR: (1, 1, 1, 1, 10, 32, 2),
    Family.GrC: (2, 1, 1, 2, 2, 32, 2),
    Family.GrH: (4, 1, 1, 1, 3, 16, 2),
    Family.SO2n_Un: (1, 1, 2, 1, 10, 8, 2),
    Family.SUn_SOn: (2, 1, 2, 2, 2, 24, 8),
    Family.SU2n_USpn: (2, 1, 2, 2, 2, 22, 8),
    Family.USpn_Un: (4, 1, 2, 1, 3, 17, 2),
}

_MIN_N = {
    Family.SO: 3,
    Family.SU: 2,
    Family.USp: 2,
    Family.GrR: 3,
    Family.GrC: 2,
    Family.GrH: 2,
    Family.SO2n_Un: 2,
    Family.SUn_SOn: 2,
    Family.SU2n_USpn: 2,
    Family.USpn_Un: 2,
}


@dataclass(frozen=True)
class SpaceDescriptor:
    """One classical family member with its constants."""

    family: Family
    n: int
    q: Optional[int]
    beta: int
    alpha_cutoff: int
    n0: int
    c_lower: int
    C_upper: int
    gamma_b: int
    gamma_a: int
    drift_alpha: Fraction
    is_group: bool

    @property
    def param(self) -> int:
        """The growth parameter appearing inside the cut-off logarithm."""
        if self.family in (Family.SO2n_Un, Family.SU2n_USpn):
            return 2 * self.n
        return self.n

    @property
    def matrix_size(self) -> int:
        """Side of the matrices carrying the isometry group."""
        if self.family in (Family.USp, Family.GrH, Family.USpn_Un,
                           Family.SO2n_Un, Family.SU2n_USpn):
            return 2 * self.n
        return self.n

    @property
    def field_tag(self) -> str:
        """Scalar field of the stored matrices ('real' or 'complex')."""
        ambient = _AMBIENT[self.family]
        return "real" if ambient is Family.SO else "complex"

    def ambient_group(self) -> "SpaceDescriptor":
        """The isometry group of this space as a group-family descriptor."""
        if self.is_group:
            return self
        fam = _AMBIENT[self.family]
        if fam is Family.SO and self.family is Family.SO2n_Un:
            return describe(fam, 2 * self.n)
        if fam is Family.SU and self.family is Family.SU2n_USpn:
            return describe(fam, 2 * self.n)
        return describe(fam, self.n)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "q": self.q,
            "beta": self.beta,
            "alpha_cutoff": self.alpha_cutoff,
            "n0": self.n0,
            "c_lower": self.c_lower,
            "C_upper": self.C_upper,
            "gamma_b": self.gamma_b,
            "gamma_a": self.gamma_a,
            "drift_alpha": str(self.drift_alpha),
            "is_group": self.is_group,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=False)

    def __str__(self) -> str:
        if self.q is not None:
            return f"{self.family.value}({self.n},{self.q})"
        return f"{self.family.value}({self.n})"


_AMBIENT = {
    Family.SO: Family.SO,
    Family.SU: Family.SU,
    Family.USp: Family.USp,
    Family.GrR: Family.SO,
    Family.GrC: Family.SU,
    Family.GrH: Family.USp,
    Family.SO2n_Un: Family.SO,
    Family.SUn_SOn: Family.SU,
    Family.SU2n_USpn: Family.SU,
    Family.USpn_Un: Family.USp,
}


def _drift(family: Family, n: int) -> Fraction:
    ambient = _AMBIENT[family]
    if family in (Family.SO2n_Un,):
        m = 2 * n
    elif family in (Family.SU2n_USpn,):
        m = 2 * n
    else:
        m = n
    if ambient is Family.SO:
        return Fraction(-(m - 1), m)
    if ambient is Family.SU:
        return Fraction(-(m * m - 1), m * m)
    return Fraction(-(2 * m + 1), 2 * m)


def describe(family: Family | str, n: int, q: Optional[int] = None) -> SpaceDescriptor:
    """The fully populated descriptor for one family member."""
    if isinstance(family, str):
        try:
            family = Family(family)
        except ValueError as exc:
            raise UnknownFamily(f"no family named {family!r}") from exc
    if family not in _TABLE:  # pragma: no cover
        raise UnknownFamily(f"no family named {family!r}")
    if n < _MIN_N[family]:
        raise InvalidRank(f"{family.value} needs n >= {_MIN_N[family]}, got {n}")
    if family in _GRASSMANN:
        if q is None:
            raise InvalidRank(f"{family.value} needs the second parameter q")
        if q > n // 2:
            q = n - q
        if not 1 <= q <= n // 2:
            raise InvalidRank(f"q={q} out of range for {family.value}({n})")
    elif q is not None:
        raise InvalidRank(f"{family.value} takes no q parameter")
    beta, alpha, gamma_b, gamma_a, n0, c_lower, c_upper = _TABLE[family]
    return SpaceDescriptor(
        family=family,
        n=n,
        q=q,
        beta=beta,
        alpha_cutoff=alpha,
        n0=n0,
        c_lower=c_lower,
        C_upper=c_upper,
        gamma_b=gamma_b,
        gamma_a=gamma_a,
        drift_alpha=_drift(family, n),
        is_group=family in _GROUPS,
    )


def indexing_set(descriptor: SpaceDescriptor) -> IndexingSetKind:
    """Weight-label family and coordinate count of the density summation."""
    fam, n, q = descriptor.family, descriptor.n, descriptor.q
    if fam is Family.SO:
        return IndexingSetKind(WeightKind.halfY, n // 2)
    if fam is Family.SU:
        return IndexingSetKind(WeightKind.Y, n - 1)
    if fam is Family.USp:
        return IndexingSetKind(WeightKind.Y, n)
    if fam is Family.GrR:
        return IndexingSetKind(WeightKind.evenOrOddY, q)
    if fam is Family.GrC:
        return IndexingSetKind(WeightKind.Y, q)
    if fam is Family.GrH:
        return IndexingSetKind(WeightKind.doubledY, 2 * q)
    if fam is Family.SO2n_Un:
        return IndexingSetKind(WeightKind.doubledY, n)
    if fam is Family.SUn_SOn:
        return IndexingSetKind(WeightKind.evenY, n - 1)
    if fam is Family.SU2n_USpn:
        return IndexingSetKind(WeightKind.doubledY, 2 * n - 1)
    if fam is Family.USpn_Un:
        return IndexingSetKind(WeightKind.evenY, n)
    raise UnknownFamily(str(fam))  # pragma: no cover


def _unit_weight(kind: WeightKind, length: int, head: tuple[int, ...]) -> Weight:
    parts = head + (0,) * (length - len(head))
    return Weight.of(parts, kind)


def minimal_weight(descriptor: SpaceDescriptor) -> tuple[Weight, Fraction, Fraction]:
    """(lambda_min, A_min, B_min): the slowest-decaying series label."""
    fam, n, q = descriptor.family, descriptor.n, descriptor.q
    idx = indexing_set(descriptor)
    if fam is Family.SO:
        lam = _unit_weight(idx.kind, idx.length, (1,))
        return lam, Fraction(n * n), Fraction(n - 1, n)
    if fam is Family.SU:
        lam = _unit_weight(idx.kind, idx.length, (1,))
        return lam, Fraction(n * n), Fraction(n * n - 1, n * n)
    if fam is Family.USp:
        lam = _unit_weight(idx.kind, idx.length, (1,))
        return lam, Fraction(4 * n * n), Fraction(2 * n + 1, 2 * n)
    if fam is Family.GrR:
        lam = _unit_weight(idx.kind, idx.length, (2,))
        return lam, Fraction((n - 1) * (n + 2), 2), Fraction(2)
    if fam is Family.GrC:
        lam = _unit_weight(idx.kind, idx.length, (1,))
        return lam, Fraction(n * n - 1), Fraction(2)
    if fam is Family.GrH:
        lam = _unit_weight(idx.kind, idx.length, (1, 1))
        return lam, Fraction((n - 1) * (2 * n + 1)), Fraction(2)
    if fam is Family.SO2n_Un:
        lam = _unit_weight(idx.kind, idx.length, (1, 1))
        return lam, Fraction(n * (2 * n - 1)), Fraction(2 * (n - 1), n)
    if fam is Family.SUn_SOn:
        lam = _unit_weight(idx.kind, idx.length, (2,))
        return lam, Fraction(n * (n + 1), 2), Fraction(2 * (n - 1) * (n + 2), n * n)
    if fam is Family.SU2n_USpn:
        lam = _unit_weight(idx.kind, idx.length, (1, 1))
        return lam, Fraction(n * (2 * n - 1)), Fraction((n - 1) * (2 * n + 1), n * n)
    if fam is Family.USpn_Un:
        lam = _unit_weight(idx.kind, idx.length, (2,))
        return lam, Fraction(n * (2 * n + 1)), Fraction(2 * (n + 1), n)
    raise UnknownFamily(str(fam))  # pragma: no cover
