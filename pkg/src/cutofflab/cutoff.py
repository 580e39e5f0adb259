"""Cut-off profiles from a single discriminating observable.

Each family carries one observable Omega: the trace of the running matrix on
a group, and a scaled polynomial in the matrix entries on a quotient space.
Its mean and variance under the heat flow are explicit rational-exponential
expressions, and a second-moment argument turns them into a total-variation
lower bound before the cut-off time; combined with the spectral upper bound
this yields the full profile.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import FieldMismatch, InvalidRank, UnsupportedSpace
from .heatseries import t_zero, tv_upper_bound
from .moments import moment, zonal_square_expansion
from .partitions import Weight, WeightKind
from .repchar import casimir_exponent, dimension
from .spaces import Family, SpaceDescriptor, indexing_set, minimal_weight

__all__ = [
    "OmegaSpec",
    "ProfilePoint",
    "omega_spec",
    "omega_value",
    "zonal_value",
    "mean_variance",
    "variance_cap",
    "lower_bound",
    "certified_window",
    "profile",
    "profile_csv",
    "profile_json",
    "zonal_square_series",
    "zonal_square_via_moments",
]

_ALGEBRA_OF = {
    Family.SO: "so", Family.GrR: "so", Family.SO2n_Un: "so",
    Family.SU: "su", Family.GrC: "su", Family.SUn_SOn: "su",
    Family.SU2n_USpn: "su",
    Family.USp: "usp", Family.GrH: "usp", Family.USpn_Un: "usp",
}

# constants bounding the observable's variance before cut-off; Grassmannian
# entries scale with n to the window exponent
_VARIANCE_CAP = {
    Family.SO: 8, Family.SU: 1, Family.USp: 3,
    Family.SO2n_Un: 3, Family.SUn_SOn: 1, Family.SU2n_USpn: 1,
    Family.USpn_Un: 3,
}
_GR_CAP_FACTOR = {Family.GrR: 3, Family.GrC: 5, Family.GrH: 5}


@dataclass(frozen=True)
class OmegaSpec:
    """The discriminating observable of one space."""

    descriptor: SpaceDescriptor
    kind: str  # "character_trace" or "zonal_polynomial"
    normalization: float  # Omega = normalization * basepoint-normalized value

    def to_json_dict(self) -> dict:
        return {
            "space": str(self.descriptor),
            "kind": self.kind,
            "normalization": self.normalization,
        }


def omega_spec(descriptor: SpaceDescriptor) -> OmegaSpec:
    """Observable attached to a family member: trace or scaled zonal value."""
    if descriptor.is_group:
        return OmegaSpec(descriptor, "character_trace", 1.0)
    _, a_min, _ = minimal_weight(descriptor)
    return OmegaSpec(descriptor, "zonal_polynomial", math.sqrt(float(a_min)))


def _check_matrix(descriptor: SpaceDescriptor, matrix: np.ndarray) -> np.ndarray:
    mat = np.asarray(matrix)
    m = descriptor.matrix_size
    if mat.shape != (m, m):
        raise ValueError(f"expected a {m} x {m} matrix, got {mat.shape}")
    if descriptor.field_tag == "real" and np.iscomplexobj(mat):
        if np.abs(mat.imag).max() > 1e-12:
            raise FieldMismatch(f"{descriptor} carries real matrices")
        mat = mat.real
    return mat


def zonal_value(descriptor: SpaceDescriptor, matrix: np.ndarray) -> complex:
    """Basepoint-normalized minimal zonal function, evaluated on an isometry."""
    fam = descriptor.family
    g = _check_matrix(descriptor, matrix)
    n, q = descriptor.n, descriptor.q
    if fam is Family.GrR:
        p = n - q
        return float((g[:p, :p] ** 2).sum() / p + (g[p:, p:] ** 2).sum() / q - 1.0)
    if fam is Family.GrC:
        p = n - q
        val = (np.abs(g[:p, :p]) ** 2).sum() / p + (np.abs(g[p:, p:]) ** 2).sum() / q
        return float(val - 1.0)
    if fam is Family.GrH:
        p = n - q
        norms = np.abs(g[0::2, 0::2]) ** 2 + np.abs(g[0::2, 1::2]) ** 2
        return float(norms[:p, :p].sum() / p + norms[p:, p:].sum() / q - 1.0)
    if fam in (Family.SO2n_Un, Family.SU2n_USpn):
        dets = (g[1::2, 1::2] * g[0::2, 0::2] - g[1::2, 0::2] * g[0::2, 1::2])
        total = complex(dets.sum()) / n
        return total.real if fam is Family.SO2n_Un else total
    if fam is Family.SUn_SOn:
        return complex((g.astype(complex) ** 2).sum() / n)
    if fam is Family.USpn_Un:
        return float((g.astype(complex) ** 2).sum().real / (2 * n))
    raise UnsupportedSpace(f"{descriptor} is a group; its observable is the trace")


def omega_value(spec: OmegaSpec | SpaceDescriptor, matrix: np.ndarray) -> complex:
    """Evaluate the discriminating observable on a matrix."""
    if isinstance(spec, SpaceDescriptor):
        spec = omega_spec(spec)
    descriptor = spec.descriptor
    if spec.kind == "character_trace":
        g = _check_matrix(descriptor, matrix)
        tr = complex(np.trace(g))
        if descriptor.family in (Family.SO, Family.USp):
            return tr.real
        return tr
    return spec.normalization * zonal_value(descriptor, matrix)


# -- mean and variance under the heat flow ---------------------------------


def _unit(descriptor: SpaceDescriptor, head: Sequence[int]) -> Weight:
    idx = indexing_set(descriptor)
    parts = tuple(head) + (0,) * (idx.length - len(head))
    return Weight.of(parts, idx.kind)


def _term(descriptor: SpaceDescriptor, weight: Weight, t: float) -> float:
    dim = dimension(descriptor, weight)
    rate = casimir_exponent(descriptor, weight)
    return float(dim) * math.exp(-t * float(rate) / 2.0)


def _group_square_terms(descriptor: SpaceDescriptor) -> list[tuple[Weight, int]]:
    """Non-trivial labels in the expansion of the squared trace modulus,
    with multiplicity two when a label carries both chirality pieces."""
    fam, n = descriptor.family, descriptor.n
    idx = indexing_set(descriptor)
    if fam is Family.SU:
        return [(_unit(descriptor, (2,) + (1,) * (idx.length - 1)), 1)]
    two = _unit(descriptor, (2,))
    if idx.length >= 2:
        pair = _unit(descriptor, (1, 1))
        both = 2 if (fam is Family.SO and n % 2 == 0
                     and pair.parts2[-1] != 0) else 1
        return [(two, 1), (pair, both)]
    # at rank one the exterior square folds onto the defining label
    return [(two, 1), (_unit(descriptor, (1,)), 1)]


def mean_variance(descriptor: SpaceDescriptor, t: float) -> tuple[float, float]:
    """Mean and variance of the observable at time t, in closed form.

    For a complex-valued observable the variance is the second absolute
    central moment.
    """
    if t < 0.0:
        raise ValueError("time must be non-negative")
    if descriptor.n < (3 if descriptor.family is Family.SO else 2):
        raise InvalidRank(str(descriptor))
    lam_min, a_min, b_min = minimal_weight(descriptor)
    mean = math.sqrt(float(a_min)) * math.exp(-t * float(b_min) / 2.0)
    if descriptor.is_group:
        second = 1.0
        for w, mult in _group_square_terms(descriptor):
            second += mult * _term(descriptor, w, t)
    else:
        second = float(a_min) * zonal_square_series(descriptor, t)
    return mean, second - mean * mean


def zonal_square_series(descriptor: SpaceDescriptor, t: float) -> float:
    """E_t of the squared (modulus of the) minimal zonal function."""
    total = 0.0
    for w, coeff in zonal_square_expansion(descriptor).items():
        rate = casimir_exponent(descriptor, w) if not w.is_zero else Fraction(0)
        total += float(coeff) * math.exp(-t * float(rate) / 2.0)
    return total


def variance_cap(descriptor: SpaceDescriptor, t: float) -> float:
    """Constant K bounding the variance of Omega throughout the pre-cut-off
    window; Grassmannian caps grow like n to the window exponent."""
    fam = descriptor.family
    if fam in _GR_CAP_FACTOR:
        eps = 1.0 - t / t_zero(descriptor)
        return _GR_CAP_FACTOR[fam] * float(descriptor.param) ** eps
    return float(_VARIANCE_CAP[fam])


def lower_bound(descriptor: SpaceDescriptor, t: float) -> float:
    """Second-moment lower bound on the total-variation distance at time t."""
    mean, _ = mean_variance(descriptor, t)
    cap = variance_cap(descriptor, t)
    if mean == 0.0:
        return 0.0
    return max(0.0, 1.0 - 4.0 * (cap + 1.0) / (mean * mean))


def certified_window(descriptor: SpaceDescriptor) -> tuple[float, float]:
    """Times t = alpha (1 - eps) log(param) with eps in (0, 1/4), where the
    lower-bound constants are proven."""
    top = t_zero(descriptor)
    return 0.75 * top, top


@dataclass(frozen=True)
class ProfilePoint:
    t: float
    lower: float
    upper: float

    def to_json_dict(self) -> dict:
        return {"t": self.t, "lower": self.lower, "upper": self.upper}


def profile(descriptor: SpaceDescriptor,
            t_grid: Iterable[float]) -> list[ProfilePoint]:
    """Lower and upper total-variation bounds along a time grid."""
    points = []
    for t in t_grid:
        t = float(t)
        points.append(ProfilePoint(t, lower_bound(descriptor, t),
                                   tv_upper_bound(descriptor, t)))
    return points


def profile_csv(points: Sequence[ProfilePoint]) -> str:
    lines = ["t,lower,upper"]
    for p in points:
        lines.append(f"{p.t:.12g},{p.lower:.12g},{p.upper:.12g}")
    return "\n".join(lines) + "\n"


def profile_json(points: Sequence[ProfilePoint]) -> str:
    return json.dumps([p.to_json_dict() for p in points])


# -- squared zonal functions through the moment engine ---------------------


def _phi_monomials(descriptor: SpaceDescriptor) -> list[tuple[float, tuple]]:
    """The zonal polynomial as signed monomials in (row, col, conj) entries
    of the ambient matrix, including the basepoint shift."""
    fam = descriptor.family
    n, q = descriptor.n, descriptor.q
    out: list[tuple[float, tuple]] = []
    if fam in (Family.GrR, Family.GrC):
        p = n - q
        conj = fam is Family.GrC
        for i in range(n):
            w = 1.0 / (p if i < p else q)
            for j in range(p) if i < p else range(p, n):
                out.append((w, ((i, j, False), (i, j, conj))))
        out.append((-1.0, ()))
    elif fam is Family.GrH:
        p = n - q
        for i in range(n):
            w = 1.0 / (p if i < p else q)
            for j in range(p) if i < p else range(p, n):
                a, b = 2 * i, 2 * j
                out.append((w, ((a, b, False), (a + 1, b + 1, False))))
                out.append((-w, ((a, b + 1, False), (a + 1, b, False))))
        out.append((-1.0, ()))
    elif fam in (Family.SO2n_Un, Family.SU2n_USpn):
        for i in range(n):
            for j in range(n):
                a, b = 2 * i, 2 * j
                out.append((1.0 / n, ((a + 1, b + 1, False), (a, b, False))))
                out.append((-1.0 / n, ((a + 1, b, False), (a, b + 1, False))))
    elif fam is Family.SUn_SOn:
        for i in range(n):
            for j in range(n):
                out.append((1.0 / n, ((i, j, False), (i, j, False))))
    elif fam is Family.USpn_Un:
        for i in range(2 * n):
            for j in range(2 * n):
                out.append((1.0 / (2 * n), ((i, j, False), (i, j, False))))
    else:
        raise UnsupportedSpace(f"{descriptor} has no zonal polynomial")
    return out


def _conjugate_monomial(entries: tuple) -> tuple:
    return tuple((i, j, not c) for i, j, c in entries)


def _canonical(entries: tuple, block_level: bool) -> tuple:
    """Relabel indices by first occurrence (blockwise for quaternionic
    matrices) after splitting plain from conjugated factors and sorting."""
    plain = sorted(e for e in entries if not e[2])
    conj = sorted(e for e in entries if e[2])
    relabel: dict[int, int] = {}

    def remap(idx: int) -> int:
        if block_level:
            block, off = divmod(idx, 2)
            if block not in relabel:
                relabel[block] = len(relabel)
            return 2 * relabel[block] + off
        if idx not in relabel:
            relabel[idx] = len(relabel)
        return relabel[idx]

    out = []
    for i, j, c in plain + conj:
        out.append((remap(i), remap(j), c))
    return tuple(out)


def zonal_square_via_moments(descriptor: SpaceDescriptor, t: float) -> float:
    """E_t of the squared zonal function, evaluated monomial by monomial
    through the tensor-moment generator of the ambient algebra."""
    algebra = _ALGEBRA_OF[descriptor.family]
    base = _phi_monomials(descriptor)
    complex_valued = descriptor.family in (Family.SUn_SOn, Family.SU2n_USpn)
    other = ([(c, _conjugate_monomial(m)) for c, m in base]
             if complex_valued else base)
    block_level = algebra == "usp"
    cache: dict[tuple, complex] = {}
    total = 0.0 + 0.0j
    for c1, m1 in base:
        for c2, m2 in other:
            key = _canonical(m1 + m2, block_level)
            if key not in cache:
                cache[key] = moment(algebra, descriptor.matrix_size
                                    if not block_level else descriptor.matrix_size // 2,
                                    key, t) if key else 1.0
            total += c1 * c2 * cache[key]
    return float(total.real)
