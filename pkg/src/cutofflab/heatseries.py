"""Heat-kernel densities, the dominating series with certified truncation
tails, per-term bound sweeps at cut-off time, and growth-step quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import HalfPartitionUnsupported, InvalidRank, UnsupportedSpace
from .partitions import LastSign, Weight, enumerate_by_size, partition_counts
from .repchar import CharType, casimir_exponent, dimension, schur
from .spaces import Family, SpaceDescriptor, indexing_set

_HR_C = math.pi * math.sqrt(2.0 / 3.0)  # Hardy-Ramanujan exponent constant

# family -> minimal descriptor n for which the global per-term constants are
# proven (ambient rank >= 5 for orthogonal, >= 3 symplectic, >= 2 unitary)
_PROVEN_MIN_N = {
    Family.SO: 10,
    Family.SU: 2,
    Family.USp: 3,
    Family.GrR: 10,
    Family.GrC: 2,
    Family.GrH: 3,
    Family.SO2n_Un: 5,
    Family.SUn_SOn: 2,
    Family.SU2n_USpn: 2,
    Family.USpn_Un: 3,
}


def _per_term_constants(descriptor: SpaceDescriptor) -> tuple[Fraction, Optional[Fraction]]:
    """(integer-label constant, half-label constant or None) bounding
    D^lambda * param^(-B) over the family's labels.

    The odd orthogonal integer constant is 5/4: the first growth step from
    the empty partition gives exactly (2m+1)^{1/(2m+1)} <= 11^{1/11} < 5/4,
    and every later step quotient is at most 1 except one bounded by 1.09.
    """
    fam, n = descriptor.family, descriptor.n
    if fam is Family.SO:
        if n % 2:
            return Fraction(5, 4), Fraction(11, 5)
        return Fraction(4, 3), Fraction(48, 15)
    if fam is Family.SU:
        return Fraction(3, 2), None
    if fam is Family.USp:
        return Fraction(14, 3), None
    if fam is Family.GrR:
        return (Fraction(5, 4) if n % 2 else Fraction(4, 3)), None
    if fam is Family.GrC:
        return Fraction(1), None
    if fam is Family.GrH:
        return Fraction(14, 3), None
    if fam is Family.SO2n_Un:
        return Fraction(4, 3), None
    if fam in (Family.SUn_SOn, Family.SU2n_USpn):
        return Fraction(3, 2), None
    if fam is Family.USpn_Un:
        return Fraction(14, 3), None
    raise UnsupportedSpace(str(fam))  # pragma: no cover


def t_zero(descriptor: SpaceDescriptor) -> float:
    """Cut-off time alpha * log(param)."""
    return descriptor.alpha_cutoff * math.log(descriptor.param)


@dataclass(frozen=True)
class SeriesTerm:
    """One term A_n(lambda) * exp(-t * B_n(lambda)) of the dominating series."""

    weight: Weight
    a_coeff: Fraction
    b_exp: Fraction

    def term(self, t: float) -> float:
        if self.a_coeff == 0:
            return 0.0
        log_a = (math.log(self.a_coeff.numerator)
                 - math.log(self.a_coeff.denominator))
        val = log_a - t * float(self.b_exp)
        return math.exp(val) if val > -745.0 else 0.0


@dataclass(frozen=True)
class TruncationReport:
    """Partial sum with a certified remainder: the true value lies within
    [partial_sum, partial_sum + tail_bound]."""

    t: float
    partial_sum: float
    tail_bound: float
    terms_used: int
    size_cap: int

    @property
    def total(self) -> float:
        return self.partial_sum + self.tail_bound

    def to_json_dict(self) -> dict:
        tail = self.tail_bound if math.isfinite(self.tail_bound) else "inf"
        return {
            "t": self.t,
            "partial_sum": self.partial_sum,
            "tail_bound": tail,
            "terms_used": self.terms_used,
            "size_cap": self.size_cap,
        }


def series_terms(descriptor: SpaceDescriptor, size_cap: int) -> list[SeriesTerm]:
    """All non-trivial series terms with |lambda| <= size_cap, size-ordered,
    with exact rational coefficients."""
    idx = indexing_set(descriptor)
    factor_two = descriptor.family is Family.SO and descriptor.n % 2 == 0
    out: list[SeriesTerm] = []
    for w in enumerate_by_size(idx, size_cap):
        if w.is_zero:
            continue
        dim = dimension(descriptor, w)
        if descriptor.is_group:
            a = dim * dim
            if factor_two:
                a *= 2
        else:
            a = dim
        out.append(SeriesTerm(weight=w, a_coeff=a,
                              b_exp=casimir_exponent(descriptor, w)))
    return out


# -- vectorized term table -------------------------------------------------


@dataclass(frozen=True)
class _TermTable:
    weights: tuple[Weight, ...]
    log_dim: np.ndarray   # log D^lambda
    b: np.ndarray         # B_n(lambda)
    is_half: np.ndarray   # bool mask
    log_a: np.ndarray     # log A_n(lambda) with group squaring / factor 2


def _pad_lambda(parts2: np.ndarray, width: int) -> np.ndarray:
    """True label values padded with zeros to the ambient rank, as floats."""
    n_rows, have = parts2.shape
    lam = np.zeros((n_rows, width))
    lam[:, :have] = parts2 / 2.0
    return lam


def _log_dim_type_a(lam: np.ndarray) -> np.ndarray:
    m = lam.shape[1]
    ell = lam + (m - 1.0 - np.arange(m))
    val = np.ones(lam.shape[0])
    for i in range(m):
        for j in range(i + 1, m):
            val *= (ell[:, i] - ell[:, j]) / (j - i)
    return np.log(val)


def _log_dim_type_bc(ell: np.ndarray, den: np.ndarray) -> np.ndarray:
    r = ell.shape[1]
    val = np.ones(ell.shape[0])
    for i in range(r):
        for j in range(i + 1, r):
            val *= (ell[:, i] ** 2 - ell[:, j] ** 2) / float(den[i] ** 2 - den[j] ** 2)
    for i in range(r):
        val *= ell[:, i] / float(den[i])
    return np.log(val)


def _log_dim_type_d(ell2: np.ndarray, den2: np.ndarray) -> np.ndarray:
    r = ell2.shape[1]
    val = np.ones(ell2.shape[0])
    for i in range(r):
        for j in range(i + 1, r):
            val *= (ell2[:, i] ** 2 - ell2[:, j] ** 2) / float(den2[i] ** 2 - den2[j] ** 2)
    return np.log(val)


def _vector_log_dim(descriptor: SpaceDescriptor, parts2: np.ndarray) -> np.ndarray:
    fam, n = descriptor.family, descriptor.n
    if fam in (Family.SU, Family.SUn_SOn):
        return _log_dim_type_a(_pad_lambda(parts2, n))
    if fam is Family.SU2n_USpn:
        return _log_dim_type_a(_pad_lambda(parts2, 2 * n))
    if fam is Family.GrC:
        lam_q = parts2 / 2.0
        full = np.zeros((parts2.shape[0], n))
        full[:, :descriptor.q] = lam_q
        full[:, n - descriptor.q:] = -lam_q[:, ::-1]
        return _log_dim_type_a(full)
    if fam in (Family.USp, Family.GrH, Family.USpn_Un):
        lam = _pad_lambda(parts2, n)
        den = n - np.arange(n)  # n-i+1 for 1-based i
        return _log_dim_type_bc(lam + den, den)
    if fam in (Family.SO, Family.GrR):
        r = n // 2
        lam2 = np.zeros((parts2.shape[0], r))
        lam2[:, :parts2.shape[1]] = parts2
        if n % 2:
            den = 2 * (r - 1 - np.arange(r)) + 1
            return _log_dim_type_bc((lam2 + den) / 2.0, den / 2.0)
        den2 = 2 * (r - 1 - np.arange(r))
        return _log_dim_type_d(lam2 + den2, den2)
    if fam is Family.SO2n_Un:
        r = n
        lam2 = parts2.astype(float)
        den2 = 2 * (r - 1 - np.arange(r))
        return _log_dim_type_d(lam2 + den2, den2)
    raise UnsupportedSpace(str(fam))  # pragma: no cover


def _vector_b(descriptor: SpaceDescriptor, parts2: np.ndarray) -> np.ndarray:
    fam, n = descriptor.family, descriptor.n
    lam = parts2 / 2.0
    have = lam.shape[1]
    i = np.arange(1, have + 1)
    if fam in (Family.SO, Family.GrR, Family.SO2n_Un):
        amb = 2 * n if fam is Family.SO2n_Un else n
        return (lam * lam + (amb - 2.0 * i) * lam).sum(axis=1) / amb
    if fam in (Family.SU, Family.SUn_SOn, Family.SU2n_USpn):
        m = 2 * n if fam is Family.SU2n_USpn else n
        size = lam.sum(axis=1)
        return ((lam * lam + (m + 1.0 - 2.0 * i) * lam).sum(axis=1) / m
                - size * size / (m * m))
    if fam is Family.GrC:
        return 2.0 * (lam * lam + (n + 1.0 - 2.0 * i) * lam).sum(axis=1) / n
    if fam in (Family.USp, Family.GrH, Family.USpn_Un):
        return (lam * lam + (2.0 * n + 2.0 - 2.0 * i) * lam).sum(axis=1) / (2 * n)
    raise UnsupportedSpace(str(fam))  # pragma: no cover


@lru_cache(maxsize=32)
def _term_table(descriptor: SpaceDescriptor, size_cap: int) -> _TermTable:
    idx = indexing_set(descriptor)
    weights = tuple(w for w in enumerate_by_size(idx, size_cap)
                    if not w.is_zero)
    n_rows = len(weights)
    parts2 = np.zeros((n_rows, idx.length), dtype=np.int64)
    is_half = np.zeros(n_rows, dtype=bool)
    for r, w in enumerate(weights):
        parts2[r] = w.parts2
        is_half[r] = not w.is_integer
    if n_rows == 0:
        empty = np.zeros(0)
        return _TermTable(weights, empty, empty, is_half, empty)
    log_dim = _vector_log_dim(descriptor, parts2)
    b = _vector_b(descriptor, parts2)
    if descriptor.is_group:
        log_a = 2.0 * log_dim
        if descriptor.family is Family.SO and descriptor.n % 2 == 0:
            log_a = log_a + math.log(2.0)
    else:
        log_a = log_dim
    return _TermTable(weights, log_dim, b, is_half, log_a)


# -- certified tails -------------------------------------------------------


@lru_cache(maxsize=64)
def _counts(max_size: int, max_len: int) -> tuple[int, ...]:
    return tuple(partition_counts(max_size, max_len))


def _hr_closing(log_x: float, horizon: int) -> float:
    """Upper bound on sum_{s > horizon} p(s) x^s via p(s) < e^{c sqrt(s)}."""
    s1 = horizon + 1
    first = math.exp(min(_HR_C * math.sqrt(s1) + s1 * log_x, 700.0))
    ratio = math.exp(_HR_C * (math.sqrt(s1 + 1) - math.sqrt(s1)) + log_x)
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


def _partition_tail(log_x: float, beyond: int, max_len: int) -> float:
    """Upper bound on the sum of x^{|mu|} over partitions mu of length
    <= max_len with |mu| > beyond; requires log_x < 0."""
    if log_x >= 0.0:
        return math.inf
    horizon = max(400, 4 * max(beyond, 0), int(-80.0 / log_x))
    while True:
        counts = _counts(horizon, max_len)
        exact = 0.0
        for s in range(max(beyond, -1) + 1, horizon + 1):
            if s == 0:
                exact += 1.0
                continue
            val = math.log(counts[s]) + s * log_x
            if val > -745.0:
                exact += math.exp(min(val, 700.0))
        closing = _hr_closing(log_x, horizon)
        if math.isfinite(closing) and closing <= max(1e-12 * exact, 1e-250):
            return exact + closing
        if horizon >= 60000:
            return exact + closing
        horizon *= 2


def _su_dp_tail(steps: Sequence[tuple[int, float]], beyond: int) -> float:
    """Upper bound on the sum of prod_i e^{-cost_i * delta_i} over delta >= 0
    with total size sum_i inc_i*delta_i > beyond; costs must be positive."""
    if any(cost <= 0.0 for _, cost in steps):
        return math.inf
    u = 0.5 * min(cost / inc for inc, cost in steps)
    horizon = max(400, 4 * max(beyond, 0))
    while True:
        f = np.zeros(horizon + 1)
        f[0] = 1.0
        for inc, cost in steps:
            w = math.exp(-cost)
            for s in range(inc, horizon + 1):
                f[s] += w * f[s - inc]
        exact = float(f[max(beyond, -1) + 1:].sum())
        prod = 1.0
        for inc, cost in steps:
            tilted = math.exp(-(cost - u * inc))
            if tilted >= 1.0:
                return math.inf
            prod /= (1.0 - tilted)
        log_close = -u * horizon
        closing = math.exp(log_close) * prod if log_close > -745.0 else 0.0
        if closing <= max(1e-12 * exact, 1e-250) or horizon >= 20000:
            return exact + closing
        horizon *= 2


def _su_steps(descriptor: SpaceDescriptor, gap: float) -> list[tuple[int, float]]:
    """(size increment, cost) pairs for the delta-coordinate lower bound
    B >= sum_i i(m-i)/m * delta_i on unitary-type labels."""
    fam, n = descriptor.family, descriptor.n
    if fam is Family.SU:
        return [(i, gap * i * (n - i) / n) for i in range(1, n)]
    if fam is Family.SUn_SOn:
        return [(2 * i, gap * 2.0 * i * (n - i) / n) for i in range(1, n)]
    if fam is Family.SU2n_USpn:
        m = 2 * n
        return [(2 * j, gap * 2.0 * j * (m - 2 * j) / m) for j in range(1, n)]
    raise UnsupportedSpace(str(fam))  # pragma: no cover


def _tail_bound(descriptor: SpaceDescriptor, t: float, cap: int,
                t0: float) -> float:
    """Certified bound on the series mass above the size cap."""
    fam, n = descriptor.family, descriptor.n
    if n < _PROVEN_MIN_N[fam]:
        return math.inf
    gap = t - t0
    if gap <= 0.0:
        return math.inf
    const_int, const_half = _per_term_constants(descriptor)
    log_x = -gap / 2.0  # decay rate from B >= |lambda|/2

    if fam in (Family.SO, Family.GrR):
        rank = n // 2
        if descriptor.is_group:
            c_int = float(const_int) ** 2
            c_half: Optional[float] = float(const_half) ** 2
            if n % 2 == 0:
                c_int, c_half = 2.0 * c_int, 2.0 * c_half
        else:
            c_int, c_half = float(const_int), None
        plen = rank if fam is Family.SO else descriptor.q
        tail = c_int * _partition_tail(log_x, cap, plen)
        if c_half is not None:
            shift = rank / 4.0 if n % 2 else (2 * rank - 1) / 8.0
            half_beyond = math.floor(cap - rank / 2.0)
            tail += (c_half * math.exp(-gap * shift)
                     * _partition_tail(log_x, half_beyond, rank))
        return tail
    if fam is Family.USp:
        return float(const_int) ** 2 * _partition_tail(log_x, cap, n)
    if fam is Family.SU:
        return float(const_int) ** 2 * _su_dp_tail(_su_steps(descriptor, gap), cap)
    if fam is Family.GrC:
        return _partition_tail(-gap, cap, descriptor.q)
    if fam is Family.GrH:
        return float(const_int) * _partition_tail(2.0 * log_x, cap // 2, descriptor.q)
    if fam is Family.SO2n_Un:
        return float(const_int) * _partition_tail(2.0 * log_x, cap // 2, n // 2)
    if fam is Family.USpn_Un:
        return float(const_int) * _partition_tail(2.0 * log_x, cap // 2, n)
    if fam in (Family.SUn_SOn, Family.SU2n_USpn):
        return float(const_int) * _su_dp_tail(_su_steps(descriptor, gap), cap)
    raise UnsupportedSpace(str(fam))  # pragma: no cover


def _cap_schedule(descriptor: SpaceDescriptor) -> list[int]:
    """Escalating size caps, stopping before label counts explode."""
    length = indexing_set(descriptor).length
    caps = [40]
    for cap in (80, 160, 200):
        if sum(_counts(cap, length)) > 300_000:
            break
        caps.append(cap)
    return caps


def dominating_series(descriptor: SpaceDescriptor, t: float,
                      size_cap: Optional[int] = None) -> TruncationReport:
    """Sum of A_n(lambda) e^{-t B_n(lambda)} over non-trivial labels, with a
    certified tail; tail_bound is the +inf sentinel at or below cut-off time."""
    if t <= 0.0:
        raise ValueError("time must be positive")
    caps = [size_cap] if size_cap is not None else _cap_schedule(descriptor)
    t0 = t_zero(descriptor)
    report = None
    for cap in caps:
        if cap < 1:
            raise ValueError("size_cap must be >= 1")
        table = _term_table(descriptor, cap)
        if len(table.weights):
            with np.errstate(under="ignore"):
                partial = float(np.exp(table.log_a - t * table.b).sum())
        else:
            partial = 0.0
        tail = _tail_bound(descriptor, t, cap, t0) if t > t0 else math.inf
        report = TruncationReport(t=t, partial_sum=partial, tail_bound=tail,
                                  terms_used=len(table.weights), size_cap=cap)
        if not math.isfinite(tail):
            break  # a larger cap cannot rescue a missing certificate
        if tail < 1e-6 * max(partial, 1e-30):
            break
    assert report is not None
    return report


def tv_upper_bound(descriptor: SpaceDescriptor, t: float) -> float:
    """min(1, sqrt(S_n(t) + tail)/2); 1 whenever no tail certificate exists."""
    report = dominating_series(descriptor, t)
    if not math.isfinite(report.tail_bound):
        return 1.0
    return min(1.0, 0.5 * math.sqrt(report.total))


# -- per-term sweep --------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Maximum of D^lambda * param^{-B_n(lambda)} over the swept labels."""

    max_value: float
    argmax: Weight
    certified: bool
    max_integer: float
    argmax_integer: Weight
    max_half: Optional[float]
    argmax_half: Optional[Weight]
    size_cap: int

    def to_json_dict(self) -> dict:
        out = {
            "max_value": self.max_value,
            "argmax_weight": str(self.argmax),
            "certified": self.certified,
            "max_integer": self.max_integer,
            "argmax_integer": str(self.argmax_integer),
            "size_cap": self.size_cap,
        }
        if self.max_half is not None:
            out["max_half"] = self.max_half
            out["argmax_half"] = str(self.argmax_half)
        return out


def per_term_value(descriptor: SpaceDescriptor, weight: Weight) -> float:
    """D^lambda * param^{-B}: the per-term root of the series at cut-off."""
    dim = dimension(descriptor, weight)
    b = casimir_exponent(descriptor, weight)
    log_v = (math.log(dim.numerator) - math.log(dim.denominator)
             - float(b) * math.log(descriptor.param))
    return math.exp(log_v)


def per_term_exceeds(descriptor: SpaceDescriptor, weight: Weight,
                     bound: Fraction) -> bool:
    """Exact test of D^lambda * param^{-B} > bound.

    A float pre-filter with a wide safety margin handles clear cases; values
    within the margin fall back to exact integer power comparison.
    """
    val = per_term_value(descriptor, weight)
    margin = 1e-6 * float(bound)
    if val < float(bound) - margin:
        return False
    if val > float(bound) + margin:
        return True
    dim = dimension(descriptor, weight)
    b = casimir_exponent(descriptor, weight)
    lhs = (dim / bound) ** b.denominator
    rhs = Fraction(descriptor.param) ** b.numerator
    return lhs > rhs


def per_term_bound_sweep(descriptor: SpaceDescriptor,
                         size_cap: int = 40) -> SweepResult:
    """Maximum per-term value over |lambda| <= size_cap with certification
    against the family's proven global constants."""
    fam, n = descriptor.family, descriptor.n
    minimums = {Family.SO: 10, Family.USp: 3, Family.SU: 2}
    if fam in minimums and n < minimums[fam]:
        raise InvalidRank(
            f"per-term constants for {fam.name} need n >= {minimums[fam]}")
    if size_cap < 2:
        raise ValueError("size_cap must be >= 2")
    table = _term_table(descriptor, size_cap)
    log_param = math.log(descriptor.param)
    values = np.exp(table.log_dim - table.b * log_param)
    sizes = np.array([float(w.size) for w in table.weights])

    def pick(mask: np.ndarray) -> tuple[Optional[float], Optional[Weight]]:
        idxs = np.nonzero(mask)[0]
        if len(idxs) == 0:
            return None, None
        best = idxs[np.argmax(values[idxs])]
        return float(values[best]), table.weights[best]

    max_all, arg_all = pick(np.ones(len(values), dtype=bool))
    max_int, arg_int = pick(~table.is_half)
    max_half, arg_half = pick(table.is_half)
    if max_all is None or max_int is None:
        raise ValueError("size_cap leaves no labels to sweep")
    boundary = values[sizes > size_cap - 2] if len(values) else np.zeros(0)
    boundary_max = float(boundary.max()) if len(boundary) else 0.0
    const_int, const_half = _per_term_constants(descriptor)
    certified = (n >= _PROVEN_MIN_N[fam] and size_cap >= 40
                 and boundary_max < 0.5 * max_all
                 and not per_term_exceeds(descriptor, arg_int, const_int))
    if const_half is not None and arg_half is not None:
        certified = certified and not per_term_exceeds(
            descriptor, arg_half, const_half)
    return SweepResult(
        max_value=max_all, argmax=arg_all, certified=certified,
        max_integer=max_int, argmax_integer=arg_int,
        max_half=max_half, argmax_half=arg_half, size_cap=size_cap)


# -- growth-step quotients -------------------------------------------------


def eta_quotient(descriptor: SpaceDescriptor, base_weight: Weight, l: int,
                 k: int, t0: Optional[float] = None) -> float:
    """Dimension quotient times exp(-t0 * dB/2) for the k-th unit growth of
    the top-l block above the base weight."""
    if not base_weight.is_integer:
        raise HalfPartitionUnsupported("growth quotients need integer bases")
    if not 1 <= l <= base_weight.length:
        raise ValueError("layer index out of range")
    if k < 1:
        raise ValueError("k must be >= 1")
    if t0 is None:
        t0 = t_zero(descriptor)
    p = base_weight.parts2
    top = p[0]
    if any(v != top for v in p[:l]):
        raise ValueError("base must be flat across the grown block")

    def with_top(v2: int) -> Weight:
        parts2 = (v2,) * l + p[l:]
        sign = LastSign.plus if parts2[-1] != 0 else LastSign.zero
        return Weight(parts2, base_weight.kind, sign)

    prev = with_top(top + 2 * (k - 1))
    grown = with_top(top + 2 * k)
    rho = dimension(descriptor, grown) / dimension(descriptor, prev)
    delta = casimir_exponent(descriptor, grown) - casimir_exponent(descriptor, prev)
    return float(rho) * math.exp(-t0 * float(delta) / 2.0)


# -- densities -------------------------------------------------------------


def _group_alphabet_density(descriptor: SpaceDescriptor,
                            alphabet: Sequence[complex], t: float,
                            size_cap: int) -> float:
    fam, n = descriptor.family, descriptor.n
    idx = indexing_set(descriptor)
    if fam is Family.SO:
        ctype = CharType.B if n % 2 else CharType.D
        want = n // 2
    elif fam is Family.SU:
        ctype, want = CharType.A, n
    else:
        ctype, want = CharType.C, n
    if len(alphabet) != want:
        raise ValueError(f"{descriptor} needs an alphabet of {want} eigenvalues")
    total = 0.0
    for w in enumerate_by_size(idx, size_cap):
        dim = dimension(descriptor, w)
        b = casimir_exponent(descriptor, w)
        chi = schur(ctype, list(w.parts), alphabet)
        total += float(dim) * math.exp(-t * float(b) / 2.0) * chi.real
    return total


def _rank_one_quotient_density(descriptor: SpaceDescriptor,
                               zonal_values: Sequence[float], t: float,
                               size_cap: int) -> float:
    idx = indexing_set(descriptor)
    total = 0.0
    for k in range(0, min(size_cap, len(zonal_values) - 1) + 1):
        head = (k, k) if descriptor.family is Family.GrH else (k,)
        parts = head + (0,) * (idx.length - len(head))
        w = Weight.of(parts, idx.kind)
        dim = dimension(descriptor, w)
        b = casimir_exponent(descriptor, w)
        total += float(dim) * math.exp(-t * float(b) / 2.0) * zonal_values[k]
    return total


def _sine_ratio(theta: float, k: int) -> float:
    if abs(math.sin(theta)) < 1e-12:
        return float(k + 1)
    return math.sin((k + 1) * theta) / math.sin(theta)


def density(descriptor: "SpaceDescriptor | str", point_spec: dict, t: float,
            size_cap: int = 40) -> float:
    """Heat-kernel density for group families (eigenvalue alphabets) and the
    rank-one special cases (angle or caller-supplied zonal values)."""
    if t <= 0.0:
        raise ValueError("time must be positive")
    if isinstance(descriptor, str):
        if descriptor != "circle":
            raise UnsupportedSpace(f"unknown special space {descriptor!r}")
        theta = float(point_spec["theta"])
        total = 1.0
        for k in range(1, size_cap + 1):
            total += 2.0 * math.exp(-k * k * t / 2.0) * math.cos(k * theta)
        return total

    if "alphabet" in point_spec:
        if not descriptor.is_group:
            raise UnsupportedSpace(
                f"{descriptor} has no eigenvalue-alphabet density")
        return _group_alphabet_density(
            descriptor, [complex(z) for z in point_spec["alphabet"]], t, size_cap)

    if "theta" in point_spec:
        theta = float(point_spec["theta"])
        if descriptor.family is Family.SU and descriptor.n == 2:
            return sum(math.exp(-k * (k + 2) * t / 8.0) * (k + 1)
                       * _sine_ratio(theta, k) for k in range(size_cap + 1))
        if descriptor.family is Family.SO and descriptor.n == 3:
            return sum(math.exp(-k * (k + 1) * t / 3.0) * (2 * k + 1)
                       * _sine_ratio(theta, k) for k in range(size_cap + 1))
        raise UnsupportedSpace(f"no angle-form density for {descriptor}")

    if "zonal_values" in point_spec:
        if descriptor.is_group or descriptor.q != 1:
            raise UnsupportedSpace(
                "zonal-value densities exist for rank-one quotients only, "
                f"not {descriptor}")
        return _rank_one_quotient_density(
            descriptor, [float(v) for v in point_spec["zonal_values"]], t,
            size_cap)

    raise UnsupportedSpace(
        "point_spec needs 'alphabet', 'theta' or 'zonal_values'")
