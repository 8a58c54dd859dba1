"""Closed-form multiscale measures of a self-similar trajectory.

Everything here is a pure function of (k, rho, N, L0, dt): the resolution
ladder, length/area at scale, the surface-change factor gamma, and the
similarity-dimension bound regimes.  Float results follow the stated
closed forms; `gamma_exact` and friends give exact rationals for
integer-scaled generators, which is the only way to check the strict
D_s = 2 bounds at large k (1 - rho^-k is not representable in float64
once rho^-k drops below the epsilon of 1.0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import GeneratorSpec

#: absolute tolerance used when classifying D_s as exactly 1 or 2
DS_EQUALITY_TOL = 1e-12

REGIME_SUPER = "super"
REGIME_CRITICAL = "critical"
REGIME_SUB = "sub"
REGIME_CLASSICAL = "classical"
REGIMES = (REGIME_SUPER, REGIME_CRITICAL, REGIME_SUB, REGIME_CLASSICAL)


@dataclass(frozen=True)
class ScaleRow:
    """All per-scale quantities for one resolution index k.

    Field names match the CSV/JSON report schema:
    ``k,dx_k,N_k,L_k,A_k,v_k,gamma,dA_k0,dL_k``.
    """

    k: int
    dx_k: float
    N_k: float
    L_k: float
    A_k: float
    v_k: float
    gamma: float
    dA_k0: float
    dL_k: float


@dataclass(frozen=True)
class RegimeBound:
    """An interval bound for one similarity-dimension regime.

    `lower`/`upper` delimit the admissible values of the bounded quantity
    (dx_k * dL_k in length^2 units, or dx_k * dp_k in action units);
    strictness flags say whether each endpoint is excluded.  The classical
    regime degenerates to the single point 0.
    """

    regime: str
    lower: float
    upper: float  # math.inf for the unbounded super regime
    lower_strict: bool
    upper_strict: bool

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")

    def contains(self, value) -> bool:
        """Interval membership; works for floats and exact Fractions."""
        above = value > self.lower if self.lower_strict else value >= self.lower
        if math.isinf(self.upper):
            return above
        below = value < self.upper if self.upper_strict else value <= self.upper
        return above and below


def _check_k(k) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise ValueError("k must be an integer")
    k = int(k)
    if k < 0:
        raise ValueError("k must be >= 0")
    return k


def resolution(k: int, dx0: float, rho: float) -> float:
    """Minimum detectable length at ladder index k: dx0 / rho^k."""
    k = _check_k(k)
    if not dx0 > 0.0:
        raise ValueError("dx0 must be positive")
    if not rho > 1.0:
        raise ValueError("rho must be > 1")
    return dx0 / rho**k


def cell_count(spec: GeneratorSpec, k: int) -> int:
    """Exact number of generator cells at level k: N^k (Python integer)."""
    return spec.n ** _check_k(k)


def length_at_scale(k: int, spec: GeneratorSpec, l0: float) -> float:
    """Trajectory length as measured at scale k: L0 * (N/rho)^k."""
    k = _check_k(k)
    return l0 * (spec.n / spec.rho) ** k


def velocity_at_scale(k: int, spec: GeneratorSpec, l0: float, dt: float) -> float:
    """Scale velocity: length at scale k over the traversal time."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    return length_at_scale(k, spec, l0) / dt


def area_at_scale(k: int, spec: GeneratorSpec, l0: float) -> float:
    """Area measure at scale k: L0^2 * rho^(k (D_s - 2)).

    Identically N^k * dx_k^2 and dx_k * L_k; the closed form is the
    implemented route, the identities are checked by the test suite.
    """
    k = _check_k(k)
    return l0 * l0 * spec.rho ** (k * (spec.ds - 2.0))


def gamma(k: int, rho: float, ds: float) -> float:
    """Surface-change factor rho^(k (D_s - 2)) - rho^-k.

    Exactly 0.0 for ds == 1 (both powers reduce to the same expression).
    For ds == 2 the true value 1 - rho^-k collapses to 1.0 in float64 once
    rho^-k < eps; use `gamma_exact` when the strict upper bound matters.
    """
    k = _check_k(k)
    if not rho > 1.0:
        raise ValueError("rho must be > 1")
    if ds < 1.0 - 1e-12:
        raise ValueError("ds must be >= 1")
    return rho ** (k * (ds - 2.0)) - rho ** (-k)


def gamma_exact(k: int, rho: int, n: int) -> Fraction:
    """Exact gamma for an integer-scaled generator: N^k/rho^2k - rho^-k.

    Valid for any integer rho >= 2, N >= 2; covers irrational D_s (the
    value is rational even when ln N / ln rho is not).
    """
    k = _check_k(k)
    if int(rho) != rho or rho < 2:
        raise ValueError("rho must be an integer >= 2")
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")
    rho, n = int(rho), int(n)
    return Fraction(n**k, rho ** (2 * k)) - Fraction(1, rho**k)


def gamma_exact_critical(k: int, rho: float) -> Fraction:
    """Exact gamma on the D_s = 2 line, 1 - rho^-k, for any float rho > 1.

    Every float is a rational, so the strict bounds 1/2 <= gamma < 1 can
    be decided exactly even for non-integer rho.
    """
    k = _check_k(k)
    if not rho > 1.0:
        raise ValueError("rho must be > 1")
    return 1 - Fraction(rho) ** (-k)


def delta_length(k: int, spec: GeneratorSpec, l0: float) -> float:
    """Length excess over the base scale: L_k - L0."""
    return length_at_scale(k, spec, l0) - l0


def delta_area(k: int, spec: GeneratorSpec, l0: float) -> float:
    """Per-scale surface change dx_k * dL_k = L0^2 * gamma(k, rho, D_s)."""
    return l0 * l0 * gamma(k, spec.rho, spec.ds)


def delta_area_exact(k: int, spec: GeneratorSpec, l0) -> Fraction:
    """Exact surface change for integer-scaled generators."""
    if not spec.has_integer_scaling():
        raise ValueError("exact route needs an integer rho")
    l0 = Fraction(l0)
    return l0 * l0 * gamma_exact(k, int(spec.rho), spec.n)


def classify_ds(ds: float) -> str:
    """Map a similarity dimension to its bound regime.

    Equality with 1 and 2 is tested at absolute tolerance 1e-12 (D_s is
    usually a ratio of logs).
    """
    if ds < 1.0 - DS_EQUALITY_TOL:
        raise ValueError(f"ds must be >= 1, got {ds}")
    if abs(ds - 1.0) <= DS_EQUALITY_TOL:
        return REGIME_CLASSICAL
    if abs(ds - 2.0) <= DS_EQUALITY_TOL:
        return REGIME_CRITICAL
    return REGIME_SUB if ds < 2.0 else REGIME_SUPER


def regime_bounds(ds: float, l0: float) -> RegimeBound:
    """Bounds on dx_k * dL_k implied by the similarity dimension.

    super (D_s > 2):      L0^2/2 < dx_k dL_k < inf
    critical (D_s = 2):   L0^2/2 <= dx_k dL_k < L0^2
    sub (1 < D_s < 2):    0 < dx_k dL_k < L0^2
    classical (D_s = 1):  dx_k dL_k = 0
    The lower bounds of the first two regimes additionally assume k >= 1
    and rho >= 2.
    """
    if not l0 > 0.0:
        raise ValueError("l0 must be positive")
    regime = classify_ds(ds)
    half = 0.5 * l0 * l0
    full = l0 * l0
    if regime == REGIME_SUPER:
        return RegimeBound(regime, half, math.inf, True, True)
    if regime == REGIME_CRITICAL:
        return RegimeBound(regime, half, full, False, True)
    if regime == REGIME_SUB:
        return RegimeBound(regime, 0.0, full, True, True)
    return RegimeBound(regime, 0.0, 0.0, False, False)


def scale_table(
    spec: GeneratorSpec, l0: float, dt: float, k_max: int
) -> list[ScaleRow]:
    """Rows for k = 0..k_max with every per-scale quantity filled in."""
    k_max = _check_k(k_max)
    if not l0 > 0.0:
        raise ValueError("l0 must be positive")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    rows = []
    for k in range(k_max + 1):
        lk = length_at_scale(k, spec, l0)
        try:
            n_k = float(cell_count(spec, k))
        except OverflowError:  # N^k beyond float range; the ladder keeps going
            n_k = math.inf
        rows.append(
            ScaleRow(
                k=k,
                dx_k=resolution(k, l0, spec.rho),
                N_k=n_k,
                L_k=lk,
                A_k=area_at_scale(k, spec, l0),
                v_k=lk / dt,
                gamma=gamma(k, spec.rho, spec.ds),
                dA_k0=delta_area(k, spec, l0),
                dL_k=lk - l0,
            )
        )
    return rows
