"""Particle kinematics on top of the geometric measures.

A particle of mass m traverses the trajectory in time dt; the per-scale
surface changes then become areolar velocity/momentum changes, and the
geometric bound regimes become bounds on the position-momentum product
in units of the base action eta0 = E0 * dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .geometry import GeneratorSpec
from .measures import (
    REGIME_CLASSICAL,
    REGIME_CRITICAL,
    REGIME_SUB,
    REGIME_SUPER,
    RegimeBound,
    classify_ds,
    delta_area,
    gamma_exact,
)


@dataclass(frozen=True)
class ParticleContext:
    """Mass, traversal time, and base length, with derived scales.

    Units are caller-supplied and unchecked beyond positivity; any
    consistent system works, including the normalized m = dt = L0 = 1.
    """

    m: float
    dt: float
    L0: float

    def __post_init__(self) -> None:
        for label, value in (("m", self.m), ("dt", self.dt), ("L0", self.L0)):
            if not value > 0.0:
                raise ValueError(f"{label} must be positive, got {value}")

    @property
    def V0(self) -> float:
        """Base-scale speed L0/dt."""
        return self.L0 / self.dt

    @property
    def E0(self) -> float:
        """Base-scale kinetic energy m V0^2 / 2."""
        return 0.5 * self.m * self.V0 * self.V0

    @property
    def eta0(self) -> float:
        """Action scale E0 * dt = m L0^2 / (2 dt)."""
        return self.E0 * self.dt

    def eta0_exact(self) -> Fraction:
        """eta0 as an exact rational of the (float, hence rational) inputs."""
        m, l0, dt = Fraction(self.m), Fraction(self.L0), Fraction(self.dt)
        return m * l0 * l0 / (2 * dt)


@dataclass(frozen=True)
class UncertaintyRow:
    """Per-scale areolar velocity and momentum changes."""

    k: int
    dV_k: float  # dx_k * dv_k, length^2 / time
    dP_k: float  # dx_k * dp_k = m * dV_k, action units
    regime: str


@dataclass(frozen=True)
class BoundsRow:
    k: int
    product: float
    lower: float
    upper: float
    passed: bool


@dataclass(frozen=True)
class BoundsReport:
    """Machine check of the regime inequality for a range of scales.

    `rho_ge_2` flags whether the eta0 lower bound of the super/critical
    regimes is actually in force (it needs rho >= 2 on top of k >= 1);
    `exact` records whether pass/fail was decided in exact rational
    arithmetic (integer-scaled generators) or in float64.
    """

    spec_name: str
    ds: float
    eta0: float
    rows: tuple[BoundsRow, ...]
    k_min: int
    rho_ge_2: bool
    exact: bool

    @property
    def violations(self) -> list[BoundsRow]:
        return [row for row in self.rows if not row.passed]

    @property
    def all_passed(self) -> bool:
        return not self.violations


def areolar_velocity_change(k: int, spec: GeneratorSpec, ctx: ParticleContext) -> float:
    """dx_k * dv_k = dx_k * dL_k / dt."""
    return delta_area(k, spec, ctx.L0) / ctx.dt


def uncertainty_product(k: int, spec: GeneratorSpec, ctx: ParticleContext) -> float:
    """Position-momentum product at scale k: m dx_k dL_k / dt = 2 eta0 gamma(k)."""
    return ctx.m * areolar_velocity_change(k, spec, ctx)


def uncertainty_product_exact(
    k: int, spec: GeneratorSpec, ctx: ParticleContext
) -> Fraction:
    """Exact product 2 eta0 gamma(k) for integer-scaled generators.

    This is the route that can decide the strict critical-regime bounds at
    large k, where the float product saturates at exactly 2 eta0.
    """
    if not spec.has_integer_scaling():
        raise ValueError("exact route needs an integer rho")
    g = gamma_exact(k, int(spec.rho), spec.n)
    return 2 * ctx.eta0_exact() * g


def classify_regime(ds: float, ctx: ParticleContext) -> RegimeBound:
    """Bounds on dx_k * dp_k in action units.

    super (D_s > 2):      eta0 < product < inf
    critical (D_s = 2):   eta0 <= product < 2 eta0
    sub (1 < D_s < 2):    0 < product < 2 eta0
    classical (D_s = 1):  product = 0
    """
    regime = classify_ds(ds)
    eta0 = ctx.eta0
    if regime == REGIME_SUPER:
        return RegimeBound(regime, eta0, math.inf, True, True)
    if regime == REGIME_CRITICAL:
        return RegimeBound(regime, eta0, 2.0 * eta0, False, True)
    if regime == REGIME_SUB:
        return RegimeBound(regime, 0.0, 2.0 * eta0, True, True)
    return RegimeBound(regime, 0.0, 0.0, False, False)


def _exact_regime_bound(bound: RegimeBound, ctx: ParticleContext) -> RegimeBound:
    eta0 = ctx.eta0_exact()
    mapping = {
        REGIME_SUPER: (eta0, math.inf),
        REGIME_CRITICAL: (eta0, 2 * eta0),
        REGIME_SUB: (Fraction(0), 2 * eta0),
        REGIME_CLASSICAL: (Fraction(0), Fraction(0)),
    }
    lower, upper = mapping[bound.regime]
    return RegimeBound(bound.regime, lower, upper, bound.lower_strict, bound.upper_strict)


def uncertainty_table(
    spec: GeneratorSpec, ctx: ParticleContext, k_max: int
) -> list[UncertaintyRow]:
    """Rows of areolar velocity/momentum changes for k = 0..k_max."""
    regime = classify_ds(spec.ds)
    rows = []
    for k in range(int(k_max) + 1):
        dv = areolar_velocity_change(k, spec, ctx)
        rows.append(UncertaintyRow(k=k, dV_k=dv, dP_k=ctx.m * dv, regime=regime))
    return rows


def verify_bounds(
    spec: GeneratorSpec, ctx: ParticleContext, k_range: Iterable[int]
) -> BoundsReport:
    """Check the regime inequality for every k in `k_range` (all k >= 1).

    Violations are reported as data, not raised.  Integer-scaled
    generators are checked in exact rational arithmetic; others in float.
    """
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("k_range must be non-empty")
    if ks[0] < 1:
        raise ValueError("bound checking applies to k >= 1 only")
    bound = classify_regime(spec.ds, ctx)
    exact = spec.has_integer_scaling()
    rows = []
    if exact:
        exact_bound = _exact_regime_bound(bound, ctx)
        for k in ks:
            product = uncertainty_product_exact(k, spec, ctx)
            rows.append(
                BoundsRow(
                    k=k,
                    product=float(product),
                    lower=bound.lower,
                    upper=bound.upper,
                    passed=exact_bound.contains(product),
                )
            )
    else:
        for k in ks:
            product = uncertainty_product(k, spec, ctx)
            rows.append(
                BoundsRow(
                    k=k,
                    product=product,
                    lower=bound.lower,
                    upper=bound.upper,
                    passed=bound.contains(product),
                )
            )
    return BoundsReport(
        spec_name=spec.name,
        ds=spec.ds,
        eta0=ctx.eta0,
        rows=tuple(rows),
        k_min=1,
        rho_ge_2=spec.rho >= 2.0,
        exact=exact,
    )
