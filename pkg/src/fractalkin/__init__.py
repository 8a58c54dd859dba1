"""Self-similar trajectories: construction, multiscale measures,
uncertainty-product bounds, and empirical dimension estimation."""

from .estimator import (
    BROWNIAN_PRNG,
    DimensionFit,
    MeasurementResult,
    MeasurementRow,
    brownian_metadata,
    brownian_path,
    divider_count,
    estimate_dimension,
    grid_count,
    measure_polyline,
)
from .geometry import (
    GeneratorSpec,
    Polyline,
    base_segment,
    builtin,
    refine,
    similarity_dimension,
)
from .kinematics import (
    BoundsReport,
    BoundsRow,
    ParticleContext,
    UncertaintyRow,
    areolar_velocity_change,
    classify_regime,
    uncertainty_product,
    uncertainty_product_exact,
    uncertainty_table,
    verify_bounds,
)
from .measures import (
    RegimeBound,
    ScaleRow,
    area_at_scale,
    classify_ds,
    delta_area,
    delta_area_exact,
    delta_length,
    gamma,
    gamma_exact,
    gamma_exact_critical,
    length_at_scale,
    regime_bounds,
    resolution,
    scale_table,
    velocity_at_scale,
)
from .render import RenderOptions, render_panels, render_svg

__version__ = "0.1.0"
