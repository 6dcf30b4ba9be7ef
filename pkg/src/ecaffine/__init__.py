"""Equi-centro-affine extremal curves on spheres and isoparametric extremal hypersurfaces."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    EcaError,
    PreconditionError,
    NumericalError,
    DomainError,
    NotAdmissible,
    Degenerate,
    OutOfRange,
    NotCritical,
    NotClosed,
    IneligibleParity,
    ZeroCurvature,
    StepTooLarge,
    QuadratureFailure,
    FrameDrift,
    IntegrationDrift,
)
from .specfun import complete_elliptic_pi, complete_elliptic_k, elliptic_pi_series, series_coefficients  # noqa: E402
from .cubic import CurveParams, CubicRoots, solve_cubic, admissible_lower_bound, is_admissible  # noqa: E402
from .angle import (  # noqa: E402
    AngleResult,
    angle_quadrature,
    angle_elliptic,
    angle_series_sum,
    angle_series_large_C2,
    limit_at_D,
    progression_angle,
    period,
)
from .trace import (  # noqa: E402
    CurvatureProfile,
    SphereTrace,
    integrate_profile,
    circle_profile,
    trace_curve,
    rotation_index,
    closure_search,
    eca_length,
    isoperimetric_check,
    killing_residuals,
)
from .stability import (  # noqa: E402
    FourierPerturbation,
    second_variation_quadrature,
    circle_second_variation,
    area_preserving_Q,
    is_stable,
    stability_window,
    extremal_residual,
)
from .classify import (  # noqa: E402
    PrincipalSpectrum,
    elem_sym,
    extremal_residual_iso,
    solve_theta,
    clifford_radii,
    classify_all,
)
