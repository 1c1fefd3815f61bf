"""casimir1d: steady-state Casimir forces between two dissipative dielectric
slabs for a 1+1 dimensional massless scalar field.

Two finite-thickness slabs face each other across a vacuum gap; each slab is
a single-resonance dielectric damped by its own thermal bath, and the field
starts in a vacuum, thermal or squeezed state.  The package evaluates the
long-time force on the slabs as the sum of a state-driven part (carried by
the initial field spectrum) and a bath-driven part (radiated by the slab
baths), together with the classic limit cases: dissipationless slabs,
half-space (thick slab) geometry and the equilibrium Matsubara sum.
"""

from .errors import (
    CavityResonanceError,
    DeltaStateWeightError,
    NaNIntegrandError,
    NonConvergenceError,
    RegionUnsupportedError,
    ResonanceSingularityError,
    SingularEvaluationError,
)
from .forces import (
    ForceBreakdown,
    band_excess_curve,
    bracket_sign_scan,
    equilibrium_matsubara,
    force_bath,
    force_delta_squeezed,
    force_dissipationless,
    force_ic,
    force_total,
    halfspace_forces,
    halfspace_ic_unregularized,
    lifshitz_matsubara,
)
from .kernels import COMPILED
from .material import (
    Material,
    damping_transform,
    fd_weight,
    permittivity,
    refractive_index,
    surface_reflection,
)
from .quadrature import (
    QuadratureSpec,
    integrate_interval,
    integrate_semiinfinite,
    matsubara_sum,
)
from .scattering import (
    CavityConfig,
    ModeFunction,
    ScatteringSet,
    cavity_coefficients,
    classify_region,
    green_function,
    mode_deriv,
    mode_eval,
    slab_coefficients,
)
from .states import FieldState, weight, weight_asymptotics_check
from .stress import (
    RegionPoint,
    pressure_difference,
    slab_mod_integral,
    txx_bath_integrand,
    txx_ic_integrand,
)

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "CavityConfig",
    "CavityResonanceError",
    "DeltaStateWeightError",
    "FieldState",
    "ForceBreakdown",
    "Material",
    "ModeFunction",
    "NaNIntegrandError",
    "NonConvergenceError",
    "QuadratureSpec",
    "RegionPoint",
    "RegionUnsupportedError",
    "ResonanceSingularityError",
    "ScatteringSet",
    "SingularEvaluationError",
    "band_excess_curve",
    "bracket_sign_scan",
    "cavity_coefficients",
    "classify_region",
    "damping_transform",
    "equilibrium_matsubara",
    "fd_weight",
    "force_bath",
    "force_delta_squeezed",
    "force_dissipationless",
    "force_ic",
    "force_total",
    "green_function",
    "halfspace_forces",
    "halfspace_ic_unregularized",
    "integrate_interval",
    "integrate_semiinfinite",
    "lifshitz_matsubara",
    "matsubara_sum",
    "mode_deriv",
    "mode_eval",
    "permittivity",
    "pressure_difference",
    "refractive_index",
    "slab_coefficients",
    "slab_mod_integral",
    "surface_reflection",
    "txx_bath_integrand",
    "txx_ic_integrand",
    "weight",
    "weight_asymptotics_check",
    "__version__",
]
