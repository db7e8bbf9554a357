"""Information geometry of faithful states on a finite-dimensional matrix algebra."""
from qigeo.matfun import (
    DomainError,
    SpectralDecomposition,
    apply_function,
    conjugation_average,
    duhamel_sandwich,
    log_mean,
    spectral,
)
from qigeo.states import (
    DensityMatrix,
    expectation,
    random_faithful,
    thermal_state,
    umegaki_divergence,
)
from qigeo.gns import (
    CommutantOperator,
    GnsSpace,
    GnsVector,
    check_cyclic_separating,
    commutant_apply,
    omega_vector,
    pi_apply,
    prime_map,
    represent_state,
)
from qigeo.charts import (
    ChartPoint,
    MetricSuperoperator,
    TangentFunctional,
    F_inverse,
    G_apply,
    G_inverse,
    alpha,
    chi_chart,
    chi_tangent_check,
    crossover,
    frechet_ratio,
    metric_superoperator,
    norm_bound_check,
    tangent_functional,
    transition_operator,
    xi_chart,
    xi_inverse,
)
from qigeo.geometry import (
    ExponentialArc,
    InterpolationFamily,
    affine_coordinate_check,
    bogoliubov_metric,
    exp_geodesic,
    geodesic_tangent_check,
    interp,
    metric_fd,
    metric_via_G,
    mixture_geodesic,
    zeta_derivatives,
)
from qigeo.modular import (
    kms_check,
    kms_function,
    modular_flow,
    modular_operator,
    polar_check,
    transformed_state,
)

__version__ = "0.1.0"
