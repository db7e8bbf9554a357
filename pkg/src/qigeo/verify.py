"""
Property-check suite over random faithful states.

Each check draws its inputs from ``make_rng(seed, check_name, dim, index)`` and
returns a residual; a row passes when ``residual <= tolerance``. Rows are
reported in ``(check_name, dim, seed)`` order.
"""
from dataclasses import dataclass

import numpy as np

from qigeo import charts, geometry, gns, matfun, modular, states
from qigeo._rng import make_rng, random_hermitian

FD_STRICT = 1e-6
FD_RELAXED = 1e-5
PROFILES = ("strict", "fd")


@dataclass(frozen=True)
class ReportRow:
    check_name: str
    residual: float
    tolerance: float
    passed: bool
    seed: int
    dim: int

    HEADER = ("check_name", "residual", "tolerance", "passed", "seed", "dim")

    def as_csv(self):
        return (f"{self.check_name},{self.residual:.6e},{self.tolerance:.1e},"
                f"{str(self.passed).lower()},{self.seed},{self.dim}")


def _state(rng, dim, min_eig=0.02):
    return states.random_faithful(dim, int(rng.integers(2**62)), min_eig=min_eig)


def _gauss_legendre(f, nodes=64):
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = (x + 1) / 2
    return sum(wi / 2 * f(ui) for ui, wi in zip(u, w))


def _frac(rho, s):
    return rho.power(s)


# --- matfun ---------------------------------------------------------------

def check_duhamel_quadrature(rng, dim, fd_tol):
    rho = _state(rng, dim)
    A = random_hermitian(rng, dim)
    quad = _gauss_legendre(lambda u: _frac(rho, u) @ A @ _frac(rho, 1 - u))
    return np.max(np.abs(matfun.duhamel_sandwich(rho, A) - quad)), 1e-9


def check_conjugation_quadrature(rng, dim, fd_tol):
    rho = _state(rng, dim)
    A = random_hermitian(rng, dim)
    quad = _gauss_legendre(lambda u: _frac(rho, u) @ A @ _frac(rho, -u))
    return np.max(np.abs(matfun.conjugation_average(rho, A) - quad)), 1e-9


def check_spectral_roundtrip(rng, dim, fd_tol):
    H = random_hermitian(rng, dim)
    S = matfun.spectral(H)
    return np.max(np.abs(S.reconstruct() - H)), 1e-11


# --- states ---------------------------------------------------------------

def check_divergence_nonnegative(rng, dim, fd_tol):
    d = states.umegaki_divergence(_state(rng, dim), _state(rng, dim))
    return max(0.0, -d), 1e-12


def check_thermal_definition(rng, dim, fd_tol):
    H = random_hermitian(rng, dim)
    beta = float(rng.uniform(0.1, 2.0))
    A = random_hermitian(rng, dim)
    rho = states.thermal_state(H, beta)
    Z = states.partition_function(H, beta)
    lhs = np.trace(rho.matrix @ A) * Z
    rhs = np.trace(matfun.mat_exp(-beta * H) @ A)
    return abs(lhs - rhs) / max(1.0, abs(rhs)), 1e-10


# --- gns ------------------------------------------------------------------

def check_state_representation(rng, dim, fd_tol):
    rho, sigma = _state(rng, dim), _state(rng, dim)
    space = gns.GnsSpace(rho)
    X = gns.represent_state(space, sigma)
    w, U = np.linalg.eigh(X.right_factor)
    if w[0] <= 0:
        return np.inf, 1e-10
    root = gns.CommutantOperator(space, ((U * np.sqrt(w)) @ U.conj().T).T)
    v = root.apply(gns.omega_vector(space))
    worst = 0.0
    for _ in range(10):
        A = random_hermitian(rng, dim)
        worst = max(worst, abs(np.trace(sigma.matrix @ A) - gns.pi_apply(space, A, v).inner(v)))
    return worst, 1e-10


def check_commutant(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    A = random_hermitian(rng, dim) + 1j * random_hermitian(rng, dim)
    K = gns.CommutantOperator(space, random_hermitian(rng, dim))
    v = space.vector(random_hermitian(rng, dim) + 1j * random_hermitian(rng, dim))
    lhs = gns.pi_apply(space, A, K.apply(v))
    rhs = K.apply(gns.pi_apply(space, A, v))
    scale = np.linalg.norm(A, 2) * K.op_norm() * v.norm()
    return (lhs - rhs).norm() / scale, 1e-11


def check_cyclic_separating(rng, dim, fd_tol):
    report = gns.check_cyclic_separating(gns.GnsSpace(_state(rng, dim)))
    return float(report.expected_rank - report.rank), 0.0


# --- charts ---------------------------------------------------------------

def check_xi_roundtrip(rng, dim, fd_tol):
    rho, sigma = _state(rng, dim), _state(rng, dim)
    space = gns.GnsSpace(rho)
    back = charts.xi_inverse(space, charts.xi_chart(space, sigma))
    return np.sum(np.linalg.svd(back.matrix - sigma.matrix, compute_uv=False)), 1e-10


def check_xi_center(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    return charts.xi_chart(space, space.reference).op_norm(), 1e-12


def check_frechet_monotone(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    K = charts.random_chart_point(space, int(rng.integers(2**62)))
    r = [charts.frechet_ratio(space, K, 2.0**-k) for k in range(11)]
    return max(0.0, max(b - a for a, b in zip(r, r[1:]))), 1e-9


def check_crossover_consistency(rng, dim, fd_tol):
    s1, s2 = gns.GnsSpace(_state(rng, dim)), gns.GnsSpace(_state(rng, dim))
    K = charts.random_chart_point(s1, int(rng.integers(2**62)))
    direct = charts.xi_chart(s2, charts.xi_inverse(s1, K))
    return (charts.crossover(s1, s2, K) - direct).op_norm(), 1e-10


def check_crossover_linearity(rng, dim, fd_tol):
    s1, s2 = gns.GnsSpace(_state(rng, dim)), gns.GnsSpace(_state(rng, dim))
    X = gns.CommutantOperator(s1, random_hermitian(rng, dim))
    Y = gns.CommutantOperator(s1, random_hermitian(rng, dim))
    a, b = rng.normal(size=2)
    T = lambda Z: charts.transition_operator(s1, s2, Z)
    lhs = T(a * X + b * Y)
    rhs = a * T(X) + b * T(Y)
    return (lhs - rhs).op_norm() / max(1.0, rhs.op_norm()), 1e-10


def check_norm_bound(rng, dim, fd_tol):
    lhs, rhs = charts.norm_bound_terms(*(_state(rng, dim) for _ in range(4)))
    return max(0.0, lhs - rhs) / max(1.0, rhs), 1e-12


def check_F_roundtrip(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    K = charts.random_chart_point(space, int(rng.integers(2**62)))
    back = charts.F_inverse(space, charts.tangent_functional(space, K))
    return (back - K).op_norm(), 1e-11


def check_G_defining_identity(rng, dim, fd_tol):
    rho = _state(rng, dim)
    space = gns.GnsSpace(rho)
    A = random_hermitian(rng, dim)
    omega = gns.omega_vector(space)
    avg = gns.pi_apply(space, matfun.conjugation_average(rho, A), omega)
    lhs = charts.G_apply(charts.metric_superoperator(space), avg)
    return (lhs - gns.pi_apply(space, A, omega)).norm(), 1e-10


def check_chi_defining_identity(rng, dim, fd_tol):
    rho, sigma = _state(rng, dim), _state(rng, dim)
    space = gns.GnsSpace(rho)
    omega = gns.omega_vector(space)
    K = charts.chi_chart(space, sigma)
    target = gns.pi_apply(space, matfun.conjugation_average(rho, charts.relative_log(rho, sigma)), omega)
    return (K.apply(omega) - target).norm(), 1e-11


def check_chi_tangent(rng, dim, fd_tol):
    rho, sigma = _state(rng, dim), _state(rng, dim)
    return charts.chi_tangent_check(gns.GnsSpace(rho), sigma), fd_tol


# --- geometry -------------------------------------------------------------

def check_metric_superop(rng, dim, fd_tol):
    rho, sigma, tau = (_state(rng, dim) for _ in range(3))
    return abs(geometry.metric_via_G(rho, sigma, tau) - geometry.bogoliubov_metric(rho, sigma, tau)), 1e-9


def check_metric_fd(rng, dim, fd_tol):
    rho, sigma, tau = (_state(rng, dim) for _ in range(3))
    return abs(geometry.metric_fd(rho, sigma, tau, 1e-4) - geometry.bogoliubov_metric(rho, sigma, tau)), 1e-5


def check_metric_symmetry(rng, dim, fd_tol):
    rho, sigma, tau = (_state(rng, dim) for _ in range(3))
    g = geometry.bogoliubov_metric
    return abs(g(rho, sigma, tau) - g(rho, tau, sigma)), 1e-11


def _arc(rng, dim):
    return geometry.ExponentialArc(_state(rng, dim), _state(rng, dim))


def check_zeta_endpoints(rng, dim, fd_tol):
    arc = _arc(rng, dim)
    z = geometry._normalized_exp
    z0 = z(arc.log_rho0)[1]
    z1 = z(arc.log_rho0 + arc.H_rel)[1]
    return max(abs(z0), abs(z1)), 1e-10


def check_zeta_nonpositive(rng, dim, fd_tol):
    arc = _arc(rng, dim)
    return max(0.0, max(arc.zeta(t) for t in np.linspace(0.01, 0.99, 99))), 1e-10


def check_zeta_convex(rng, dim, fd_tol):
    arc = _arc(rng, dim)
    worst = min(geometry.zeta_derivatives(arc, t)[1] for t in np.linspace(0, 1, 101))
    return max(0.0, -worst), 1e-11


def check_zeta_slope(rng, dim, fd_tol):
    arc = _arc(rng, dim)
    worst = 0.0
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        rho_t, _ = geometry.exp_geodesic(arc, t)
        zdot, _ = geometry.zeta_derivatives(arc, t)
        D = states.umegaki_divergence
        worst = max(worst, abs(zdot - (D(rho_t, arc.rho0) - D(rho_t, arc.rho1))))
    return worst, 1e-10


def check_affine_coordinates(rng, dim, fd_tol):
    center, arc = _state(rng, dim), _arc(rng, dim)
    return max(geometry.affine_coordinate_check(center, arc, t) for t in np.arange(1, 10) / 10), 1e-9


def check_geodesic_tangent(rng, dim, fd_tol):
    arc = _arc(rng, dim)
    return geometry.geodesic_tangent_check(arc, float(rng.uniform(0.1, 0.9))), fd_tol


def check_mixture_tangent(rng, dim, fd_tol):
    rho0, rho1 = _state(rng, dim), _state(rng, dim)
    h = 1e-3
    slopes = [(geometry.mixture_geodesic(rho0, rho1, t + h).matrix
               - geometry.mixture_geodesic(rho0, rho1, t).matrix) / h for t in (0.0, 0.3, 0.6)]
    return max(np.max(np.abs(s - slopes[0])) for s in slopes), 1e-12


# --- modular --------------------------------------------------------------

def check_delta_fixes_omega(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    omega = gns.omega_vector(space)
    return (modular.modular_operator(space).apply(omega) - omega).norm(), 1e-12


def check_polar(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    probes = [random_hermitian(rng, dim) + 1j * random_hermitian(rng, dim) for _ in range(3)]
    return modular.polar_check(space, probes), 1e-10


def check_kms(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    A, B = random_hermitian(rng, dim), random_hermitian(rng, dim)
    t = float(rng.uniform(-3, 3))
    return modular.kms_check(space, A, B, t), 1e-10


def check_flow_group_law(rng, dim, fd_tol):
    space = gns.GnsSpace(_state(rng, dim))
    A = random_hermitian(rng, dim)
    s, t = rng.uniform(-2, 2, size=2)
    lhs = modular.modular_flow(space, modular.modular_flow(space, A, t), s)
    return np.max(np.abs(lhs - modular.modular_flow(space, A, s + t))), 1e-11


def check_thermal_heisenberg(rng, dim, fd_tol):
    H = random_hermitian(rng, dim)
    beta = float(rng.uniform(0.2, 2.0))
    A = random_hermitian(rng, dim)
    t = float(rng.uniform(-2, 2))
    space = gns.GnsSpace(states.thermal_state(H, beta))
    U = matfun.spectral(H)
    phase = np.exp(1j * t * beta * U.eigenvalues)
    heis = U.from_eigenbasis(phase[:, None] * U.to_eigenbasis(A) * phase.conj()[None, :])
    return np.max(np.abs(modular.modular_flow(space, A, -t) - heis)), 1e-10


CHECKS = {
    "matfun.duhamel_quadrature": check_duhamel_quadrature,
    "matfun.conjugation_quadrature": check_conjugation_quadrature,
    "matfun.spectral_roundtrip": check_spectral_roundtrip,
    "states.divergence_nonnegative": check_divergence_nonnegative,
    "states.thermal_definition": check_thermal_definition,
    "gns.state_representation": check_state_representation,
    "gns.commutant": check_commutant,
    "gns.cyclic_separating": check_cyclic_separating,
    "charts.xi_roundtrip": check_xi_roundtrip,
    "charts.xi_center": check_xi_center,
    "charts.frechet_monotone": check_frechet_monotone,
    "charts.crossover_consistency": check_crossover_consistency,
    "charts.crossover_linearity": check_crossover_linearity,
    "charts.norm_bound": check_norm_bound,
    "charts.F_roundtrip": check_F_roundtrip,
    "charts.G_defining_identity": check_G_defining_identity,
    "charts.chi_defining_identity": check_chi_defining_identity,
    "charts.chi_tangent": check_chi_tangent,
    "geometry.metric_superop": check_metric_superop,
    "geometry.metric_fd": check_metric_fd,
    "geometry.metric_symmetry": check_metric_symmetry,
    "geometry.zeta_endpoints": check_zeta_endpoints,
    "geometry.zeta_nonpositive": check_zeta_nonpositive,
    "geometry.zeta_convex": check_zeta_convex,
    "geometry.zeta_slope": check_zeta_slope,
    "geometry.affine_coordinates": check_affine_coordinates,
    "geometry.geodesic_tangent": check_geodesic_tangent,
    "geometry.mixture_tangent": check_mixture_tangent,
    "modular.delta_fixes_omega": check_delta_fixes_omega,
    "modular.polar": check_polar,
    "modular.kms": check_kms,
    "modular.flow_group_law": check_flow_group_law,
    "modular.thermal_heisenberg": check_thermal_heisenberg,
}


def run_suite(dims=(2, 3, 4), seeds=20, profile="strict", base_seed=0, inject_failure=None):
    """Run every check for each ``dim`` and seed index; return sorted rows."""
    if profile not in PROFILES:
        raise ValueError(f"unknown tolerance profile {profile!r}")
    if inject_failure is not None and inject_failure not in CHECKS:
        raise ValueError(f"unknown check {inject_failure!r}")
    fd_tol = FD_STRICT if profile == "strict" else FD_RELAXED
    rows = []
    for name, check in CHECKS.items():
        for dim in dims:
            for k in range(seeds):
                residual, tol = check(make_rng(base_seed, name, dim, k), dim, fd_tol)
                residual = float(residual)
                if name == inject_failure:
                    residual += 1.0
                rows.append(ReportRow(name, residual, tol, bool(residual <= tol), k, dim))
    rows.sort(key=lambda r: (r.check_name, r.dim, r.seed))
    return rows
