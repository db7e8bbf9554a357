"""
Bogoliubov (Kubo–Mori) metric and the mixture / exponential connections.

The metric is available in three independent forms:

* :func:`bogoliubov_metric`, the closed integral formula evaluated with the
  logarithmic-mean kernel;
* :func:`metric_via_G`, the inner product ``(G_ρ PΩ_ρ, QΩ_ρ)`` of chart
  vectors ``P = χ_ρ(σ)``, ``Q = χ_ρ(τ)``;
* :func:`metric_fd`, a finite-difference mixed derivative of the Umegaki
  divergence along two exponential interpolations.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from qigeo.charts import (
    chi_chart,
    hermitian_probes,
    metric_superoperator,
    tangent_functional,
)
from qigeo.gns import GnsSpace, omega_vector
from qigeo.matfun import duhamel_sandwich, hermitize
from qigeo.states import DensityMatrix, as_density, umegaki_divergence


def _normalized_exp(L):
    """Return ``(exp(L) / Tr exp(L), log Tr exp(L))`` for Hermitian ``L``."""
    w, U = np.linalg.eigh(hermitize(L))
    lz = logsumexp(w)
    return DensityMatrix.from_spectrum(np.exp(w - lz), U), float(lz)


@dataclass(frozen=True, eq=False)
class InterpolationFamily:
    """States ``σ_s = exp(log ρ + s(log σ − log ρ)) / Z(s)``."""

    rho: DensityMatrix
    sigma: DensityMatrix
    log_rho: np.ndarray = field(init=False, repr=False)
    direction: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", as_density(self.rho))
        object.__setattr__(self, "sigma", as_density(self.sigma))
        object.__setattr__(self, "log_rho", self.rho.log())
        object.__setattr__(self, "direction", self.sigma.log() - self.log_rho)

    def log_Z(self, s):
        return _normalized_exp(self.log_rho + s * self.direction)[1]

    def Z(self, s):
        return float(np.exp(self.log_Z(s)))


def interp(family, s):
    if s == 0:
        return family.rho
    if s == 1:
        return family.sigma
    return _normalized_exp(family.log_rho + s * family.direction)[0]


def bogoliubov_metric(rho, sigma, tau):
    """Bogoliubov inner product ``g_{σ,τ}(ρ)``.

    ``∫_0^1 Tr ρ^u a ρ^{1-u} b du − D(ρ‖σ) D(ρ‖τ)`` with ``a = log σ − log ρ``
    and ``b = log τ − log ρ``; the integral is ``Tr[duhamel_sandwich(ρ, a) b]``.
    """
    rho, sigma, tau = as_density(rho), as_density(sigma), as_density(tau)
    log_rho = rho.log()
    a = sigma.log() - log_rho
    b = tau.log() - log_rho
    integral = np.trace(duhamel_sandwich(rho, a) @ b).real
    return float(integral - umegaki_divergence(rho, sigma) * umegaki_divergence(rho, tau))


def metric_fd(rho, sigma, tau, h=1e-4):
    """``−∂_s ∂_t D(σ_s‖τ_t)`` at ``s = t = 0`` by a central mixed difference."""
    if not 1e-5 <= h <= 1e-3:
        raise ValueError("step h must lie in [1e-5, 1e-3]")
    fs = InterpolationFamily(rho, sigma)
    ft = InterpolationFamily(rho, tau)
    sp, sm = interp(fs, h), interp(fs, -h)
    tp, tm = interp(ft, h), interp(ft, -h)
    D = umegaki_divergence
    mixed = (D(sp, tp) - D(sp, tm) - D(sm, tp) + D(sm, tm)) / (4 * h * h)
    return float(-mixed)


def riemannian_inner(space, P, Q):
    """``⟨f_{ρ,P}, f_{ρ,Q}⟩_ρ = (G_ρ PΩ_ρ, QΩ_ρ)``."""
    omega = omega_vector(space)
    G = metric_superoperator(space)
    Pv, Qv = P.apply(omega), Q.apply(omega)
    return np.vdot(Qv.coords, G.multipliers * Pv.coords)


def metric_via_G(rho, sigma, tau):
    space = GnsSpace(as_density(rho))
    value = riemannian_inner(space, chi_chart(space, sigma), chi_chart(space, tau))
    return float(value.real)


def mixture_geodesic(rho0, rho1, t):
    """``(1 − t)ρ_0 + tρ_1``; raises if the result is not faithful."""
    rho0, rho1 = as_density(rho0), as_density(rho1)
    return DensityMatrix((1 - t) * rho0.matrix + t * rho1.matrix)


@dataclass(frozen=True, eq=False)
class ExponentialArc:
    """Exponential geodesic ``log ρ_t = (1 − t) log ρ_0 + t log ρ_1 − ζ(t)``."""

    rho0: DensityMatrix
    rho1: DensityMatrix
    log_rho0: np.ndarray = field(init=False, repr=False)
    H_rel: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho0", as_density(self.rho0))
        object.__setattr__(self, "rho1", as_density(self.rho1))
        object.__setattr__(self, "log_rho0", self.rho0.log())
        object.__setattr__(self, "H_rel", self.rho1.log() - self.log_rho0)

    def zeta(self, t):
        return exp_geodesic(self, t)[1]


def exp_geodesic(arc, t):
    """Return ``(ρ_t, ζ(t))`` with ``ζ(t) = log Tr exp((1 − t) log ρ_0 + t log ρ_1)``."""
    if t == 0:
        return arc.rho0, 0.0
    if t == 1:
        return arc.rho1, 0.0
    return _normalized_exp(arc.log_rho0 + t * arc.H_rel)


def zeta_derivatives(arc, t):
    """First and second derivatives of ``ζ`` at ``t``.

    ``ζ'(t) = Tr ρ_t H`` and
    ``ζ''(t) = Tr[duhamel_sandwich(ρ_t, H) H] − (Tr ρ_t H)²`` where
    ``H = log ρ_1 − log ρ_0``.
    """
    rho_t, _ = exp_geodesic(arc, t)
    H = arc.H_rel
    zdot = np.trace(rho_t.matrix @ H).real
    zddot = np.trace(duhamel_sandwich(rho_t, H) @ H).real - zdot**2
    return float(zdot), float(zddot)


def affine_coordinate_check(rho, arc, t):
    """Operator-norm residual ``‖χ_ρ(ρ_t) − (1 − t)χ_ρ(ρ_0) − tχ_ρ(ρ_1)‖``."""
    space = GnsSpace(as_density(rho))
    rho_t, _ = exp_geodesic(arc, t)
    K0, K1, Kt = (chi_chart(space, s) for s in (arc.rho0, arc.rho1, rho_t))
    return (Kt - ((1 - t) * K0 + t * K1)).op_norm()


def geodesic_tangent_check(arc, t, step=1e-4):
    """Max probe residual between ``dω_t/dt`` and ``f_{ρ_t, χ_t(ρ_1) − χ_t(ρ_0)}``."""
    rho_t, _ = exp_geodesic(arc, t)
    space = GnsSpace(rho_t)
    K = chi_chart(space, arc.rho1) - chi_chart(space, arc.rho0)
    f = tangent_functional(space, K)
    dM = (exp_geodesic(arc, t + step)[0].matrix - exp_geodesic(arc, t - step)[0].matrix) / (2 * step)
    return max(abs(np.trace(dM @ A) - f(A)) for A in hermitian_probes(space.dim))
