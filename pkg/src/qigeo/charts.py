"""
Charts on the manifold of faithful states.

Two chart families are centred at each faithful ``ρ``; both take values in the
real space of self-adjoint commutant operators ``K`` with ``(KΩ_ρ, Ω_ρ) = 0``.

``xi_chart``
    ``K = log X − (log X Ω_ρ, Ω_ρ)`` with ``X`` the commutant operator that
    represents the state (:func:`qigeo.gns.represent_state`).
``chi_chart``
    ``KΩ_ρ = ∫_0^1 π(ρ^u A ρ^{-u}) du Ω_ρ`` with
    ``A = log σ − log ρ + D(ρ‖σ)``. These are affine coordinates for the
    exponential connection.

Operators ``K`` are stored by the matrix ``B`` (``K = I ⊗ B``) in the eigenbasis
of ``ρ``; see :mod:`qigeo.gns`.
"""
from dataclasses import dataclass

import numpy as np

from qigeo._rng import make_rng, random_hermitian
from qigeo.gns import CommutantOperator, GnsSpace, GnsVector, represent_state
from qigeo.matfun import SpectralDecomposition, apply_function, hermitize, log_mean_kernel
from qigeo.states import DensityMatrix, as_density, umegaki_divergence

CENTERING_TOL = 1e-11


class ChartPoint(CommutantOperator):
    """A centred self-adjoint commutant operator, i.e. an element of ``B_ρ``.

    Raises
    ------
    ValueError
        If ``B`` is not Hermitian or ``Tr(ρ Bᵀ)`` is not zero within ``1e-11``
        (relative to ``max(1, ‖B‖)``).
    """

    def __init__(self, space, B):
        B = np.asarray(B, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(B))) if B.size else 1.0)
        if np.max(np.abs(B - B.conj().T)) > 1e-12 * scale:
            raise ValueError("chart point must be self-adjoint")
        B = hermitize(B)
        super().__init__(space, B)
        if abs(self.expectation()) > CENTERING_TOL * scale:
            raise ValueError(f"chart point is not centred: (KΩ, Ω) = {self.expectation():.3e}")

    @classmethod
    def centered(cls, space, B):
        """Project a Hermitian ``B`` onto ``B_ρ`` by subtracting ``Tr(ρBᵀ)·I``."""
        B = hermitize(np.asarray(B, dtype=complex))
        c = np.sum(space.p * np.diag(B).real)
        return cls(space, B - c * np.eye(space.dim))

    @classmethod
    def zero(cls, space):
        return cls(space, np.zeros((space.dim, space.dim), dtype=complex))


def random_chart_point(space, seed, scale=1.0):
    """Centred chart point with operator norm ``scale`` (reproducible)."""
    rng = make_rng(seed, "chart_point", space.dim)
    K = ChartPoint.centered(space, random_hermitian(rng, space.dim))
    return (scale / K.op_norm()) * K


@dataclass(frozen=True, eq=False)
class TangentFunctional:
    """The functional ``f_{ρ,K}(A) = (π(A)Ω_ρ, KΩ_ρ) = Tr(T A)``.

    ``dual_matrix`` is ``T`` in the original basis.
    """

    space: GnsSpace
    K: CommutantOperator
    dual_matrix: np.ndarray

    def __call__(self, A):
        return complex(np.trace(self.dual_matrix @ np.asarray(A, dtype=complex)))

    def norm(self):
        """Dual norm with respect to the operator norm, i.e. the trace norm of ``T``."""
        return float(np.sum(np.linalg.svd(self.dual_matrix, compute_uv=False)))


@dataclass(frozen=True, eq=False)
class MetricSuperoperator:
    """Entrywise multiplier ``G[i, j] = p_j / L(p_i, p_j)`` on GNS coordinates."""

    space: GnsSpace
    multipliers: np.ndarray


def _exp_shifted(Bt):
    """Return ``(exp(Bt − λ_max), λ_max)`` for Hermitian ``Bt``."""
    w, U = np.linalg.eigh(hermitize(Bt))
    top = w[-1]
    return hermitize((U * np.exp(w - top)) @ U.conj().T), top


def _log_hermitian(Bt):
    return apply_function(SpectralDecomposition(*np.linalg.eigh(hermitize(Bt))), np.log)


def xi_chart(space, sigma):
    """Chart value ``ξ_ρ(σ) = log X − (log X Ω_ρ, Ω_ρ)``."""
    X = represent_state(space, sigma)
    L = _log_hermitian(X.right_factor)
    c = np.sum(space.p * np.diag(L).real)
    Bt = L - c * np.eye(space.dim)
    return ChartPoint(space, Bt.T)


def alpha(space, K):
    """``α_ρ(K) = log (e^K Ω_ρ, Ω_ρ) = log Tr(ρ e^{Bᵀ})``."""
    E, top = _exp_shifted(K.right_factor)
    return float(top + np.log(np.sum(space.p * np.diag(E).real)))


def xi_inverse(space, K):
    """State ``σ = e^{-α} ρ^{1/2} e^{Bᵀ} ρ^{1/2}`` with ``ξ_ρ(σ) = K``."""
    E, _ = _exp_shifted(K.right_factor)
    s = space.sqrt_p
    M = s[:, None] * E * s[None, :]
    M = hermitize(M / np.trace(M).real)
    return DensityMatrix(space.from_eigenbasis(M))


def tangent_functional(space, K):
    """Apply the derivative map ``F_ρ: K ↦ f_{ρ,K}``.

    Accepts any commutant operator; for chart points the result vanishes on
    the identity. In the eigenbasis ``T = ρ^{1/2} conj(B) ρ^{1/2}``.
    """
    s = space.sqrt_p
    Tt = s[:, None] * np.conj(K.B) * s[None, :]
    return TangentFunctional(space, K, space.from_eigenbasis(Tt))


def F_inverse(space, f, require_centered=True):
    """Recover ``K`` from a functional ``Tr(T ·)`` via ``conj(B) = ρ^{-1/2} T̃ ρ^{-1/2}``.

    With ``require_centered`` (the default) a functional with ``Tr T ≠ 0`` is
    rejected and the result is a :class:`ChartPoint`; otherwise an arbitrary
    commutant operator is returned.
    """
    T = np.asarray(getattr(f, "dual_matrix", f), dtype=complex)
    if require_centered:
        scale = max(1.0, float(np.max(np.abs(T))))
        if abs(np.trace(T)) > CENTERING_TOL * scale:
            raise ValueError("functional does not vanish on the identity")
    inv = 1.0 / space.sqrt_p
    conjB = inv[:, None] * space.to_eigenbasis(T) * inv[None, :]
    B = np.conj(conjB)
    if require_centered:
        return ChartPoint(space, hermitize(B))
    return CommutantOperator(space, B)


def frechet_ratio(space, K, t):
    """Relative first-order remainder of ``ξ_ρ^{-1}`` at ``ρ`` along ``tK``.

    Returns ``‖ω_σ − ω_ρ − F_ρ(tK)‖ / ‖tK‖`` with ``σ = ξ_ρ^{-1}(tK)``, the
    trace norm on functionals and the operator norm on ``K``.
    """
    if t == 0:
        raise ValueError("t must be non-zero")
    size = abs(t) * K.op_norm()
    if size == 0:
        return 0.0
    tK = t * K
    sigma = xi_inverse(space, tK)
    T = tangent_functional(space, tK).dual_matrix
    R = sigma.matrix - space.reference.matrix - T
    return float(np.sum(np.linalg.svd(R, compute_uv=False)) / size)


def transition_operator(space1, space2, X):
    """The linear map ``F_2^{-1} F_1`` on commutant operators of ``space1``."""
    return F_inverse(space2, tangent_functional(space1, X), require_centered=False)


def crossover(space1, space2, K):
    """Chart change ``ξ_2 ∘ ξ_1^{-1}`` evaluated through ``F_2^{-1} F_1``.

    The linear map ``F_2^{-1} F_1`` carries the represented-state operator
    ``X_1 = e^{K − α_1(K)}`` of ``space1`` to ``X_2`` of ``space2``; the chart
    value is then ``log X_2`` re-centred. The map ``K ↦ ξ_2(ξ_1^{-1}(K))``
    itself is not linear (it sends ``0`` to ``ξ_2(ρ_1)``).
    """
    E, top = _exp_shifted(K.right_factor)
    a = alpha(space1, K)
    X1 = CommutantOperator(space1, (E * np.exp(top - a)).T)
    X2 = transition_operator(space1, space2, X1)
    L = _log_hermitian(X2.right_factor)
    c = np.sum(space2.p * np.diag(L).real)
    return ChartPoint(space2, (L - c * np.eye(space2.dim)).T)


def norm_bound_terms(rho1, rho2, sigma1, sigma2):
    """Both sides of the chart-continuity estimate.

    Returns ``(lhs, rhs)`` with ``lhs = ‖X_{2,2} − X_{2,1}‖`` and
    ``rhs = ‖ρ_1‖ ‖ρ_2^{-1}‖ ‖X_{1,2} − X_{1,1}‖``, where ``X_{i,j}`` is the
    commutant operator representing ``σ_j`` in the GNS space of ``ρ_i``.
    """
    s1, s2 = GnsSpace(as_density(rho1)), GnsSpace(as_density(rho2))
    lhs = (represent_state(s2, sigma2) - represent_state(s2, sigma1)).op_norm()
    diff1 = (represent_state(s1, sigma2) - represent_state(s1, sigma1)).op_norm()
    const = s1.p[-1] / s2.p[0]
    return lhs, const * diff1


def norm_bound_check(rho1, rho2, sigma1, sigma2, rtol=1e-12):
    lhs, rhs = norm_bound_terms(rho1, rho2, sigma1, sigma2)
    return bool(lhs <= rhs + rtol * max(1.0, rhs))


def relative_log(rho, sigma):
    """``A_{ρ,σ} = log σ − log ρ + D(ρ‖σ)`` in the original basis."""
    rho, sigma = as_density(rho), as_density(sigma)
    d = umegaki_divergence(rho, sigma)
    return sigma.log() - rho.log() + d * np.eye(rho.dim)


def chi_chart(space, sigma):
    """Chart value ``χ_ρ(σ)``.

    Closed form in the eigenbasis: ``Bᵀ[i, j] = Ã[i, j] L(p_i, p_j) / √(p_i p_j)``
    with ``Ã`` the eigenbasis matrix of ``A_{ρ,σ}``.
    """
    A = space.to_eigenbasis(relative_log(space.reference, sigma))
    p = space.p
    Bt = A * log_mean_kernel(p) / np.sqrt(p[:, None] * p[None, :])
    return ChartPoint(space, hermitize(Bt).T)


def metric_superoperator(space):
    p = space.p
    return MetricSuperoperator(space, p[None, :] / log_mean_kernel(p))


def G_apply(G, v):
    return GnsVector(v.coords * G.multipliers)


def G_inverse(G, v):
    return GnsVector(v.coords / G.multipliers)


def hermitian_probes(dim):
    """Orthonormal Hermitian basis of the N×N matrices (generalised Pauli)."""
    probes = []
    for i in range(dim):
        E = np.zeros((dim, dim), dtype=complex)
        E[i, i] = 1.0
        probes.append(E)
        for j in range(i + 1, dim):
            X = np.zeros((dim, dim), dtype=complex)
            X[i, j] = X[j, i] = 1 / np.sqrt(2)
            Y = np.zeros((dim, dim), dtype=complex)
            Y[i, j], Y[j, i] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            probes.extend([X, Y])
    return probes


def chi_tangent_check(space, sigma, step=1e-4):
    """Max probe residual between ``d/ds|_0 ω_{σ_s}`` and ``f_{ρ, χ_ρ(σ)}``.

    The derivative is a central difference of the exponential interpolation
    from ``ρ`` to ``σ``.
    """
    from qigeo.geometry import InterpolationFamily, interp

    family = InterpolationFamily(space.reference, as_density(sigma))
    dM = (interp(family, step).matrix - interp(family, -step).matrix) / (2 * step)
    f = tangent_functional(space, chi_chart(space, sigma))
    return max(abs(np.trace(dM @ A) - f(A)) for A in hermitian_probes(space.dim))
