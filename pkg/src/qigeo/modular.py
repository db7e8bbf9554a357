"""
Tomita–Takesaki structure of the GNS space of a faithful state.

In GNS coordinates (see :mod:`qigeo.gns`) the modular operator is
``Δ = ρ ⊗ ρ^{-1}``, acting as ``M ↦ ρ̃ M ρ̃^{-1}``, i.e. entrywise by
``p_i / p_j``. The modular conjugation is ``J M = M†`` and the Tomita operator
is ``S = J Δ^{1/2}``, which sends ``π(A)Ω_ρ`` to ``π(A*)Ω_ρ``.

Time convention: ``modular_flow(A, t) = ρ^{it} A ρ^{-it}`` (``Δ^{it}·Δ^{-it}``).
The KMS function uses the physical direction ``α_t(B) = ρ^{-it} B ρ^{it}``,
for which ``F(t + i) = (π(B)Δ^{it}π(A)Ω_ρ, Ω_ρ)`` holds in the strip
``0 ≤ Im z ≤ 1``.
"""
from dataclasses import dataclass

import numpy as np

from qigeo.gns import GnsSpace, GnsVector, omega_vector, pi_apply, represent_state
from qigeo.states import DensityMatrix, as_density


@dataclass(frozen=True, eq=False)
class ModularOperator:
    space: GnsSpace
    multipliers: np.ndarray

    def power_multipliers(self, z):
        """Entrywise multipliers of ``Δ^z`` for complex ``z``."""
        logp = np.log(self.space.p)
        return np.exp(z * (logp[:, None] - logp[None, :]))

    def apply(self, v, z=1.0):
        return GnsVector(v.coords * self.power_multipliers(z))


@dataclass(frozen=True, eq=False)
class ModularConjugation:
    """Antilinear involution ``J M = M†``; represented by its action only."""

    space: GnsSpace

    def apply(self, v):
        return GnsVector(v.coords.conj().T)


def modular_operator(space):
    p = space.p
    return ModularOperator(space, p[:, None] / p[None, :])


def modular_conjugation(space):
    return ModularConjugation(space)


def tomita_apply(space, v):
    """``S v = J Δ^{1/2} v``."""
    return modular_conjugation(space).apply(modular_operator(space).apply(v, 0.5))


def tomita_adjoint_apply(space, v):
    """``F v = Δ^{1/2} J v``, the antilinear adjoint of ``S``."""
    return modular_operator(space).apply(modular_conjugation(space).apply(v), 0.5)


def modular_flow(space, A, t):
    """``Δ^{it} π(A) Δ^{-it} = π(ρ^{it} A ρ^{-it})``; returned in the original basis."""
    phase = modular_operator(space).power_multipliers(1j * t)
    return space.from_eigenbasis(space.to_eigenbasis(A) * phase)


def flow_as_operator(space, A, t):
    """``Δ^{it} π(A) Δ^{-it}`` as an N²×N² matrix on vectorised coordinates."""
    n = space.dim
    mod = modular_operator(space)
    cols = []
    for k in range(n * n):
        E = np.zeros(n * n, dtype=complex)
        E[k] = 1.0
        v = GnsVector(E.reshape(n, n))
        w = mod.apply(pi_apply(space, A, mod.apply(v, -1j * t)), 1j * t)
        cols.append(w.coords.ravel())
    return np.array(cols).T


def transformed_state(space, sigma, t):
    """State ``ω_{σ,t}(A) = (Δ^{it}π(A)Δ^{-it}Ω_σ, Ω_σ)`` as a density matrix.

    ``Ω_σ = X^{1/2}Ω_ρ`` is the vector representative of ``σ`` from
    :func:`qigeo.gns.represent_state`.
    """
    X = represent_state(space, as_density(sigma))
    w, U = np.linalg.eigh(X.right_factor)
    root = (U * np.sqrt(np.clip(w, 0, None))) @ U.conj().T
    omega_sigma = GnsVector(omega_vector(space).coords @ root)
    # (Δ^{it}π(A)Δ^{-it}Ω, Ω) = (π(A)W, W) with W = Δ^{-it}Ω
    W = modular_operator(space).apply(omega_sigma, -1j * t)
    M = W.coords @ W.coords.conj().T
    return DensityMatrix(space.from_eigenbasis((M + M.conj().T) / 2))


def kms_function(space, A, B, z):
    """``F(z) = (π(A) Δ^{-iz} π(B) Ω_ρ, Ω_ρ) = ω_ρ(A α_z(B))``.

    Entire in ``z`` for finite dimension; only the KMS strip
    ``0 ≤ Im z ≤ 1`` is accepted.
    """
    z = complex(z)
    if not -1e-15 <= z.imag <= 1 + 1e-15:
        raise ValueError("z must lie in the strip 0 <= Im z <= 1")
    omega = omega_vector(space)
    mod = modular_operator(space)
    v = pi_apply(space, A, mod.apply(pi_apply(space, B, omega), -1j * z))
    return v.inner(omega)


def kms_rhs(space, A, B, t):
    """``(π(B) Δ^{it} π(A) Ω_ρ, Ω_ρ) = ω_ρ(α_t(B) A)``."""
    omega = omega_vector(space)
    mod = modular_operator(space)
    v = pi_apply(space, B, mod.apply(pi_apply(space, A, omega), 1j * t))
    return v.inner(omega)


def kms_check(space, A, B, t):
    return abs(kms_function(space, A, B, t + 1j) - kms_rhs(space, A, B, t))


def polar_check(space, probes):
    """Residuals of the Tomita relations over a probe set of algebra elements.

    Returns the largest of ``‖JΔ^{1/2}π(A)Ω − π(A*)Ω‖``,
    ``‖F(I⊗C)Ω − (I⊗C*)Ω‖`` (with ``C = A`` read as a commutant element)
    and ``|(Sx, Sy) − (Δy, x)|`` for pairs of probe vectors, which is the
    antilinear form of ``Δ = S*S``.
    """
    omega = omega_vector(space)
    mod = modular_operator(space)
    res = 0.0
    vecs = []
    for A in probes:
        A = np.asarray(A, dtype=complex)
        v = pi_apply(space, A, omega)
        vecs.append(v)
        target = pi_apply(space, A.conj().T, omega)
        res = max(res, (tomita_apply(space, v) - target).norm())
        C = space.to_eigenbasis(A)
        cv = GnsVector(omega.coords @ C.T)
        ctarget = GnsVector(omega.coords @ C.conj())
        res = max(res, (tomita_adjoint_apply(space, cv) - ctarget).norm())
    for x in vecs:
        Sx = tomita_apply(space, x)
        for y in vecs:
            lhs = Sx.inner(tomita_apply(space, y))
            rhs = mod.apply(y).inner(x)
            res = max(res, abs(lhs - rhs))
    return float(res)
