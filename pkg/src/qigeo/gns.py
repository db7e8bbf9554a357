"""
Explicit GNS representation of the N×N matrix algebra for a faithful state.

The GNS Hilbert space ``H ⊗ H`` is modelled as N×N complex matrices ``M`` with
the Hilbert–Schmidt inner product ``(M, M') = Tr(M M'†)``; the basis vector
``e_i ⊗ e_j`` corresponds to the matrix unit ``|i⟩⟨j|``. All coordinates are
taken in the eigenbasis of the reference state ``ρ = Σ p_n |ψ_n⟩⟨ψ_n|``, so:

* the cyclic vector is ``Ω = diag(√p)``;
* the algebra acts by left multiplication, ``π(A) M = Ã M`` with ``Ã = U†AU``;
* the commutant ``I ⊗ B`` acts by right multiplication, ``M ↦ M Bᵀ``.
"""
from dataclasses import dataclass, field

import numpy as np

from qigeo.states import as_density


@dataclass(frozen=True)
class GnsVector:
    coords: np.ndarray

    def inner(self, other):
        """Hilbert–Schmidt inner product, linear in the first argument."""
        return complex(np.vdot(other.coords, self.coords))

    def norm(self):
        return float(np.linalg.norm(self.coords))

    def __add__(self, other):
        return GnsVector(self.coords + other.coords)

    def __sub__(self, other):
        return GnsVector(self.coords - other.coords)

    def __rmul__(self, c):
        return GnsVector(c * self.coords)


@dataclass(frozen=True, eq=False)
class GnsSpace:
    """GNS triple ``(π, H_π, Ω_ρ)`` induced by the faithful state `reference`."""

    reference: object
    p: np.ndarray = field(init=False, repr=False)
    sqrt_p: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        rho = as_density(self.reference)
        object.__setattr__(self, "reference", rho)
        object.__setattr__(self, "p", rho.spectral.eigenvalues)
        object.__setattr__(self, "sqrt_p", np.sqrt(rho.spectral.eigenvalues))

    @property
    def dim(self):
        return self.p.shape[0]

    @property
    def basis(self):
        return self.reference.spectral

    def to_eigenbasis(self, A):
        return self.basis.to_eigenbasis(np.asarray(A, dtype=complex))

    def from_eigenbasis(self, A):
        return self.basis.from_eigenbasis(A)

    def vector(self, coords):
        return GnsVector(np.asarray(coords, dtype=complex))


@dataclass(frozen=True, eq=False)
class CommutantOperator:
    """The operator ``I ⊗ B`` of the commutant, acting as ``M ↦ M Bᵀ``.

    `B` is stored in the eigenbasis of the reference state of `space`.
    """

    space: GnsSpace
    B: np.ndarray

    @property
    def right_factor(self):
        return self.B.T

    def apply(self, v):
        return GnsVector(v.coords @ self.B.T)

    def expectation(self):
        """``(K Ω_ρ, Ω_ρ) = Tr(ρ Bᵀ)``."""
        return complex(np.sum(self.space.p * np.diag(self.B)))

    def is_self_adjoint(self, atol=1e-12):
        return np.allclose(self.B, self.B.conj().T, rtol=0, atol=atol)

    def op_norm(self):
        return float(np.linalg.norm(self.B, 2))

    # Linear combinations keep the concrete subclass (centring is linear).
    def __add__(self, other):
        _same_space(self, other)
        return type(self)(self.space, self.B + other.B)

    def __sub__(self, other):
        _same_space(self, other)
        return type(self)(self.space, self.B - other.B)

    def __rmul__(self, c):
        return type(self)(self.space, c * self.B)


def _same_space(a, b):
    if a.space is not b.space:
        raise ValueError("operators live on different GNS spaces")


def omega_vector(space):
    """Cyclic and separating vector ``Ω_ρ = Σ √p_n ψ_n ⊗ ψ_n``."""
    return GnsVector(np.diag(space.sqrt_p).astype(complex))


def pi_apply(space, A, v):
    """Represented algebra element ``π(A) = A ⊗ I``; `A` in the original basis."""
    return GnsVector(space.to_eigenbasis(A) @ v.coords)


def commutant_apply(K, v):
    return K.apply(v)


def prime_map(space, A):
    """The matrix ``A'`` with ``A'ψ_n = Σ_m (A*ψ_m, ψ_n) ψ_m``.

    Returned in the eigenbasis of the reference state, where it is the
    entrywise complex conjugate of ``Ã``.
    """
    return np.conj(space.to_eigenbasis(A))


def represent_state(space, sigma):
    """Strictly positive ``X`` in the commutant with ``Tr σA = (π(A)X^½Ω, X^½Ω)``.

    Closed form: ``Bᵀ = ρ^{-1/2} σ̃ ρ^{-1/2}`` in the eigenbasis of ``ρ``.
    """
    sigma = as_density(sigma)
    s = space.to_eigenbasis(sigma.matrix)
    inv = 1.0 / space.sqrt_p
    Bt = inv[:, None] * s * inv[None, :]
    Bt = (Bt + Bt.conj().T) / 2
    return CommutantOperator(space, Bt.T)


def vector_state(space, v):
    """Density matrix (original basis) of the vector state ``A ↦ (π(A)v, v)``."""
    return space.from_eigenbasis(v.coords @ v.coords.conj().T)


@dataclass(frozen=True)
class CyclicSeparatingReport:
    rank: int
    expected_rank: int
    min_singular_value: float

    @property
    def ok(self):
        return self.rank == self.expected_rank and self.min_singular_value > 0


def check_cyclic_separating(space):
    """Verify that ``Ω_ρ`` is cyclic (rank test) and separating (singular values).

    The vectors ``π(E_{n,m})Ω_ρ`` are stacked into an N²×N² matrix whose rank
    must be N². Separation is measured by the smallest singular value of the
    linear map ``A ↦ π(A)Ω_ρ``, which is ``min √p_n``.
    """
    n = space.dim
    omega = omega_vector(space).coords
    cols = []
    for a in range(n):
        for b in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[a, b] = 1.0
            cols.append((E @ omega).ravel())
    stacked = np.array(cols).T
    sv = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.sum(sv > sv[0] * n * n * np.finfo(float).eps))
    return CyclicSeparatingReport(rank, n * n, float(sv[-1]))
