"""
Hermitian spectral calculus and logarithmic-mean integral transforms.

Every integral of the form ``∫_0^1 ρ^u A ρ^{1-u} du`` or ``∫_0^1 ρ^u A ρ^{-u} du``
reduces, in the eigenbasis of ``ρ``, to an entrywise product with a kernel
built from the logarithmic mean of eigenvalue pairs. Nothing here uses
quadrature.
"""
from dataclasses import dataclass

import numpy as np

HERMITIAN_RTOL = 1e-12
_SERIES_CUTOFF = 1e-6


class DomainError(ValueError):
    """A scalar function was evaluated outside its domain."""


def as_hermitian(A, name="matrix"):
    """Validate that `A` is square and Hermitian; return its symmetrized copy.

    Hermiticity is checked relative to the largest entry magnitude.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    scale = max(np.max(np.abs(A)), 1.0)
    if np.max(np.abs(A - A.conj().T)) > HERMITIAN_RTOL * scale:
        raise ValueError(f"{name} is not Hermitian")
    return (A + A.conj().T) / 2


def hermitize(A):
    return (A + A.conj().T) / 2


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-decomposition ``H = U diag(eigenvalues) U†``, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def to_eigenbasis(self, A):
        """Express an operator given in the original basis in the eigenbasis."""
        U = self.eigenvectors
        return U.conj().T @ A @ U

    def from_eigenbasis(self, A):
        U = self.eigenvectors
        return U @ A @ U.conj().T


def spectral(H):
    """Spectral decomposition of a Hermitian matrix.

    Raises
    ------
    ValueError
        If `H` is not Hermitian.
    """
    H = as_hermitian(H)
    w, U = np.linalg.eigh(H)
    return SpectralDecomposition(w, U)


def apply_function(S, f):
    """Return ``U diag(f(λ)) U†`` for a spectral decomposition `S`.

    `f` must accept and return real numpy arrays. A non-finite value at any
    eigenvalue raises `DomainError`.
    """
    with np.errstate(all="ignore"):
        fw = np.asarray(f(S.eigenvalues))
    if fw.shape != S.eigenvalues.shape or not np.all(np.isfinite(fw)):
        raise DomainError("function undefined at an eigenvalue")
    U = S.eigenvectors
    return hermitize((U * fw) @ U.conj().T)


def mat_log(A):
    return apply_function(A if isinstance(A, SpectralDecomposition) else spectral(A), _strict_log)


def mat_exp(A):
    return apply_function(A if isinstance(A, SpectralDecomposition) else spectral(A), np.exp)


def mat_pow(A, power):
    S = A if isinstance(A, SpectralDecomposition) else spectral(A)
    if np.any(S.eigenvalues <= 0):
        raise DomainError("matrix power requires a strictly positive matrix")
    return apply_function(S, lambda w: w ** power)


def _strict_log(w):
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise DomainError("logarithm of a non-positive eigenvalue")
    return np.log(w)


def log_mean(x, y):
    """Logarithmic mean ``(x - y) / (ln x - ln y)``, with ``L(x, x) = x``.

    Equals ``∫_0^1 x^u y^{1-u} du``. Works elementwise on arrays. Evaluated as
    ``x * h(y / x)`` with ``h(r) = (r - 1) / ln r``; near ``r = 1`` the ratio
    is replaced by its Taylor series to avoid cancellation.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("logarithmic mean needs strictly positive arguments")
    # order the arguments so the result is exactly symmetric
    x, y = np.maximum(x, y), np.minimum(x, y)
    eps = y / x - 1.0
    small = np.abs(eps) < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(small, 1.0, eps / np.log1p(np.where(small, 1.0, eps)))
    series = 1.0 + eps / 2 - eps**2 / 12 + eps**3 / 24
    h = np.where(small, series, h)
    out = x * h
    return out.item() if out.ndim == 0 else out


def log_mean_kernel(p):
    """Matrix ``L[i, j] = log_mean(p[i], p[j])`` for a positive vector `p`."""
    p = np.asarray(p, dtype=float)
    return log_mean(p[:, None], p[None, :])


def _check_state_spectrum(rho):
    if isinstance(rho, SpectralDecomposition):
        S = rho
    elif hasattr(rho, "spectral"):
        S = rho.spectral
    else:
        S = spectral(rho)
    if np.any(S.eigenvalues <= 0):
        raise DomainError("reference matrix must be strictly positive")
    return S


def duhamel_sandwich(rho, A):
    """Compute ``∫_0^1 ρ^u A ρ^{1-u} du``.

    This is the Fréchet derivative of ``exp`` at ``log ρ`` in direction `A`.
    In the eigenbasis of `ρ` the result is ``A[i, j] * L(p_i, p_j)``.

    Parameters
    ----------
    rho : DensityMatrix, SpectralDecomposition or array_like
        Strictly positive reference operator.
    A : array_like
        Hermitian matrix in the original basis.
    """
    S = _check_state_spectrum(rho)
    A = as_hermitian(A, "A")
    At = S.to_eigenbasis(A)
    return hermitize(S.from_eigenbasis(At * log_mean_kernel(S.eigenvalues)))


def conjugation_average(rho, A):
    """Compute ``∫_0^1 ρ^u A ρ^{-u} du`` (not Hermitian in general).

    In the eigenbasis of `ρ` the result is ``A[i, j] * L(p_i, p_j) / p_j``.
    """
    S = _check_state_spectrum(rho)
    A = np.asarray(A, dtype=complex)
    p = S.eigenvalues
    At = S.to_eigenbasis(A)
    return S.from_eigenbasis(At * log_mean_kernel(p) / p[None, :])
