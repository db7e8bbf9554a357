"""Faithful density matrices, expectations, thermal states and relative entropy."""
import numpy as np
from scipy.special import logsumexp

from qigeo._rng import make_rng, random_unitary
from qigeo.matfun import (
    SpectralDecomposition,
    apply_function,
    as_hermitian,
    hermitize,
    spectral,
)

FAITHFUL_FLOOR = 1e-10
TRACE_TOL = 1e-11


class DensityMatrix:
    """A strictly positive, unit-trace Hermitian matrix.

    Construction validates the matrix and caches its spectral decomposition.
    Instances are treated as immutable.

    Raises
    ------
    ValueError
        If the matrix is not Hermitian, its trace differs from one by more
        than ``1e-11``, or its smallest eigenvalue is below ``1e-10``.
    """

    __slots__ = ("_matrix", "_spectral")

    def __init__(self, matrix, _spectral=None):
        M = as_hermitian(matrix, "density matrix")
        tr = np.trace(M).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, not 1")
        S = spectral(M) if _spectral is None else _spectral
        if S.eigenvalues[0] < FAITHFUL_FLOOR:
            raise ValueError("density matrix not strictly positive")
        M.setflags(write=False)
        self._matrix = M
        self._spectral = S

    @classmethod
    def from_spectrum(cls, eigenvalues, eigenvectors):
        """Build ``U diag(p) U†`` and keep ``(p, U)`` as the cached decomposition.

        Keeping the supplied eigenvectors avoids re-diagonalising, which
        matters when several eigenvalues are tiny and nearly equal in
        absolute terms.
        """
        U = np.asarray(eigenvectors, dtype=complex)
        p = np.asarray(eigenvalues, dtype=float)
        n = p.shape[0]
        if U.shape != (n, n) or not np.allclose(U.conj().T @ U, np.eye(n), atol=1e-10):
            raise ValueError("eigenvectors must form a unitary matrix")
        order = np.argsort(p, kind="stable")
        p, U = p[order], U[:, order]
        return cls(hermitize((U * p) @ U.conj().T), SpectralDecomposition(p, U))

    @property
    def matrix(self):
        return self._matrix

    @property
    def spectral(self) -> SpectralDecomposition:
        return self._spectral

    @property
    def dim(self):
        return self._matrix.shape[0]

    def log(self):
        return apply_function(self._spectral, np.log)

    def power(self, s):
        return apply_function(self._spectral, lambda w: w ** s)

    def __array__(self, dtype=None, copy=None):
        return np.array(self._matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, eigenvalues={np.round(self._spectral.eigenvalues, 6)})"


def as_density(rho):
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def thermal_state(H, beta):
    """Gibbs state ``exp(-βH) / Tr exp(-βH)``.

    The exponent is shifted by its largest eigenvalue before exponentiation
    so that large ``β‖H‖`` does not overflow.
    """
    S = spectral(H)
    exponent = -beta * S.eigenvalues
    p = np.exp(exponent - logsumexp(exponent))
    return DensityMatrix.from_spectrum(p, S.eigenvectors)


def partition_function(H, beta):
    S = spectral(H)
    return float(np.exp(logsumexp(-beta * S.eigenvalues)))


def expectation(rho, A):
    """``Tr ρA``; real part only when `A` is Hermitian."""
    rho = as_density(rho)
    A = np.asarray(A, dtype=complex)
    value = np.trace(rho.matrix @ A)
    if np.allclose(A, A.conj().T, rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(A)))):
        return float(value.real)
    return complex(value)


def umegaki_divergence(sigma, tau):
    """Quantum relative entropy ``D(σ‖τ) = Tr σ(log σ − log τ)``."""
    sigma, tau = as_density(sigma), as_density(tau)
    if sigma is tau:
        return 0.0
    diff = sigma.log() - tau.log()
    return float(np.trace(sigma.matrix @ diff).real)


def random_faithful(dim, seed, min_eig=0.01):
    """Reproducible random faithful state with smallest eigenvalue ``>= min_eig``.

    Eigenvalues are a flat Dirichlet draw ``d`` mixed with the maximally
    mixed state as ``(1 - N·min_eig)·d + min_eig``; eigenvectors come from a
    Haar-random unitary.
    """
    if not 0 < min_eig < 1.0 / dim:
        raise ValueError(f"min_eig must lie in (0, 1/{dim}), got {min_eig}")
    rng = make_rng(seed, "random_faithful", dim)
    d = rng.dirichlet(np.ones(dim))
    p = (1.0 - dim * min_eig) * d + min_eig
    U = random_unitary(rng, dim)
    return DensityMatrix.from_spectrum(p / p.sum(), U)
