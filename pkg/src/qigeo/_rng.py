"""Seeded random streams.

Every random draw in the package comes from a Philox (counter-based) bit
generator keyed by a 64-bit master seed plus a tuple of integer stream labels,
mixed through :class:`numpy.random.SeedSequence`. The same ``(seed, labels)``
always gives the same stream, independently of draw order elsewhere.
"""
import zlib

import numpy as np


def _label_to_int(label):
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFFFFFFFFFF
    return zlib.crc32(str(label).encode())


def make_rng(seed, *labels):
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [_label_to_int(l) for l in labels]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def random_hermitian(rng, n, scale=1.0):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (G + G.conj().T) / 2


def random_unitary(rng, n):
    """Haar-distributed unitary via QR with phase correction."""
    Z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))
