"""Modular operator, KMS boundary condition and thermal time evolution.

Run with ``python3 demos/04_modular_theory.py``.
"""
# %%
import numpy as np
from scipy.linalg import expm

from qigeo import GnsSpace, omega_vector, pi_apply, random_faithful, thermal_state
from qigeo import modular

rng = np.random.default_rng(5)


def rand_herm(n):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (G + G.conj().T) / 2


# %% [markdown]
# The cyclic vector is fixed by Delta, and S = J Delta^{1/2} maps
# pi(A) Omega to pi(A*) Omega.

# %%
space = GnsSpace(random_faithful(3, seed=31))
omega = omega_vector(space)
Delta = modular.modular_operator(space)
print("|Delta Omega - Omega| =", (Delta.apply(omega) - omega).norm())
A = rand_herm(3) + 1j * rand_herm(3)
v = pi_apply(space, A, omega)
print("|S pi(A)Omega - pi(A*)Omega| =", (modular.tomita_apply(space, v) - pi_apply(space, A.conj().T, omega)).norm())

# %% [markdown]
# KMS: the boundary value F(t + i) swaps the operator order.

# %%
B = rand_herm(3)
for t in (-1.0, 0.0, 0.7):
    lhs = modular.kms_function(space, A, B, t + 1j)
    rhs = modular.kms_rhs(space, A, B, t)
    print(f"t = {t:+.1f}: F(t+i) = {lhs:.6f}, swapped = {rhs:.6f}")

# %% [markdown]
# For a Gibbs state the modular flow is Heisenberg evolution with beta H,
# run backwards in modular time.

# %%
H, beta, t = rand_herm(3), 0.8, 1.3
thermal = GnsSpace(thermal_state(H, beta))
heis = expm(1j * t * beta * H) @ B @ expm(-1j * t * beta * H)
print("max |flow - Heisenberg| =", np.abs(modular.modular_flow(thermal, B, -t) - heis).max())
