"""Relative entropy and the exponential chart around a reference state.

Run with ``python3 demos/01_divergence_and_charts.py``.
"""
# %%
import numpy as np

from qigeo import DensityMatrix, GnsSpace, random_faithful, umegaki_divergence
from qigeo import charts

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# Two qubit states that commute: the divergence is the classical KL number.

# %%
rho = DensityMatrix(np.diag([0.5, 0.5]).astype(complex))
sigma = DensityMatrix(np.diag([0.75, 0.25]).astype(complex))
print("D(rho || sigma) =", umegaki_divergence(rho, sigma))
print("D(sigma || rho) =", umegaki_divergence(sigma, rho))

# %% [markdown]
# Put a random qutrit at the centre of a chart. Every other faithful state gets
# a self-adjoint commutant coordinate K with (K Omega, Omega) = 0, and the map
# is invertible.

# %%
center = random_faithful(3, seed=11)
space = GnsSpace(center)
target = random_faithful(3, seed=12)

K = charts.xi_chart(space, target)
print("eigenbasis factor of K:\n", K.B)
print("centring (K Omega, Omega):", abs(K.expectation()))
back = charts.xi_inverse(space, K)
print("round-trip error:", np.abs(back.matrix - target.matrix).max())
print("the centre sits at the origin:", charts.xi_chart(space, center).op_norm())

# %% [markdown]
# The derivative of the inverse chart at the origin sends K to a functional
# f(A) = Tr(T A). Its remainder shrinks linearly with the step.

# %%
K = charts.random_chart_point(space, seed=3)
for k in range(0, 11, 2):
    t = 2.0**-k
    print(f"t = 2^-{k:<2d}  remainder ratio = {charts.frechet_ratio(space, K, t):.3e}")

# %% [markdown]
# Changing the centre is a linear map on the represented-state operators.

# %%
other = GnsSpace(random_faithful(3, seed=13))
via_transition = charts.crossover(space, other, K)
direct = charts.xi_chart(other, charts.xi_inverse(space, K))
print("crossover vs direct composition:", (via_transition - direct).op_norm())
