"""Exponential and mixture geodesics between two states.

Run with ``python3 demos/03_geodesics.py``.
"""
# %%
import numpy as np

from qigeo import random_faithful, umegaki_divergence
from qigeo.geometry import (
    ExponentialArc,
    affine_coordinate_check,
    exp_geodesic,
    geodesic_tangent_check,
    mixture_geodesic,
    zeta_derivatives,
)

# %% [markdown]
# Along the exponential arc, log rho_t is affine in t up to the normaliser
# zeta(t). zeta vanishes at both ends, is convex, and stays below zero.

# %%
rho0, rho1 = random_faithful(3, seed=21), random_faithful(3, seed=22)
arc = ExponentialArc(rho0, rho1)
print("   t      zeta      zeta'     zeta''")
for t in np.linspace(0, 1, 11):
    z = arc.zeta(t)
    zd, zdd = zeta_derivatives(arc, t)
    print(f"{t:4.1f}  {z: .6f}  {zd: .6f}  {zdd: .6f}")

# %% [markdown]
# The end slopes are relative entropies.

# %%
print("zeta'(0) =", zeta_derivatives(arc, 0.0)[0], " -D(rho0||rho1) =", -umegaki_divergence(rho0, rho1))
print("zeta'(1) =", zeta_derivatives(arc, 1.0)[0], "  D(rho1||rho0) =", umegaki_divergence(rho1, rho0))

# %% [markdown]
# In the chi chart centred anywhere the exponential arc is a straight line,
# and its velocity is the functional of chi_t(rho1) - chi_t(rho0).

# %%
center = random_faithful(3, seed=23)
print("affine residual :", max(affine_coordinate_check(center, arc, t) for t in np.linspace(0.1, 0.9, 9)))
print("tangent residual:", geodesic_tangent_check(arc, 0.4))

# %% [markdown]
# The mixture path is a different curve with the same ends.

# %%
mid_exp = exp_geodesic(arc, 0.5)[0]
mid_mix = mixture_geodesic(rho0, rho1, 0.5)
print("D(mixture midpoint || exponential midpoint) =", umegaki_divergence(mid_mix, mid_exp))
