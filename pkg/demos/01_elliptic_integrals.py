# # Incomplete elliptic integrals
#
# F(phi, k) and E(phi, k) are evaluated through Carlson's symmetric forms.
# Here we compare them with plain quadrature and look at the behaviour as the
# modulus approaches one.

# %%
import math

import numpy as np
from scipy import integrate

from vortexarc import EllipticArgs, dF_dk, ellint_E, ellint_F, ellint_K

# %% [markdown]
# A quick sanity table against direct quadrature of the integrands.

# %%
for phi, k in [(0.4, 0.2), (1.2, 0.9), (2.8, 0.99)]:
    q = integrate.quad(lambda t: 1 / math.sqrt(1 - (k * math.sin(t)) ** 2), 0, phi, epsrel=1e-13)[0]
    print(f"phi={phi:4.2f} k={k:5.3f}  F={ellint_F(phi, k):.15f}  quad={q:.15f}")

# %% [markdown]
# Beyond a quarter period the reflection F(phi) = 2K - F(pi - phi) takes over.

# %%
k = 0.8
print("2K - F(pi-2.5) =", 2 * ellint_K(k) - ellint_F(math.pi - 2.5, k))
print("F(2.5)         =", ellint_F(2.5, k))

# %% [markdown]
# At k = 1 the first-kind integral collapses to atanh(sin phi) and diverges at
# phi = pi/2. The argument object flags that corner.

# %%
print(ellint_F(math.pi / 4, 1.0), math.atanh(math.sin(math.pi / 4)))
print("divergent corner:", EllipticArgs(math.pi / 2, 1.0).divergent)

# %% [markdown]
# Approaching k -> 1 the values grow logarithmically, and the modulus
# derivative stays well conditioned.

# %%
for kc in np.geomspace(1e-1, 1e-8, 8):
    kk = 1 - kc
    print(f"1-k={kc:.0e}  F(pi/2-1e-3)={ellint_F(math.pi / 2 - 1e-3, kk):.12f}  "
          f"E={ellint_E(math.pi / 2 - 1e-3, kk):.12f}  dF/dk={dF_dk(1.0, kk):.6f}")
