# # The field of a circular arc
#
# The closed-form evaluator is checked against the two quadrature routes and
# against the exact axis speed of a full ring.

# %%
import math

import numpy as np

from vortexarc import (ArcGeometry, FieldPoint, velocity_components_quadrature,
                       velocity_crossproduct_quadrature, velocity_elliptic)

# %% [markdown]
# On the axis of a full ring the speed is 2 pi R^2 / (R^2 + z^2)^(3/2) along -z.

# %%
ring = ArcGeometry(R=1.0, L=math.pi)
for z in (0.0, 0.5, 1.0, 2.0):
    x = FieldPoint.from_cartesian((0.0, 1.0, z))
    print(f"z={z}: elliptic={velocity_elliptic(ring, x).binormal:+.15f}  "
          f"exact={-2 * math.pi / (1 + z * z) ** 1.5:+.15f}")

# %% [markdown]
# A half ring and a point off every symmetry plane.

# %%
arc = ArcGeometry(R=1.0, L=math.pi / 2)
x = FieldPoint.from_cartesian((0.1, 0.9, 0.05))
for name, v in [("elliptic", velocity_elliptic(arc, x)),
                ("components", velocity_components_quadrature(arc, x, 1e-12)),
                ("cross product", velocity_crossproduct_quadrature(arc, x, 1e-12))]:
    print(f"{name:>13}: {np.array2string(v.cartesian, precision=14)}")

# %% [markdown]
# Physical units: pass the circulation and the 1/(4 pi) factor is restored.

# %%
phys = arc.with_circulation(gamma=9.97e-8)   # one quantum in helium-4, m^2/s
print(velocity_elliptic(phys, x).cartesian)
