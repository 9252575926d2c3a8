# # Local approximations against the exact field
#
# The exact binormal speed near a short arc is compared with the classical
# log law and with the asymptotic closed forms. The numbers show how each one
# scales as the field point approaches the filament.

# %%
import math

import numpy as np

from vortexarc import (ArcGeometry, FieldPoint, velocity_elliptic, velocity_glie_asymptotic,
                       velocity_lia, velocity_local)

arc = ArcGeometry(R=1.0, L=0.1)

# %%
print(f"{'eps':>7} {'exact':>12} {'lia':>10} {'local':>12} {'glie':>12}")
for eps in (0.04, 0.02, 0.01, 0.005):
    x = FieldPoint.from_cartesian((0.0, eps, 0.0))
    row = [velocity_elliptic(arc, x), velocity_lia(arc, x), velocity_local(arc, x),
           velocity_glie_asymptotic(arc, x)]
    print(f"{eps:7.3f} " + " ".join(f"{v.binormal:12.4f}" for v in row))

# %% [markdown]
# The exact binormal speed grows like 1/eps (the swirl around the filament),
# while the log law grows by kappa ln 2 per halving. Off the plane of the arc
# the swirl also feeds the tangent-normal components.

# %%
d = np.array([0.3, 0.8, 0.52]) / np.linalg.norm([0.3, 0.8, 0.52])
eps = np.geomspace(0.005, 0.1, 6)
resid = [abs(velocity_elliptic(ArcGeometry(1.0, math.pi / 2), FieldPoint.from_cartesian(e * d)).normal)
         for e in eps]
print("slope of |v_n| vs eps (log-log):", np.polyfit(np.log(eps), np.log(resid), 1)[0])
