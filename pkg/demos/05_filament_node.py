# # Kinematics of one filament node
#
# A node moves with the superfluid velocity plus the induced velocity, with
# mutual friction acting on the slip against the normal fluid.

# %%
import numpy as np

from vortexarc import (ArcGeometry, FieldPoint, FilamentNodeState, filament_node_velocity,
                       velocity_elliptic)

arc = ArcGeometry(R=1.0, L=np.pi / 2)
V_I = velocity_elliptic(arc, FieldPoint.from_cartesian((0.0, 0.05, 0.0))).cartesian

# %%
for beta, beta_p in [(0.0, 0.0), (0.1, 0.02), (0.3, 0.1)]:
    state = FilamentNodeState(position=np.zeros(3), unit_tangent=np.array([1.0, 0, 0]),
                              V_S=np.zeros(3), V_N=np.array([0.0, 0.0, 1.0]), V_I=V_I,
                              beta_mf=beta, beta_mf_prime=beta_p)
    print(beta, beta_p, filament_node_velocity(state))

# %% [markdown]
# The same record from the command line:
#
#     vortexarc node-velocity --point 0,0.05,0 --vn 0,0,1 --beta 0.1 --beta-prime 0.02
