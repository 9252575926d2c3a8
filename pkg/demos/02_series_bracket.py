# # Asymptotic series for F near k = 1
#
# The truncated series comes with a two-sided bound on its remainder. This
# demo prints how the bracket closes around the true value as the order grows.

# %%
import math

from vortexarc import F1, ellint_F, s_n, series_F

# %%
lam, k = 0.3, 0.9
F = ellint_F(math.asin(lam), k)
print(f"F = {F:.16f}")
for N in range(1, 7):
    s = series_F(lam, k, N)
    lo, hi = s.bracket
    print(f"N={N}  value={s.value:.16f}  bracket=[{lo:.16f}, {hi:.16f}]  width={s.width:.2e}  "
          f"contains={s.contains(F, 8 * math.ulp(F))}")

# %% [markdown]
# The coefficient functions s_n(x) for a few orders.

# %%
for x in (0.0, 0.1, 0.5, 1.0):
    print(f"x={x:3.1f}  " + "  ".join(f"{s_n(x, n):+.6e}" for n in range(6)))

# %% [markdown]
# The first-order form is the N = 1 truncation, useful when k is close to one.

# %%
for k in (0.9, 0.99, 0.999):
    print(f"k={k}:  F1={F1(0.2, k):.12f}  F={ellint_F(math.asin(0.2), k):.12f}")
