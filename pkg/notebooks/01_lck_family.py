# %% [markdown]
# # A three-parameter family on R x sl(2, R)
#
# Basis `T, X, Y, Z` with `T` central and `X, Y, Z` spanning sl(2, R).
# Each rational triple `(a, b, c)` gives a fundamental form and the complex
# structure fixed by the catalog; the metric is then the 4x4 matrix below.

# %%
from fractions import Fraction as F

from vaisman import linalg as la
from vaisman.catalog import omega_psi
from vaisman.structures import check_lck, is_positive_definite

h = omega_psi(F(1), F(0), F(2))
for row in h.metric:
    print(" ".join(f"{la.fmt(x):>4}" for x in row))

# %% [markdown]
# The characteristic polynomial factors as a square; its roots are `c ± sqrt(a² + b²)`,
# so the metric is positive exactly when `c > |(a, b)|`.

# %%
print("charpoly coefficients:", [la.fmt(x) for x in la.charpoly(h.metric)])
for a, b, c in [(3, 4, 5), (3, 4, F(51, 10)), (0, 0, -1)]:
    print((a, b, c), is_positive_definite(omega_psi(F(a), F(b), F(c)).metric))

# %% [markdown]
# Every positive member is locally conformally Kähler with Lee form `t`.
# The Lee field is Killing only when `a = b = 0`; otherwise the report
# names the basis pairs where the Killing equation fails.

# %%
for a, b, c in [(0, 0, 1), (1, 0, 2), (F(1, 2), F(1, 3), 1)]:
    rep = check_lck(omega_psi(F(a), F(b), F(c)))
    print((a, b, c), "lck" if rep.lck else "not lck", "vaisman" if rep.vaisman else "not vaisman",
          "xi =", [la.fmt(x) for x in rep.xi], "g(xi,xi) =", la.fmt(rep.xi_norm))
    if not rep.vaisman:
        print("   witness:", rep["vaisman_killing"].witness)
