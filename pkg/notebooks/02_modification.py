# %% [markdown]
# # Modifying a Vaisman algebra
#
# Start from R x heisenberg with `Omega = x^y + z^w`. The rotation of the
# `X, Y` plane is a skew, J-linear derivation; letting the `W` direction act
# by it changes the bracket while keeping metric and complex structure.

# %%
from vaisman import linalg as la
from vaisman.catalog import kodaira_primary, kodaira_secondary
from vaisman.constructions import ModificationMap, centralize, modify, validate_modification
from vaisman.structures import check_lck

primary = kodaira_primary()
ad_w = la.transpose(((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
m = ModificationMap.from_functionals([ad_w], [(0, 0, 0, 1)])
print(validate_modification(primary, m).to_text())

# %%
secondary = modify(primary, m)
print(secondary.algebra.describe())
print("matches the catalog entry:", secondary.algebra == kodaira_secondary().algebra)
print("still Vaisman:", check_lck(secondary).vaisman)

# %% [markdown]
# Undoing the map returns the original bracket, and `centralize` finds the
# same inverse step on its own.

# %%
print(modify(secondary, -m).algebra == primary.algebra)
cs = centralize(secondary)
print(cs.algebra == primary.algebra, cs.steps)
