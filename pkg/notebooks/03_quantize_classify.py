# %% [markdown]
# # Central extensions and the classifier
#
# Quantizing flat C^k along its Kähler form gives the Heisenberg algebra with
# its Sasaki structure. Adding a line then yields a Vaisman algebra, which the
# classifier sorts into one of three families.

# %%
from fractions import Fraction as F

from vaisman.catalog import catalog_get, complex_kahler, heisenberg_algebra
from vaisman.constructions import canonical_vaisman, classify_vaisman, delta_sum, kahler_quotient, quantize
from vaisman.structures import check_lck, check_sasaki

for k in range(1, 4):
    ext = quantize(complex_kahler(k), "Z")
    print(k, ext.total == heisenberg_algebra(k), check_sasaki(ext.sasaki_data()).passed)

# %% [markdown]
# The quotient by the central Reeb field goes back, and two extensions combine
# into one whose base is the direct sum.

# %%
h1 = quantize(complex_kahler(1), "Z")
print(kahler_quotient(h1.sasaki_data()).omega == complex_kahler(1).omega)
print(delta_sum(h1, h1).total.same_structure(heisenberg_algebra(2)))

# %% [markdown]
# Canonical Vaisman structures on R x (Sasaki algebra) for a few values of `b`,
# then the classifier verdicts.

# %%
for base in ("heisenberg", "su2", "sl2r"):
    s = catalog_get(base).sasaki
    print(base, [check_lck(canonical_vaisman(s, F(b))).vaisman for b in (-1, 0, F(1, 2))])
    print("  ->", classify_vaisman(catalog_get("r_times", base=base).hermitian))
