"""Building origin-symmetric spherical configurations from generator rules.

A configuration is described by a few generator rules; expansion takes all
coordinate permutations and sign patterns.  The built-in library holds one
configuration per dimension 5..15, each with fewer than 2^n points.
"""

from sphcover import (
    SubsetSigns,
    SubsetValues,
    builtin_configuration,
    builtin_dimensions,
    expand,
    make_configuration,
    validate,
)
from sphcover.scalar import RATIONAL

# SubsetSigns(support=m, sign_counts=J, value=v) places +-v on every choice
# of m coordinates, the number of minus signs ranging over J.  J must be
# symmetric under k -> m - k, which is exactly origin-symmetry.
rule = SubsetSigns(1, value=1)
print("unit basis vectors in E^6:", len(expand(rule, 6, RATIONAL)), "vectors")

# SubsetValues(support=m, a, b) places a on m coordinates and b on the rest,
# plus the negated copies.
rule = SubsetValues(2, 2, 0)
print("orbit of (2,2,0,0,0):", len(expand(rule, 5, RATIONAL)), "vectors")

# A full configuration merges rules, deduplicates, and fixes the norm.
config = make_configuration(5, RATIONAL, [SubsetValues(2, 2, 0), SubsetValues(1, 2, -1)])
print("dimension-5 set:", config.cardinality, "points, |v|^2 =", config.norm_sq)
print("validation:", validate(config))

# The built-ins reproduce the published cardinalities, all below 2^n.
print(f"\n{'n':>3} {'|A|':>6} {'2^n':>6}  field")
for n in builtin_dimensions():
    c = builtin_configuration(n)
    print(f"{n:>3} {c.cardinality:>6} {2**n:>6}  {c.field}")
