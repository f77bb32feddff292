"""A tour of the exact scalar backends.

Covering radii are certified by comparing cos^2 of angles, so every
computation has to stay inside one number field.  This demo walks through
the three backends: rationals, a real quadratic extension, and floats.
"""

from fractions import Fraction

from sphcover import Quadratic, quadratic_field, to_decimal
from sphcover.scalar import format_scalar, parse_scalar

# Rationals are plain fractions.Fraction; nothing exotic.
half = Fraction(2, 4) + Fraction(1, 4)
print("2/4 + 1/4 =", half)  # stored reduced: 3/4

# Quadratic scalars represent a + b*sqrt(d) exactly.
field = quadratic_field(2)
x = Quadratic(1, 1, 2)  # 1 + sqrt(2)
print("(1 + sqrt(2))^-1 =", 1 / x)  # -1 + sqrt(2)
print("(3 - 2 sqrt(2)) (3 + 2 sqrt(2)) =", Quadratic(3, -2, 2) * Quadratic(3, 2, 2))

# Ordering is decided exactly by integer sign tests, never by floats.
# sign(a + b sqrt(d)) for opposite-sign a, b is sign(a) * sign(a^2 - b^2 d).
y = Quadratic(19, -12, 2)  # 19 - 12 sqrt(2): 361 > 288, so positive
print("19 - 12 sqrt(2) > 0 ?", y.sign() == 1)
print("sorted:", sorted([Quadratic(0, 1, 2), Fraction(1), Quadratic(3, -1, 2)]))

# Decimal strings are rendered with correct rounding only at the boundary.
print("2/5 to five digits:", to_decimal(Fraction(2, 5)))
print("sqrt(2) to ten digits:", to_decimal(Quadratic(0, 1, 2), 10))

# Scalars have a literal grammar used by configuration files and reports.
lit = "19/73+12/73*sqrt(2)"
value = parse_scalar(lit, field)
print(f"parsed {lit!r} ->", repr(value))
print("formatted back:", format_scalar(value))
