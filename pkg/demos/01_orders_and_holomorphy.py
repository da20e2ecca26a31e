"""Orders at cusps decide holomorphy.

eta(z)^2 / eta(2z) lives on Gamma_0(2).  Its order at each cusp 1/t is a
linear function of the exponents; holomorphy means none of them is negative.
The orders always add up (with multiplicity) to weight * index / 12.
"""

from etaforge import cusp_classes, is_holomorphic, order_map, parse, valence_check

X = parse("1^2 2^-1")
print("quotient:", X, " level", X.level, " weight", X.weight2, "/ 2")
for t, o in order_map(X, 2).items():
    print(f"  order at 1/{t}: {o}")
print("holomorphic:", is_holomorphic(X))
print("valence identity:", valence_check(X, 2))

# The same exponent vector read on a larger group has more cusps.
print("\ncusps of Gamma_0(36):", ", ".join(str(c) for c in cusp_classes(36)))
print("orders of the same quotient on Gamma_0(36):")
print({t: str(o) for t, o in order_map(X, 36).items()})

# Flip the exponents of the level-2 member and the pole at infinity appears.
Y = parse("1^-2 2^1")
print("\n", Y, "holomorphic:", is_holomorphic(Y), order_map(Y, 2))
