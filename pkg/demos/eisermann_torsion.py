"""
Two-power torsion on the sphere
===============================

The empty braid and the full twist cannot be told apart by any invariant
with values in a group without 2-torsion, yet the universal invariant sees
them as different: the difference lives in the x-part and has order 2^m.
"""

from spherical_vassiliev import K, K_M, eisermann_pair

# the pair: empty braid vs (s1 s2 ... s_{n-1})^n
pair = eisermann_pair(4)
print("full twist:", pair.second)

for m in (1, 2, 3):
    diff = K(pair.first, 4, m).value - K(pair.second, 4, m).value
    print(f"m={m}: P zero={diff.P.is_zero()}  Q={diff.Q.coords[0]}  order={diff.additive_order()}")

# reducing mod an odd number kills it
diff = K(pair.first, 4, 3).value - K(pair.second, 4, 3).value
print("mod 3:", diff.reduce_mod(3).is_zero())

# in the mapping class group the full twist is trivial
print("K_M agrees:", K_M(pair.first, 4, 3) == K_M(pair.second, 4, 3))
