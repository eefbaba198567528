"""
Ranks of graded pieces
======================

Degreewise free rank and torsion of the quotient algebras.
"""

from spherical_vassiliev.ncalg import graded_ranks, relator_set

# free algebra on two generators
pm3 = relator_set("pm_reduced", 3)
print("pm_reduced(3):", [graded_ranks(pm3, d) for d in range(5)])

# the sphere version picks up a Z/2 in degree 1
for N in (3, 4, 5):
    print(f"sphere_reduced({N}) d=1:", graded_ranks(relator_set("sphere_reduced", N), 1))

# Ihara relations on n strands give the same degree-1 piece on n-1
for n in (4, 5, 6):
    a = graded_ranks(relator_set("ihara", n), 1)
    b = graded_ranks(relator_set("sphere_reduced", n - 1), 1)
    print(f"ihara({n}) vs sphere_reduced({n - 1}):", a, b)
