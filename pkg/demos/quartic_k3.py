"""
Real locus of the quartic K3 degeneration
=========================================

Four planes degenerate a quartic surface.  The dual picture is the
boundary of a tetrahedron with four focus-focus points on every edge.
This walk-through builds the cover of the real locus over that sphere
and reads off its two components.
"""

from collections import Counter

from realkn import build_action, builtin_quartic_k3, classify, orbits, validate_balancing
from realkn.real_cover import point_vector

q = builtin_quartic_k3()
print("cells (vertices, edges, faces):", q.complex.cell_counts())
print("focus-focus points:", len(q.singular_points))

# every edge carries kink 1 and every vertex looks like the fan of P^2,
# so the kinks balance at each vertex
print("balancing violations:", validate_balancing(q.complex, q.mpl))

# the first point on each edge through v0 has monodromy T1, T2 or T3
for name in ("gamma1", "gamma2", "gamma3"):
    print(name, q.rep.linear[name].tolist())

# on the positive half of the fiber each loop permutes the four sign
# vectors u0..u3; mod 2 every shear is a transposition fixing u0
action = build_action(q.rep, +1)
cycle_types = Counter(tuple(sorted(map(len, action.cycles(g)))) for g in q.rep.generators)
print("cycle types over all 24 points:", dict(cycle_types))
print("orbits:", [[point_vector(k, 2) for k in o] for o in orbits(action)])

# Riemann-Hurwitz on each orbit
report = classify(q.rep, +1, q.branch_points)
for c in report.components:
    print(f"degree {c.degree}: chi = {c.euler_characteristic}, genus = {c.genus}")
