"""
The local toric model at a focus-focus point
============================================

Near a focus-focus point the degeneration looks like xy = t(w + 1).  The
monoid P of that model lives in M' + Z^2 and is cut out by a_i >= psi_i(m).
"""

import itertools

from realkn import RationalCone, build_local_model, dual_cone, ghost_rank, monodromy_cone
from realkn.toric_monoid import focus_focus_spec

spec = focus_focus_spec()
model = build_local_model(spec, bound=4)
print("generators of P:", model.P.generators)
print("relations:", model.P.relations())
print("P equals the dual of K on the box:", model.consistent)

# the same monoid from the other side: the dual of K
print("K:", model.K.generators)
print("dual of K:", dual_cone(model.K).generators)

# a unit segment gives a standard monodromy cone; a segment of length two does not
for length in (1, 2):
    print(f"segment length {length}: standard = {monodromy_cone(focus_focus_spec(length)).is_standard}")

# real points over a point whose ghost stalk is P/F
for face in ([], [(0, 1, 0)]):
    g = ghost_rank(model.P, face)
    print(f"face {face}: ghost rank {g.rank}, {g.real_fiber} real points")

# the A1 cone from a different angle
a1 = RationalCone(2, ((0, 1), (2, -1)))
pts = [p for p in itertools.product(range(-2, 3), repeat=2) if a1.contains(p)]
print("lattice points of the A1 cone near the origin:", pts)
