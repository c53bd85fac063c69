"""
Twisted cocycles by hand
========================

Loops compose with the convention that g1 g2 runs through g2 first, so
translations and sign twists pick up the linear part of the earlier loop.
"""

from realkn import AffineMonodromyRep, Presentation, compose, h1_theta
from realkn.monodromy import T1, T3, free_rep

rep = AffineMonodromyRep(
    Presentation(2, ("g1", "g2"), ()),
    {"g1": T1, "g2": T3},
    {"g1": (1, 0), "g2": (0, 1)},
)
el = compose(rep, ["g1", "g2"])
print("T =", el.T.tolist(), " lambda =", el.lam)   # lambda = (0,1).T1 + (1,0) = (2,1)
print("g1 g1^-1 is trivial:", compose(rep, ["g1", "g1^-1"]).is_identity())

# H^1 of a single loop is the cokernel of T + I acting on (Z/2)^2
for name, m in (("identity", [[1, 0], [0, 1]]), ("T1", T1.tolist())):
    res = h1_theta(free_rep({"g": m}))
    print(f"{name}: dim H^1 = {res.dimension}")
