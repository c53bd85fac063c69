"""Rational cones, toric monoids and the local models at the log singular locus.

Everything here is desk scale (ambient rank <= 4).  Dual cones are found by
enumerating candidate extreme rays from subsets of tight inequalities;
monoids are handled by bounded lattice-point enumeration with an explicit
:class:`BoundInsufficient` error when the box is demonstrably too small.

Local model conventions: ``M = M' + Z^(q+1)`` with coordinates
``(m, a_0, ..., a_q)`` and ``N = N' + Z^(q+1)`` likewise.  For Newton
polytopes ``Delta_i`` in ``N'``::

    psi_i(m) = -min{<n, m> : n in Delta_i}
    P        = {(m, a) : a_i >= psi_i(m) for all i}
    K        = cone over the union of Delta_i x {e_i^*}

and ``P = K^dual ∩ M``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact_linalg import (
    IntVector,
    dot,
    gcd_of_maximal_minors,
    integer_nullspace,
    primitive,
    rank,
)

MAX_RANK = 4


class ToricError(ValueError):
    pass


class RankTooLarge(ToricError):
    pass


class BoundInsufficient(ToricError):
    pass


class NotStrictlyConvex(ToricError):
    pass


class InvalidSpec(ToricError):
    pass


class NotAFace(ToricError):
    pass


@dataclass(frozen=True)
class RationalCone:
    """Cone generated by integer vectors; generators are stored primitive."""

    rank: int
    generators: tuple[IntVector, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.rank:
                raise ToricError(f"generator {g} does not live in rank {self.rank}")
            if not any(g):
                raise ToricError("cone generators must be non-zero")
            p = primitive(g)
            if p not in gens:
                gens.append(p)
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def dim(self) -> int:
        return rank(self.generators, self.rank) if self.generators else 0

    def is_full_dimensional(self) -> bool:
        return self.dim == self.rank

    def lineality_basis(self) -> list[IntVector]:
        """Basis of the largest linear subspace contained in the cone."""
        dual = dual_cone(self)
        return integer_nullspace(dual.generators, self.rank) if dual.generators else [
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)
        ]

    def is_strictly_convex(self) -> bool:
        return not self.lineality_basis()

    def inequalities(self) -> tuple[IntVector, ...]:
        """Inward normals ``u`` with ``cone = {x : <u, x> >= 0 for all u}``."""
        return _inequalities(self)

    def contains(self, p: Sequence[int]) -> bool:
        return all(dot(u, p) >= 0 for u in self.inequalities())

    def extreme_rays(self) -> tuple[IntVector, ...]:
        """Generators that are not non-negative combinations of the others."""
        return tuple(dual_cone(dual_cone(self)).generators) if self.is_strictly_convex() else self.generators


_INEQ_CACHE: dict = {}


def _inequalities(cone: RationalCone) -> tuple[IntVector, ...]:
    key = (cone.rank, cone.generators)
    if key not in _INEQ_CACHE:
        _INEQ_CACHE[key] = dual_cone(cone).generators
    return _INEQ_CACHE[key]


def dual_cone(cone: RationalCone) -> RationalCone:
    """``{x : <x, k> >= 0 for every generator k}``.

    The dual splits as its lineality space (the orthogonal complement of
    the cone's span, returned as +- pairs) plus a pointed part.  Extreme
    rays of the pointed part are the one-dimensional solution spaces of
    ``rank - 1`` independent equations drawn from tight generators and the
    lineality basis.
    """
    d = cone.rank
    if d > MAX_RANK:
        raise RankTooLarge(f"dual cones are computed up to rank {MAX_RANK}, not {d}")
    gens = list(cone.generators)
    lineality = integer_nullspace(gens, d) if gens else [
        tuple(int(i == j) for j in range(d)) for i in range(d)
    ]
    rays: list[IntVector] = []
    k = rank(gens, d) if gens else 0
    if k > 0:
        for subset in itertools.combinations(gens, k - 1):
            eqs = list(subset) + lineality
            if rank(eqs, d) != d - 1:
                continue
            (x,) = integer_nullspace(eqs, d)
            for cand in (x, tuple(-c for c in x)):
                vals = [dot(cand, g) for g in gens]
                if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                    if cand not in rays:
                        rays.append(cand)
    out = sorted(rays, reverse=True)
    for l in lineality:
        out += [l, tuple(-c for c in l)]
    return RationalCone(d, tuple(out))


# --- monoids -----------------------------------------------------------------


@dataclass(frozen=True)
class ToricMonoid:
    """Finitely generated monoid given by its minimal generators."""

    rank: int
    generators: tuple[IntVector, ...]
    cone: RationalCone | None = None

    def group_rank(self) -> int:
        return rank(self.generators, self.rank) if self.generators else 0

    def relations(self) -> list[IntVector]:
        """Basis of the integer relations among the generators."""
        if not self.generators:
            return []
        cols = list(zip(*self.generators))
        return integer_nullspace(cols, len(self.generators))

    def contains(self, p: Sequence[int]) -> bool:
        """Membership through the saturation cone (exact for saturated monoids)."""
        if self.cone is None:
            cone = RationalCone(self.rank, self.generators)
        else:
            cone = self.cone
        return all(dot(u, p) >= 0 for u in cone.inequalities())


def box_points(rank_: int, bound: int) -> Iterable[IntVector]:
    return itertools.product(range(-bound, bound + 1), repeat=rank_)


def _in_box(p: Sequence[int], bound: int) -> bool:
    return all(-bound <= x <= bound for x in p)


def _grading(cone: RationalCone) -> IntVector:
    """A functional strictly positive on ``cone`` minus the origin."""
    ineq = cone.inequalities()
    return tuple(sum(col) for col in zip(*ineq)) if ineq else (0,) * cone.rank


def sufficient_bound(cone: RationalCone) -> int:
    """Box half-width that contains every Hilbert basis element.

    Every Hilbert basis element lies in the half-open parallelepiped spanned
    by the extreme rays of some simplicial subcone, so the coordinatewise
    sum of absolute ray entries is enough.
    """
    rays = cone.extreme_rays()
    if not rays:
        return 1
    return max(1, max(sum(abs(r[c]) for r in rays) for c in range(cone.rank)))


def _hilbert_basis(
    points: Sequence[IntVector],
    member: Callable[[Sequence[int]], bool],
    degree: Callable[[Sequence[int]], int],
    bound: int,
) -> list[IntVector]:
    nonzero = sorted((p for p in points if any(p)), key=lambda p: (degree(p), p))
    basis: list[IntVector] = []
    for p in nonzero:
        if not any(member(tuple(a - b for a, b in zip(p, g))) for g in basis):
            basis.append(p)
    # every enumerated point must be generated without leaving the box
    generated = {tuple(0 for _ in points[0])} if points else set()
    for p in nonzero:
        if any(tuple(a - b for a, b in zip(p, g)) in generated for g in basis):
            generated.add(p)
        elif p in basis:
            generated.add(p)
        else:
            raise BoundInsufficient(
                f"point {p} is only generated through points outside the box of half-width {bound}"
            )
    return basis


def monoid_generators(cone: RationalCone, bound: int | None = None) -> ToricMonoid:
    """Minimal generators of ``cone ∩ Z^rank`` by enumeration in a box."""
    if cone.rank > MAX_RANK:
        raise RankTooLarge(f"rank {cone.rank} exceeds {MAX_RANK}")
    if not cone.is_strictly_convex():
        raise NotStrictlyConvex("cone contains a line")
    if bound is None:
        bound = sufficient_bound(cone)
    for r in cone.extreme_rays():
        if not _in_box(r, bound):
            raise BoundInsufficient(f"extreme ray {r} lies outside the box of half-width {bound}")
    h = _grading(cone)
    pts = [p for p in box_points(cone.rank, bound) if cone.contains(p)]
    gens = _hilbert_basis(pts, cone.contains, lambda p: dot(h, p), bound)
    return ToricMonoid(cone.rank, tuple(gens), cone)


def is_minimal(monoid: ToricMonoid, bound: int | None = None) -> bool:
    """No generator is a non-negative integer combination of the others."""
    gens = monoid.generators
    for i, g in enumerate(gens):
        others = gens[:i] + gens[i + 1 :]
        if _generated_by(g, others, bound or max(1, max(abs(x) for x in g))):
            return False
    return True


def _generated_by(target: Sequence[int], gens: Sequence[IntVector], bound: int) -> bool:
    """Bounded search: is ``target`` a non-negative combination of ``gens``?"""
    target = tuple(target)
    if not any(target):
        return True
    if not gens:
        return False
    cone = RationalCone(len(target), tuple(gens))
    h = _grading(cone)
    if dot(h, target) <= 0 and cone.is_strictly_convex():
        return False
    seen = {tuple(0 for _ in target)}
    frontier = list(seen)
    limit = dot(h, target) if cone.is_strictly_convex() else None
    span = 3 * bound
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if q == target:
                    return True
                if q in seen or not _in_box(q, span):
                    continue
                if limit is not None and dot(h, q) > limit:
                    continue
                seen.add(q)
                nxt.append(q)
        frontier = nxt
    return False


# --- local models ------------------------------------------------------------


def _lattice_points_of_hull(vertices: Sequence[IntVector]) -> list[IntVector]:
    """Lattice points of the convex hull of affinely independent vertices."""
    dim = len(vertices[0])
    if dim == 0:
        return [()]
    lo = [min(v[c] for v in vertices) for c in range(dim)]
    hi = [max(v[c] for v in vertices) for c in range(dim)]
    v0 = vertices[0]
    diffs = [tuple(v[c] - v0[c] for c in range(dim)) for v in vertices[1:]]
    out = []
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        coeffs = _solve_rational(diffs, tuple(p[c] - v0[c] for c in range(dim)))
        if coeffs is not None and all(c >= 0 for c in coeffs) and sum(coeffs) <= 1:
            out.append(tuple(p))
    return out


def _solve_rational(cols: Sequence[IntVector], target: IntVector):
    """Unique ``x`` with ``sum x_j cols_j = target`` or None."""
    from .exact_linalg import _rref

    dim = len(target)
    k = len(cols)
    if k == 0:
        return [] if not any(target) else None
    aug = [[Fraction(cols[j][r]) for j in range(k)] + [Fraction(target[r])] for r in range(dim)]
    piv = _rref(aug, k + 1)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv):
        x[c] = aug[i][k]
    return x


def is_elementary_simplex(vertices: Sequence[Sequence[int]]) -> bool:
    """Affinely independent lattice simplex whose only lattice points are vertices."""
    verts = [tuple(int(x) for x in v) for v in vertices]
    if len(set(verts)) != len(verts):
        return False
    if len(verts) == 1:
        return True
    v0 = verts[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
    if rank(diffs) != len(diffs):
        return False
    return sorted(_lattice_points_of_hull(verts)) == sorted(verts)


@dataclass(frozen=True)
class LocalModelSpec:
    """Fan in ``M'`` and Newton polytopes ``Delta_0 .. Delta_q`` in ``N'``.

    ``fan`` lists maximal cones by their ray generators; ``polytopes[i]``
    lists the vertices of ``Delta_i``.
    """

    mprime_rank: int
    fan: tuple[tuple[IntVector, ...], ...]
    polytopes: tuple[tuple[IntVector, ...], ...]

    def __post_init__(self):
        fan = tuple(tuple(tuple(int(x) for x in r) for r in cone) for cone in self.fan)
        polys = tuple(tuple(tuple(int(x) for x in v) for v in poly) for poly in self.polytopes)
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "polytopes", polys)

    @property
    def q(self) -> int:
        return len(self.polytopes) - 1

    @property
    def ambient_rank(self) -> int:
        return self.mprime_rank + len(self.polytopes)

    def psi(self, i: int, m: Sequence[int]) -> int:
        return -min(dot(n, m) for n in self.polytopes[i])

    def validate(self, *, elementary: bool = True) -> None:
        r = self.mprime_rank
        if not self.polytopes:
            raise InvalidSpec("at least Delta_0 is required")
        for i, poly in enumerate(self.polytopes):
            if not poly:
                raise InvalidSpec(f"Delta_{i} has no vertices")
            if any(len(v) != r for v in poly):
                raise InvalidSpec(f"Delta_{i} does not live in rank {r}")
        for cone in self.fan:
            if any(len(v) != r for v in cone):
                raise InvalidSpec("fan ray of the wrong rank")
        if elementary:
            for i, poly in enumerate(self.polytopes[1:], start=1):
                if not is_elementary_simplex(poly):
                    raise InvalidSpec(f"Delta_{i} is neither a point nor an elementary simplex")
        if r > 0:
            self._check_fan()

    def _check_fan(self) -> None:
        """``psi_0`` must be linear on each maximal cone and differ between cones."""
        chosen = []
        for cone in self.fan:
            if not cone:
                raise InvalidSpec("empty maximal cone")
            attains = [
                n
                for n in self.polytopes[0]
                if all(dot(n, ray) == min(dot(x, ray) for x in self.polytopes[0]) for ray in cone)
            ]
            if not attains:
                raise InvalidSpec(f"psi_0 is not linear on the cone {cone}")
            chosen.append(attains[0])
        if len(set(chosen)) != len(chosen):
            raise InvalidSpec("psi_0 is not strictly convex on the fan")
        # a pure full-dimensional fan is complete iff every facet of a
        # maximal cone lies in exactly two maximal cones
        r = self.mprime_rank
        facet_count: dict[frozenset, int] = {}
        for cone in self.fan:
            c = RationalCone(r, cone)
            if c.dim != r:
                raise InvalidSpec(f"maximal cone {cone} is not full-dimensional")
            for u in c.inequalities():
                tight = [g for g in c.generators if dot(u, g) == 0]
                if (rank(tight, r) if tight else 0) == r - 1:
                    key = frozenset(tight)
                    facet_count[key] = facet_count.get(key, 0) + 1
        open_facets = [sorted(f) for f, k in facet_count.items() if k != 2]
        if open_facets:
            raise InvalidSpec(f"fan is not complete: facets {open_facets} are not shared by two cones")

    def in_P(self, p: Sequence[int]) -> bool:
        r = self.mprime_rank
        m, a = p[:r], p[r:]
        return all(a[i] >= self.psi(i, m) for i in range(len(self.polytopes)))

    def cone_generators(self, start: int = 0) -> list[IntVector]:
        """``Delta_i x {e_i^*}`` for ``i >= start`` as vectors in ``N``."""
        k = len(self.polytopes)
        out = []
        for i in range(start, k):
            for v in self.polytopes[i]:
                out.append(tuple(v) + tuple(int(j == i) for j in range(k)))
        return out


@dataclass(frozen=True)
class LocalModel:
    P: ToricMonoid
    K: RationalCone
    consistent: bool
    mismatches: tuple[IntVector, ...] = field(default=())


def build_local_model(spec: LocalModelSpec, bound: int = 4) -> LocalModel:
    """The monoid ``P`` by enumeration, the cone ``K`` and the check ``P = K^dual ∩ M``."""
    spec.validate()
    d = spec.ambient_rank
    if d > MAX_RANK:
        raise RankTooLarge(f"ambient rank {d} exceeds {MAX_RANK}")
    K = RationalCone(d, tuple(spec.cone_generators()))
    Kdual = dual_cone(K)
    pts = [p for p in box_points(d, bound) if spec.in_P(p)]
    mismatches = tuple(
        p for p in box_points(d, bound) if spec.in_P(p) != Kdual.contains(p)
    )
    if not Kdual.is_strictly_convex():
        raise NotStrictlyConvex("the monoid P contains a line")
    for r in Kdual.extreme_rays():
        if not _in_box(r, bound):
            raise BoundInsufficient(f"extreme ray {r} of P lies outside the box of half-width {bound}")
    h = _grading(Kdual)
    gens = _hilbert_basis(pts, spec.in_P, lambda p: dot(h, p), bound)
    P = ToricMonoid(d, tuple(gens), Kdual)
    return LocalModel(P=P, K=K, consistent=not mismatches, mismatches=mismatches)


@dataclass(frozen=True)
class MonodromyCone:
    Kbar: RationalCone
    vertices: tuple[IntVector, ...]
    is_standard: bool


def monodromy_cone(spec: LocalModelSpec) -> MonodromyCone:
    """Cone over ``Delta_1 x e_1^* ∪ ... ∪ Delta_q x e_q^*`` and its standardness.

    The vertex set is a standard simplex exactly when its vectors extend
    to a lattice basis, i.e. the gcd of their maximal minors is 1.
    """
    spec.validate(elementary=False)
    d = spec.ambient_rank
    verts = spec.cone_generators(start=1)
    Kbar = RationalCone(d, tuple(verts)) if verts else RationalCone(d, ())
    if not verts:
        return MonodromyCone(Kbar, (), True)
    standard = rank(verts, d) == len(verts) and gcd_of_maximal_minors(verts) == 1
    return MonodromyCone(Kbar, tuple(verts), standard)


@dataclass(frozen=True)
class GhostRank:
    rank: int
    real_fiber: int


def ghost_rank(P: ToricMonoid, face_generators: Sequence[Sequence[int]], bound: int | None = None) -> GhostRank:
    """Rank of ``(P/F)^gp`` and the ``2^r`` real points over a point with that ghost stalk.

    ``face_generators`` must generate a face ``F`` of ``P``; this is
    checked pointwise in a box against the smallest face of the cone of
    ``P`` containing them.
    """
    face = [tuple(int(x) for x in f) for f in face_generators]
    d = P.rank
    if bound is None:
        bound = max([2] + [abs(x) for g in P.generators for x in g]) * 2
    cone = P.cone or RationalCone(d, P.generators)
    for f in face:
        if len(f) != d or not cone.contains(f):
            raise NotAFace(f"{f} is not an element of P")
    tight = [u for u in cone.inequalities() if all(dot(u, f) == 0 for f in face)]
    in_P = [p for p in box_points(d, bound) if cone.contains(p)]
    on_face = {p for p in in_P if all(dot(u, p) == 0 for u in tight)}
    generated = {p for p in on_face if _generated_by(p, face, bound)}
    if generated != on_face:
        missing = sorted(on_face - generated)[:3]
        raise NotAFace(f"not a face: points {missing} of the smallest face are not generated")
    r = P.group_rank() - (rank(face, d) if face else 0)
    return GhostRank(rank=r, real_fiber=2**r)


def focus_focus_spec(segment_length: int = 1) -> LocalModelSpec:
    """``xy = t(w + 1)``: ``M' = Z``, fan ``{R<=0, 0, R>=0}``, ``Delta_0 = Delta_1 = [0, l]``."""
    seg = ((0,), (segment_length,))
    return LocalModelSpec(1, (((1,),), ((-1,),)), (((0,), (1,)), seg))
