"""The real locus as a finite cover: permutation action, components, genus.

Over the complement of the singular locus the real points of the
Kato-Nakayama space form a ``2^(n+1)``-sheeted cover.  The sheets over a
base point are pairs ``(phi, mu)`` with ``phi`` in ``(Z/2)^n`` and
``mu = +-1``; a loop acts by::

    phi -> phi . T + [mu = -1] lam + theta      (mod 2)

and leaves ``mu`` alone, so each value of ``mu`` gives a separate
``2^n``-sheeted cover.

Fiber points are indexed by ``sum(phi[i] << i)``, which for ``n = 2`` gives
``u0, u1, u2, u3 = (0,0), (1,0), (0,1), (1,1)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact_linalg import GF2Vector, gf2_vec_mat
from .monodromy import (
    AffineMonodromyRep,
    RankMismatch,
    UnknownGenerator,
    coboundary,
)


def point_index(phi: Sequence[int]) -> int:
    return sum((int(x) % 2) << i for i, x in enumerate(phi))


def point_vector(index: int, n: int) -> GF2Vector:
    return tuple((index >> i) & 1 for i in range(n))


def fiber_points(n: int) -> list[GF2Vector]:
    return [point_vector(k, n) for k in range(2**n)]


def _check_mu(mu) -> int:
    mu = int(mu)
    if mu not in (1, -1):
        raise ValueError(f"fiber sign must be +1 or -1, got {mu}")
    return mu


@dataclass(frozen=True)
class RealCoverAction:
    rank: int
    mu: int
    permutations: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        size = 2**self.rank
        for g, p in self.permutations.items():
            if sorted(p) != list(range(size)):
                raise ValueError(f"generator {g!r} does not act bijectively on the fiber")

    @property
    def size(self) -> int:
        return 2**self.rank

    def image(self, generator: str, phi: Sequence[int]) -> GF2Vector:
        return point_vector(self.permutations[generator][point_index(phi)], self.rank)

    def cycles(self, generator: str, within: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Cycle decomposition of one generator, optionally on an invariant subset."""
        if generator not in self.permutations:
            raise UnknownGenerator(f"unknown generator {generator!r}")
        perm = self.permutations[generator]
        todo = sorted(range(self.size) if within is None else within)
        seen = set()
        out = []
        for start in todo:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            k = perm[start]
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = perm[k]
            out.append(tuple(cyc))
        return out


def build_action(rep: AffineMonodromyRep, mu: int) -> RealCoverAction:
    """Permutation action of every generator on the ``mu`` half of the fiber."""
    mu = _check_mu(mu)
    n = rep.rank
    perms = {}
    for g in rep.generators:
        t = rep.linear[g]
        if t.shape != (n, n):
            raise RankMismatch(f"generator {g!r} has a {t.shape} matrix in rank {n}")
        shift = [(th + (lam if mu == -1 else 0)) % 2 for th, lam in zip(rep.theta[g], rep.translation[g])]
        images = []
        for phi in fiber_points(n):
            img = [(a + b) % 2 for a, b in zip(gf2_vec_mat(phi, t), shift)]
            images.append(point_index(img))
        perms[g] = tuple(images)
    return RealCoverAction(rank=n, mu=mu, permutations=perms)


def orbits(action: RealCoverAction) -> list[tuple[int, ...]]:
    """Orbits of the generated group, each sorted, ordered by smallest member."""
    parent = list(range(action.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in action.permutations.values():
        for a, b in enumerate(perm):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for k in range(action.size):
        groups.setdefault(find(k), []).append(k)
    return sorted((tuple(v) for v in groups.values()), key=lambda o: o[0])


@dataclass
class Component:
    degree: int
    points: tuple[int, ...]
    branch_cycles: list[tuple[str, tuple[int, ...]]]
    euler_characteristic: int
    genus: int | None

    @property
    def ramification(self) -> int:
        return sum(length - 1 for _, lengths in self.branch_cycles for length in lengths)

    def as_dict(self, rank: int) -> dict:
        return {
            "degree": self.degree,
            "points": [list(point_vector(k, rank)) for k in self.points],
            "branch_points": [
                {"generator": g, "cycle_lengths": list(c)} for g, c in self.branch_cycles
            ],
            "ramified_branch_points": sum(1 for _, c in self.branch_cycles if any(x > 1 for x in c)),
            "euler_characteristic": self.euler_characteristic,
            "genus": self.genus,
        }


@dataclass
class ComponentReport:
    rank: int
    mu: int
    base_euler: int
    components: list[Component]
    orientability_assumed: bool
    notes: list[str] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.components]

    @property
    def genera(self) -> list[int | None]:
        return [c.genus for c in self.components]

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "fiber": "+1" if self.mu == 1 else "-1",
            "base_euler": self.base_euler,
            "component_count": len(self.components),
            "degrees": self.degrees,
            "genera": self.genera,
            "components": [c.as_dict(self.rank) for c in self.components],
            "orientability_assumed": self.orientability_assumed,
            "notes": list(self.notes),
        }


def classify(
    rep: AffineMonodromyRep,
    mu: int,
    branch_points: Sequence[str],
    base_euler: int = 2,
) -> ComponentReport:
    """Components of the ``mu`` cover with Riemann-Hurwitz Euler characteristics.

    Each entry of ``branch_points`` names the generator of a loop that goes
    once around exactly that singular point; its cycle type restricted to a
    component gives the local ramification there.  Genus is only filled in
    for rank 2 over a sphere and assumes the component is orientable.
    """
    action = build_action(rep, mu)
    for g in branch_points:
        if g not in action.permutations:
            raise UnknownGenerator(f"branch point refers to unknown generator {g!r}")
    with_genus = rep.rank == 2 and base_euler == 2
    comps = []
    notes = []
    for orbit in orbits(action):
        cyc = [
            (g, tuple(sorted((len(c) for c in action.cycles(g, orbit)), reverse=True)))
            for g in branch_points
        ]
        ram = sum(length - 1 for _, lengths in cyc for length in lengths)
        chi = len(orbit) * base_euler - ram
        genus = None
        if with_genus:
            if chi % 2 == 0 and chi <= 2:
                genus = (2 - chi) // 2
            else:
                notes.append(f"component at {orbit[0]}: chi={chi} is not that of a closed orientable surface")
        comps.append(Component(len(orbit), orbit, cyc, chi, genus))
    unramified = [g for g in branch_points if all(p == k for k, p in enumerate(action.permutations[g]))]
    if unramified:
        notes.append(f"unramified branch points: {sorted(set(unramified))}")
    return ComponentReport(
        rank=rep.rank,
        mu=mu,
        base_euler=base_euler,
        components=comps,
        orientability_assumed=with_genus,
        notes=notes,
    )


def shift_theta(rep: AffineMonodromyRep, phi: Sequence[int]) -> AffineMonodromyRep:
    """Representation with ``theta_g`` replaced by ``theta_g + phi . T_g + phi``."""
    cob = coboundary(rep, phi)
    return rep.with_theta(
        {g: tuple((a + b) % 2 for a, b in zip(rep.theta[g], cob[g])) for g in rep.generators}
    )


def theta_shift(rep: AffineMonodromyRep, mu: int, phi: Sequence[int]) -> RealCoverAction:
    """Action after changing theta by the coboundary of ``phi``.

    The result is the original action conjugated by translation by ``phi``.
    """
    return build_action(shift_theta(rep, phi), mu)


def fiber_cardinality(rep: AffineMonodromyRep) -> int:
    """Total number of real sheets over a base point, both fiber signs."""
    return sum(build_action(rep, mu).size for mu in (1, -1))


def orbit_sizes(action: RealCoverAction) -> Counter:
    return Counter(len(o) for o in orbits(action))
