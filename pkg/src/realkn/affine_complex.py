"""Polyhedral complexes with kinks, vertex fans and focus-focus markers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .exact_linalg import IntVector, dot, is_primitive
from .monodromy import AffineMonodromyRep, Presentation, focus_focus_shear


class ComplexError(ValueError):
    pass


class UnsupportedDimension(ComplexError):
    pass


@dataclass(frozen=True)
class PolyhedralComplex:
    """Cells by dimension plus a fan chart at every vertex.

    ``cells[k]`` maps the id of each k-cell to the ids of its (k-1)-faces
    (vertices map to ``()``).  ``vertex_fans[v]`` maps each edge at ``v``
    to the primitive generator of the ray the edge spans in the chart at
    ``v``.  ``identifications`` records cell ids glued together when the
    complex is built from separate polytopes; it is informational only.
    """

    dimension: int
    cells: Mapping[int, Mapping[str, tuple[str, ...]]]
    vertex_fans: Mapping[str, Mapping[str, IntVector]]
    identifications: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        cells = {int(k): {c: tuple(f) for c, f in v.items()} for k, v in self.cells.items()}
        fans = {
            v: {e: tuple(int(x) for x in r) for e, r in fan.items()}
            for v, fan in self.vertex_fans.items()
        }
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "vertex_fans", fans)
        object.__setattr__(self, "identifications", tuple(tuple(p) for p in self.identifications))
        for k, cs in cells.items():
            lower = cells.get(k - 1, {})
            for c, faces in cs.items():
                for f in faces:
                    if f not in lower:
                        raise ComplexError(f"cell {c!r} has unknown face {f!r}")
        for v, fan in fans.items():
            if v not in self.vertices:
                raise ComplexError(f"fan given at unknown vertex {v!r}")
            for e, r in fan.items():
                if len(r) != self.dimension:
                    raise ComplexError(f"ray for edge {e!r} at {v!r} has wrong length")
                if not is_primitive(r):
                    raise ComplexError(f"ray {r} for edge {e!r} at {v!r} is not primitive")
                if v not in self.cells.get(1, {}).get(e, ()):
                    raise ComplexError(f"edge {e!r} does not contain vertex {v!r}")
        if self.dimension >= 1:
            top = cells.get(self.dimension, {})
            for rho in cells.get(self.dimension - 1, {}):
                cofaces = sum(1 for faces in top.values() if rho in faces)
                if cofaces > 2:
                    raise ComplexError(f"codimension-one cell {rho!r} has {cofaces} maximal cofaces")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.cells.get(0, {}))

    @property
    def edges(self) -> dict[str, tuple[str, ...]]:
        return dict(self.cells.get(1, {}))

    def cell_counts(self) -> list[int]:
        return [len(self.cells.get(k, {})) for k in range(self.dimension + 1)]

    def codim_one_cells(self) -> tuple[str, ...]:
        return tuple(self.cells.get(self.dimension - 1, {}))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.cell_counts()))


@dataclass(frozen=True)
class MPLFunction:
    """Kink ``kappa`` on every codimension-one cell."""

    kinks: Mapping[str, int]

    def __post_init__(self):
        kinks = {rho: int(k) for rho, k in self.kinks.items()}
        for rho, k in kinks.items():
            if k < 0:
                raise ComplexError(f"negative kink {k} on {rho!r}")
        object.__setattr__(self, "kinks", kinks)

    def require_positive(self):
        zero = [rho for rho, k in self.kinks.items() if k == 0]
        if zero:
            raise ComplexError(f"kinks must be positive for a log structure; zero on {zero}")


@dataclass(frozen=True)
class SingularPoint:
    """A focus-focus point on an edge.

    ``direction`` is the invariant direction and ``conormal`` fixes the loop
    orientation, both in the chart where the loop ``loop`` is computed.
    ``slab_sign_change`` records whether the slab function changes sign when
    the real edge crosses this point.
    """

    edge: str
    ordinal: int
    direction: IntVector
    conormal: IntVector
    slab_sign_change: bool = True
    loop: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(int(x) for x in self.direction))
        object.__setattr__(self, "conormal", tuple(int(x) for x in self.conormal))
        if not (is_primitive(self.direction) and is_primitive(self.conormal)):
            raise ComplexError(f"singular point on {self.edge!r}: vectors must be primitive")
        if dot(self.direction, self.conormal) != 0:
            raise ComplexError(f"singular point on {self.edge!r}: conormal not orthogonal to direction")

    def monodromy(self):
        return focus_focus_shear(self.direction, self.conormal)


@dataclass(frozen=True)
class BalancingViolation:
    vertex: str
    defect: IntVector


def validate_balancing(complex_: PolyhedralComplex, mpl: MPLFunction) -> list[BalancingViolation]:
    """Vertices where ``sum kappa_e * ray_e`` is non-zero.

    A vanishing sum is the condition for the kinks around a vertex of a
    surface to come from one piecewise linear function on the vertex fan.
    """
    if complex_.dimension != 2:
        raise UnsupportedDimension(f"balancing is implemented for surfaces only, not dimension {complex_.dimension}")
    out = []
    for v in complex_.vertices:
        fan = complex_.vertex_fans.get(v, {})
        total = [0] * complex_.dimension
        for e, ray in fan.items():
            if e not in mpl.kinks:
                raise ComplexError(f"no kink given on edge {e!r}")
            total = [t + mpl.kinks[e] * r for t, r in zip(total, ray)]
        if any(total):
            out.append(BalancingViolation(v, tuple(total)))
    return out


@dataclass(frozen=True)
class QuarticK3:
    complex: PolyhedralComplex
    mpl: MPLFunction
    singular_points: tuple[SingularPoint, ...]
    rep: AffineMonodromyRep
    branch_points: tuple[str, ...]
    chart_vertex: str
    named_loops: Mapping[str, str] = field(default_factory=dict)


# Vertex v0 sits at the origin of the chart; v1, v2, v3 sit at e1, e2, -e1-e2.
_TETRA_EDGES = {
    "e01": ("v0", "v1"),
    "e02": ("v0", "v2"),
    "e03": ("v0", "v3"),
    "e12": ("v1", "v2"),
    "e13": ("v1", "v3"),
    "e23": ("v2", "v3"),
}
_TETRA_FACES = {
    "f123": ("e12", "e13", "e23"),
    "f023": ("e02", "e03", "e23"),
    "f013": ("e01", "e03", "e13"),
    "f012": ("e01", "e02", "e12"),
}
_P2_RAYS = ((1, 0), (0, 1), (-1, -1))

# Edge direction in the chart at v0.  For edges through v0 the loop around a
# point stays in the star of v0; for the three outer edges the loop runs
# through the adjacent triangle of the star.
_CHART_DIRECTIONS = {
    "e01": (1, 0),
    "e02": (0, 1),
    "e03": (1, 1),
    "e12": (1, -1),
    "e13": (2, 1),
    "e23": (1, 2),
}


def _clockwise(d):
    return (d[1], -d[0])


def tetrahedron_complex() -> PolyhedralComplex:
    """Boundary of a tetrahedron with the fan of P^2 at every vertex."""
    fans = {}
    for v in ("v0", "v1", "v2", "v3"):
        incident = sorted(e for e, ends in _TETRA_EDGES.items() if v in ends)
        fans[v] = dict(zip(incident, _P2_RAYS))
    # the chart at v0 places v1 at e1 and v2 at e2
    fans["v0"] = {"e01": (1, 0), "e02": (0, 1), "e03": (-1, -1)}
    cells = {
        0: {v: () for v in ("v0", "v1", "v2", "v3")},
        1: dict(_TETRA_EDGES),
        2: dict(_TETRA_FACES),
    }
    return PolyhedralComplex(dimension=2, cells=cells, vertex_fans=fans)


def builtin_quartic_k3() -> QuarticK3:
    """Degeneration of quartic K3 surfaces to four planes.

    Four focus-focus points per edge (24 in all), kink 1 on every edge,
    trivial gluing data and zero translational parts.  Every loop is
    computed in the chart at ``v0``; the first point on each of the three
    edges through ``v0`` carries ``gamma1``, ``gamma2``, ``gamma3`` with the
    matrices ``T1``, ``T2``, ``T3``.  The presentation is partial: only
    loops around single points are recorded, not the relation among them.
    """
    cx = tetrahedron_complex()
    mpl = MPLFunction({e: 1 for e in _TETRA_EDGES})
    first_loop = {"e02": "gamma1", "e03": "gamma2", "e01": "gamma3"}
    outer_loop = {"e12": "delta1", "e23": "delta2", "e13": "delta3"}
    points = []
    named_loops = {}
    for edge in ("e02", "e03", "e01", "e12", "e23", "e13"):
        d = _CHART_DIRECTIONS[edge]
        base = first_loop.get(edge) or outer_loop[edge]
        for k in range(1, 5):
            name = base if (k == 1 and edge in first_loop) else f"{base}.{k}"
            points.append(SingularPoint(edge, k, d, _clockwise(d), True, name))
        if edge in first_loop:
            named_loops[base] = edge
    names = tuple(p.loop for p in points)
    linear = {p.loop: p.monodromy() for p in points}
    rep = AffineMonodromyRep(Presentation(2, names, (), partial=True), linear)
    return QuarticK3(cx, mpl, tuple(points), rep, names, "v0", named_loops)
