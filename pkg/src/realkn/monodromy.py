"""Affine monodromy representations and their Z/2 group cohomology.

A representation assigns to every generator ``g`` of a finitely presented
group a triple ``(T, lam, theta)``:

* ``T``     unimodular integer matrix acting on tangent vectors,
* ``lam``   integer row covector (translational part),
* ``theta`` row covector mod 2 (sign twist of the real gluing data).

Loop composition follows the convention that ``g1 g2`` runs through ``g2``
first, so for the product word ``[g1, g2]``::

    T     = T2 . T1
    lam   = lam2 . T1 + lam1
    theta = theta2 . T1 + theta1      (mod 2)

``theta`` is twisted exactly like ``lam``; both are twisted homomorphisms
into the same dual module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .exact_linalg import (
    GF2Vector,
    IntMatrix,
    IntVector,
    dot,
    gf2_nullspace,
    gf2_rank,
    gf2_vec_mat,
    is_primitive,
    mat_mul,
    unimodular_inverse,
    vec_add,
    vec_mat,
    vec_neg,
)

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class MonodromyError(ValueError):
    pass


class UnknownGenerator(MonodromyError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class PartialPresentation(MonodromyError):
    pass


class NotPrimitive(MonodromyError):
    pass


class NotOrthogonal(MonodromyError):
    pass


class RankMismatch(MonodromyError):
    pass


_LETTER_RE = re.compile(r"^\s*([^\s^]+)\s*(?:\^\s*(-?1))?\s*$")


def parse_letter(token: str) -> Letter:
    """``"g"`` -> ``("g", 1)``, ``"g^-1"`` -> ``("g", -1)``."""
    m = _LETTER_RE.match(token)
    if not m:
        raise MonodromyError(f"cannot parse word letter {token!r}")
    return m.group(1), int(m.group(2) or 1)


def format_letter(letter: Letter) -> str:
    name, e = letter
    return name if e == 1 else f"{name}^-1"


def as_word(word: Iterable) -> Word:
    """Accept letters as strings, bare names or ``(name, +-1)`` pairs."""
    out = []
    for item in word:
        if isinstance(item, str):
            out.append(parse_letter(item))
        else:
            name, e = item
            if e not in (1, -1):
                raise MonodromyError(f"exponent {e} is not +-1")
            out.append((name, int(e)))
    return tuple(out)


def invert_word(word: Iterable) -> Word:
    return tuple((name, -e) for name, e in reversed(as_word(word)))


@dataclass(frozen=True)
class Presentation:
    rank: int
    generators: tuple[str, ...]
    relations: tuple[Word, ...] = ()
    partial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(as_word(r) for r in self.relations))
        if len(set(self.generators)) != len(self.generators):
            raise MonodromyError("duplicate generator names")
        known = set(self.generators)
        for rel in self.relations:
            for name, _ in rel:
                if name not in known:
                    raise UnknownGenerator(f"relation uses undeclared generator {name!r}")


def sphere_presentation(branch_count: int, rank: int, prefix: str = "gamma") -> Presentation:
    """Fundamental group of the sphere minus ``branch_count`` points.

    Generators ``gamma1 .. gammaN`` with the single relation that their
    product (in listed order) is trivial.
    """
    names = tuple(f"{prefix}{i}" for i in range(1, branch_count + 1))
    relations = ((tuple((g, 1) for g in names)),) if branch_count else ()
    return Presentation(rank=rank, generators=names, relations=relations)


class AffineElement(NamedTuple):
    T: IntMatrix
    lam: IntVector
    theta: GF2Vector

    @classmethod
    def identity(cls, n: int) -> "AffineElement":
        return cls(IntMatrix.identity(n), (0,) * n, (0,) * n)

    def then(self, other: "AffineElement") -> "AffineElement":
        """The loop ``self . other`` (``other`` is traversed first)."""
        return twisted_product(self, other)

    def inverse(self) -> "AffineElement":
        tinv = unimodular_inverse(self.T)
        return AffineElement(
            tinv, vec_neg(vec_mat(self.lam, tinv)), gf2_vec_mat(self.theta, tinv)
        )

    def is_identity(self) -> bool:
        n = self.T.rows
        return self == AffineElement.identity(n)


def twisted_product(first: AffineElement, second: AffineElement) -> AffineElement:
    """Triple of the loop ``first . second`` (``second`` traversed first)."""
    t = mat_mul(second.T, first.T)
    lam = vec_add(vec_mat(second.lam, first.T), first.lam)
    theta = tuple(
        (a + b) % 2 for a, b in zip(gf2_vec_mat(second.theta, first.T), first.theta)
    )
    return AffineElement(t, lam, theta)


@dataclass(frozen=True)
class AffineMonodromyRep:
    presentation: Presentation
    linear: Mapping[str, IntMatrix]
    translation: Mapping[str, IntVector] = field(default_factory=dict)
    theta: Mapping[str, GF2Vector] = field(default_factory=dict)

    def __post_init__(self):
        n = self.presentation.rank
        gens = self.presentation.generators
        linear, lam, theta = {}, {}, {}
        for g in gens:
            if g not in self.linear:
                raise MonodromyError(f"no linear part given for generator {g!r}")
            t = self.linear[g]
            if not isinstance(t, IntMatrix):
                t = IntMatrix.of(t)
            if t.shape != (n, n):
                raise RankMismatch(f"generator {g!r}: matrix {t.shape} in rank {n}")
            linear[g] = t
            lam[g] = tuple(int(x) for x in self.translation.get(g, (0,) * n))
            theta[g] = tuple(int(x) % 2 for x in self.theta.get(g, (0,) * n))
            if len(lam[g]) != n or len(theta[g]) != n:
                raise RankMismatch(f"generator {g!r}: vector length differs from rank {n}")
        extra = (set(self.linear) | set(self.translation) | set(self.theta)) - set(gens)
        if extra:
            raise UnknownGenerator(f"data given for undeclared generators {sorted(extra)}")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", lam)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "_inverses", {})

    @property
    def rank(self) -> int:
        return self.presentation.rank

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    def element(self, name: str) -> AffineElement:
        if name not in self.linear:
            raise UnknownGenerator(f"unknown generator {name!r}")
        return AffineElement(self.linear[name], self.translation[name], self.theta[name])

    def inverse_element(self, name: str) -> AffineElement:
        """Triple of the reversed loop, computed once per generator."""
        cache = self._inverses
        if name not in cache:
            cache[name] = self.element(name).inverse()
        return cache[name]

    def with_theta(self, theta: Mapping[str, Sequence[int]]) -> "AffineMonodromyRep":
        return AffineMonodromyRep(self.presentation, self.linear, self.translation, theta)


def compose(rep: AffineMonodromyRep, word: Iterable) -> AffineElement:
    """Triple attached to a word in the generators and their inverses."""
    acc = AffineElement.identity(rep.rank)
    for name, e in as_word(word):
        g = rep.element(name) if e == 1 else rep.inverse_element(name)
        acc = twisted_product(acc, g)
    return acc


def focus_focus_shear(d: Sequence[int], conormal: Sequence[int]) -> IntMatrix:
    """Monodromy ``v -> v + <conormal, v> d`` of a focus-focus point.

    ``d`` is the invariant direction; negating ``conormal`` reverses the
    loop orientation.
    """
    d = tuple(int(x) for x in d)
    conormal = tuple(int(x) for x in conormal)
    if len(d) != len(conormal):
        raise RankMismatch("direction and conormal have different lengths")
    if not (is_primitive(d) and is_primitive(conormal)):
        raise NotPrimitive(f"direction {d} and conormal {conormal} must be primitive")
    if dot(d, conormal) != 0:
        raise NotOrthogonal(f"<{conormal}, {d}> != 0")
    n = len(d)
    return IntMatrix(tuple(tuple(int(i == j) + d[i] * conormal[j] for j in range(n)) for i in range(n)))


@dataclass
class VerificationReport:
    ok: bool
    failures: list[dict] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "notices": self.notices}


def verify(rep: AffineMonodromyRep) -> VerificationReport:
    """Check unimodularity and, for complete presentations, every relation."""
    failures = []
    notices = []
    for g in rep.generators:
        d = rep.linear[g].det()
        if d not in (1, -1):
            failures.append({"kind": "NotUnimodular", "generator": g, "det": d})
    if rep.presentation.partial:
        notices.append("partial presentation: relations skipped")
    elif not failures:
        for i, rel in enumerate(rep.presentation.relations):
            el = compose(rep, rel)
            if not el.is_identity():
                failures.append(
                    {
                        "kind": "RelationViolated",
                        "relation": i,
                        "T": el.T.tolist(),
                        "lambda": list(el.lam),
                        "theta": list(el.theta),
                    }
                )
    return VerificationReport(ok=not failures, failures=failures, notices=notices)


# --- Z/2 group cohomology of theta -----------------------------------------


def _theta_vector(rep: AffineMonodromyRep, theta: Mapping[str, Sequence[int]]) -> np.ndarray:
    return np.array([x % 2 for g in rep.generators for x in theta[g]], dtype=np.uint8)


def _theta_mapping(rep: AffineMonodromyRep, vec: Sequence[int]) -> dict[str, GF2Vector]:
    n = rep.rank
    return {g: tuple(int(x) for x in vec[i * n : (i + 1) * n]) for i, g in enumerate(rep.generators)}


def cocycle_matrix(rep: AffineMonodromyRep) -> np.ndarray:
    """GF(2) matrix whose kernel is the space of theta-cocycles.

    Column ``(g, j)`` holds the theta-parts of all relations evaluated on
    the assignment with ``theta_g = e_j`` and every other theta zero; the
    composite theta of a word is linear in the assignment.
    """
    n = rep.rank
    gens = rep.generators
    rels = rep.presentation.relations
    a = np.zeros((len(rels) * n, len(gens) * n), dtype=np.uint8)
    zero = {g: (0,) * n for g in gens}
    for gi, g in enumerate(gens):
        for j in range(n):
            theta = dict(zero)
            theta[g] = tuple(int(k == j) for k in range(n))
            probe = rep.with_theta(theta)
            for ri, rel in enumerate(rels):
                a[ri * n : (ri + 1) * n, gi * n + j] = compose(probe, rel).theta
    return a


def coboundary(rep: AffineMonodromyRep, phi: Sequence[int]) -> dict[str, GF2Vector]:
    """The cocycle ``g -> phi . T_g + phi`` (mod 2)."""
    phi = tuple(int(x) % 2 for x in phi)
    if len(phi) != rep.rank:
        raise RankMismatch(f"phi has length {len(phi)}, rank is {rep.rank}")
    return {
        g: tuple((a + b) % 2 for a, b in zip(gf2_vec_mat(phi, rep.linear[g]), phi))
        for g in rep.generators
    }


def is_cocycle(rep: AffineMonodromyRep, theta: Mapping[str, Sequence[int]]) -> bool:
    probe = rep.with_theta(theta)
    return all(not any(compose(probe, rel).theta) for rel in rep.presentation.relations)


@dataclass(frozen=True)
class H1Result:
    dimension: int
    cocycle_dimension: int
    coboundary_dimension: int
    basis: tuple[dict, ...]
    representatives: tuple[dict, ...]
    truncated: bool

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "cocycle_dimension": self.cocycle_dimension,
            "coboundary_dimension": self.coboundary_dimension,
            "basis": [{g: list(v) for g, v in b.items()} for b in self.basis],
            "representatives": [{g: list(v) for g, v in r.items()} for r in self.representatives],
            "truncated": self.truncated,
        }


def h1_theta(rep: AffineMonodromyRep, max_classes: int = 64) -> H1Result:
    """First cohomology with Z/2 coefficients twisted by the linear parts.

    Cocycles are theta-assignments on the generators satisfying every
    relation; they are taken modulo coboundaries ``phi . T_g + phi``.
    Representatives are listed class by class (zero class first), at most
    ``max_classes`` of them.
    """
    if rep.presentation.partial:
        raise PartialPresentation("cohomology needs the full set of relations")
    n = rep.rank
    width = n * len(rep.generators)
    if width == 0:
        return H1Result(0, 0, 0, (), ({},), False)
    if rep.presentation.relations:
        cocycles = gf2_nullspace(cocycle_matrix(rep), width)
    else:
        cocycles = [tuple(int(i == j) for j in range(width)) for i in range(width)]
    cob_rows = [
        _theta_vector(rep, coboundary(rep, tuple(int(i == j) for j in range(n))))
        for i in range(n)
    ]
    cob_rank = gf2_rank(cob_rows) if cob_rows else 0

    # extend a basis of the coboundaries to one of the cocycles
    span = [list(r) for r in cob_rows if np.any(r)]
    current = gf2_rank(span) if span else 0
    complement = []
    for z in cocycles:
        trial = span + [list(z)]
        r = gf2_rank(trial)
        if r > current:
            span, current = trial, r
            complement.append(np.array(z, dtype=np.uint8))
    dim = len(complement)

    reps = []
    total = 2**dim
    for k in range(min(total, max_classes)):
        v = np.zeros(width, dtype=np.uint8)
        for i, b in enumerate(complement):
            if (k >> i) & 1:
                v ^= b
        reps.append(_theta_mapping(rep, v))
    basis = tuple(_theta_mapping(rep, b) for b in complement)
    return H1Result(
        dimension=dim,
        cocycle_dimension=len(cocycles),
        coboundary_dimension=cob_rank,
        basis=basis,
        representatives=tuple(reps),
        truncated=total > max_classes,
    )


# --- builtin representations -------------------------------------------------

T1 = IntMatrix.of([[1, 0], [1, 1]])
T2 = IntMatrix.of([[2, -1], [1, 0]])
T3 = IntMatrix.of([[1, -1], [0, 1]])


def livne_moishezon_rep(theta: Mapping[str, Sequence[int]] | None = None) -> AffineMonodromyRep:
    """Linear monodromy of an affine S^2 with 24 focus-focus points.

    Standard generators ``gamma1 .. gamma24`` with product one; odd ones
    carry ``T3`` and even ones ``T1``.  Translational parts are zero.
    """
    pres = sphere_presentation(24, 2)
    linear = {g: (T3 if i % 2 == 1 else T1) for i, g in enumerate(pres.generators, start=1)}
    return AffineMonodromyRep(pres, linear, {}, theta or {})


def free_rep(matrices: Mapping[str, Sequence[Sequence[int]]]) -> AffineMonodromyRep:
    """Representation of a free group (no relations) with zero lam/theta."""
    mats = {g: IntMatrix.of(m) for g, m in matrices.items()}
    n = next(iter(mats.values())).rows if mats else 0
    return AffineMonodromyRep(Presentation(n, tuple(mats), ()), mats)


def random_word(rng, generators: Sequence[str], length: int) -> Word:
    return tuple((generators[rng.randrange(len(generators))], rng.choice((1, -1))) for _ in range(length))


__all__ = [
    "AffineElement",
    "AffineMonodromyRep",
    "H1Result",
    "Presentation",
    "T1",
    "T2",
    "T3",
    "coboundary",
    "compose",
    "focus_focus_shear",
    "h1_theta",
    "is_cocycle",
    "livne_moishezon_rep",
    "sphere_presentation",
    "twisted_product",
    "verify",
]
