"""JSON scenario files and the builtin examples.

Three kinds of scenario share one file format (UTF-8 JSON object with a
``kind`` key):

``monodromy``
    ``rank``, ``generators`` (each ``{"name", "T", "lambda", "theta"}``,
    ``T`` row-major), ``relations`` (lists of ``"g"`` / ``"g^-1"``),
    ``branch_points``, ``base_euler`` (default 2), ``partial`` (default
    false) and optionally an embedded ``complex`` object.
``local_model``
    ``mprime_rank``, ``fan`` (maximal cones as ray lists), ``polytopes``
    (vertex lists of ``Delta_0 .. Delta_q``), ``bound`` and optionally
    ``face`` (generators of a face of ``P`` for the ghost rank).
``complex``
    ``dimension``, ``cells`` (``{"0": {"v": []}, "1": {"e": ["v", "w"]}, ...}``),
    ``vertex_fans``, ``kinks``, ``singular_points``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .affine_complex import MPLFunction, PolyhedralComplex, SingularPoint, builtin_quartic_k3
from .monodromy import (
    AffineMonodromyRep,
    MonodromyError,
    Presentation,
    format_letter,
    h1_theta,
    livne_moishezon_rep,
)
from .toric_monoid import LocalModelSpec, focus_focus_spec

KINDS = ("monodromy", "local_model", "complex")
EXAMPLES = ("quartic-k3", "simple-k3", "focus-focus")


class ScenarioError(ValueError):
    """Malformed or unreadable scenario input."""


@dataclass(frozen=True)
class ComplexData:
    complex: PolyhedralComplex
    mpl: MPLFunction
    singular_points: tuple[SingularPoint, ...] = ()


@dataclass(frozen=True)
class Scenario:
    kind: str
    name: str = ""
    rep: AffineMonodromyRep | None = None
    branch_points: tuple[str, ...] = ()
    base_euler: int = 2
    complex: ComplexData | None = None
    local_model: LocalModelSpec | None = None
    bound: int = 4
    face: tuple[tuple[int, ...], ...] | None = None
    extra: dict = field(default_factory=dict, compare=False)


# --- decoding ------------------------------------------------------------------


def _require(obj: dict, key: str):
    if key not in obj:
        raise ScenarioError(f"missing field {key!r}")
    return obj[key]


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ScenarioError(f"{what} must be a list of integers")
    return x


def _decode_complex(obj: dict) -> ComplexData:
    try:
        dimension = int(_require(obj, "dimension"))
        cells = {int(k): {c: tuple(f) for c, f in v.items()} for k, v in _require(obj, "cells").items()}
        fans = {v: {e: tuple(_int_list(r, "ray")) for e, r in fan.items()} for v, fan in obj.get("vertex_fans", {}).items()}
        cx = PolyhedralComplex(dimension, cells, fans, tuple(tuple(p) for p in obj.get("identifications", [])))
        mpl = MPLFunction({rho: int(k) for rho, k in obj.get("kinks", {}).items()})
        points = tuple(
            SingularPoint(
                edge=_require(p, "edge"),
                ordinal=int(_require(p, "ordinal")),
                direction=tuple(_int_list(_require(p, "direction"), "direction")),
                conormal=tuple(_int_list(_require(p, "conormal"), "conormal")),
                slab_sign_change=bool(p.get("slab_sign_change", True)),
                loop=p.get("loop"),
            )
            for p in obj.get("singular_points", [])
        )
    except ScenarioError:
        raise
    except (AttributeError, TypeError) as exc:
        raise ScenarioError(f"malformed complex: {exc}") from exc
    except ValueError as exc:
        raise ScenarioError(f"invalid complex: {exc}") from exc
    for p in points:
        if p.edge not in cx.cells.get(1, {}):
            raise ScenarioError(f"singular point on unknown edge {p.edge!r}")
    return ComplexData(cx, mpl, points)


def _decode_monodromy(obj: dict) -> Scenario:
    n = _require(obj, "rank")
    if not isinstance(n, int) or n < 1:
        raise ScenarioError("rank must be a positive integer")
    gens = _require(obj, "generators")
    if not isinstance(gens, list):
        raise ScenarioError("generators must be a list")
    names, linear, lam, theta = [], {}, {}, {}
    for g in gens:
        name = _require(g, "name")
        T = _require(g, "T")
        if not isinstance(T, list) or len(T) != n:
            raise ScenarioError(f"generator {name!r}: T must have {n} rows")
        for row in T:
            if len(_int_list(row, f"generator {name!r} T row")) != n:
                raise ScenarioError(f"generator {name!r}: T must be {n}x{n}")
        names.append(name)
        linear[name] = T
        lam[name] = tuple(_int_list(g.get("lambda", [0] * n), "lambda"))
        th = _int_list(g.get("theta", [0] * n), "theta")
        if any(v not in (0, 1) for v in th):
            raise ScenarioError(f"generator {name!r}: theta entries must be 0 or 1")
        theta[name] = tuple(th)
        if len(lam[name]) != n or len(theta[name]) != n:
            raise ScenarioError(f"generator {name!r}: lambda/theta must have length {n}")
    rels = obj.get("relations", [])
    try:
        pres = Presentation(n, tuple(names), tuple(tuple(r) for r in rels), bool(obj.get("partial", False)))
        rep = AffineMonodromyRep(pres, linear, lam, theta)
    except MonodromyError as exc:
        raise ScenarioError(str(exc)) from exc
    branch = tuple(obj.get("branch_points", []))
    for b in branch:
        if b not in names:
            raise ScenarioError(f"branch point refers to undeclared generator {b!r}")
    cx = _decode_complex(obj["complex"]) if obj.get("complex") else None
    return Scenario(
        kind="monodromy",
        name=obj.get("name", ""),
        rep=rep,
        branch_points=branch,
        base_euler=int(obj.get("base_euler", 2)),
        complex=cx,
    )


def _decode_local_model(obj: dict) -> Scenario:
    try:
        spec = LocalModelSpec(
            int(_require(obj, "mprime_rank")),
            tuple(tuple(tuple(r) for r in cone) for cone in obj.get("fan", [])),
            tuple(tuple(tuple(v) for v in poly) for poly in _require(obj, "polytopes")),
        )
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed local model: {exc}") from exc
    face = obj.get("face")
    return Scenario(
        kind="local_model",
        name=obj.get("name", ""),
        local_model=spec,
        bound=int(obj.get("bound", 4)),
        face=None if face is None else tuple(tuple(_int_list(f, "face generator")) for f in face),
    )


def scenario_from_dict(obj: Any) -> Scenario:
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    kind = obj.get("kind")
    if kind == "monodromy":
        return _decode_monodromy(obj)
    if kind == "local_model":
        return _decode_local_model(obj)
    if kind == "complex":
        return Scenario(kind="complex", name=obj.get("name", ""), complex=_decode_complex(obj))
    raise ScenarioError(f"unknown scenario kind {kind!r}; expected one of {KINDS}")


def load_scenario(source: str | Path, *, theta: str | None = None) -> Scenario:
    """Read a scenario file, or a builtin given as ``example:<name>``."""
    source = str(source)
    if source.startswith("example:"):
        return builtin_scenario(source.split(":", 1)[1], theta=theta)
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {source}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}: invalid JSON: {exc}") from exc
    return scenario_from_dict(obj)


# --- encoding ------------------------------------------------------------------


def _encode_complex(data: ComplexData) -> dict:
    cx = data.complex
    return {
        "dimension": cx.dimension,
        "cells": {str(k): {c: list(f) for c, f in v.items()} for k, v in sorted(cx.cells.items())},
        "vertex_fans": {v: {e: list(r) for e, r in fan.items()} for v, fan in cx.vertex_fans.items()},
        "identifications": [list(p) for p in cx.identifications],
        "kinks": dict(data.mpl.kinks),
        "singular_points": [
            {
                "edge": p.edge,
                "ordinal": p.ordinal,
                "direction": list(p.direction),
                "conormal": list(p.conormal),
                "slab_sign_change": p.slab_sign_change,
                "loop": p.loop,
            }
            for p in data.singular_points
        ],
    }


def scenario_to_dict(s: Scenario) -> dict:
    out: dict = {"kind": s.kind}
    if s.name:
        out["name"] = s.name
    if s.kind == "monodromy":
        rep = s.rep
        out.update(
            {
                "rank": rep.rank,
                "partial": rep.presentation.partial,
                "generators": [
                    {
                        "name": g,
                        "T": rep.linear[g].tolist(),
                        "lambda": list(rep.translation[g]),
                        "theta": list(rep.theta[g]),
                    }
                    for g in rep.generators
                ],
                "relations": [[format_letter(x) for x in rel] for rel in rep.presentation.relations],
                "branch_points": list(s.branch_points),
                "base_euler": s.base_euler,
            }
        )
        if s.complex is not None:
            out["complex"] = _encode_complex(s.complex)
    elif s.kind == "local_model":
        spec = s.local_model
        out.update(
            {
                "mprime_rank": spec.mprime_rank,
                "fan": [[list(r) for r in cone] for cone in spec.fan],
                "polytopes": [[list(v) for v in poly] for poly in spec.polytopes],
                "bound": s.bound,
            }
        )
        if s.face is not None:
            out["face"] = [list(f) for f in s.face]
    else:
        out.update(_encode_complex(s.complex))
    return out


def dump_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2)


# --- builtins ------------------------------------------------------------------


def simple_k3_theta(choice: str | None) -> dict:
    """Theta for the 24-point sphere: ``zero``, ``nonzero`` or a class index.

    Class ``k`` is the sum of the H^1 basis cocycles selected by the binary
    digits of ``k``; ``nonzero`` is class 1.
    """
    if choice in (None, "zero", "0"):
        return {}
    base = livne_moishezon_rep()
    h1 = h1_theta(base, max_classes=1)
    k = 1 if choice == "nonzero" else int(choice)
    if not 0 <= k < 2**h1.dimension:
        raise ScenarioError(f"class index {k} out of range 0..2^{h1.dimension}-1")
    theta = {g: (0,) * base.rank for g in base.generators}
    for i, b in enumerate(h1.basis):
        if (k >> i) & 1:
            theta = {g: tuple((x + y) % 2 for x, y in zip(theta[g], b[g])) for g in base.generators}
    return theta


def builtin_scenario(name: str, *, theta: str | None = None) -> Scenario:
    if name == "quartic-k3":
        q = builtin_quartic_k3()
        return Scenario(
            kind="monodromy",
            name="quartic-k3",
            rep=q.rep,
            branch_points=q.branch_points,
            base_euler=2,
            complex=ComplexData(q.complex, q.mpl, q.singular_points),
        )
    if name == "simple-k3":
        try:
            th = simple_k3_theta(theta)
        except ValueError as exc:
            raise ScenarioError(f"bad --theta value {theta!r}: {exc}") from exc
        rep = livne_moishezon_rep(th)
        return Scenario(kind="monodromy", name="simple-k3", rep=rep, branch_points=rep.generators)
    if name == "focus-focus":
        return Scenario(
            kind="local_model",
            name="focus-focus",
            local_model=focus_focus_spec(),
            bound=4,
            face=((0, 1, 0),),
        )
    raise ScenarioError(f"unknown example {name!r}; expected one of {EXAMPLES}")
