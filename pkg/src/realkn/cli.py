"""Command line entry point.

Exit codes: 0 success, 1 validation or domain failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .affine_complex import ComplexError, validate_balancing
from .exact_linalg import LinalgError
from .monodromy import MonodromyError, h1_theta, verify
from .real_cover import classify
from .scenario import (
    EXAMPLES,
    Scenario,
    ScenarioError,
    builtin_scenario,
    dump_scenario,
    load_scenario,
)
from .toric_monoid import ToricError, build_local_model, ghost_rank, monodromy_cone

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fiber(value: str) -> int:
    if value in ("+1", "1"):
        return 1
    if value == "-1":
        return -1
    raise argparse.ArgumentTypeError("fiber must be +1 or -1")


def _need(s: Scenario, kind: str, command: str) -> None:
    if s.kind != kind:
        raise InputError(f"{command} needs a {kind} scenario, got {s.kind}")


def cmd_validate(s: Scenario, args) -> tuple[dict, bool]:
    report: dict = {"command": "validate", "kind": s.kind}
    ok = True
    if s.rep is not None:
        v = verify(s.rep)
        report["monodromy"] = v.as_dict()
        ok &= v.ok
    if s.complex is not None:
        viol = validate_balancing(s.complex.complex, s.complex.mpl)
        report["balancing"] = {
            "ok": not viol,
            "violations": [{"vertex": x.vertex, "defect": list(x.defect)} for x in viol],
        }
        ok &= not viol
    if s.local_model is not None:
        model = build_local_model(s.local_model, args.bound or s.bound)
        report["local_model"] = {"consistent": model.consistent}
        ok &= model.consistent
    report["ok"] = bool(ok)
    return report, bool(ok)


def cmd_classify(s: Scenario, args) -> tuple[dict, bool]:
    _need(s, "monodromy", "classify")
    r = classify(s.rep, args.fiber, s.branch_points, s.base_euler)
    report = {"command": "classify", "scenario": s.name}
    report.update(r.as_dict())
    return report, True


def cmd_h1(s: Scenario, args) -> tuple[dict, bool]:
    _need(s, "monodromy", "h1")
    res = h1_theta(s.rep, max_classes=args.max_classes)
    report = {"command": "h1", "scenario": s.name}
    report.update(res.as_dict())
    return report, True


def cmd_local_model(s: Scenario, args) -> tuple[dict, bool]:
    _need(s, "local_model", "local-model")
    bound = args.bound or s.bound
    model = build_local_model(s.local_model, bound)
    mc = monodromy_cone(s.local_model)
    report = {
        "command": "local-model",
        "scenario": s.name,
        "bound": bound,
        "P": {
            "rank": model.P.rank,
            "generators": [list(g) for g in model.P.generators],
            "relations": [list(r) for r in model.P.relations()],
        },
        "K": [list(g) for g in model.K.generators],
        "consistent": model.consistent,
        "monodromy_cone": {"generators": [list(g) for g in mc.Kbar.generators], "is_standard": mc.is_standard},
    }
    if s.face is not None:
        g = ghost_rank(model.P, s.face)
        report["ghost_rank"] = {"face": [list(f) for f in s.face], "rank": g.rank, "real_fiber": g.real_fiber}
    return report, model.consistent


def _text(report: dict) -> str:
    cmd = report.get("command")
    lines = []
    if cmd == "classify":
        lines.append(f"fiber {report['fiber']}: {report['component_count']} component(s)")
        for i, c in enumerate(report["components"]):
            g = "-" if c["genus"] is None else c["genus"]
            lines.append(
                f"  component {i}: degree {c['degree']}, branched at {c['ramified_branch_points']}, "
                f"chi {c['euler_characteristic']}, genus {g}"
            )
        lines += [f"  note: {n}" for n in report["notes"]]
    elif cmd == "h1":
        lines.append(
            f"H^1 dimension {report['dimension']} "
            f"(cocycles {report['cocycle_dimension']}, coboundaries {report['coboundary_dimension']})"
        )
    elif cmd == "local-model":
        lines.append(f"P generators: {report['P']['generators']}")
        lines.append(f"relations: {report['P']['relations']}")
        lines.append(f"consistent (P = K^dual ∩ M on the box): {report['consistent']}")
        lines.append(f"monodromy cone standard: {report['monodromy_cone']['is_standard']}")
        if "ghost_rank" in report:
            gr = report["ghost_rank"]
            lines.append(f"ghost rank {gr['rank']}, real fiber {gr['real_fiber']}")
    elif cmd == "validate":
        lines.append("ok" if report["ok"] else "FAILED")
        for key in ("monodromy", "balancing", "local_model"):
            if key in report:
                lines.append(f"  {key}: {json.dumps(report[key], sort_keys=True)}")
    else:
        lines.append(json.dumps(report, sort_keys=True))
    return "\n".join(lines)


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "h1": cmd_h1,
    "local-model": cmd_local_model,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realkn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("scenario", help="JSON file or example:<name>")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--theta", default=None, help="zero, nonzero or a class index")
        sp.add_argument("--bound", type=int, default=None)
        if name == "classify":
            sp.add_argument("--fiber", type=_fiber, default=1)
        if name == "h1":
            sp.add_argument("--max-classes", type=int, default=64)
    ex = sub.add_parser("example")
    ex.add_argument("name", choices=EXAMPLES)
    ex.add_argument("--theta", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "example":
            print(dump_scenario(builtin_scenario(args.name, theta=args.theta)))
            return EXIT_OK
        scenario = load_scenario(args.scenario, theta=args.theta)
        if args.theta is not None and not args.scenario.startswith("example:"):
            print("--theta only applies to builtin examples", file=sys.stderr)
            return EXIT_INPUT
        report, ok = COMMANDS[args.command](scenario, args)
    except (ScenarioError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MonodromyError, ToricError, ComplexError, LinalgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_text(report))
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
