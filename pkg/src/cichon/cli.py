"""Command-line surface, file codecs, and the exit-code contract.

Exit codes: 0 = success / the queried relation holds; 1 = the relation or
law fails (a counterexample report is printed); 2 = malformed input or a
violated precondition, reported on stderr by clause name.  Outputs are
byte-identical across runs on identical inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import combinatorics as comb
from . import constructions as cons
from . import diagram as dia
from . import posets
from . import projections as proj
from .errors import CichonError

CONSTRUCT_KINDS = ("dominator", "ioe", "evdiff", "slalom", "evader", "random-family")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cichon",
        description="Finite-scale combinatorics of the Cichon diagram.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("diagram", help="render the diagram, optionally for a forcing")
    p.add_argument("--forcing", help="knowledge-base entry to render")
    p.add_argument("--format", choices=("dot", "json"), default="dot")

    p = sub.add_parser("cuts", help="enumerate the upward-closed cuts")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("check", help="least-threshold check between two objects")
    p.add_argument("--relation", choices=comb.RELATIONS, required=True)
    p.add_argument("--f", required=True, metavar="FILE")
    p.add_argument("--g", required=True, metavar="FILE")

    p = sub.add_parser("construct", help="build a witness from an input file")
    p.add_argument("--kind", choices=CONSTRUCT_KINDS, required=True)
    p.add_argument("--family", metavar="FILE")
    p.add_argument("--horizon", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--max-value", type=int, default=16)

    p = sub.add_parser("poset", help="compare two forcing conditions")
    p.add_argument("--kind", choices=posets.POSET_KINDS, required=True)
    p.add_argument("--op", choices=("leq", "fusion"), required=True)
    p.add_argument("--a", required=True, metavar="FILE")
    p.add_argument("--b", required=True, metavar="FILE")
    p.add_argument("--n", type=int)

    p = sub.add_parser("project", help="project or lift a localization condition")
    p.add_argument("--map", choices=("loc-d", "loc-e"), required=True, dest="map_name")
    p.add_argument("--cond", required=True, metavar="FILE")
    p.add_argument("--lift", metavar="FILE")
    p.add_argument("--reduce", action="store_true")

    p = sub.add_parser("kb", help="list the forcing knowledge base")
    p.add_argument("--list", action="store_true")

    return parser


def _cmd_diagram(args, out) -> int:
    if args.forcing:
        profile = dia.kb_lookup(args.forcing)
        state = profile.state
    else:
        state = dia.DiagramState(emptiness={})
    if args.format == "json":
        print(dia.emit_json(state), file=out)
    else:
        out.write(dia.emit_dot(state))
    return 0


def _cmd_cuts(args, out) -> int:
    cuts = [cut.to_obj() for cut in dia.enumerate_cuts()]
    print(_dump(cuts), file=out)
    return 0


def _cmd_check(args, out) -> int:
    f = comb.FinFunc.from_obj(_load_json(args.f))
    raw = _load_json(args.g)
    if args.relation == "in":
        target = comb.Slalom.from_obj(raw)
    else:
        target = comb.FinFunc.from_obj(raw)
    report = comb.least_threshold(args.relation, f, target)
    holds = not report.vacuous or f.horizon == 0
    payload = report.to_obj()
    payload.update({"relation": args.relation, "horizon": f.horizon, "holds": holds})
    if report.vacuous and f.horizon > 0:
        payload["counterexample_position"] = f.horizon - 1
    print(_dump(payload), file=out)
    return 0 if holds else 1


def _truncate_family(family, horizon):
    if horizon > family.horizon:
        raise ValueError(
            f"--horizon {horizon} exceeds the family horizon {family.horizon}"
        )
    return comb.Family(
        tuple(comb.FinFunc(f.values[:horizon]) for f in family), horizon
    )


def _truncate_slalom(sigma, horizon):
    if horizon > sigma.horizon:
        raise ValueError(
            f"--horizon {horizon} exceeds the slalom horizon {sigma.horizon}"
        )
    return comb.Slalom(
        sigma.cells[:horizon], comb.WidthProfile(sigma.width.widths[:horizon])
    )


def _cmd_construct(args, out) -> int:
    if args.kind == "random-family":
        if args.seed is None or args.horizon is None:
            raise ValueError("random-family needs --seed and --horizon")
        rng = random.Random(args.seed)
        family = comb.Family(
            tuple(
                comb.FinFunc(
                    tuple(rng.randrange(args.max_value) for _ in range(args.horizon))
                )
                for _ in range(args.count)
            ),
            args.horizon,
        )
        print(_dump(family.to_obj()), file=out)
        return 0
    if args.seed is not None:
        raise ValueError("--seed is only accepted by --kind random-family")
    if args.family is None:
        raise ValueError(f"--kind {args.kind} needs --family FILE")
    raw = _load_json(args.family)
    if args.kind == "evader":
        sigma = comb.Slalom.from_obj(raw)
        if args.horizon is not None:
            sigma = _truncate_slalom(sigma, args.horizon)
        result = cons.sum_evader_bound(sigma)
        print(_dump({"kind": args.kind, "witness": result.to_obj()}), file=out)
        return 0
    family = comb.Family.from_obj(raw)
    if args.horizon is not None:
        family = _truncate_family(family, args.horizon)
    if args.kind == "dominator":
        witness = cons.family_dominator(family)
        report = comb.family_report("leq", witness, family, "bounding")
        payload = {"kind": args.kind, "witness": witness.to_obj(), "report": report.to_obj()}
    elif args.kind == "ioe":
        witness = cons.round_robin_ioe(family)
        report = comb.family_report("eq", witness, family, "evading")
        payload = {"kind": args.kind, "witness": witness.to_obj(), "report": report.to_obj()}
    elif args.kind == "evdiff":
        witness = cons.least_avoider(family)
        report = comb.family_report("eq", witness, family, "evading")
        payload = {"kind": args.kind, "witness": witness.to_obj(), "report": report.to_obj()}
    else:  # slalom
        sigma, thresholds = cons.family_slalom(family)
        payload = {
            "kind": args.kind,
            "witness": sigma.to_obj(),
            "capture_thresholds": list(thresholds),
        }
    print(_dump(payload), file=out)
    return 0


def _cmd_poset(args, out) -> int:
    a = posets.condition_from_obj(_load_json(args.a))
    b = posets.condition_from_obj(_load_json(args.b))
    if args.op == "fusion":
        if args.n is None:
            raise ValueError("fusion comparison needs --n")
        holds = posets.fusion_leq(args.kind, a, b, args.n)
    else:
        holds = posets.leq(args.kind, a, b)
    payload = {"kind": args.kind, "op": args.op, "holds": holds}
    if args.op == "fusion":
        payload["n"] = args.n
    print(_dump(payload), file=out)
    return 0 if holds else 1


def _cmd_project(args, out) -> int:
    raw = _load_json(args.cond)
    target = None
    if isinstance(raw, dict) and "loc" in raw:
        # pair file {"loc": ..., "target": ...}
        if args.lift is not None:
            raise ValueError("--lift conflicts with a pair file in --cond")
        cond = posets.condition_from_obj(raw["loc"])
        if "target" in raw:
            target = posets.condition_from_obj(raw["target"])
    else:
        cond = posets.condition_from_obj(raw)
        if args.lift is not None:
            target = posets.condition_from_obj(_load_json(args.lift))
    if not isinstance(cond, posets.LocCond):
        raise ValueError("--cond must be a localization condition")
    project = proj.proj_loc_to_d if args.map_name == "loc-d" else proj.proj_loc_to_e
    if target is None:
        projected = project(cond)
        print(_dump(posets.condition_to_obj(projected)), file=out)
        return 0
    if args.map_name == "loc-d":
        if args.reduce:
            raise ValueError("--reduce applies to the loc-e map only")
        if not isinstance(target, posets.HechlerCond):
            raise ValueError("loc-d lift target must be a hechler condition")
        lifted = proj.lift_loc_to_d(cond, target)
    else:
        if not isinstance(target, posets.ECond):
            raise ValueError("loc-e lift target must be an e condition")
        if args.reduce:
            target = proj.reduce_e(target, cond.prefix.horizon)
        lifted = proj.lift_loc_to_e(cond, target)
    payload = {
        "lift": posets.condition_to_obj(lifted),
        "reprojection": posets.condition_to_obj(project(lifted)),
    }
    if args.reduce:
        payload["reduced_target"] = posets.condition_to_obj(target)
    print(_dump(payload), file=out)
    return 0


def _cmd_kb(args, out) -> int:
    entries = [
        {
            "name": profile.name,
            "citation": profile.citation,
            "nonempty": sorted(
                profile.state.nonempty_set(),
                key=dia.NODES.index,
            ),
        }
        for profile in dia.kb_profiles()
    ]
    print(_dump(entries), file=out)
    return 0


_COMMANDS = {
    "diagram": _cmd_diagram,
    "cuts": _cmd_cuts,
    "check": _cmd_check,
    "construct": _cmd_construct,
    "poset": _cmd_poset,
    "project": _cmd_project,
    "kb": _cmd_kb,
}


def run(argv, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args, out)
    except CichonError as exc:
        print(f"{exc.clause}: {exc}", file=err)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
