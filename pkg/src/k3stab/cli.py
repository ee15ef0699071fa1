"""Command-line front end: scenario ingestion, dispatch, deterministic reports.

Commands
    attractor            solve and re-verify the attractor background
    forms reduce|equiv|enumerate
    mirror               mirror period triple and involution data
    charge               central-charge table (threefold and mirror sides)
    walls                pairwise wall table at the scenario's omega_J
    verify 5.1|6.2|6.3|6.4   certificate suites (aliases: slag-reality,
                         mirror-reality, regular-point, wall-intersection)

Reports are JSON on stdout with sorted keys and exact scalar strings; the
--float flag adds 15-digit decimal renderings for reading, never used in any
comparison.  Exit codes:

    0  certificate verified / command succeeded
    1  usage, scenario-file, or precondition error
    2  degenerate charge or failed attractor decomposition
    3  verification failed, counterexample attached
    4  candidate search exhausted without a success
"""

from __future__ import annotations

import argparse
import json
import sys

from .attractor import DegenerateCharge, NotAttractor
from .forms import BinaryEvenForm, enumerate_reduced, gauss_reduce, sl2_equivalent
from .mirror import BadFibrationClasses, NormalizationFailure, PreconditionViolation
from .scenario import (
    Scenario,
    ScenarioError,
    attractor_report,
    charge_table_report,
    mirror_reality_report,
    mirror_report,
    obstruction_json,
    regular_point_report,
    scenario_from_file,
    slag_reality_report,
    wall_system_report,
    wall_table_report,
)
from .stability import RealityViolation, SearchExhausted, SearchObstructed, WallFailure

_VERIFY_ALIASES = {
    "5.1": "5.1",
    "slag-reality": "5.1",
    "6.2": "6.2",
    "mirror-reality": "6.2",
    "6.3": "6.3",
    "regular-point": "6.3",
    "6.4": "6.4",
    "wall-intersection": "6.4",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_scenario(args) -> Scenario:
    sc = scenario_from_file(args.scenario)
    if getattr(args, "bound", None) is not None:
        sc.bound = args.bound
        sc.search.bound = args.bound
    if getattr(args, "max_iter", None) is not None:
        sc.search.max_iter = args.max_iter
    return sc


def _parse_form(text: str) -> BinaryEvenForm:
    try:
        triple = json.loads(text)
        if not (isinstance(triple, list) and len(triple) == 3):
            raise ValueError("need a JSON triple [a, b, c]")
        return BinaryEvenForm(*[int(x) for x in triple])
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"bad form {text!r}: {exc}") from None


def cmd_attractor(args) -> int:
    _emit(attractor_report(_load_scenario(args), args.float))
    return 0


def cmd_forms(args) -> int:
    if args.action == "reduce":
        form = _parse_form(args.forms[0])
        reduced, witness = gauss_reduce(form)
        _emit(
            {
                "action": "reduce",
                "input": form.as_list(),
                "reduced": reduced.as_list(),
                "witness": witness.as_rows(),
                "discriminant": form.discriminant(),
            }
        )
    elif args.action == "equiv":
        if len(args.forms) != 2:
            raise ScenarioError("equiv needs two forms")
        q1, q2 = (_parse_form(t) for t in args.forms)
        witness = sl2_equivalent(q1, q2)
        _emit(
            {
                "action": "equiv",
                "q1": q1.as_list(),
                "q2": q2.as_list(),
                "equivalent": witness is not None,
                "witness": witness.as_rows() if witness else None,
            }
        )
    else:  # enumerate
        disc = int(args.forms[0])
        _emit(
            {
                "action": "enumerate",
                "discriminant": disc,
                "forms": [f.as_list() for f in enumerate_reduced(disc)],
            }
        )
    return 0


def cmd_mirror(args) -> int:
    _emit(mirror_report(_load_scenario(args), args.float))
    return 0


def cmd_charge(args) -> int:
    _emit(charge_table_report(_load_scenario(args), args.float))
    return 0


def cmd_walls(args) -> int:
    _emit(wall_table_report(_load_scenario(args), args.float))
    return 0


def cmd_verify(args) -> int:
    sc = _load_scenario(args)
    which = _VERIFY_ALIASES[args.certificate]
    if which == "5.1":
        _emit(slag_reality_report(sc, args.float))
    elif which == "6.2":
        if not sc.fibration_orthogonal:
            raise PreconditionViolation("fibration classes must be orthogonal to the charge")
        _emit(mirror_reality_report(sc, args.float))
    elif which == "6.3":
        _emit(regular_point_report(sc, args.float))
    else:
        _emit(wall_system_report(sc, args.float))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="k3stab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_scenario(p):
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--bound", type=int, help="coefficient box bound override")
        p.add_argument("--max-iter", type=int, dest="max_iter", help="search iteration cap")
        p.add_argument("--float", action="store_true", help="add decimal renderings")

    p = sub.add_parser("attractor", help="solve and verify the attractor background")
    with_scenario(p)
    p.set_defaults(func=cmd_attractor)

    p = sub.add_parser("forms", help="binary even form utilities")
    p.add_argument("action", choices=["reduce", "equiv", "enumerate"])
    p.add_argument("forms", nargs="+", help="form triples as JSON, or a discriminant")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("mirror", help="mirror period triple")
    with_scenario(p)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("charge", help="central-charge table")
    with_scenario(p)
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("walls", help="pairwise wall table at the scenario omega_J")
    with_scenario(p)
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("verify", help="run a certificate suite")
    p.add_argument("certificate", choices=sorted(_VERIFY_ALIASES))
    with_scenario(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        _emit({"error": str(exc), "kind": "scenario"})
        return 1
    except (BadFibrationClasses, NormalizationFailure, PreconditionViolation) as exc:
        _emit({"error": str(exc), "kind": "precondition"})
        return 1
    except (DegenerateCharge, NotAttractor) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return 2
    except SearchObstructed as exc:
        _emit(
            {
                "error": str(exc),
                "kind": "obstructed",
                "obstruction": obstruction_json(exc.obstruction),
                "pass": False,
            }
        )
        return 3
    except RealityViolation as exc:
        _emit({"error": str(exc), "kind": "reality-violation", "pass": False})
        return 3
    except WallFailure as exc:
        _emit({"error": str(exc), "kind": "wall-failure", "pass": False})
        return 3
    except SearchExhausted as exc:
        _emit(
            {
                "error": str(exc),
                "kind": "search-exhausted",
                "rejections": [[i, reason] for i, reason in exc.rejections],
                "pass": False,
            }
        )
        return 4


if __name__ == "__main__":
    sys.exit(main())
