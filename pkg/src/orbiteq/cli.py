"""Command-line interface.

Four subcommands: ``analyze`` (validate a matrix and report its
invariants), ``compare`` (invariant obstructions plus the amalgamation
conjugacy decision for two matrices), ``verify`` (classify a candidate
homeomorphism given with its inverse), and ``psi`` (evaluate the induced
potential of a function under a map).

Exit codes: 0 definite outcome, 1 parse or validation error,
2 undecided at the configured depth, 3 inverse verification failed.
"""

import argparse
import sys

from . import jsonio
from .config import RunConfig
from .errors import (
    NoAlignment,
    NotConstantOnCylinders,
    OrbiteqError,
    TooLarge,
)
from .functions import pullback, tables_equal
from .invariants import (
    conjugacy_from_amalgamation,
    decide_one_sided_conjugacy,
    invariant_report,
    obstruction_report,
)
from .maps import verify_inverse_pair
from .orbit import classify, induced_potential, orbit_cocycles
from .shifts import count_periodic

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2
EXIT_REFUTED = 3


def _config(args):
    return RunConfig(
        depth=args.depth,
        max_pre=args.max_pre,
        max_cyc=args.max_cyc,
        max_window=args.max_window,
        fmt=args.format,
        seed=args.seed,
    )


def _emit(payload, cfg, text_renderer):
    if cfg.fmt == "json":
        sys.stdout.write(jsonio.dumps(payload))
    else:
        sys.stdout.write(text_renderer(payload))


def cmd_analyze(args):
    cfg = _config(args)
    try:
        space = jsonio.matrix_from_json(jsonio.load_file(args.matrix))
    except (OrbiteqError, OSError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    rep = invariant_report(space)
    payload = {
        "matrix": jsonio.matrix_to_json(space),
        "irreducible": True,
        "permutation": False,
        "wordCounts": {str(m): space.word_count(m) for m in range(1, 5)},
        "periodicCounts": {str(n): count_periodic(space, n) for n in range(1, 7)},
        "invariants": jsonio.invariants_to_json(rep),
    }

    def text(p):
        lines = [
            f"states: {p['matrix']['n']}",
            "irreducible, non-permutation",
            "word counts (depth 1..4): "
            + ", ".join(str(p["wordCounts"][str(m)]) for m in range(1, 5)),
            "periodic point counts (n=1..6): "
            + ", ".join(str(p["periodicCounts"][str(n)]) for n in range(1, 7)),
            f"BF invariant factors: {p['invariants']['bf'] or 'trivial'}",
            f"detSign: {p['invariants']['detSign']}",
            f"K0 factors: {p['invariants']['k0'] or 'trivial'}; "
            f"K1 rank: {p['invariants']['k1Rank']}",
        ]
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, text)
    return EXIT_OK


def cmd_compare(args):
    cfg = _config(args)
    try:
        a = jsonio.matrix_from_json(jsonio.load_file(args.a))
        b = jsonio.matrix_from_json(jsonio.load_file(args.b))
    except (OrbiteqError, OSError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    rep = obstruction_report(a, b)
    conjugate = None
    pair_json = None
    if not rep.obstructed:
        try:
            conjugate = decide_one_sided_conjugacy(a, b)
        except TooLarge:
            conjugate = None
        if conjugate:
            pair = conjugacy_from_amalgamation(a, b)
            if pair is not None:
                pair_json = {
                    "map": jsonio.map_to_json(pair[0]),
                    "inverse": jsonio.map_to_json(pair[1]),
                }
    else:
        conjugate = False
    payload = {
        "obstruction": jsonio.obstruction_to_json(rep),
        "oneSidedConjugate": conjugate,
        "conjugacy": pair_json,
    }

    def text(p):
        lines = []
        if p["obstruction"]["obstructed"]:
            lines.append(
                "ruled out: continuous orbit equivalence and every rung below"
            )
        else:
            lines.append("no invariant obstruction found")
        if p["oneSidedConjugate"] is None:
            lines.append("one-sided conjugate: undecided")
        else:
            lines.append(f"one-sided conjugate: {str(p['oneSidedConjugate']).lower()}")
        if p["conjugacy"] is not None:
            lines.append("explicit block-code pair attached (json format)")
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, text)
    if rep.obstructed or conjugate is not None:
        return EXIT_OK
    return EXIT_UNDECIDED


def cmd_verify(args):
    cfg = _config(args)
    try:
        a = jsonio.matrix_from_json(jsonio.load_file(args.a))
        b = jsonio.matrix_from_json(jsonio.load_file(args.b))
        h = jsonio.map_from_json(a, b, jsonio.load_file(args.map))
        h_inv = jsonio.map_from_json(b, a, jsonio.load_file(args.inverse))
    except (OrbiteqError, OSError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    ok, witness = verify_inverse_pair(h, h_inv, cfg.max_pre, cfg.max_cyc)
    if not ok:
        payload = {
            "verdict": "NotInversePair",
            "witness": jsonio._witness_to_json(witness),
        }
        _emit(payload, cfg, lambda p: f"inverse verification failed at {p['witness']}\n")
        return EXIT_REFUTED
    try:
        verdict = classify(h, h_inv, cfg)
    except (NoAlignment, NotConstantOnCylinders) as e:
        payload = {"verdict": "Undecided", "note": str(e)}
        _emit(payload, cfg, lambda p: f"undecided: {p['note']}\n")
        return EXIT_UNDECIDED
    payload = jsonio.verdict_to_json(verdict)

    def text(p):
        lines = [f"verdict: {p['verdict']}"]
        if p["K"] is not None:
            lines.append(f"lag K: {p['K']}")
        if p["witness"]:
            lines.append(f"witness: {p['witness']}")
        if p["note"]:
            lines.append(p["note"])
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, text)
    return EXIT_OK if verdict.kind != "Undecided" else EXIT_UNDECIDED


def cmd_psi(args):
    cfg = _config(args)
    try:
        a = jsonio.matrix_from_json(jsonio.load_file(args.a))
        b = jsonio.matrix_from_json(jsonio.load_file(args.b))
        h = jsonio.map_from_json(a, b, jsonio.load_file(args.map))
        f = jsonio.function_from_json(b, jsonio.load_file(args.function))
    except (OrbiteqError, OSError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        kl = orbit_cocycles(h, min(cfg.depth, 3), cfg)
        g = induced_potential(h, kl, f)
    except (NoAlignment, NotConstantOnCylinders) as e:
        payload = {"error": type(e).__name__, "note": str(e)}
        _emit(payload, cfg, lambda p: f"undecided: {p['note']}\n")
        return EXIT_UNDECIDED
    matches = None
    try:
        matches = tables_equal(g, pullback(f, h))
    except OrbiteqError:
        pass
    payload = {
        "induced": jsonio.function_to_json(g),
        "matchesComposition": matches,
        "cocycles": jsonio.cocycles_to_json(kl),
    }

    def text(p):
        lines = [f"induced potential table ({len(p['induced']['values'])} words)"]
        for k, v in p["induced"]["values"].items():
            lines.append(f"  [{k}] -> {v}")
        if p["matchesComposition"] is not None:
            lines.append(f"equals composition with the map: {p['matchesComposition']}")
        return "\n".join(lines) + "\n"

    _emit(payload, cfg, text)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="orbiteq",
        description="Exact conjugacy and orbit-equivalence certificates "
        "for one-sided shift spaces.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--depth", type=int, default=8)
        p.add_argument("--max-pre", type=int, default=3, dest="max_pre")
        p.add_argument("--max-cyc", type=int, default=4, dest="max_cyc")
        p.add_argument("--max-window", type=int, default=4, dest="max_window")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=RunConfig().seed)

    p = sub.add_parser("analyze", help="validate a matrix and report invariants")
    p.add_argument("matrix")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="obstructions and conjugacy decision")
    p.add_argument("a")
    p.add_argument("b")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="classify a homeomorphism candidate")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("map")
    p.add_argument("inverse")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("psi", help="induced potential of a function under a map")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("map")
    p.add_argument("function")
    common(p)
    p.set_defaults(func=cmd_psi)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
