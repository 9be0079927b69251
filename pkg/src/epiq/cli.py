"""Command-line entry point.

Machine-readable JSON goes to stdout, a one-line human summary to stderr,
so the tool composes in pipelines.  Exit status: 0 on success (valid /
holds / proof ok / proof found / scenario emitted), 1 on semantic failure
(law violation, failing sequent, rejected or unfound proof), 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys as _sys

from . import serialize as io
from .algebra import validate_system
from .kripke import ModelError, build_scenario
from .rules import check_proof
from .search import SearchConfig, prove
from .semantics import EvalError, holds
from .syntax import ParseError, parse_sequent, print_sequent


def _emit(doc, args) -> None:
    compact = getattr(args, "format", "json") == "json"
    if compact:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))


def _note(msg: str) -> None:
    print(msg, file=_sys.stderr)


def cmd_validate(args) -> int:
    sys = io.system_from_json(io.load_json(args.system))
    report = validate_system(sys)
    doc = {
        "valid": report.ok,
        "violations": [
            {"law": v.law, "witness": list(v.witness), "detail": v.detail}
            for v in report.violations
        ],
    }
    _emit(doc, args)
    _note("valid" if report.ok else f"invalid: {report.summary()}")
    return 0 if report.ok else 1


def cmd_mc(args) -> int:
    sys = io.system_from_json(io.load_json(args.system))
    env = io.bindings_from_json(io.load_json(args.bindings), sys)
    seq = parse_sequent(args.sequent, env.signature)
    verdict = holds(env, seq)
    _emit({"holds": verdict, "sequent": print_sequent(seq)}, args)
    _note(f"{print_sequent(seq)}: {'holds' if verdict else 'fails'}")
    return 0 if verdict else 1


def cmd_check(args) -> int:
    base = io.base_from_json(io.load_json(args.base)) if args.base else io.base_from_json({})
    tree = io.proof_from_json(io.load_json(args.proof), base.signature)
    result = check_proof(tree, base)
    doc = {"ok": result.ok}
    if not result.ok:
        doc["path"] = list(result.path)
        doc["message"] = result.message
        doc["sequent"] = print_sequent(result.sequent) if result.sequent else None
    _emit(doc, args)
    _note("proof ok" if result.ok else f"rejected at {list(result.path)}: {result.message}")
    return 0 if result.ok else 1


def cmd_prove(args) -> int:
    base = io.base_from_json(io.load_json(args.base)) if args.base else io.base_from_json({})
    seq = parse_sequent(args.sequent, base.signature if args.base else None)
    counter_env = None
    if args.system and args.bindings:
        sys = io.system_from_json(io.load_json(args.system))
        counter_env = io.bindings_from_json(io.load_json(args.bindings), sys)
    cfg = SearchConfig(max_depth=args.depth, cut_pool_policy=args.cut_pool)
    tree = prove(seq, base, cfg, counter_env=counter_env)
    if tree is None:
        _emit({"found": False, "sequent": print_sequent(seq), "depth": args.depth}, args)
        _note(f"not found within depth {args.depth}")
        return 1
    _emit(io.proof_to_json(tree), args)
    _note(f"proof found: depth {tree.depth()}, {tree.size()} nodes")
    return 0


def cmd_scenario(args) -> int:
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.k is not None:
        params["k"] = args.k
    if args.rounds is not None:
        params["rounds"] = args.rounds
    sc = build_scenario(args.name, **params)
    out = args.out
    os.makedirs(out, exist_ok=True)
    files = {
        "state_model.json": io.state_model_to_json(sc.compiled.state_model),
        "action_model.json": io.action_model_to_json(sc.compiled.action_model),
        "system.json": io.system_to_json(sc.system),
        "bindings.json": io.bindings_to_json(sc.env),
        "base.json": io.base_to_json(sc.base),
    }
    for name, doc in files.items():
        io.dump_json(doc, os.path.join(out, name))
    targets_path = os.path.join(out, "targets.csv")
    with open(targets_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "expected", "sequent", "note"])
        for t in sc.targets:
            writer.writerow([t.name, str(t.expected).lower(), t.sequent, t.note])
    from .figures import render_scenario_figures

    figure_paths = render_scenario_figures(sc.system, out, sc.name)
    emitted = sorted(files) + ["targets.csv"] + [os.path.basename(p) for p in figure_paths]
    doc = {
        "name": sc.name,
        "out": out,
        "horizon": sc.compiled.horizon,
        "module_atoms": len(sc.compiled.state_labels),
        "quantale_atoms": len(sc.compiled.word_labels),
        "files": emitted,
        "targets": [
            {"name": t.name, "expected": t.expected, "sequent": t.sequent} for t in sc.targets
        ],
    }
    _emit(doc, args)
    _note(f"scenario {sc.name}: {len(sc.targets)} targets, files in {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="epiq",
        description="Workbench for the algebra and sequent calculus of epistemic actions",
    )
    p.add_argument("--format", choices=("json", "pretty"), default="json",
                   help="stdout JSON style")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check all algebraic laws of a system file")
    v.add_argument("system")
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("mc", help="model-check a sequent against a system")
    m.add_argument("sequent")
    m.add_argument("system")
    m.add_argument("bindings")
    m.set_defaults(func=cmd_mc)

    c = sub.add_parser("check", help="check a proof certificate")
    c.add_argument("proof")
    c.add_argument("--base", default=None, help="assumption base file")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("prove", help="search for a proof certificate")
    r.add_argument("sequent")
    r.add_argument("--base", default=None, help="assumption base file")
    r.add_argument("--depth", type=int, default=10)
    r.add_argument("--cut-pool", choices=("subformulas", "none"), default="subformulas")
    r.add_argument("--system", default=None,
                   help="optional system file for sound semantic pruning")
    r.add_argument("--bindings", default=None,
                   help="bindings file matching --system")
    r.set_defaults(func=cmd_prove)

    s = sub.add_parser("scenario", help="compile a named scenario to files")
    s.add_argument("name", choices=("muddy", "lying", "mitm"))
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--rounds", type=int, default=None)
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_scenario)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.SerializeError, ParseError, EvalError, ModelError, KeyError) as e:
        _note(f"error: {e}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
