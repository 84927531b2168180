"""Command-line interface: ``tsgen extract-rules | prove | generate | replay``.

Exit codes: 0 on success, 1 on bad input, 2 when the search gives up
without a proof.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .extraction import extract_rules, render_rules
from .isogen import generate, generation_to_json, render_generation
from .search import NotRefuted, SearchLimits, minimal_proofs
from .tableau import ReplayError, is_clean, proof_to_json, render_proof, replay
from .theory import TheoryError, parse_exercise, parse_theory


class InputError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        bundled = resources.files("tsgen") / "data" / p.name
        if bundled.is_file():
            return bundled.read_text(encoding="utf-8")
        raise InputError(f"{path}: no such file")
    return p.read_text(encoding="utf-8")


def _load(args):
    theory = parse_theory(_read(args.theory))
    return theory, extract_rules(theory)


def _exercise(args, theory):
    return parse_exercise(_read(args.exercise), theory)


def _limits(args) -> SearchLimits:
    return SearchLimits(max_apps=args.max_apps, timeout=args.timeout,
                        use_cut=not getattr(args, "no_cut", False))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run_extract(args, out) -> int:
    theory, rules = _load(args)
    if args.format == "json":
        out.write(_dump(rules.to_json()))
    else:
        out.write(render_rules(rules))
    return 0


def run_prove(args, out) -> int:
    theory, rules = _load(args)
    sfs = _exercise(args, theory)
    result = minimal_proofs(rules, sfs, _limits(args))
    proofs = result.proofs if args.all_minimal else result.proofs[:1]
    if args.format == "json":
        if args.all_minimal:
            out.write(_dump({"minimal_size": result.minimal_size,
                             "proofs": [proof_to_json(p) for p in proofs],
                             "states_per_level": result.stats.states_per_level}))
        else:
            out.write(_dump(proof_to_json(proofs[0])))
        return 0
    head = f"minimal deductive size {result.minimal_size}"
    if args.all_minimal:
        head += f"; {len(result.proofs)} minimal proof(s)"
    out.write(head + "\n")
    for k, p in enumerate(proofs, 1):
        out.write(f"\nproof {k}:\n" if args.all_minimal else "\n")
        out.write(render_proof(p))
    return 0


def run_generate(args, out) -> int:
    theory, rules = _load(args)
    sfs = _exercise(args, theory)
    g = generate(sfs, rules, theory, mode=args.mode, limits=_limits(args),
                 threads=args.threads)
    if args.format == "json":
        data = generation_to_json(g)
        if args.show_proofs:
            for o, c in zip(data["outputs"], g.outputs):
                o["witness"] = proof_to_json(c.witness)
        out.write(_dump(data))
    else:
        out.write(render_generation(g, show_proofs=args.show_proofs))
    return 0


def run_replay(args, out) -> int:
    theory, rules = _load(args)
    try:
        data = json.loads(_read(args.proof))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.proof}: not JSON ({exc})") from None
    if isinstance(data, dict) and "proofs" in data and "nodes" not in data:
        data = data["proofs"][0]
    proof = replay(data, rules, theory)
    clean = is_clean(proof)
    if args.format == "json":
        out.write(_dump({"valid": True, "size": proof.size, "clean": clean,
                         "closures": [list(d.closure) for d in proof.dags]}))
    else:
        out.write(f"valid proof; deductive size {proof.size}; "
                  f"{'clean' if clean else 'not clean'}\n\n")
        out.write(render_proof(proof))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tsgen", description="Theory-specific tableau proofs and exercise generation.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, exercise=True):
        p.add_argument("theory", help="theory file (.thy)")
        if exercise:
            p.add_argument("exercise", help="exercise file: one signed formula per line")
        p.add_argument("--format", choices=("text", "json"), default="text")

    def search_flags(p):
        p.add_argument("--max-apps", type=int, default=64, metavar="N",
                       help="cap on rule applications (default 64)")
        p.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
        p.add_argument("--no-cut", action="store_true", help="disable cut applications")

    p = sub.add_parser("extract-rules", help="list the rules extracted from a theory")
    common(p, exercise=False)
    p.set_defaults(run=run_extract)

    p = sub.add_parser("prove", help="search for minimal clean proofs")
    common(p)
    search_flags(p)
    p.add_argument("--all-minimal", action="store_true", help="print every minimal proof")
    p.set_defaults(run=run_prove)

    p = sub.add_parser("generate", help="generate exercises of comparable difficulty")
    common(p)
    search_flags(p)
    p.add_argument("--mode", choices=("fast", "strict"), default="fast")
    p.add_argument("--show-proofs", action="store_true")
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.set_defaults(run=run_generate)

    p = sub.add_parser("replay", help="check a serialized proof")
    p.add_argument("theory")
    p.add_argument("proof", help="proof JSON as written by prove --format json")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=run_replay)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except NotRefuted as exc:
        err.write(f"tsgen: {exc}\n")
        return 2
    except (TheoryError, ReplayError, InputError, ValueError) as exc:
        err.write(f"tsgen: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
