"""Run the rule-extraction pipeline axiom by axiom and report what survives.

For each axiom: its clauses, the implicational forms kept as rules and the
ones rejected together with the violated restriction.

    python scripts/extraction_report.py [theory.thy]
"""
import argparse
import time
from pathlib import Path

from tsgen import load_bundled
from tsgen.extraction import extract_axiom, extract_rules
from tsgen.syntax import pretty
from tsgen.theory import parse_theory


def show(items):
    return ", ".join(pretty(x) for x in items) or "∅"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("theory", nargs="?", help="theory file; the bundled sets theory by default")
    args = ap.parse_args()
    text = Path(args.theory).read_text(encoding="utf-8") if args.theory else load_bundled("sets.thy")
    theory = parse_theory(text)

    start = time.perf_counter()
    rules = extract_rules(theory)
    elapsed = time.perf_counter() - start

    for name, axiom in theory.axioms:
        ex = extract_axiom(name, axiom, theory.precedence)
        print(f"== {name}: {len(ex.clauses)} clause(s), {len(ex.rules)} rule(s)")
        for c in ex.clauses:
            print(f"   clause   {show(c.literals)}")
        for r in ex.rules:
            concl = "⊗" if r.conclusion is None else pretty(r.conclusion)
            print(f"   rule     {r.name}: {show(r.premises)} ⟹ {concl}")
        for imp, why in ex.rejected:
            concl = "⊥" if imp.conclusion is None else pretty(imp.conclusion)
            reasons = "; ".join(f"r{v.restriction}: {v.message}" for v in why)
            print(f"   rejected {show(imp.premises)} ⟹ {concl}  [{reasons}]")
    print()
    print(f"{len(rules)} rules, skolem symbols: "
          + ", ".join(f"{s.name}/{s.arity}" for s in rules.skolems))
    print(f"extraction time {elapsed * 1000:.1f} ms")


if __name__ == "__main__":
    main()
