"""Minimal-proof search statistics on the bundled exercises.

Prints minimal size, number of minimal proofs, frontier sizes per level and
pruning counters, with and without the cut rule.

    python scripts/search_statistics.py [--max-apps N]
"""
import argparse
import time

from tsgen import load_bundled
from tsgen.extraction import extract_rules
from tsgen.search import NotRefuted, SearchLimits, minimal_proofs
from tsgen.theory import parse_exercise, parse_theory

EXERCISES = ("ex_inter.exc", "ex_diff.exc", "ex_nested.exc", "ex_distrib.exc", "ex_cut.exc",
             "sat.exc")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-apps", type=int, default=12)
    args = ap.parse_args()
    theory = parse_theory(load_bundled("sets.thy"))
    rules = extract_rules(theory)
    print(f"{'exercise':<16}{'cut':<5}{'size':>5}{'proofs':>8}{'merged':>8}"
          f"{'pruned':>8}{'ms':>9}  frontier per level")
    for name in EXERCISES:
        sfs = parse_exercise(load_bundled(name), theory)
        for use_cut in (True, False):
            limits = SearchLimits(max_apps=args.max_apps, use_cut=use_cut)
            start = time.perf_counter()
            try:
                res = minimal_proofs(rules, sfs, limits)
            except NotRefuted as exc:
                ms = (time.perf_counter() - start) * 1000
                print(f"{name:<16}{'yes' if use_cut else 'no':<5}{'-':>5}{'-':>8}{'-':>8}"
                      f"{'-':>8}{ms:>9.1f}  {exc}")
                continue
            ms = (time.perf_counter() - start) * 1000
            s = res.stats
            print(f"{name:<16}{'yes' if use_cut else 'no':<5}{res.minimal_size:>5}"
                  f"{len(res.proofs):>8}{s.merged:>8}{s.pruned_bound + s.pruned_dead:>8}"
                  f"{ms:>9.1f}  {s.states_per_level}")


if __name__ == "__main__":
    main()
