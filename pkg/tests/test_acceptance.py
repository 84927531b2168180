"""One test per acceptance criterion, each at its stated tolerance and budget.

A pass/fail line per criterion is printed in the terminal summary.
"""
import random
import time

from tsgen.extraction import check_analytic, extract_axiom, extract_rules, rinf_forms
from tsgen.isogen import deductive_matching_symbols, deductively_isomorphic, generate
from tsgen.search import SearchLimits, minimal_proofs
from tsgen.syntax import Position, syntactically_isomorphic, to_text
from tsgen.tableau import is_clean, proof_to_json, replay

from conftest import RULES, SETS, SIG, bundled_exercise, criterion, exercise, fixture_json, \
    fixture_proof
from oracles import brute_force_minimal, clause_formula, random_atom, random_refutable, \
    structure, tt_equivalent
from test_extraction import canonical, golden_keys

DISTRIB_OUTPUTS = {
    ("+ in(x, inter(y, union(w, z)))", "- in(x, union(inter(y, w), z))"),
    ("+ in(x, inter(y, symdiff(w, z)))", "- in(x, union(inter(y, w), z))"),
    ("+ in(x, diff(y, diff(w, z)))", "- in(x, union(diff(y, w), z))"),
    ("+ in(x, diff(y, symdiff(w, z)))", "- in(x, union(diff(y, w), z))"),
    ("+ in(x, diff(y, diff(w, z)))", "- in(x, union(symdiff(y, w), z))"),
    ("+ in(x, diff(y, symdiff(w, z)))", "- in(x, union(symdiff(y, w), z))"),
}

SUITE_BUDGET = 600.0


def report(key, ok, detail):
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_rule_extraction():
    with criterion("1", "35 rules matching the expected rule table, < 1 s"):
        start = time.perf_counter()
        rules = extract_rules(SETS)
        elapsed = time.perf_counter() - start
        assert len(rules) == 35
        got = sorted(canonical(r.premises, r.conclusion) for r in rules)
        assert got == golden_keys()
        counts = {}
        for r in rules:
            counts[r.source_axiom] = counts.get(r.source_axiom, 0) + 1
        assert counts == {"emptyset": 1, "complement": 2, "union": 4, "inter": 4, "diff": 4,
                          "times": 4, "symdiff": 8, "subseteq": 4, "disj": 4}
        assert sorted(s.arity for s in rules.skolems) == [2, 2]
        assert elapsed < 1.0
    report("1", True, f"35 rules in {elapsed:.3f} s")


def test_criterion_2_deductive_sizes():
    with criterion("2", "replayed sizes 13, 4, 4 for the cut proof and the two small proofs"):
        sizes = [replay(fixture_json(n), RULES, SETS).size for n in ("cut", "inter", "diff")]
        assert sizes == [13, 4, 4]
    report("2", True, f"sizes {sizes}")


def test_criterion_3_minimal_search():
    with criterion("3", "minimal sizes 4 and 3, each search < 1 s"):
        start = time.perf_counter()
        res = minimal_proofs(RULES, exercise("+ in(x, inter(y, z))", "- in(x, y)"))
        t1 = time.perf_counter() - start
        assert res.minimal_size == 4
        assert any(deductively_isomorphic(p, fixture_proof("inter")) for p in res.proofs)
        start = time.perf_counter()
        res2 = minimal_proofs(RULES, exercise("+ in(x, y)", "- in(x, y)"))
        t2 = time.perf_counter() - start
        assert res2.minimal_size == 3
        assert all(p.applications == 0 for p in res2.proofs)
        assert t1 < 1.0 and t2 < 1.0
    report("3", True, f"{t1:.3f} s and {t2:.3f} s")


def test_criterion_4_generation():
    with criterion("4", "144 candidates and exactly the six expected sets, < 5 min"):
        start = time.perf_counter()
        g = generate(bundled_exercise("ex_distrib.exc"), RULES, SETS, mode="fast", threads=1)
        elapsed = time.perf_counter() - start
        assert g.candidates_considered == 144
        got = {tuple(f"{x.sign} {to_text(x.formula)}" for x in c.signed_formulas)
               for c in g.outputs}
        assert got == DISTRIB_OUTPUTS
        assert elapsed < 300.0
    report("4", True, f"{len(got)} sets from 144 candidates in {elapsed:.1f} s")


def test_criterion_5_matching_symbols():
    with criterion("5", "matching symbols {∩,∪,\\} and {∩,∪,\\,△}"):
        cap = Position((2,))
        one = {s.name for s in deductive_matching_symbols(RULES, RULES["+interE1"], 0, cap)}
        two = {s.name for s in deductive_matching_symbols(RULES, RULES["-interE1"], 0, cap)}
        assert one == {"inter", "union", "diff"}
        assert two == {"inter", "union", "diff", "symdiff"}
    report("5", True, f"{sorted(one)} and {sorted(two)}")


def test_criterion_6_isomorphism_suite():
    with criterion("6", "isomorphism verdicts true, true, false; cleanliness true/false"):
        f = fixture_proof
        assert deductively_isomorphic(f("distrib"), f("distrib_variant")) is True
        assert deductively_isomorphic(f("inter"), f("diff")) is True
        assert deductively_isomorphic(f("complement"), f("detour")) is False
        assert is_clean(f("complement")) is True
        assert is_clean(f("detour")) is False
    report("6", True, "all verdicts as expected")


# --- property-based criteria ----------------------------------------------------------------

def _equivalence_holds(rel, pool, rng, samples):
    cache = {}

    def r(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = rel(pool[i], pool[j])
        return cache[(i, j)]

    positives = 0
    for _ in range(samples):
        a, b, c = (rng.randrange(len(pool)) for _ in range(3))
        assert r(a, a)
        assert r(a, b) == r(b, a)
        if r(a, b) and r(b, c):
            assert r(a, c)
        positives += r(a, b) and a != b
    return positives


def _proof_pool():
    pool = [fixture_proof(n) for n in ("cut", "inter", "diff", "distrib", "complement", "detour",
                                       "nested", "distrib_variant")]
    g = generate(bundled_exercise("ex_distrib.exc"), RULES, SETS)
    pool += [c.witness for c in g.outputs]
    g = generate(bundled_exercise("ex_inter.exc"), RULES, SETS)
    pool += [c.witness for c in g.outputs]
    rng = random.Random(13)
    while len(pool) < 60:
        sfs = random_refutable(rng, RULES, SIG, steps=(1, 4))
        pool += list(minimal_proofs(RULES, sfs, SearchLimits(max_apps=6)).proofs[:2])
    return pool


def test_criterion_7a_isomorphism_is_an_equivalence():
    with criterion("7a", "both isomorphisms are equivalences on 1000 samples each"):
        start = time.perf_counter()
        rng = random.Random(1)
        atoms = [random_atom(rng, SIG) for _ in range(40)]
        # shape-preserving variants so that related pairs actually occur
        atoms += [a.__class__(a.head, tuple(reversed(a.args))) for a in atoms[:20]]
        syn = _equivalence_holds(syntactically_isomorphic, atoms, rng, 1000)
        ded = _equivalence_holds(deductively_isomorphic, _proof_pool(), rng, 1000)
        elapsed = time.perf_counter() - start
        assert syn > 0 and ded > 0
        assert elapsed < SUITE_BUDGET
    report("7a", True, f"{syn} and {ded} related pairs seen, {elapsed:.1f} s")


def test_criterion_7b_rules_are_analytic():
    with criterion("7b", "every extracted rule passes the analytic restrictions"):
        bad = [r.name for r in RULES if check_analytic(r, SETS.precedence)]
        assert bad == []
    report("7b", True, "35 of 35 rules analytic")


def test_criterion_7c_rinf_equisatisfiable():
    with criterion("7c", "every implicational form agrees with its clause on all valuations"):
        start = time.perf_counter()
        checked = 0
        for name, ax in SETS.axioms:
            for c in extract_axiom(name, ax, SETS.precedence).clauses:
                for form in rinf_forms(c):
                    assert tt_equivalent(form.formula(), clause_formula(c.literals))
                    checked += 1
        assert time.perf_counter() - start < SUITE_BUDGET
    report("7c", True, f"{checked} forms checked")


def test_criterion_7d_oracle_equivalence():
    with criterion("7d", "pruned search equals brute force on 50 random exercises"):
        start = time.perf_counter()
        rng = random.Random(7)
        seen = set()
        n = 0
        while n < 50:
            sfs = random_refutable(rng, RULES, SIG, max_depth=3, steps=(2, 5))
            if tuple(sfs) in seen:
                continue
            seen.add(tuple(sfs))
            res = minimal_proofs(RULES, sfs, SearchLimits(max_apps=8))
            best, shapes = brute_force_minimal(RULES, sfs, max_apps=8)
            assert res.minimal_size == best, sfs
            assert {structure(p.tableau) for p in res.proofs} == shapes, sfs
            n += 1
        elapsed = time.perf_counter() - start
        assert elapsed < SUITE_BUDGET
    report("7d", True, f"50 exercises agree, {elapsed:.1f} s")


def test_criterion_7e_witnesses_replay():
    with criterion("7e", "every generated witness replays with its reported size"):
        start = time.perf_counter()
        total = 0
        for name in ("ex_inter.exc", "ex_distrib.exc", "ex_nested.exc", "ex_cut.exc"):
            g = generate(bundled_exercise(name), RULES, SETS)
            assert g.outputs[0].signed_formulas == g.input
            for c in g.outputs:
                again = replay(proof_to_json(c.witness), RULES, SETS)
                assert again.size == c.witness_size
                assert tuple(again.tableau.node(i).sf for i in again.tableau.hypotheses) == \
                    c.signed_formulas
                total += 1
        elapsed = time.perf_counter() - start
        assert elapsed < SUITE_BUDGET
    report("7e", True, f"{total} witnesses replayed, {elapsed:.1f} s")
