import itertools
import json
import time

import pytest
from hypothesis import given, settings

from tsgen.extraction import (
    Clause, Rule, RuleSet, check_analytic, correspondent_formula, cut_seed_pairs,
    extract_axiom, extract_rules, rinf_forms, to_cnf, to_pattern, to_pnf,
)
from tsgen.syntax import (
    SKOLEM, VARIABLE, And, Atom, ForAll, Implies, Symbol, Term,
    fo_to_text, pretty, walk,
)
from tsgen.theory import parse_formula, parse_signed, parse_theory, signature

from conftest import RULES, SETS, SIG, sf
from oracles import atoms_of, clause_formula, tt_equivalent, tt_eval, valuations
from strategies import propositional

SK_SIG = signature(SETS, RULES.skolems)

# The expected rule set, premises then conclusion ("close" for ⊗).
GOLDEN = [
    (["+ in(x, emptyset)"], "close"),
    (["+ in(x, complement(y))"], "- in(x, y)"),
    (["- in(x, complement(y))"], "+ in(x, y)"),
    (["+ in(x, union(y, z))", "- in(x, y)"], "+ in(x, z)"),
    (["+ in(x, union(y, z))", "- in(x, z)"], "+ in(x, y)"),
    (["- in(x, union(y, z))"], "- in(x, y)"),
    (["- in(x, union(y, z))"], "- in(x, z)"),
    (["+ in(x, inter(y, z))"], "+ in(x, y)"),
    (["+ in(x, inter(y, z))"], "+ in(x, z)"),
    (["- in(x, inter(y, z))", "+ in(x, y)"], "- in(x, z)"),
    (["- in(x, inter(y, z))", "+ in(x, z)"], "- in(x, y)"),
    (["+ in(x, diff(y, z))"], "+ in(x, y)"),
    (["+ in(x, diff(y, z))"], "- in(x, z)"),
    (["- in(x, diff(y, z))", "+ in(x, y)"], "+ in(x, z)"),
    (["- in(x, diff(y, z))", "- in(x, z)"], "- in(x, y)"),
    (["+ in(x, times(y, z))"], "+ in(fst(x), y)"),
    (["+ in(x, times(y, z))"], "+ in(snd(x), z)"),
    (["- in(x, times(y, z))", "+ in(fst(x), y)"], "- in(snd(x), z)"),
    (["- in(x, times(y, z))", "+ in(snd(x), z)"], "- in(fst(x), y)"),
    (["+ in(x, symdiff(y, z))", "- in(x, y)"], "+ in(x, z)"),
    (["+ in(x, symdiff(y, z))", "- in(x, z)"], "+ in(x, y)"),
    (["+ in(x, symdiff(y, z))", "+ in(x, y)"], "- in(x, z)"),
    (["+ in(x, symdiff(y, z))", "+ in(x, z)"], "- in(x, y)"),
    (["- in(x, symdiff(y, z))", "+ in(x, y)"], "+ in(x, z)"),
    (["- in(x, symdiff(y, z))", "- in(x, y)"], "- in(x, z)"),
    (["- in(x, symdiff(y, z))", "+ in(x, z)"], "+ in(x, y)"),
    (["- in(x, symdiff(y, z))", "- in(x, z)"], "- in(x, y)"),
    (["+ subseteq(x, y)", "+ in(z, x)"], "+ in(z, y)"),
    (["+ subseteq(x, y)", "- in(z, y)"], "- in(z, x)"),
    (["- subseteq(x, y)"], "+ in(sk_subseteq_1(x, y), x)"),
    (["- subseteq(x, y)"], "- in(sk_subseteq_1(x, y), y)"),
    (["+ disj(x, y)", "+ in(z, x)"], "- in(z, y)"),
    (["+ disj(x, y)", "+ in(z, y)"], "- in(z, x)"),
    (["- disj(x, y)"], "+ in(sk_disj_1(x, y), x)"),
    (["- disj(x, y)"], "+ in(sk_disj_1(x, y), y)"),
]


def canonical(premises, conclusion):
    """Rule text invariant under renaming of variables and skolem symbols."""
    items = list(premises) + ([] if conclusion is None else [conclusion])
    names = sorted({s.name for x in items for _, s in walk(x.formula) if s.is_variable})
    best = None
    for perm in itertools.permutations(range(len(names))):
        m = {n: f"v{i}" for n, i in zip(names, perm)}

        def text(x):
            out = []
            for _, s in walk(x.formula):
                if s.is_variable:
                    out.append(m[s.name])
                elif s.kind == SKOLEM:
                    out.append(f"sk/{s.arity}")
                else:
                    out.append(s.name)
            return x.sign + " ".join(out)

        key = (tuple(sorted(text(p) for p in premises)),
               "close" if conclusion is None else text(conclusion))
        best = key if best is None or key < best else best
    return best


def golden_keys():
    out = []
    for prem, concl in GOLDEN:
        ps = [parse_signed(p, SK_SIG) for p in prem]
        c = None if concl == "close" else parse_signed(concl, SK_SIG)
        out.append(canonical(ps, c))
    return sorted(out)


def test_golden_rule_set():
    got = sorted(canonical(r.premises, r.conclusion) for r in RULES)
    assert got == golden_keys()


def test_rule_counts_per_axiom():
    counts = {}
    for r in RULES:
        counts[r.source_axiom] = counts.get(r.source_axiom, 0) + 1
    assert counts == {"emptyset": 1, "complement": 2, "union": 4, "inter": 4, "diff": 4,
                      "times": 4, "symdiff": 8, "subseteq": 4, "disj": 4}
    assert sorted((s.name, s.arity) for s in RULES.skolems) == [
        ("sk_disj_1", 2), ("sk_subseteq_1", 2)]


def test_skolems_are_fresh():
    names = {s.name for s in SETS.functions} | {s.name for s in SETS.predicates}
    assert not names & {s.name for s in RULES.skolems}


def test_every_rule_is_analytic_and_atomic():
    for r in RULES:
        assert check_analytic(r, SETS.precedence) == []
        for p in r.premises + ((r.conclusion,) if r.conclusion else ()):
            assert isinstance(p.formula, Atom)


def test_rule_names_and_main_premises():
    r = RULES["+unionE1"]
    assert r.source_axiom == "union"
    for r in RULES:
        assert r.name[0] == r.premises[0].sign
        if len(r.premises) >= 2 and r.main_premises:
            assert r.main_premises == (0,)


def test_extraction_is_deterministic():
    again = extract_rules(parse_theory(__import__("tsgen").load_bundled("sets.thy")))
    assert [str(r) for r in again] == [str(r) for r in RULES]
    assert again.skolems == RULES.skolems


def test_json_roundtrip():
    data = json.loads(json.dumps(RULES.to_json()))
    assert len(data) == 35
    back = RuleSet.from_json(data, SETS)
    assert [str(r) for r in back] == [str(r) for r in RULES]
    assert [r.main_premises for r in back] == [r.main_premises for r in RULES]


# --- pipeline stages -----------------------------------------------------------------

def test_pnf_of_prenex_axiom_is_unchanged():
    ax = SETS.axiom("emptyset")
    assert to_pnf(ax) == ax


def test_pnf_hoists_quantifiers():
    th = parse_theory("theory t\npredicate p 1\npredicate q 1\n"
                      "axiom a: forall x . (p(x) and forall y . q(y))\n")
    got = to_pnf(th.axiom("a"))
    assert isinstance(got, ForAll) and isinstance(got.body, ForAll)
    assert isinstance(got.body.body, And)


def _subseteq_stages():
    ex = extract_axiom("subseteq", SETS.axiom("subseteq"), SETS.precedence)
    return ex, ex.skolems[0]


def test_skolemized_subseteq_matrix():
    ex, f = _subseteq_stages()
    assert f.arity == 2 and f.kind == SKOLEM
    x, y, z = (Term(Symbol(n, VARIABLE)) for n in "xyz")
    fx = Term(f, (x, y))
    IN, SUB = SIG["in"], SIG["subseteq"]
    expected = And(
        Implies(Implies(Atom(IN, (fx, x)), Atom(IN, (fx, y))), Atom(SUB, (x, y))),
        Implies(Atom(SUB, (x, y)), Implies(Atom(IN, (z, x)), Atom(IN, (z, y)))))
    assert tt_equivalent(ex.matrix, expected)


def _clause_set(clauses):
    return {frozenset(c.literals) for c in clauses}


def _literals(*texts):
    return frozenset(parse_signed(t, SK_SIG) for t in texts)


def test_cnf_of_subseteq():
    ex, _ = _subseteq_stages()
    assert _clause_set(ex.clauses) == {
        _literals("+ in(sk_subseteq_1(x, y), x)", "+ subseteq(x, y)"),
        _literals("- in(sk_subseteq_1(x, y), y)", "+ subseteq(x, y)"),
        _literals("- subseteq(x, y)", "- in(z, x)", "+ in(z, y)"),
    }


def test_cnf_of_union_and_emptyset():
    ex = extract_axiom("union", SETS.axiom("union"), SETS.precedence)
    assert _clause_set(ex.clauses) == {
        _literals("- in(x, union(y, z))", "+ in(x, y)", "+ in(x, z)"),
        _literals("- in(x, y)", "+ in(x, union(y, z))"),
        _literals("- in(x, z)", "+ in(x, union(y, z))"),
    }
    ex = extract_axiom("emptyset", SETS.axiom("emptyset"), SETS.precedence)
    assert _clause_set(ex.clauses) == {_literals("- in(x, emptyset)")}


def test_rinf_forms_of_three_literal_clause():
    c = Clause(tuple(parse_signed(t, SIG) for t in
                     ("- subseteq(x, y)", "- in(z, x)", "+ in(z, y)")))
    forms = rinf_forms(c)
    assert len(forms) == 3
    texts = {(frozenset(pretty(p) for p in f.premises), pretty(f.conclusion)) for f in forms}
    assert texts == {
        (frozenset({"+x ⊆ y", "-z ∈ y"}), "-z ∈ x"),
        (frozenset({"+x ⊆ y", "+z ∈ x"}), "+z ∈ y"),
        (frozenset({"+z ∈ x", "-z ∈ y"}), "-x ⊆ y"),
    }
    for f in forms:
        assert tt_equivalent(f.formula(), clause_formula(c.literals))


def test_single_literal_clauses_only_close():
    neg = rinf_forms(Clause((sf("- in(x, emptyset)"),)))
    assert len(neg) == 1 and neg[0].conclusion is None
    assert neg[0].premises == (sf("+ in(x, emptyset)"),)
    pos = rinf_forms(Clause((sf("+ in(x, y)"),)))
    assert len(pos) == 1 and pos[0].premises == (sf("- in(x, y)"),)


def test_two_literal_clause():
    c = Clause((sf("- in(x, y)"), sf("+ in(x, union(y, z))")))
    forms = {(f.premises, f.conclusion) for f in rinf_forms(c)}
    assert forms == {
        ((sf("- in(x, union(y, z))"),), sf("- in(x, y)")),
        ((sf("+ in(x, y)"),), sf("+ in(x, union(y, z))")),
    }


def rule(premises, conclusion):
    return Rule("r", tuple(to_pattern(sf(p)) for p in premises),
                None if conclusion is None else to_pattern(sf(conclusion)))


def test_analytic_restrictions_on_sample_schemas():
    a = check_analytic(rule(["+ in(x, y)"], "+ in(x, union(y, z))"), SETS.precedence)
    assert sorted(v.restriction for v in a) == [1, 3]
    b = check_analytic(rule(["+ in(z, x)", "- in(z, y)"], "- subseteq(x, y)"), SETS.precedence)
    assert [v.restriction for v in b] == [2]
    c = check_analytic(rule(["+ subseteq(x, y)", "- in(z, y)"], "- in(z, x)"), SETS.precedence)
    assert c == []


def test_commutation_axiom_yields_no_rule():
    th = parse_theory(
        "theory t\nfunction union 2\npredicate in 2\n"
        "axiom comm: forall x y z . in(x, union(y, z)) -> in(x, union(z, y))\n")
    assert len(extract_rules(th)) == 0


def test_emptyset_gives_a_single_close_rule():
    closing = [r for r in RULES if r.source_axiom == "emptyset"]
    assert len(closing) == 1
    assert closing[0].closes and closing[0].premises == (to_pattern(sf("+ in(x, emptyset)")),)


def test_correspondent_formulas():
    r = rule(["+ in(x, inter(y, z))"], "+ in(x, y)")
    assert fo_to_text(correspondent_formula(r)) == "in(x, inter(y, z)) -> in(x, y)"
    assert fo_to_text(correspondent_formula(RULES.closing[0])) == "in(x, emptyset) -> bottom"
    r = rule(["+ subseteq(x, y)", "- in(z, y)"], "- in(z, x)")
    assert fo_to_text(correspondent_formula(r)) == \
        "(subseteq(x, y) and not in(z, y)) -> not in(z, x)"


def test_cut_seeds():
    seeds = cut_seed_pairs(RULES)
    by_rule = {}
    for s in seeds:
        by_rule.setdefault(s.rule.name, []).append(s)
    minus_inter = [r for r in RULES if r.name.startswith("-interE")]
    for r in minus_inter:
        (s,) = by_rule[r.name]
        assert pretty(r.premises[s.main]) == "-x ∈ y ∩ z"
        assert len(s.minors) == 1
    for r in RULES:
        if r.source_axiom == "subseteq" or len(r.premises) == 1:
            assert r.name not in by_rule


def test_rules_are_sound_in_the_models():
    from oracles import MODELS
    for r in RULES:
        if any(s.kind == SKOLEM for p in r.premises for _, s in walk(p.formula)):
            continue
        if r.conclusion is not None and any(s.kind == SKOLEM
                                            for _, s in walk(r.conclusion.formula)):
            continue
        f = correspondent_formula(r)
        names = sorted({s.name for p in r.premises for _, s in walk(p.formula)
                        if s.is_variable})
        for m in MODELS:
            for values in itertools.product(m.domain, repeat=len(names)):
                assert m.holds(f, dict(zip(names, values))), r.name


# --- truth-table oracles --------------------------------------------------------------

ATOM_POOL = [parse_formula(t, SIG) for t in
             ("in(x, y)", "in(x, z)", "subseteq(x, y)", "in(z, union(x, y))")]


@settings(max_examples=200)
@given(propositional(ATOM_POOL))
def test_cnf_is_equivalent(f):
    clauses = to_cnf(f)
    for c in clauses:
        assert len(set(c.literals)) == len(c.literals)
        assert not any(l.conjugate() in c.literals for l in c.literals)
    atoms = atoms_of(f)
    for v in valuations(atoms):
        want = tt_eval(f, v)
        got = all(any(v[l.formula] == l.positive for l in c.literals) for c in clauses)
        assert got == want


@settings(max_examples=200)
@given(propositional(ATOM_POOL))
def test_rinf_forms_match_their_clause(f):
    for c in to_cnf(f):
        for form in rinf_forms(c):
            assert tt_equivalent(form.formula(), clause_formula(c.literals))


@pytest.mark.parametrize("name", [a for a, _ in SETS.axioms])
def test_clauses_match_skolemized_matrix(name):
    ex = extract_axiom(name, SETS.axiom(name), SETS.precedence)
    conj = None
    for c in ex.clauses:
        g = clause_formula(c.literals)
        conj = g if conj is None else And(conj, g)
    assert tt_equivalent(conj, ex.matrix)
    for c in ex.clauses:
        for form in rinf_forms(c):
            assert tt_equivalent(form.formula(), clause_formula(c.literals))


def test_extraction_runs_fast():
    start = time.perf_counter()
    extract_rules(SETS)
    assert time.perf_counter() - start < 1.0
