"""Deductive isomorphism of proofs and generation of comparable exercises.

Generation takes a minimal proof of an exercise, works out for every symbol
occurrence of the exercise which replacement symbols keep the rules used by
the proof applicable (the symbol choice table), and keeps each candidate
exercise that admits a proof deductively isomorphic to the source one.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .extraction import Rule, RuleSet
from .search import NotRefuted, SearchLimits, minimal_proofs
from .syntax import (
    FUNCTION, PATTERN, PREDICATE, Position, SignedFormula,
    all_variables, match, occurrence_index, pretty, replace_symbol_at, shape,
    substitute, subtree_at, syntactically_isomorphic, walk,
)
from .tableau import (
    CutApp, CutIntro, Hyp, LinearApp, Proof, RuleApp, TableauError, apply,
    cut_formulas_licensed_by, init_tableau, relabel, tableau_closed,
)


# --- deductive isomorphism ------------------------------------------------------

def _dag_kind(t, i) -> str:
    if i == 0:
        return "close"
    return t.node(i).just.kind


def _dag_children(t, dag, i) -> tuple:
    return dag.children(t, i)


def dags_isomorphic(t1, d1, t2, d2) -> bool:
    """Rooted-DAG isomorphism preserving kinds, child multisets and formula shape."""
    if len(d1.nodes) != len(d2.nodes):
        return False

    def compatible(a, b):
        if _dag_kind(t1, a) != _dag_kind(t2, b):
            return False
        if a == 0:
            return True
        if not syntactically_isomorphic(t1.node(a).sf, t2.node(b).sf):
            return False
        return len(_dag_children(t1, d1, a)) == len(_dag_children(t2, d2, b))

    def unify(pairs, fwd, bwd):
        # pairs: list of (a, b) still to check; fwd/bwd partial bijection
        if not pairs:
            return True
        (a, b), rest = pairs[0], pairs[1:]
        if a in fwd or b in bwd:
            if fwd.get(a) == b and bwd.get(b) == a:
                return unify(rest, fwd, bwd)
            return False
        if not compatible(a, b):
            return False
        fwd2, bwd2 = dict(fwd), dict(bwd)
        fwd2[a], bwd2[b] = b, a
        ka = _dag_children(t1, d1, a)
        kb = _dag_children(t2, d2, b)
        seen = set()
        for perm in itertools.permutations(kb):
            if perm in seen:
                continue
            seen.add(perm)
            if unify(list(zip(ka, perm)) + rest, fwd2, bwd2):
                return True
        return False

    return unify([(0, 0)], {}, {})


def deductively_isomorphic(p1: Proof, p2: Proof) -> bool:
    """Bijection of branches with equal node counts and isomorphic minimal DAGs."""
    t1, t2 = p1.tableau, p2.tableau
    b1, b2 = list(p1.dags), list(p2.dags)
    if len(b1) != len(b2):
        return False

    def assign(k, used):
        if k == len(b1):
            return True
        d1 = b1[k]
        for j, d2 in enumerate(b2):
            if j in used or len(d1.branch) != len(d2.branch):
                continue
            if dags_isomorphic(t1, d1, t2, d2) and assign(k + 1, used | {j}):
                return True
        return False

    return assign(0, frozenset())


# --- deductive matching symbols ------------------------------------------------------

def _bijections(src, dst):
    src, dst = sorted(src, key=lambda s: s.name), sorted(dst, key=lambda s: s.name)
    if len(src) != len(dst):
        return
    for perm in itertools.permutations(dst):
        yield dict(zip(src, perm))


def rule_correspondences(r1: Rule, r2: Rule):
    """Premise permutations aligning ``r1`` with ``r2`` up to syntactic isomorphism.

    Yields tuples ``perm`` with premise ``i`` of ``r1`` corresponding to
    premise ``perm[i]`` of ``r2``, under one rule-wide bijection of pattern
    variables.  Conclusions must correspond too; CLOSE only matches CLOSE.
    Signs play no part.
    """
    if len(r1.premises) != len(r2.premises) or r1.closes != r2.closes:
        return
    if not r1.closes and shape(r1.conclusion) != shape(r2.conclusion):
        return
    v1, v2 = r1.variables(), r2.variables()
    found = set()
    for perm in itertools.permutations(range(len(r2.premises))):
        if perm in found:
            continue
        if any(shape(r1.premises[i]) != shape(r2.premises[j]) for i, j in enumerate(perm)):
            continue
        for beta in _bijections(v1, v2):
            ok = all(
                {beta[v] for v in all_variables(r1.premises[i])} == all_variables(r2.premises[j])
                for i, j in enumerate(perm))
            if ok and not r1.closes:
                ok = {beta[v] for v in all_variables(r1.conclusion)} == all_variables(r2.conclusion)
            if ok:
                found.add(perm)
                yield perm
                break


def deductive_matching_symbols(rules: RuleSet, rule: Rule, premise: int, position) -> frozenset:
    """Symbols at ``position`` of the corresponding premise of isomorphic rules."""
    position = Position(position)
    sym = subtree_at(rule.premises[premise].formula, position).head
    out = set()
    for r2 in rules:
        for perm in rule_correspondences(rule, r2):
            s2 = subtree_at(r2.premises[perm[premise]].formula, position).head
            if s2.kind in (FUNCTION, PREDICATE) and s2.arity == sym.arity:
                out.add(s2)
    return frozenset(out)


# --- occurrences in proofs -------------------------------------------------------------

@dataclass(frozen=True)
class JustificationMatch:
    """Node ``node`` instantiates premise ``premise`` of ``rule`` in the
    application that added node ``application``; ``position`` is concrete there."""

    application: int
    rule: Rule
    premise: int
    position: Position


def _pattern_var_prefix(pattern, position):
    """First pattern variable met walking ``position`` down ``pattern``."""
    node = pattern
    for k, i in enumerate(position):
        if node.head.kind == PATTERN:
            return node.head, Position(position[:k])
        if i > len(node.args):
            return None
        node = node.args[i - 1]
    if node.head.kind == PATTERN:
        return node.head, Position(position)
    return None


def justification_matches(p: Proof, node: int, position, rules: RuleSet) -> list:
    position = Position(position)
    t = p.tableau
    out = []
    for n in t.nodes:
        if not isinstance(n.just, RuleApp):
            continue
        r = rules[n.just.rule]
        for k, prem in enumerate(n.just.premises):
            if prem != node:
                continue
            pat = r.premises[k].formula
            if _pattern_var_prefix(pat, position) is None:
                out.append(JustificationMatch(n.id, r, k, position))
    return out


def justification_matching_occurrence(p: Proof, node: int, position, rules: RuleSet):
    ms = justification_matches(p, node, position, rules)
    return ms[0] if ms else None


def direct_descendants(p: Proof, node: int, position, rules: RuleSet) -> list:
    position = Position(position)
    t = p.tableau
    out = []
    for n in t.nodes:
        if not isinstance(n.just, RuleApp):
            continue
        r = rules[n.just.rule]
        for k, prem in enumerate(n.just.premises):
            if prem != node:
                continue
            hit = _pattern_var_prefix(r.premises[k].formula, position)
            if hit is None:
                continue
            v, q = hit
            rel = position[len(q):]
            for q2, s in walk(r.conclusion.formula):
                if s == v:
                    ref = (n.id, Position(tuple(q2) + tuple(rel)))
                    if ref not in out:
                        out.append(ref)
    return out


def descendant_occurrences(p: Proof, node: int, position, rules: RuleSet) -> list:
    """Reflexive-transitive closure of the direct-descendant relation."""
    start = (node, Position(position))
    seen = [start]
    todo = [start]
    while todo:
        n, q = todo.pop()
        for ref in direct_descendants(p, n, q, rules):
            if ref not in seen:
                seen.append(ref)
                todo.append(ref)
    return sorted(seen)


# --- symbol choice table -----------------------------------------------------------

@dataclass(frozen=True)
class OccurrenceRef:
    formula: int  # 0-based index into the exercise
    symbol: object
    occurrence: int  # 1-based, pre-order
    position: Position

    def describe(self, sfs) -> str:
        return (f"{self.symbol.name} (occurrence {self.occurrence}, position {self.position}) "
                f"of {pretty(sfs[self.formula])}")


@dataclass(frozen=True)
class SymbolChoiceTable:
    entries: tuple  # of (OccurrenceRef, tuple of Symbol, original first)

    def sizes(self) -> list:
        return [len(c) for _, c in self.entries]

    def product(self) -> int:
        out = 1
        for n in self.sizes():
            out *= n
        return out

    def choices(self, ref: OccurrenceRef) -> tuple:
        for r, c in self.entries:
            if r == ref:
                return c
        raise KeyError(ref)


def _same_arity(theory, sym, kind) -> list:
    pool = theory.predicates if kind == PREDICATE else theory.functions
    return [s for s in pool if s.arity == sym.arity]


def _hyp_node(p: Proof, sf: SignedFormula) -> int | None:
    for n in p.tableau.nodes:
        if isinstance(n.just, Hyp) and n.sf == sf:
            return n.id
    return None


def admissible_symbols(p: Proof, sf: SignedFormula, position, rules: RuleSet, theory) -> list:
    position = Position(position)
    sym = subtree_at(sf.formula, position).head
    node = _hyp_node(p, sf)
    sets = []
    if node is not None:
        refs = [(node, position)] if sym.kind == PREDICATE else \
            descendant_occurrences(p, node, position, rules)
        for n, q in refs:
            for m in justification_matches(p, n, q, rules):
                sets.append(deductive_matching_symbols(rules, m.rule, m.premise, q))
    pool = _same_arity(theory, sym, sym.kind)
    if sets:
        allowed = frozenset.intersection(*sets)
        pool = [s for s in pool if s in allowed]
    return [sym] + [s for s in pool if s != sym]


def symbol_choice_table(sfs, p: Proof, rules: RuleSet, theory) -> SymbolChoiceTable:
    entries = []
    for i, sf in enumerate(sfs):
        for pos, s in walk(sf.formula):
            if s.kind not in (FUNCTION, PREDICATE):
                continue
            ref = OccurrenceRef(i, s, occurrence_index(sf.formula, pos), pos)
            entries.append((ref, tuple(admissible_symbols(p, sf, pos, rules, theory))))
    return SymbolChoiceTable(tuple(entries))


def enumerate_candidates(table: SymbolChoiceTable, sfs):
    """Yield ``(candidate, replacements)`` over the product of admissible sets.

    The identity assignment comes first; ``replacements`` maps the changed
    occurrences to their new symbols.
    """
    refs = [r for r, _ in table.entries]
    for combo in itertools.product(*(c for _, c in table.entries)):
        out = list(sfs)
        changed = {}
        for ref, s in zip(refs, combo):
            if s == ref.symbol:
                continue
            changed[ref] = s
            f = replace_symbol_at(out[ref.formula].formula, ref.position, s)
            out[ref.formula] = SignedFormula(out[ref.formula].positive, f)
        yield tuple(out), changed


# --- guided replay ------------------------------------------------------------------

def guided_replay(p: Proof, candidate, rules: RuleSet) -> Proof | None:
    """A proof of ``candidate`` step-for-step isomorphic to ``p``, or None.

    ``candidate`` lists the signed formulas in the order of ``p``'s
    hypotheses.  Each step of ``p`` is redone with some rule (or cut) on the
    images of its justifying nodes, producing a formula syntactically
    isomorphic to the original node; the result must be closed, clean and
    deductively isomorphic to ``p``.
    """
    candidate = tuple(candidate)
    if len(set(candidate)) != len(candidate):
        return None
    src = p.tableau
    hyps = [n for n in src.nodes if isinstance(n.just, Hyp)]
    if len(hyps) != len(candidate):
        return None
    try:
        start = init_tableau(candidate, rules)
    except ValueError:
        return None
    steps = [n for n in src.nodes if not isinstance(n.just, Hyp)]
    by_arity: dict = {}
    for r in rules.linear:
        by_arity.setdefault(len(r.premises), []).append(r)

    def go(k, t, ours):
        while k < len(steps) and steps[k].id in ours:
            k += 1
        if k == len(steps):
            if not tableau_closed(t):
                return None
            back = {v: key for key, v in ours.items()}
            w = Proof.of(relabel(t, back))
            if w.clean and deductively_isomorphic(p, w):
                return w
            return None
        n = steps[k]
        leaf = ours[n.parent]
        if leaf not in t.leaves or leaf in t.closed_leaves:
            return None
        if isinstance(n.just, RuleApp):
            prem = [ours[i] for i in n.just.premises]
            for r in by_arity.get(len(prem), ()):
                for order in set(itertools.permutations(prem)):
                    subst: dict | None = {}
                    for pat, i in zip(r.premises, order):
                        subst = match(pat, t.node(i).sf, subst)
                        if subst is None:
                            break
                    if subst is None:
                        continue
                    concl = substitute(r.conclusion, subst)
                    if not syntactically_isomorphic(concl, n.sf):
                        continue
                    try:
                        t2 = apply(t, LinearApp(leaf, r, tuple(order), concl))
                    except TableauError:
                        continue
                    got = go(k + 1, t2, {**ours, n.id: len(t2.nodes)})
                    if got is not None:
                        return got
            return None
        if isinstance(n.just, CutIntro):
            lic = ours[n.just.license]
            twin = next(c for c in src.children(n.parent) if c != n.id)
            pos_id, neg_id = (n.id, twin) if n.sf.positive else (twin, n.id)
            for f in cut_formulas_licensed_by(t.node(lic).sf, rules):
                if not syntactically_isomorphic(f, n.sf.formula):
                    continue
                try:
                    t2 = apply(t, CutApp(leaf, f, lic))
                except TableauError:
                    continue
                m = len(t2.nodes)
                got = go(k + 1, t2, {**ours, pos_id: m - 1, neg_id: m})
                if got is not None:
                    return got
            return None
        return None

    return go(0, start, {0: 0, **{h.id: i for i, h in enumerate(hyps, 1)}})


# --- generation -----------------------------------------------------------------------

@dataclass(frozen=True)
class CandidateSet:
    signed_formulas: tuple
    replacements: tuple  # of (OccurrenceRef, Symbol), changed occurrences only
    witness: Proof | None
    strict_verified: bool = False

    @property
    def witness_size(self) -> int | None:
        return None if self.witness is None else self.witness.size


@dataclass(frozen=True)
class GenerationResult:
    input: tuple
    mode: str
    minimal_size: int
    candidates_considered: int
    outputs: tuple
    source_proofs: tuple = ()
    tables: tuple = ()


def _text_key(sfs) -> str:
    return " | ".join(pretty(sf) for sf in sfs)


def generate(sfs, rules: RuleSet, theory, mode: str = "fast",
             limits: SearchLimits | None = None, threads: int = 1) -> GenerationResult:
    """Exercises of comparable proving complexity to ``sfs``.

    ``fast`` keeps every candidate with an isomorphic witness proof;
    ``strict`` also requires the candidate's own minimal size to equal the
    witness size and one of its minimal proofs to be deductively isomorphic
    to the source proof.
    """
    if mode not in ("fast", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    sfs = tuple(dict.fromkeys(sfs))
    result = minimal_proofs(rules, sfs, limits)
    considered = set()
    outputs: dict = {}
    tables = []
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for p in result.proofs:
            table = symbol_choice_table(sfs, p, rules, theory)
            tables.append(table)
            todo = []
            for cand, changed in enumerate_candidates(table, sfs):
                considered.add(cand)
                if cand not in outputs:
                    todo.append((cand, changed))
            witnesses = pool.map(lambda c: guided_replay(p, c[0], rules), todo)
            for (cand, changed), w in zip(todo, witnesses):
                if w is not None and cand not in outputs:
                    outputs[cand] = CandidateSet(cand, tuple(changed.items()), w)
        found = list(outputs.values())
        if mode == "strict":
            checks = pool.map(lambda c: _strict_check(c, result.proofs, rules, limits), found)
            found = [CandidateSet(c.signed_formulas, c.replacements, c.witness, True)
                     for c, ok in zip(found, checks) if ok]
    found.sort(key=lambda c: (c.signed_formulas != sfs, _text_key(c.signed_formulas)))
    return GenerationResult(sfs, mode, result.minimal_size, len(considered), tuple(found),
                            result.proofs, tuple(tables))


def _strict_check(c: CandidateSet, sources, rules, limits) -> bool:
    base = limits or SearchLimits()
    cap = SearchLimits(max_apps=c.witness.size, timeout=base.timeout, use_cut=base.use_cut)
    try:
        res = minimal_proofs(rules, c.signed_formulas, cap)
    except NotRefuted:
        return False
    if res.minimal_size != c.witness.size:
        return False
    return any(deductively_isomorphic(s, q) for s in sources for q in res.proofs)


# --- rendering ------------------------------------------------------------------------

def exercise_sentence(sfs) -> str:
    """The fixed natural-language template for an exercise."""
    given = [pretty(sf.formula) for sf in sfs if sf.positive]
    goals = [pretty(sf.formula) for sf in sfs if not sf.positive]
    if not goals:
        return f"Prove that {' and '.join(given)} implies ⊥"
    if not given:
        return f"Prove that {' or '.join(goals)}"
    return f"Prove that {' and '.join(given)} implies {' or '.join(goals)}"


def generation_to_json(g: GenerationResult) -> dict:
    from .syntax import to_text

    def sf_json(sf):
        return {"sign": sf.sign, "formula": to_text(sf.formula)}

    return {
        "input": [sf_json(sf) for sf in g.input],
        "mode": g.mode,
        "minimal_size": g.minimal_size,
        "candidates_considered": g.candidates_considered,
        "outputs": [{
            "signed_formulas": [sf_json(sf) for sf in c.signed_formulas],
            "replacements": [{
                "formula": ref.formula,
                "position": str(ref.position),
                "occurrence": ref.occurrence,
                "from": ref.symbol.name,
                "to": s.name,
            } for ref, s in c.replacements],
            "witness_size": c.witness_size,
            "strict_verified": c.strict_verified,
        } for c in g.outputs],
    }


def render_generation(g: GenerationResult, show_proofs: bool = False) -> str:
    lines = [f"input: {_text_key(g.input)}",
             f"mode: {g.mode}; minimal size {g.minimal_size}; "
             f"{g.candidates_considered} candidates considered; {len(g.outputs)} generated", ""]
    for k, c in enumerate(g.outputs, 1):
        lines.append(f"{k}. {exercise_sentence(c.signed_formulas)}")
        if show_proofs and c.witness is not None:
            lines.extend("   " + s for s in c.witness.render().rstrip("\n").split("\n"))
    return "\n".join(lines) + "\n"
