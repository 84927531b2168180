"""Extraction of theory-specific rules from definitional axioms.

Each axiom goes through prenex normal form, Skolemization, distributive CNF
and the rule implicational normal form (RINF); every RINF implication whose
correspondent rule satisfies the analytic restrictions becomes a rule.
Single-literal clauses yield closure rules only.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    BINARY, PATTERN, SKOLEM, VARIABLE,
    And, Atom, Bottom, Exists, ForAll, Iff, Implies, Not, Or, SignedFormula, Symbol, Term, Top,
    conj, depth, pretty, rename, size, to_text, walk,
)
from .theory import Theory, TheoryError, parse_signed, signature, transitive_closure, validate_theory


# --- normal forms ------------------------------------------------------------

def eliminate_iff(f):
    if isinstance(f, Iff):
        a, b = eliminate_iff(f.left), eliminate_iff(f.right)
        return And(Implies(a, b), Implies(b, a))
    if isinstance(f, Not):
        return Not(eliminate_iff(f.body))
    if isinstance(f, BINARY):
        return type(f)(eliminate_iff(f.left), eliminate_iff(f.right))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, eliminate_iff(f.body))
    return f


def to_nnf(f, negate: bool = False):
    """Negation normal form over ∧, ∨, quantifiers and literals."""
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Bottom):
        return Top() if negate else f
    if isinstance(f, Top):
        return Bottom() if negate else f
    if isinstance(f, Not):
        return to_nnf(f.body, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(to_nnf(f.left, negate), to_nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(to_nnf(f.left, negate), to_nnf(f.right, negate))
    if isinstance(f, Implies):
        cls = And if negate else Or
        return cls(to_nnf(f.left, not negate), to_nnf(f.right, negate))
    if isinstance(f, Iff):
        return to_nnf(eliminate_iff(f), negate)
    if isinstance(f, ForAll):
        cls = Exists if negate else ForAll
        return cls(f.var, to_nnf(f.body, negate))
    if isinstance(f, Exists):
        cls = ForAll if negate else Exists
        return cls(f.var, to_nnf(f.body, negate))
    raise TypeError(f"not a formula: {f!r}")


def _rename_free(f, old: Symbol, new: Symbol):
    if isinstance(f, Atom):
        return rename(f, {old: new})
    if isinstance(f, Not):
        return Not(_rename_free(f.body, old, new))
    if isinstance(f, BINARY):
        return type(f)(_rename_free(f.left, old, new), _rename_free(f.right, old, new))
    if isinstance(f, (ForAll, Exists)):
        if f.var == old:
            return f
        return type(f)(f.var, _rename_free(f.body, old, new))
    return f


def standardize_apart(f, taken=None):
    """Rename bound variables so that every quantifier binds a distinct name."""
    taken = set() if taken is None else taken

    def go(g):
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (ForAll, Exists)):
            v = g.var
            if v.name in taken:
                i = 1
                while f"{v.name}{i}" in taken:
                    i += 1
                new = Symbol(f"{v.name}{i}", VARIABLE)
                body = _rename_free(g.body, v, new)
                v = new
            else:
                body = g.body
            taken.add(v.name)
            return type(g)(v, go(body))
        return g

    return go(f)


def _prenex(f):
    """Return ``(prefix, matrix)`` for an NNF formula with distinct bound names."""
    if isinstance(f, (ForAll, Exists)):
        prefix, matrix = _prenex(f.body)
        return [(type(f), f.var)] + prefix, matrix
    if isinstance(f, (And, Or)):
        lp, lm = _prenex(f.left)
        rp, rm = _prenex(f.right)
        return _merge_prefixes(lp, rp), type(f)(lm, rm)
    return [], f


def _merge_prefixes(left, right):
    # hoist existentials as early as possible to keep skolem arities small
    out = []
    left, right = list(left), list(right)
    while left and right:
        if left[0][0] is Exists:
            out.append(left.pop(0))
        elif right[0][0] is Exists:
            out.append(right.pop(0))
        else:
            out.append(left.pop(0))
    return out + left + right


def to_pnf(f):
    """Prenex normal form of a closed formula (↔ expanded, matrix in NNF)."""
    f = standardize_apart(to_nnf(eliminate_iff(f)))
    prefix, matrix = _prenex(f)
    for cls, v in reversed(prefix):
        matrix = cls(v, matrix)
    return matrix


def skolemize(f, prefix: str = "sk"):
    """Replace existentials of a prenex formula by skolem terms.

    Returns ``(matrix, skolem_symbols)``; skolem symbols are named
    ``<prefix>_<k>`` and take the universals in scope as arguments.
    """
    universals: list = []
    subst: dict = {}
    skolems = []
    while isinstance(f, (ForAll, Exists)):
        if isinstance(f, ForAll):
            universals.append(f.var)
        else:
            sym = Symbol(f"{prefix}_{len(skolems) + 1}", SKOLEM, len(universals))
            skolems.append(sym)
            subst[f.var] = Term(sym, tuple(Term(u) for u in universals))
        f = f.body
    return _replace_vars(f, subst), skolems


def _replace_vars(f, subst):
    if isinstance(f, (Atom, Term)):
        if f.head in subst:
            return subst[f.head]
        if not f.args:
            return f
        return type(f)(f.head, tuple(_replace_vars(a, subst) for a in f.args))
    if isinstance(f, Not):
        return Not(_replace_vars(f.body, subst))
    if isinstance(f, BINARY):
        return type(f)(_replace_vars(f.left, subst), _replace_vars(f.right, subst))
    return f


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals; ``+A`` is the literal A, ``-A`` is ¬A."""

    literals: tuple

    def __str__(self):
        return " ∨ ".join(_literal_text(l) for l in self.literals)

    def formula(self):
        parts = [l.formula if l.positive else Not(l.formula) for l in self.literals]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Or(p, out)
        return out


def _literal_text(l: SignedFormula) -> str:
    return ("" if l.positive else "¬") + pretty(l.formula)


def to_cnf(matrix) -> list:
    """Distributive CNF: no fresh symbols, tautologies and duplicates removed."""
    raw = _cnf(to_nnf(matrix))
    out: list = []
    seen = set()
    for lits in raw:
        uniq = []
        for l in lits:
            if l not in uniq:
                uniq.append(l)
        if any(l.conjugate() in uniq for l in uniq):
            continue
        key = frozenset(uniq)
        if key in seen:
            continue
        seen.add(key)
        out.append(Clause(tuple(uniq)))
    return out


def _cnf(f) -> list:
    if isinstance(f, Atom):
        return [[SignedFormula(True, f)]]
    if isinstance(f, Not) and isinstance(f.body, Atom):
        return [[SignedFormula(False, f.body)]]
    if isinstance(f, And):
        return _cnf(f.left) + _cnf(f.right)
    if isinstance(f, Or):
        return [a + b for a in _cnf(f.left) for b in _cnf(f.right)]
    if isinstance(f, (Top,)):
        return []
    if isinstance(f, Bottom):
        return [[]]
    raise ValueError(f"matrix is not quantifier-free: {f!r}")


@dataclass(frozen=True)
class Implication:
    """A RINF formula ``(l1 ∧ … ∧ lk) → l``; ``conclusion`` None stands for ⊥.

    Premises and conclusion are stored as the signed formulas of the
    correspondent rule, so ``+A`` reads ``A`` and ``-A`` reads ``¬A``.
    """

    premises: tuple
    conclusion: SignedFormula | None

    def formula(self):
        return Implies(conj([eq_fmla(p) for p in self.premises]),
                       Bottom() if self.conclusion is None else eq_fmla(self.conclusion))


def eq_fmla(sf: SignedFormula):
    return sf.formula if sf.positive else Not(sf.formula)


def rinf_forms(clause: Clause) -> list:
    lits = clause.literals
    if len(lits) == 1:
        # ⊤ → ¬l would license ¬l anywhere, so only the closing form is kept
        return [Implication((lits[0].conjugate(),), None)]
    out = []
    for i, li in enumerate(lits):
        prem = tuple(lj.conjugate() for j, lj in enumerate(lits) if j != i)
        out.append(Implication(prem, li))
    return out


# --- rules -------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    name: str
    premises: tuple
    conclusion: SignedFormula | None  # None is the closure marker ⊗
    source_axiom: str = ""
    main_premises: tuple = ()

    @property
    def closes(self) -> bool:
        return self.conclusion is None

    def variables(self) -> frozenset:
        out = set()
        for p in self.premises:
            out |= {s for _, s in walk(p.formula) if s.kind == PATTERN}
        return frozenset(out)

    def __str__(self):
        prem = ", ".join(pretty(p) for p in self.premises)
        concl = "⊗" if self.conclusion is None else pretty(self.conclusion)
        return f"{self.name}: {{{prem}}} / {concl}"


def to_pattern(x):
    """Turn the object variables of a signed formula or tree into pattern variables."""
    tree = x.formula if isinstance(x, SignedFormula) else x
    mapping = {s: Symbol(s.name, PATTERN) for _, s in walk(tree) if s.kind == VARIABLE}
    return rename(x, mapping)


def main_premise_indices(premises) -> tuple:
    if len(premises) < 2:
        return ()
    allvars = set()
    pvars = []
    for p in premises:
        vs = {s for _, s in walk(p.formula) if s.kind == PATTERN}
        pvars.append(vs)
        allvars |= vs
    return tuple(i for i, vs in enumerate(pvars) if vs == allvars)


@dataclass(frozen=True)
class Violation:
    restriction: int
    message: str

    def __str__(self):
        return f"restriction {self.restriction}: {self.message}"


def complexity(atom: Atom) -> tuple:
    """Order used by restriction 3: depth first, node count to break ties."""
    return (depth(atom), size(atom))


def check_analytic(rule: Rule, precedence) -> list:
    """Violated analytic restrictions of ``rule`` (empty list when it qualifies).

    ``precedence`` is a set of ``(smaller, larger)`` predicate pairs; its
    transitive closure is taken here.  Restriction 2 applies when the
    predicates are not all equal, restriction 3 when they are.
    """
    if rule.conclusion is None:
        return []
    less = transitive_closure(precedence)
    out = []
    concl = rule.conclusion.formula
    prem_vars = set()
    for p in rule.premises:
        prem_vars |= {s for _, s in walk(p.formula) if s.is_variable}
    missing = {s for _, s in walk(concl) if s.is_variable} - prem_vars
    if missing:
        names = ", ".join(sorted(s.name for s in missing))
        out.append(Violation(1, f"conclusion variable(s) {names} absent from the premises"))
    preds = {p.formula.head for p in rule.premises} | {concl.head}
    if len(preds) == 1:
        if not any(complexity(concl) < complexity(p.formula) for p in rule.premises):
            out.append(Violation(3, "conclusion is not shallower than any premise"))
    elif not any((concl.head, p.formula.head) in less for p in rule.premises):
        out.append(Violation(2, f"{concl.head.name} is not below the predicate of any premise"))
    return out


def correspondent_formula(rule: Rule):
    return Implication(rule.premises, rule.conclusion).formula()


VAR_NAMES = ("x", "y", "z", "w", "v", "u", "t", "s")


def _canonical(premises, conclusion):
    order = []
    for sf in list(premises) + ([conclusion] if conclusion is not None else []):
        for _, s in walk(sf.formula):
            if s.kind == PATTERN and s not in order:
                order.append(s)
    names = list(VAR_NAMES) + [f"x{i}" for i in range(1, len(order) + 1)]
    mapping = {s: Symbol(names[i], PATTERN) for i, s in enumerate(order)}
    premises = tuple(rename(p, mapping) for p in premises)
    conclusion = None if conclusion is None else rename(conclusion, mapping)
    return premises, conclusion


def _order_premises(premises, less):
    mains = set(main_premise_indices(premises))

    def rank(p):
        return sum(1 for a, b in less if b == p.formula.head)

    keyed = sorted(range(len(premises)), key=lambda i: (
        i not in mains, -rank(premises[i]), -depth(premises[i].formula),
        -size(premises[i].formula), i))
    return tuple(premises[i] for i in keyed)


@dataclass(frozen=True)
class AxiomExtraction:
    """Intermediate results of the pipeline for one axiom."""

    name: str
    pnf: object
    matrix: object
    skolems: tuple
    clauses: tuple
    implications: tuple
    rules: tuple
    rejected: tuple  # of (Implication, [Violation])


def extract_axiom(name: str, axiom, precedence) -> AxiomExtraction:
    less = transitive_closure(precedence)
    pnf = to_pnf(axiom)
    matrix, skolems = skolemize(pnf, prefix=f"sk_{name}")
    clauses = to_cnf(matrix)
    implications = [imp for c in clauses for imp in rinf_forms(c)]
    accepted, rejected, seen = [], [], set()
    for imp in implications:
        prem = tuple(to_pattern(p) for p in imp.premises)
        concl = None if imp.conclusion is None else to_pattern(imp.conclusion)
        prem = _order_premises(prem, less)
        prem, concl = _canonical(prem, concl)
        candidate = Rule("", prem, concl, name, main_premise_indices(prem))
        violations = check_analytic(candidate, precedence)
        if violations:
            rejected.append((imp, violations))
            continue
        key = (frozenset(prem), concl)
        if key in seen:
            continue
        seen.add(key)
        accepted.append(candidate)
    accepted.sort(key=lambda r: (not r.premises[0].positive, r.closes is False, len(r.premises)))
    named = []
    counters: dict = {}
    for r in accepted:
        sign = r.premises[0].sign
        tag = "" if r.closes else "E"
        counters[(sign, tag)] = counters.get((sign, tag), 0) + 1
        named.append(Rule(f"{sign}{name}{tag}{counters[(sign, tag)]}", r.premises,
                          r.conclusion, name, r.main_premises))
    return AxiomExtraction(name, pnf, matrix, tuple(skolems), tuple(clauses),
                           tuple(implications), tuple(named), tuple(rejected))


@dataclass(frozen=True)
class RuleSet:
    rules: tuple
    skolems: tuple = ()
    precedence: frozenset = frozenset()
    _by_name: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {r.name: r for r in self.rules})

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __getitem__(self, name: str) -> Rule:
        return self._by_name[name]

    def get(self, name: str):
        return self._by_name.get(name)

    @property
    def linear(self) -> tuple:
        return tuple(r for r in self.rules if not r.closes)

    @property
    def closing(self) -> tuple:
        return tuple(r for r in self.rules if r.closes)

    def cut_seeds(self) -> tuple:
        return cut_seed_pairs(self)

    def to_json(self) -> list:
        """One object per rule; skolem symbols travel with the rules using them."""
        return [rule_to_json(r) for r in self.rules]

    @classmethod
    def from_json(cls, data: list, theory: Theory) -> "RuleSet":
        skolems = {}
        for r in data:
            for s in r.get("skolems", ()):
                skolems.setdefault(s["name"], Symbol(s["name"], SKOLEM, s["arity"]))
        skolems = tuple(skolems.values())
        table = signature(theory, skolems)
        rules = []
        for r in data:
            prem = tuple(to_pattern(parse_signed(f"{p['sign']} {p['formula']}", table))
                         for p in r["premises"])
            c = r["conclusion"]
            concl = None if c == "close" else to_pattern(
                parse_signed(f"{c['sign']} {c['formula']}", table))
            rules.append(Rule(r["name"], prem, concl, r.get("source_axiom", ""),
                              tuple(r.get("main_premises", main_premise_indices(prem)))))
        return cls(tuple(rules), skolems, theory.precedence)


def rule_to_json(r: Rule) -> dict:
    def sf(x):
        return {"sign": x.sign, "formula": to_text(x.formula)}

    return {
        "name": r.name,
        "premises": [sf(p) for p in r.premises],
        "conclusion": "close" if r.conclusion is None else sf(r.conclusion),
        "source_axiom": r.source_axiom,
        "main_premises": list(r.main_premises),
        "skolems": [{"name": s.name, "arity": s.arity} for s in _skolems_of(r)],
    }


def _skolems_of(r: Rule) -> list:
    out = []
    for x in r.premises + ((r.conclusion,) if r.conclusion else ()):
        for _, s in walk(x.formula):
            if s.kind == SKOLEM and s not in out:
                out.append(s)
    return out


def extract_rules(theory: Theory) -> RuleSet:
    problems = validate_theory(theory)
    if problems:
        raise TheoryError(problems[0])
    rules, skolems = [], []
    for name, axiom in theory.axioms:
        ex = extract_axiom(name, axiom, theory.precedence)
        rules.extend(ex.rules)
        skolems.extend(ex.skolems)
    used = {s for r in rules for p in r.premises + ((r.conclusion,) if r.conclusion else ())
            for _, s in walk(p.formula) if s.kind == SKOLEM}
    return RuleSet(tuple(rules), tuple(s for s in skolems if s in used), theory.precedence)


@dataclass(frozen=True)
class CutSeed:
    rule: Rule
    main: int
    minors: tuple


def cut_seed_pairs(rs) -> tuple:
    """Every (rule, main premise, minor premises) triple of multi-premise rules."""
    out = []
    for r in rs:
        if r.closes or len(r.premises) < 2:
            continue
        for m in main_premise_indices(r.premises):
            out.append(CutSeed(r, m, tuple(i for i in range(len(r.premises)) if i != m)))
    return tuple(out)


def render_rules(rs: RuleSet) -> str:
    """Text layout with premises above a bar and the conclusion below."""
    blocks = []
    for r in rs:
        lines = [pretty(p) for p in r.premises]
        concl = "⊗" if r.conclusion is None else pretty(r.conclusion)
        width = max(len(s) for s in lines + [concl])
        body = [f"    {s}" for s in lines]
        body.append("    " + "─" * width)
        body.append(f"    {concl}")
        blocks.append(f"{r.name}  [axiom {r.source_axiom}]\n" + "\n".join(body))
    footer = ""
    if rs.skolems:
        footer = "\nskolem functions: " + ", ".join(f"{s.name}/{s.arity}" for s in rs.skolems) + "\n"
    return "\n\n".join(blocks) + "\n" + footer + f"{len(rs)} rules\n"
