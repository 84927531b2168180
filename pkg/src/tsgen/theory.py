"""Definitional theories: signature, axioms and predicate precedence.

Theory files look like::

    theory sets
    function union 2
    predicate in 2
    order in < subseteq
    axiom union: forall x y z . in(x, union(y, z)) <-> (in(x, y) or in(x, z))

Exercise files hold one signed formula per line (``+ in(x, y)``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BINARY, FUNCTION, PREDICATE, QUANTIFIERS, SKOLEM, VARIABLE,
    And, Atom, Bottom, Exists, ForAll, Iff, Implies, Not, Or, SignedFormula, Symbol, Term, Top,
    fo_contains_constant, fo_free_variables, fo_to_text, walk,
)


class TheoryError(ValueError):
    """Syntax or validation error in a theory or exercise document."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class ExerciseScopeError(TheoryError):
    """The exercise is not a set of signed theory-specific formulas."""


STSNF_MESSAGE = (
    "exercise is not in signed theory-specific normal form; only atomic signed "
    "formulas (no connectives, no quantifiers) are within the scope of the method")

KEYWORDS = {"theory", "function", "predicate", "order", "axiom",
            "forall", "exists", "not", "and", "or", "bottom", "top"}
DECL_KEYWORDS = {"function", "predicate", "order", "axiom"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<iff><->) | (?P<imp>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*) | (?P<nat>[0-9]+)
  | (?P<punct>[(),.:<+\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, col_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TheoryError(f"unexpected character {text[pos]!r}", line, pos - col_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - col_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - col_start + 1))
    return tokens


@dataclass(frozen=True)
class Theory:
    name: str
    functions: tuple
    predicates: tuple
    axioms: tuple  # of (name, formula)
    precedence: frozenset  # of (smaller, larger) predicate pairs

    def symbol(self, name: str) -> Symbol | None:
        for s in self.functions + self.predicates:
            if s.name == name:
                return s
        return None

    def less_than(self) -> frozenset:
        """Transitive closure of the declared precedence."""
        return transitive_closure(self.precedence)

    def axiom(self, name: str):
        for n, f in self.axioms:
            if n == name:
                return f
        raise KeyError(name)


def transitive_closure(pairs) -> frozenset:
    closure = set(pairs)
    while True:
        extra = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not extra:
            return frozenset(closure)
        closure |= extra


class _Parser:
    def __init__(self, tokens, symbols: dict, free_as_variables: bool):
        self.tokens = tokens
        self.i = 0
        self.symbols = symbols
        self.free_as_variables = free_as_variables
        self.bound: list = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return TheoryError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, kind, text=None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def at_word(self, word) -> bool:
        return self.at("ident", word)

    def expect(self, kind, text=None) -> Token:
        if not self.at(kind, text):
            want = text or kind
            got = self.tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def ident(self) -> Token:
        tok = self.expect("ident")
        if tok.text in KEYWORDS:
            raise self.error(f"unexpected keyword {tok.text!r}", tok)
        return tok

    # formula := quantified | iff
    def formula(self):
        if self.at_word("forall") or self.at_word("exists"):
            cls = ForAll if self.advance().text == "forall" else Exists
            names = [self.ident()]
            while self.at("ident") and self.tok.text not in KEYWORDS:
                names.append(self.ident())
            self.expect("punct", ".")
            syms = [Symbol(t.text, VARIABLE) for t in names]
            self.bound.extend(syms)
            body = self.formula()
            del self.bound[len(self.bound) - len(syms):]
            for s in reversed(syms):
                body = cls(s, body)
            return body
        return self.iff()

    def iff(self):
        left = self.implication()
        while self.at("iff"):
            self.advance()
            left = Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("imp"):
            self.advance()
            return Implies(left, self.implication_rhs())
        return left

    def implication_rhs(self):
        if self.at_word("forall") or self.at_word("exists"):
            return self.formula()
        return self.implication()

    def disjunction(self):
        left = self.conjunction()
        while self.at_word("or"):
            self.advance()
            left = Or(left, self.operand(self.conjunction))
        return left

    def conjunction(self):
        left = self.negation()
        while self.at_word("and"):
            self.advance()
            left = And(left, self.operand(self.negation))
        return left

    def operand(self, parse):
        # quantifier scope is maximal, so a quantifier may close a chain
        if self.at_word("forall") or self.at_word("exists"):
            return self.formula()
        return parse()

    def negation(self):
        if self.at_word("not"):
            self.advance()
            return Not(self.operand(self.negation))
        if self.at_word("forall") or self.at_word("exists"):
            return self.formula()
        return self.primary()

    def primary(self):
        if self.at("punct", "("):
            self.advance()
            f = self.formula()
            self.expect("punct", ")")
            return f
        if self.at_word("bottom"):
            self.advance()
            return Bottom()
        if self.at_word("top"):
            self.advance()
            return Top()
        tok = self.ident()
        sym = self.symbols.get(tok.text)
        if sym is None or sym.kind != PREDICATE:
            if sym is None:
                raise self.error(f"undeclared predicate {tok.text!r}", tok)
            raise self.error(f"{tok.text!r} is not a predicate", tok)
        args = self.arguments(sym, tok)
        return Atom(sym, args)

    def arguments(self, sym, tok):
        args = []
        if self.at("punct", "("):
            self.advance()
            args.append(self.term())
            while self.at("punct", ","):
                self.advance()
                args.append(self.term())
            self.expect("punct", ")")
        if len(args) != sym.arity:
            raise self.error(
                f"arity mismatch: {sym.name} takes {sym.arity} argument(s), got {len(args)}", tok)
        return tuple(args)

    def term(self):
        tok = self.ident()
        if self.at("punct", "("):
            sym = self.symbols.get(tok.text)
            if sym is None:
                raise self.error(f"undeclared function symbol {tok.text!r}", tok)
            if sym.kind not in (FUNCTION, SKOLEM):
                raise self.error(f"{tok.text!r} is not a function symbol", tok)
            return Term(sym, self.arguments(sym, tok))
        for s in reversed(self.bound):
            if s.name == tok.text:
                return Term(s)
        sym = self.symbols.get(tok.text)
        if sym is not None:
            if sym.kind not in (FUNCTION, SKOLEM):
                raise self.error(f"{tok.text!r} is not a function symbol", tok)
            return Term(sym, self.arguments(sym, tok))
        if self.free_as_variables:
            return Term(Symbol(tok.text, VARIABLE))
        raise self.error(f"unbound variable {tok.text}", tok)


def parse_theory(text: str) -> Theory:
    """Parse and validate a theory document; raise :class:`TheoryError`."""
    tokens = tokenize(text)
    p = _Parser(tokens, {}, free_as_variables=False)
    p.expect("ident", "theory")
    name = p.ident().text
    functions, predicates, axioms, precedence = [], [], [], []
    symbols = p.symbols
    pending_orders = []
    while not p.at("eof"):
        tok = p.tok
        if not (tok.kind == "ident" and tok.text in DECL_KEYWORDS):
            raise p.error(f"expected a declaration, found {tok.text!r}")
        p.advance()
        if tok.text in ("function", "predicate"):
            ident = p.ident()
            arity = int(p.expect("nat").text)
            if ident.text in symbols:
                raise p.error(f"symbol {ident.text!r} declared twice", ident)
            sym = Symbol(ident.text, FUNCTION if tok.text == "function" else PREDICATE, arity)
            symbols[ident.text] = sym
            (functions if sym.kind == FUNCTION else predicates).append(sym)
        elif tok.text == "order":
            a = p.ident()
            p.expect("punct", "<")
            b = p.ident()
            pending_orders.append((a, b))
        else:
            ident = p.ident()
            p.expect("punct", ":")
            if any(n == ident.text for n, _ in axioms):
                raise p.error(f"axiom {ident.text!r} declared twice", ident)
            formula = p.formula()
            axioms.append((ident.text, formula))
    for a, b in pending_orders:
        for t in (a, b):
            s = symbols.get(t.text)
            if s is None or s.kind != PREDICATE:
                raise TheoryError(f"order relates undeclared predicate {t.text!r}", t.line, t.column)
        precedence.append((symbols[a.text], symbols[b.text]))
    theory = Theory(name, tuple(functions), tuple(predicates), tuple(axioms), frozenset(precedence))
    problems = validate_theory(theory)
    if problems:
        raise TheoryError(problems[0])
    return theory


def validate_theory(theory: Theory) -> list:
    """Return the list of invariant violations; empty means the theory is ok."""
    problems = []
    declared = set(theory.functions) | set(theory.predicates)
    for name, f in theory.axioms:
        free = fo_free_variables(f)
        if free:
            names = ", ".join(sorted(s.name for s in free))
            problems.append(f"axiom {name}: unbound variable {names} (axioms must be closed)")
        if fo_contains_constant(f):
            problems.append(f"axiom {name}: axioms must not contain ⊥ or ⊤")
        for s in _symbols_of(f):
            if s.kind == SKOLEM:
                problems.append(f"axiom {name}: skolem symbol {s.name} in an axiom")
            elif s not in declared:
                problems.append(f"axiom {name}: undeclared symbol {s.name}/{s.arity}")
    preds = set(theory.predicates)
    for a, b in sorted(theory.precedence, key=lambda ab: (ab[0].name, ab[1].name)):
        if a not in preds or b not in preds:
            problems.append(f"order {a.name} < {b.name}: relates undeclared predicates")
    cycle = _find_cycle(theory.precedence)
    if cycle:
        problems.append("precedence cycle: " + " < ".join(s.name for s in cycle))
    return problems


def _symbols_of(f) -> set:
    if isinstance(f, (Atom, Term)):
        return {s for _, s in walk(f) if not s.is_variable}
    if isinstance(f, Not):
        return _symbols_of(f.body)
    if isinstance(f, BINARY):
        return _symbols_of(f.left) | _symbols_of(f.right)
    if isinstance(f, QUANTIFIERS):
        return _symbols_of(f.body)
    return set()


def _find_cycle(pairs) -> list | None:
    graph: dict = {}
    for a, b in pairs:
        graph.setdefault(a, []).append(b)
    for succ in graph.values():
        succ.sort(key=lambda s: s.name)
    state: dict = {}
    stack: list = []

    def visit(v):
        state[v] = 1
        stack.append(v)
        for w in graph.get(v, []):
            if state.get(w) == 1:
                return stack[stack.index(w):] + [w]
            if w not in state:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        state[v] = 2
        return None

    for v in sorted(graph, key=lambda s: s.name):
        if v not in state:
            found = visit(v)
            if found:
                return found
    return None


def render_theory(theory: Theory) -> str:
    lines = [f"theory {theory.name}"]
    lines += [f"function {s.name} {s.arity}" for s in theory.functions]
    lines += [f"predicate {s.name} {s.arity}" for s in theory.predicates]
    lines += [f"order {a.name} < {b.name}"
              for a, b in sorted(theory.precedence, key=lambda ab: (ab[0].name, ab[1].name))]
    lines += [f"axiom {name}: {fo_to_text(f)}" for name, f in theory.axioms]
    return "\n".join(lines) + "\n"


def signature(theory: Theory, skolems=()) -> dict:
    table = {s.name: s for s in theory.functions + theory.predicates}
    for s in skolems:
        table[s.name] = s
    return table


def parse_formula(text: str, symbols: dict):
    """Parse a first-order formula; unknown nullary identifiers become variables."""
    p = _Parser(tokenize(text), dict(symbols), free_as_variables=True)
    f = p.formula()
    p.expect("eof")
    return f


def parse_signed(text: str, symbols: dict) -> SignedFormula:
    """Parse ``+ φ`` / ``- φ`` where φ must be atomic."""
    tokens = tokenize(text)
    p = _Parser(tokens, dict(symbols), free_as_variables=True)
    if not p.at("punct", "+") and not p.at("punct", "-"):
        raise p.error("a signed formula starts with '+' or '-'")
    positive = p.advance().text == "+"
    f = p.formula()
    p.expect("eof")
    if not isinstance(f, Atom):
        raise ExerciseScopeError(f"{STSNF_MESSAGE}: {text.strip()}", tokens[0].line, tokens[0].column)
    return SignedFormula(positive, f)


def parse_atom(text: str, symbols: dict) -> Atom:
    f = parse_formula(text, symbols)
    if not isinstance(f, Atom):
        raise ExerciseScopeError(f"{STSNF_MESSAGE}: {text.strip()}")
    return f


def parse_exercise(text: str, theory: Theory) -> list:
    """Parse an exercise document into a list of signed formulas."""
    symbols = signature(theory)
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            sf = parse_signed(line, symbols)
        except TheoryError as exc:
            raise type(exc)(exc.message, lineno, exc.column) from None
        if sf in out:
            raise TheoryError(f"duplicate signed formula {sf}", lineno, 1)
        out.append(sf)
    if not out:
        raise TheoryError("empty exercise")
    return out


def render_exercise(sfs) -> str:
    from .syntax import to_text
    return "".join(f"{sf.sign} {to_text(sf.formula)}\n" for sf in sfs)
