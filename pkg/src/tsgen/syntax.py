"""Terms, theory-specific formulas, signed formulas and first-order formulas.

Theory-specific formulas are atoms: a predicate applied to terms.  Both atoms
and terms are trees (``head`` symbol plus ``args``), so positional helpers
work uniformly on either.  Positions are root paths of 1-based child indices;
they print in the child-index-first style, e.g. the path ``(2, 1)`` prints as
``1·2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union

FUNCTION = "function"
PREDICATE = "predicate"
VARIABLE = "variable"
PATTERN = "pattern"
SKOLEM = "skolem"

KINDS = (FUNCTION, PREDICATE, VARIABLE, PATTERN, SKOLEM)

# ASCII names of the sets theory rendered with their usual glyphs.
GLYPHS = {
    "in": "∈",
    "subseteq": "⊆",
    "disj": "⟩⟨",
    "emptyset": "∅",
    "complement": "∁",
    "union": "∪",
    "inter": "∩",
    "diff": "\\",
    "symdiff": "△",
    "times": "×",
}


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    arity: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind in (VARIABLE, PATTERN) and self.arity != 0:
            raise ValueError(f"variable {self.name} must have arity 0")
        if self.arity < 0:
            raise ValueError("negative arity")

    @property
    def is_variable(self) -> bool:
        return self.kind in (VARIABLE, PATTERN)

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Term:
    head: Symbol
    args: tuple = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.head.kind == PREDICATE:
            raise ValueError("a predicate cannot head a term")
        if len(self.args) != self.head.arity:
            raise ValueError(
                f"{self.head.name} expects {self.head.arity} arguments, got {len(self.args)}")
        object.__setattr__(self, "_hash", hash((self.head, self.args)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Atom:
    """A theory-specific formula."""

    head: Symbol
    args: tuple = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.head.kind != PREDICATE:
            raise ValueError(f"{self.head.name} is not a predicate")
        if len(self.args) != self.head.arity:
            raise ValueError(
                f"{self.head.name} expects {self.head.arity} arguments, got {len(self.args)}")
        object.__setattr__(self, "_hash", hash((self.head, self.args)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


Tree = Union[Term, Atom]


@dataclass(frozen=True)
class SignedFormula:
    positive: bool
    formula: Atom

    @property
    def sign(self) -> str:
        return "+" if self.positive else "-"

    def conjugate(self) -> "SignedFormula":
        return SignedFormula(not self.positive, self.formula)

    def __str__(self):
        return self.sign + to_text(self.formula)


def plus(formula: Atom) -> SignedFormula:
    return SignedFormula(True, formula)


def minus(formula: Atom) -> SignedFormula:
    return SignedFormula(False, formula)


def var(name: str) -> Term:
    return Term(Symbol(name, VARIABLE))


def pvar(name: str) -> Term:
    return Term(Symbol(name, PATTERN))


# --- first-order formulas -------------------------------------------------

@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "⊥"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "⊤"


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class ForAll:
    var: Symbol
    body: object


@dataclass(frozen=True)
class Exists:
    var: Symbol
    body: object


BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (ForAll, Exists)


def conj(parts):
    """Right-nested conjunction of a non-empty sequence."""
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def fo_free_variables(f) -> set:
    if isinstance(f, (Atom, Term)):
        return {s for _, s in walk(f) if s.kind == VARIABLE}
    if isinstance(f, (Bottom, Top)):
        return set()
    if isinstance(f, Not):
        return fo_free_variables(f.body)
    if isinstance(f, BINARY):
        return fo_free_variables(f.left) | fo_free_variables(f.right)
    if isinstance(f, QUANTIFIERS):
        return fo_free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def fo_atoms(f) -> list:
    """Atoms of a first-order formula, left to right, without duplicates."""
    out: list = []

    def go(g):
        if isinstance(g, Atom):
            if g not in out:
                out.append(g)
        elif isinstance(g, Not):
            go(g.body)
        elif isinstance(g, BINARY):
            go(g.left)
            go(g.right)
        elif isinstance(g, QUANTIFIERS):
            go(g.body)

    go(f)
    return out


def fo_contains_constant(f) -> bool:
    """True when ⊥ or ⊤ occurs in ``f``."""
    if isinstance(f, (Bottom, Top)):
        return True
    if isinstance(f, Not):
        return fo_contains_constant(f.body)
    if isinstance(f, BINARY):
        return fo_contains_constant(f.left) or fo_contains_constant(f.right)
    if isinstance(f, QUANTIFIERS):
        return fo_contains_constant(f.body)
    return False


def fo_symbols(f) -> set:
    """Non-variable symbols occurring in a first-order formula."""
    if isinstance(f, (Atom, Term)):
        return {s for _, s in walk(f) if not s.is_variable}
    if isinstance(f, Not):
        return fo_symbols(f.body)
    if isinstance(f, BINARY):
        return fo_symbols(f.left) | fo_symbols(f.right)
    if isinstance(f, QUANTIFIERS):
        return fo_symbols(f.body)
    return set()


# --- positions -------------------------------------------------------------

class Position(tuple):
    """Root path of 1-based child indices; prints child-index first."""

    def __new__(cls, path=()):
        path = tuple(path)
        if any((not isinstance(i, int)) or i < 1 for i in path):
            raise ValueError(f"invalid position {path!r}")
        return super().__new__(cls, path)

    def __str__(self):
        if not self:
            return "ε"
        return "·".join(str(i) for i in reversed(self))

    def __repr__(self):
        return f"Position({str(self)!r})"

    def child(self, i: int) -> "Position":
        return Position(tuple(self) + (i,))

    @classmethod
    def parse(cls, text: str) -> "Position":
        text = text.strip()
        if text in ("", "ε", "eps"):
            return cls(())
        parts = text.replace(".", "·").split("·")
        return cls(tuple(int(p) for p in reversed(parts)))


ROOT = Position(())


def walk(tree: Tree, path: Position = ROOT) -> Iterator[tuple]:
    """Pre-order (leftmost-outermost) traversal yielding ``(position, symbol)``."""
    yield path, tree.head
    for i, a in enumerate(tree.args, 1):
        yield from walk(a, path.child(i))


def depth(tree: Tree) -> int:
    """Height of the abstract representation, counted in edges."""
    if not tree.args:
        return 0
    return 1 + max(depth(a) for a in tree.args)


def size(tree: Tree) -> int:
    """Number of nodes of the abstract representation."""
    return 1 + sum(size(a) for a in tree.args)


def occurrences(tree: Tree, symbol: Symbol) -> list:
    return [p for p, s in walk(tree) if s == symbol]


def position_of_occurrence(n: int, symbol: Symbol, tree: Tree) -> Position:
    """Position of the ``n``-th (1-based, pre-order) occurrence of ``symbol``."""
    occ = occurrences(tree, symbol)
    if n < 1 or n > len(occ):
        raise IndexError(
            f"{symbol.name} occurs {len(occ)} time(s) in {to_text(tree)}, no occurrence {n}")
    return occ[n - 1]


def occurrence_index(tree: Tree, position: Position) -> int:
    """Inverse of :func:`position_of_occurrence` for the symbol at ``position``."""
    sym = symbol_at(tree, position)
    return occurrences(tree, sym).index(tuple(position)) + 1


def subtree_at(tree: Tree, position) -> Tree:
    node = tree
    for i in position:
        if i > len(node.args):
            raise IndexError(f"position {Position(position)} is not valid in {to_text(tree)}")
        node = node.args[i - 1]
    return node


def symbol_at(tree: Tree, position) -> Symbol:
    return subtree_at(tree, position).head


def is_valid_position(tree: Tree, position) -> bool:
    try:
        subtree_at(tree, position)
    except IndexError:
        return False
    return True


def replace_at(tree: Tree, position, new: Tree) -> Tree:
    if not position:
        return new
    i = position[0]
    args = list(tree.args)
    args[i - 1] = replace_at(args[i - 1], position[1:], new)
    return type(tree)(tree.head, tuple(args))


def replace_symbol_at(tree: Tree, position, symbol: Symbol) -> Tree:
    """Swap the head symbol at ``position`` for one of equal arity."""
    node = subtree_at(tree, position)
    if symbol.arity != node.head.arity:
        raise ValueError(f"cannot replace {node.head.name} by {symbol.name}: arity differs")
    cls = Atom if symbol.kind == PREDICATE else Term
    return replace_at(tree, position, cls(symbol, node.args))


def variables(x) -> frozenset:
    """Object variables of a term, atom or signed formula."""
    tree = x.formula if isinstance(x, SignedFormula) else x
    return frozenset(s for _, s in walk(tree) if s.kind == VARIABLE)


def pattern_variables(x) -> frozenset:
    tree = x.formula if isinstance(x, SignedFormula) else x
    return frozenset(s for _, s in walk(tree) if s.kind == PATTERN)


def all_variables(x) -> frozenset:
    tree = x.formula if isinstance(x, SignedFormula) else x
    return frozenset(s for _, s in walk(tree) if s.is_variable)


def symbols(x) -> list:
    """Distinct non-variable symbols in pre-order."""
    tree = x.formula if isinstance(x, SignedFormula) else x
    out = []
    for _, s in walk(tree):
        if not s.is_variable and s not in out:
            out.append(s)
    return out


# --- isomorphism -------------------------------------------------------------

def _node_class(s: Symbol) -> tuple:
    kind = VARIABLE if s.is_variable else s.kind
    return (kind, s.arity)


def shape(x) -> tuple:
    """Label-free ordered-tree skeleton: kinds and arities only."""
    tree = x.formula if isinstance(x, SignedFormula) else x
    return (_node_class(tree.head), tuple(shape(a) for a in tree.args))


def syntactically_isomorphic(a, b) -> bool:
    """Isomorphic abstract representations and equal variable sets.

    Signed formulas are compared through their underlying formulas; the
    sign is ignored.
    """
    fa = a.formula if isinstance(a, SignedFormula) else a
    fb = b.formula if isinstance(b, SignedFormula) else b
    return shape(fa) == shape(fb) and all_variables(fa) == all_variables(fb)


# --- matching and substitution -------------------------------------------------

class UnboundPatternVariable(KeyError):
    pass


def match(pattern, target, subst: dict | None = None) -> dict | None:
    """One-way matching of a pattern against a ground expression.

    Returns an extension of ``subst`` mapping pattern-variable symbols to
    terms, or ``None``.  Object variables in ``target`` behave as constants.
    """
    subst = {} if subst is None else dict(subst)
    if isinstance(pattern, SignedFormula):
        if not isinstance(target, SignedFormula) or pattern.positive != target.positive:
            return None
        return _match(pattern.formula, target.formula, subst)
    return _match(pattern, target, subst)


def _match(p: Tree, t: Tree, subst: dict) -> dict | None:
    if p.head.kind == PATTERN:
        bound = subst.get(p.head)
        if bound is None:
            if not isinstance(t, Term):
                return None
            subst[p.head] = t
            return subst
        return subst if bound == t else None
    if p.head != t.head:
        return None
    for pa, ta in zip(p.args, t.args):
        if _match(pa, ta, subst) is None:
            return None
    return subst


def substitute(x, subst: dict):
    """Replace every pattern variable of ``x`` by its image under ``subst``."""
    if isinstance(x, SignedFormula):
        return SignedFormula(x.positive, substitute(x.formula, subst))
    if x.head.kind == PATTERN:
        try:
            return subst[x.head]
        except KeyError:
            raise UnboundPatternVariable(x.head.name) from None
    if not x.args:
        return x
    return type(x)(x.head, tuple(substitute(a, subst) for a in x.args))


apply_substitution = substitute


def rename(x, mapping: dict):
    """Rename variable symbols (object or pattern) by a symbol-to-symbol map."""
    if isinstance(x, SignedFormula):
        return SignedFormula(x.positive, rename(x.formula, mapping))
    if x.head.is_variable:
        return Term(mapping.get(x.head, x.head))
    return type(x)(x.head, tuple(rename(a, mapping) for a in x.args))


# --- rendering ---------------------------------------------------------------

def to_text(x) -> str:
    """ASCII prefix rendering, re-readable by the formula parser."""
    if isinstance(x, SignedFormula):
        return x.sign + " " + to_text(x.formula)
    if isinstance(x, (Term, Atom)):
        if not x.args:
            return x.head.name
        return f"{x.head.name}({', '.join(to_text(a) for a in x.args)})"
    return fo_to_text(x)


def fo_to_text(f, glyphs: bool = False) -> str:
    show = pretty if glyphs else to_text
    if isinstance(f, (Atom, Term)):
        return show(f)
    if isinstance(f, Bottom):
        return "⊥" if glyphs else "bottom"
    if isinstance(f, Top):
        return "⊤" if glyphs else "top"
    if isinstance(f, Not):
        return ("¬" if glyphs else "not ") + _fo_wrap(f.body, glyphs)
    ops = {And: ("∧", "and"), Or: ("∨", "or"), Implies: ("→", "->"), Iff: ("↔", "<->")}
    for cls, (g, a) in ops.items():
        if isinstance(f, cls):
            op = g if glyphs else a
            return f"{_fo_wrap(f.left, glyphs)} {op} {_fo_wrap(f.right, glyphs)}"
    if isinstance(f, QUANTIFIERS):
        q = isinstance(f, ForAll)
        word = ("∀" if q else "∃") if glyphs else ("forall " if q else "exists ")
        return f"{word}{f.var.name} . {fo_to_text(f.body, glyphs)}"
    raise TypeError(f"not a formula: {f!r}")


def _fo_wrap(f, glyphs: bool) -> str:
    text = fo_to_text(f, glyphs)
    if isinstance(f, (Atom, Bottom, Top, Not)):
        return text
    return f"({text})"


def pretty(x) -> str:
    """Glyph rendering with infix binary symbols, e.g. ``+x ∈ y ∩ (w ∪ z)``."""
    if isinstance(x, SignedFormula):
        return x.sign + pretty(x.formula)
    if not isinstance(x, (Term, Atom)):
        return fo_to_text(x, glyphs=True)
    name = GLYPHS.get(x.head.name)
    if name is None:
        if not x.args:
            return x.head.name
        return f"{x.head.name}({', '.join(pretty(a) for a in x.args)})"
    if x.head.arity == 0:
        return name
    if x.head.arity == 1:
        return f"{name}({pretty(x.args[0])})"
    if x.head.arity == 2:
        left, right = (_pretty_arg(a, nested=isinstance(x, Term)) for a in x.args)
        return f"{left} {name} {right}"
    return f"{name}({', '.join(pretty(a) for a in x.args)})"


def _pretty_arg(t: Term, nested: bool) -> str:
    text = pretty(t)
    if nested and t.head.arity == 2 and t.head.name in GLYPHS:
        return f"({text})"
    return text


def fresh_names(taken, base: str = "x") -> Iterator[str]:
    """Yield names ``base``, ``base1``, ``base2``... not in ``taken``."""
    for i in itertools.count():
        name = base if i == 0 else f"{base}{i}"
        if name not in taken:
            yield name
