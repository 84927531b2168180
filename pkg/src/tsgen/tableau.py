"""Tableau kernel: expansion, closure, justification DAGs and proof replay.

Tableaux are immutable values.  Nodes are numbered from 1 in creation order
and point to their parent; applying a rule or a cut returns a new tableau
sharing every existing node with the old one.  A branch is named by its
leaf id.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .extraction import Rule, RuleSet
from .syntax import (
    FUNCTION, SKOLEM, VARIABLE, Atom, SignedFormula, Term,
    match, pretty, substitute, to_text,
)
from .theory import STSNF_MESSAGE, ExerciseScopeError, parse_signed, signature


class TableauError(ValueError):
    pass


class ReplayError(ValueError):
    """A serialized proof failed validation; ``node`` is the offending id."""

    def __init__(self, message: str, node: int | None = None):
        self.node = node
        where = f"node {node}: " if node is not None else ""
        super().__init__(where + message)


# --- justifications ----------------------------------------------------------

@dataclass(frozen=True)
class Hyp:
    kind = "hyp"


@dataclass(frozen=True)
class RuleApp:
    rule: str
    premises: tuple
    kind = "rule"


@dataclass(frozen=True)
class CutIntro:
    license: int
    polarity: str  # "+" on the left child, "-" on the right one
    kind = "cut"


@dataclass(frozen=True)
class Node:
    id: int
    sf: SignedFormula
    just: object
    parent: int  # 0 for the root

    def supports(self) -> tuple:
        """Ids this node's addition depends on."""
        if isinstance(self.just, RuleApp):
            return self.just.premises
        if isinstance(self.just, CutIntro):
            return (self.just.license,)
        return ()


# --- applications --------------------------------------------------------------

@dataclass(frozen=True)
class LinearApp:
    leaf: int
    rule: Rule
    premises: tuple
    conclusion: SignedFormula | None
    subst: tuple = ()

    @property
    def closes(self) -> bool:
        return self.conclusion is None


@dataclass(frozen=True)
class CutApp:
    leaf: int
    formula: Atom
    license: int


# --- tableau -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Tableau:
    nodes: tuple
    leaves: tuple
    rules: RuleSet | None = None
    closed_leaves: frozenset = frozenset()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def node(self, i: int) -> Node:
        return self.nodes[i - 1]

    def __len__(self):
        return len(self.nodes)

    def branch(self, leaf: int) -> tuple:
        """Node ids from the root down to ``leaf``."""
        key = ("branch", leaf)
        got = self._cache.get(key)
        if got is None:
            out = []
            i = leaf
            while i:
                out.append(i)
                i = self.nodes[i - 1].parent
            got = tuple(reversed(out))
            self._cache[key] = got
        return got

    def branch_formulas(self, leaf: int) -> dict:
        key = ("sfs", leaf)
        got = self._cache.get(key)
        if got is None:
            got = {self.nodes[i - 1].sf: i for i in self.branch(leaf)}
            self._cache[key] = got
        return got

    def branches(self) -> list:
        return [self.branch(l) for l in self.leaves]

    def children(self, i: int) -> tuple:
        key = "children"
        table = self._cache.get(key)
        if table is None:
            table = {}
            for n in self.nodes:
                table.setdefault(n.parent, []).append(n.id)
            for kids in table.values():
                # the positive child of a cut is the left one
                kids.sort(key=lambda i: (self.nodes[i - 1].sf.positive is False, i))
            self._cache[key] = table
        return tuple(table.get(i, ()))

    def open_leaves(self) -> tuple:
        return tuple(l for l in self.leaves if l not in self.closed_leaves)

    @property
    def hypotheses(self) -> tuple:
        return tuple(n.id for n in self.nodes if isinstance(n.just, Hyp))

    @property
    def applications(self) -> int:
        return sum(1 for n in self.nodes if isinstance(n.just, RuleApp)) + sum(
            1 for n in self.nodes if isinstance(n.just, CutIntro) and n.just.polarity == "+")

    def support(self, i: int) -> frozenset:
        """``i`` together with every node its addition transitively depends on."""
        table = self._cache.setdefault("support", {})
        got = table.get(i)
        if got is None:
            got = frozenset({i}).union(*(self.support(j) for j in self.nodes[i - 1].supports()))
            table[i] = got
        return got


def check_stsnf(sfs) -> None:
    """Reject exercises outside the signed theory-specific normal form."""
    if not sfs:
        raise ExerciseScopeError("empty exercise: at least one signed formula is required")
    for sf in sfs:
        if not isinstance(sf, SignedFormula) or not isinstance(sf.formula, Atom):
            raise ExerciseScopeError(STSNF_MESSAGE)
        for t in sf.formula.args:
            _check_term(t)


def _check_term(t) -> None:
    if not isinstance(t, Term):
        raise ExerciseScopeError(STSNF_MESSAGE)
    if t.head.kind == SKOLEM:
        raise ExerciseScopeError(f"skolem symbol {t.head.name} may not occur in an exercise")
    if t.head.kind not in (FUNCTION, VARIABLE):
        raise ExerciseScopeError(f"{t.head.name} may not occur in an exercise term")
    for a in t.args:
        _check_term(a)


def closes_alone(sf: SignedFormula, rules) -> Rule | None:
    """The first CLOSE rule whose premise ``sf`` instantiates, if any."""
    if rules is None:
        return None
    for r in rules.closing:
        if match(r.premises[0], sf) is not None:
            return r
    return None


def init_tableau(sfs, rules: RuleSet | None = None) -> Tableau:
    sfs = list(dict.fromkeys(sfs))
    check_stsnf(sfs)
    nodes = tuple(Node(i, sf, Hyp(), i - 1) for i, sf in enumerate(sfs, 1))
    leaf = len(nodes)
    closed = _is_closed_chain([n.sf for n in nodes], rules)
    return Tableau(nodes, (leaf,), rules, frozenset({leaf}) if closed else frozenset())


def _is_closed_chain(sfs, rules) -> bool:
    seen = set(sfs)
    return any(sf.conjugate() in seen or closes_alone(sf, rules) for sf in sfs)


def branch_closed(t: Tableau, leaf: int) -> bool:
    return leaf in t.closed_leaves


def tableau_closed(t: Tableau) -> bool:
    return all(l in t.closed_leaves for l in t.leaves)


def applicable_linear_instances(t: Tableau, leaf: int, rules: RuleSet | None = None,
                                include_close: bool = True) -> list:
    """Every instance of a rule whose premises all match nodes of the branch.

    Instances concluding a formula already on the branch are left out; CLOSE
    instances are included (``closes`` is set) unless ``include_close`` is false.
    """
    rules = t.rules if rules is None else rules
    branch = t.branch(leaf)
    on_branch = t.branch_formulas(leaf)
    sfs = [t.nodes[i - 1].sf for i in branch]
    out = []
    for r in rules:
        if r.closes and not include_close:
            continue
        for ids, subst in _premise_matches(r.premises, branch, sfs):
            if r.closes:
                out.append(LinearApp(leaf, r, ids, None, _freeze(subst)))
                continue
            concl = substitute(r.conclusion, subst)
            if concl in on_branch:
                continue
            out.append(LinearApp(leaf, r, ids, concl, _freeze(subst)))
    return out


def _freeze(subst: dict) -> tuple:
    return tuple(sorted(((k.name, to_text(v)) for k, v in subst.items())))


def _premise_matches(premises, branch, sfs):
    def go(k, subst, chosen):
        if k == len(premises):
            yield tuple(chosen), subst
            return
        for i, sf in zip(branch, sfs):
            s2 = match(premises[k], sf, subst)
            if s2 is not None:
                chosen.append(i)
                yield from go(k + 1, s2, chosen)
                chosen.pop()

    yield from go(0, {}, [])


def applicable_cut_instances(t: Tableau, leaf: int, rules: RuleSet | None = None) -> list:
    """Cut formulas licensed by main-premise instances on the branch.

    A formula already on the branch with either sign is not offered; among
    several licenses for one formula the lowest node id is kept.
    """
    rules = t.rules if rules is None else rules
    on_branch = t.branch_formulas(leaf)
    found: dict = {}
    for i in t.branch(leaf):
        sf = t.nodes[i - 1].sf
        for f in cut_formulas_licensed_by(sf, rules):
            if f in found:
                continue
            if SignedFormula(True, f) in on_branch or SignedFormula(False, f) in on_branch:
                continue
            found[f] = i
    return [CutApp(leaf, f, i) for f, i in found.items()]


def cut_formulas_licensed_by(sf: SignedFormula, rules) -> list:
    out = []
    for seed in rules.cut_seeds():
        subst = match(seed.rule.premises[seed.main], sf)
        if subst is None:
            continue
        for m in seed.minors:
            f = substitute(seed.rule.premises[m], subst).formula
            if f not in out:
                out.append(f)
    return out


def apply(t: Tableau, app) -> Tableau:
    """Expand the branch named in ``app``; the input tableau is unchanged."""
    leaf = app.leaf
    if leaf not in t.leaves:
        raise TableauError(f"stale application: {leaf} is no longer a leaf")
    if leaf in t.closed_leaves:
        raise TableauError(f"branch ending at {leaf} is already closed")
    on_branch = t.branch_formulas(leaf)
    rules = t.rules
    if isinstance(app, LinearApp):
        if app.conclusion is None:
            raise TableauError("CLOSE rules close a branch by themselves and are not applied")
        if app.conclusion in on_branch:
            raise TableauError(f"{pretty(app.conclusion)} already occurs on the branch")
        branch = set(t.branch(leaf))
        if any(p not in branch for p in app.premises):
            raise TableauError("stale application: a premise is not on the branch")
        nid = len(t.nodes) + 1
        node = Node(nid, app.conclusion, RuleApp(app.rule.name, tuple(app.premises)), leaf)
        closed = app.conclusion.conjugate() in on_branch or closes_alone(app.conclusion, rules)
        leaves = tuple(nid if l == leaf else l for l in t.leaves)
        cl = t.closed_leaves | {nid} if closed else t.closed_leaves
        return Tableau(t.nodes + (node,), leaves, rules, cl)
    if isinstance(app, CutApp):
        pos, neg = SignedFormula(True, app.formula), SignedFormula(False, app.formula)
        if pos in on_branch or neg in on_branch:
            raise TableauError(f"{pretty(app.formula)} already occurs on the branch")
        if app.license not in set(t.branch(leaf)):
            raise TableauError("stale application: the license is not on the branch")
        a, b = len(t.nodes) + 1, len(t.nodes) + 2
        left = Node(a, pos, CutIntro(app.license, "+"), leaf)
        right = Node(b, neg, CutIntro(app.license, "-"), leaf)
        leaves = []
        for l in t.leaves:
            leaves.extend((a, b) if l == leaf else (l,))
        cl = set(t.closed_leaves)
        if neg in on_branch or closes_alone(pos, rules):
            cl.add(a)
        if pos in on_branch or closes_alone(neg, rules):
            cl.add(b)
        return Tableau(t.nodes + (left, right), tuple(leaves), rules, frozenset(cl))
    raise TypeError(f"not an application: {app!r}")


# --- justification DAGs -------------------------------------------------------

@dataclass(frozen=True)
class JustificationDAG:
    """Minimal justification structure of one closed branch.

    ``closure`` holds the node ids below the ⊗ root: a conjugate pair, or the
    single node matching a CLOSE rule.
    """

    leaf: int
    branch: tuple
    closure: tuple
    nodes: frozenset

    @property
    def size(self) -> int:
        return len(self.nodes) + 1

    def children(self, t: Tableau, i: int) -> tuple:
        if i == 0:
            return self.closure
        return t.node(i).supports()


def closure_choices(t: Tableau, leaf: int) -> list:
    """All admissible closures of a branch as sorted id tuples."""
    on_branch = t.branch_formulas(leaf)
    out = []
    for i in t.branch(leaf):
        sf = t.nodes[i - 1].sf
        j = on_branch.get(sf.conjugate())
        if j is not None and i < j:
            out.append((i, j))
        if closes_alone(sf, t.rules):
            out.append((i,))
    return out


def branch_dag(t: Tableau, leaf: int) -> JustificationDAG:
    best = None
    for choice in closure_choices(t, leaf):
        nodes = frozenset().union(*(t.support(i) for i in choice))
        key = (len(nodes), choice)
        if best is None or key < best[0]:
            best = (key, JustificationDAG(leaf, t.branch(leaf), choice, nodes))
    if best is None:
        raise TableauError(f"branch ending at {leaf} is open")
    return best[1]


def justification_dags(t) -> list:
    t = t.tableau if isinstance(t, Proof) else t
    return [branch_dag(t, l) for l in t.leaves]


def deductive_size(t) -> int:
    return sum(d.size for d in justification_dags(t))


def is_clean(t) -> bool:
    t = t.tableau if isinstance(t, Proof) else t
    used = frozenset().union(*(d.nodes for d in justification_dags(t)))
    return all(isinstance(n.just, Hyp) or n.id in used for n in t.nodes)


@dataclass(frozen=True, eq=False)
class Proof:
    tableau: Tableau
    dags: tuple
    size: int

    @classmethod
    def of(cls, t: Tableau) -> "Proof":
        if not tableau_closed(t):
            raise TableauError("the tableau has an open branch")
        dags = tuple(justification_dags(t))
        return cls(t, dags, sum(d.size for d in dags))

    @property
    def clean(self) -> bool:
        return is_clean(self.tableau)

    @property
    def applications(self) -> int:
        return self.tableau.applications

    def to_json(self) -> dict:
        return proof_to_json(self)

    def render(self) -> str:
        return render_proof(self)


# --- canonical forms ----------------------------------------------------------------

def _just_sig(t: Tableau, n: Node) -> tuple:
    j = n.just
    if isinstance(j, RuleApp):
        return ("r", j.rule, tuple(t.nodes[p - 1].sf for p in j.premises))
    if isinstance(j, CutIntro):
        return ("c", t.nodes[j.license - 1].sf)
    return ("h",)


def canonical_key(t: Tableau):
    """Key equal for tableaux differing only in the order of linear steps."""

    def segment(start: int):
        items = []
        i = start
        while True:
            n = t.nodes[i - 1]
            items.append((n.sf, _just_sig(t, n)))
            kids = t.children(i)
            if len(kids) == 1:
                i = kids[0]
                continue
            return (frozenset(items), tuple(segment(k) for k in kids))

    return segment(1)


def renumber(t: Tableau) -> Tableau:
    """Renumber nodes in depth-first pre-order, left subtree first.

    Within a straight segment the creation order is kept; premises always
    precede their conclusions, so the result is a valid tableau.
    """
    order = []
    stack = [1]
    while stack:
        i = stack.pop()
        order.append(i)
        stack.extend(reversed(t.children(i)))
    new = {old: k for k, old in enumerate(order, 1)}
    new[0] = 0
    nodes = []
    for old in order:
        n = t.nodes[old - 1]
        j = n.just
        if isinstance(j, RuleApp):
            j = RuleApp(j.rule, tuple(new[p] for p in j.premises))
        elif isinstance(j, CutIntro):
            j = CutIntro(new[j.license], j.polarity)
        nodes.append(Node(new[old], n.sf, j, new[n.parent]))
    leaves = tuple(new[l] for l in t.leaves)
    return Tableau(tuple(nodes), leaves, t.rules, frozenset(new[l] for l in t.closed_leaves))


# --- serialization ------------------------------------------------------------------

def proof_to_json(p) -> dict:
    proof = p if isinstance(p, Proof) else Proof.of(p)
    t = proof.tableau
    nodes = []
    for n in t.nodes:
        just: dict = {"kind": n.just.kind}
        if isinstance(n.just, RuleApp):
            just["rule"] = n.just.rule
            just["premises"] = list(n.just.premises)
        elif isinstance(n.just, CutIntro):
            just["license"] = n.just.license
            just["polarity"] = n.just.polarity
        nodes.append({"id": n.id, "sign": n.sf.sign, "formula": to_text(n.sf.formula),
                      "just": just})
    return {
        "nodes": nodes,
        "branches": [list(b) for b in t.branches()],
        "closures": [list(d.closure) for d in proof.dags],
        "size": proof.size,
    }


def replay(data: dict, rules: RuleSet, theory) -> Proof:
    """Rebuild a serialized proof, re-checking every step.

    Raises :class:`ReplayError` naming the offending node on unknown rules,
    premise mismatches, illegal cut licenses, open branches or a declared
    size that disagrees with the recomputed one.
    """
    table = signature(theory, rules.skolems)
    raw = sorted(data.get("nodes", []), key=lambda n: n["id"])
    if not raw:
        raise ReplayError("proof has no nodes")
    ids = [n["id"] for n in raw]
    if ids != list(range(1, len(ids) + 1)):
        raise ReplayError("node ids must be 1, 2, ... without gaps")
    parent = _parents(data, len(ids))
    nodes = []
    for n in raw:
        try:
            sf = parse_signed(f"{n['sign']} {n['formula']}", table)
        except ValueError as exc:
            raise ReplayError(f"unreadable formula: {exc}", n["id"]) from None
        nodes.append((n["id"], sf, n.get("just", {"kind": "hyp"})))

    hyps = [sf for i, sf, j in nodes if j["kind"] == "hyp"]
    nh = len(hyps)
    for i, sf, j in nodes:
        if (j["kind"] == "hyp") != (i <= nh):
            raise ReplayError("hypotheses must form the initial chain", i)
        if i <= nh and parent[i] != i - 1:
            raise ReplayError("hypotheses must form the initial chain", i)
    try:
        t = init_tableau(hyps, rules)
    except ExerciseScopeError as exc:
        raise ReplayError(str(exc), 1) from None
    if len(t.nodes) != nh:
        raise ReplayError("duplicate hypothesis", nh)

    ours = {i: i for i in range(nh + 1)}  # serialized id -> id in the rebuilt tableau
    by_id = {i: (sf, j) for i, sf, j in nodes}
    for i, sf, j in nodes[nh:]:
        if i in ours:
            continue
        if parent[i] not in ours:
            raise ReplayError(f"parent {parent[i]} is not placed yet", i)
        leaf = ours[parent[i]]
        if leaf not in t.leaves:
            raise ReplayError(f"parent {parent[i]} already has children", i)
        if leaf in t.closed_leaves:
            raise ReplayError("extends a branch that is already closed", i)
        if j["kind"] == "rule":
            r = rules.get(j.get("rule", ""))
            if r is None:
                raise ReplayError(f"unknown rule {j.get('rule')!r}", i)
            if r.closes:
                raise ReplayError(f"{r.name} closes a branch and derives nothing", i)
            prem = tuple(j.get("premises", ()))
            if len(prem) != len(r.premises):
                raise ReplayError(f"{r.name} takes {len(r.premises)} premise(s)", i)
            on = set(t.branch(leaf))
            for p in prem:
                if p not in ours or ours[p] not in on:
                    raise ReplayError(f"premise {p} is not above this node", i)
            subst: dict | None = {}
            for pat, p in zip(r.premises, prem):
                subst = match(pat, t.node(ours[p]).sf, subst)
                if subst is None:
                    raise ReplayError(f"premise mismatch: node {p} does not instantiate "
                                      f"{pretty(pat)} of {r.name}", i)
            if substitute(r.conclusion, subst) != sf:
                raise ReplayError(f"premise mismatch: {r.name} on {list(prem)} does not "
                                  f"conclude {pretty(sf)}", i)
            try:
                t = apply(t, LinearApp(leaf, r, tuple(ours[p] for p in prem), sf))
            except TableauError as exc:
                raise ReplayError(str(exc), i) from None
            ours[i] = len(t.nodes)
        elif j["kind"] == "cut":
            twins = [k for k, (sf2, j2) in by_id.items()
                     if k != i and parent.get(k) == parent[i] and j2.get("kind") == "cut"]
            if len(twins) != 1:
                raise ReplayError("a cut adds exactly two children, +φ and -φ", i)
            i2 = twins[0]
            sf2, j2 = by_id[i2]
            pos_id, neg_id = (i, i2) if j.get("polarity") == "+" else (i2, i)
            pos, neg = by_id[pos_id], by_id[neg_id]
            if (pos[1].get("polarity") != "+" or neg[1].get("polarity") != "-"
                    or not pos[0].positive or neg[0].positive
                    or pos[0].formula != neg[0].formula
                    or j.get("license") != j2.get("license")):
                raise ReplayError("a cut adds +φ on the left and -φ on the right", i)
            lic = j.get("license")
            if lic not in ours or ours[lic] not in set(t.branch(leaf)):
                raise ReplayError(f"illegal cut license {lic}: not above this node", i)
            if sf.formula not in cut_formulas_licensed_by(t.node(ours[lic]).sf, rules):
                raise ReplayError(f"illegal cut license {lic}: {pretty(sf.formula)} is not a "
                                  f"minor co-premise of it", i)
            try:
                t = apply(t, CutApp(leaf, sf.formula, ours[lic]))
            except TableauError as exc:
                raise ReplayError(str(exc), i) from None
            ours[pos_id], ours[neg_id] = len(t.nodes) - 1, len(t.nodes)
        else:
            raise ReplayError(f"unknown justification kind {j['kind']!r}", i)

    back = {v: k for k, v in ours.items()}
    unclosed = [back[l] for l in t.leaves if l not in t.closed_leaves]
    if unclosed:
        raise ReplayError("branch is not closed", unclosed[0])
    t = relabel(t, back)
    t = Tableau(t.nodes, tuple(sorted(t.leaves, key=lambda l: _leaf_order(t, l))),
                t.rules, t.closed_leaves)
    proof = Proof.of(t)
    declared = data.get("closures")
    if declared is not None:
        if len(declared) != len(t.leaves):
            raise ReplayError("one closure per branch is required")
        for leaf, c in zip(t.leaves, declared):
            if tuple(sorted(c)) not in closure_choices(t, leaf):
                raise ReplayError(f"declared closure {c} does not close the branch", leaf)
    if "size" in data and data["size"] != proof.size:
        raise ReplayError(f"declared size {data['size']} but the proof has size {proof.size}")
    return proof


def _leaf_order(t: Tableau, leaf: int) -> tuple:
    # left-to-right: compare root paths by the order of children (by id)
    path = []
    for a, b in zip(t.branch(leaf), t.branch(leaf)[1:]):
        path.append(t.children(a).index(b))
    return tuple(path)


def relabel(t: Tableau, mapping: dict) -> Tableau:
    """Rename node ids by ``mapping``; the image must be 1..n."""
    mapping = dict(mapping)
    mapping[0] = 0
    nodes = [None] * len(t.nodes)
    for n in t.nodes:
        j = n.just
        if isinstance(j, RuleApp):
            j = RuleApp(j.rule, tuple(mapping[p] for p in j.premises))
        elif isinstance(j, CutIntro):
            j = CutIntro(mapping[j.license], j.polarity)
        nid = mapping[n.id]
        nodes[nid - 1] = Node(nid, n.sf, j, mapping[n.parent])
    return Tableau(tuple(nodes), tuple(mapping[l] for l in t.leaves), t.rules,
                   frozenset(mapping[l] for l in t.closed_leaves))


def _parents(data: dict, count: int) -> dict:
    parent = {}
    for b in data.get("branches", []):
        prev = 0
        for i in b:
            if parent.setdefault(i, prev) != prev:
                raise ReplayError("branches disagree about the parent", i)
            prev = i
    if not data.get("branches"):
        parent = {i: i - 1 for i in range(1, count + 1)}
    for i in range(1, count + 1):
        if i not in parent:
            raise ReplayError("node is on no branch", i)
        if parent[i] >= i:
            raise ReplayError("parent must precede its child", i)
    return parent


# --- text rendering ----------------------------------------------------------------

def _annotation(n: Node) -> str:
    j = n.just
    if isinstance(j, RuleApp):
        return f"via {j.rule} [{', '.join(map(str, j.premises))}]"
    if isinstance(j, CutIntro):
        return f"cut [{j.license}]"
    return "hyp"


def render_proof(p) -> str:
    proof = p if isinstance(p, Proof) else Proof.of(p)
    t = proof.tableau
    dag_of = {d.leaf: d for d in proof.dags}
    width = max(len(pretty(n.sf)) for n in t.nodes) + 2
    lines = []

    def emit(start: int, indent: str):
        i = start
        while True:
            n = t.node(i)
            lines.append(f"{indent}({n.id}) {pretty(n.sf):<{width}}{_annotation(n)}")
            kids = t.children(i)
            if len(kids) == 1:
                i = kids[0]
                continue
            if not kids:
                d = dag_of.get(i)
                if d is not None:
                    lines.append(f"{indent}⊗ " + " ".join(f"({c})" for c in d.closure))
                else:
                    lines.append(f"{indent}open")
                return
            for k, label in zip(kids, ("left", "right")):
                lines.append(f"{indent}{label}:")
                emit(k, indent + "    ")
            return

    emit(1, "")
    lines.append(f"deductive size {proof.size}")
    return "\n".join(lines) + "\n"
