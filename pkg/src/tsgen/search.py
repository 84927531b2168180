"""Breadth-first search for minimal clean proofs.

Level n holds the distinct tableaux built with n applications (a cut counts
as one).  Only the leftmost open branch of a tableau is expanded: branches
are independent once split, so this loses no closed tableau.  States are
merged by :func:`~tsgen.tableau.canonical_key`, and a state is dropped when a
lower bound on the size of any clean proof extending it exceeds the best
size found so far.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .extraction import RuleSet
from .tableau import (
    Hyp, Proof, Tableau, applicable_cut_instances,
    applicable_linear_instances, apply, branch_dag, canonical_key, init_tableau,
    proof_to_json, renumber, tableau_closed,
)


class NotRefuted(Exception):
    """No closed clean tableau was found.

    ``exhausted`` is true when a limit (application cap or time budget) cut
    the search short, and false when every tableau was explored.
    """

    def __init__(self, message: str, exhausted: bool):
        super().__init__(message)
        self.exhausted = exhausted


@dataclass(frozen=True)
class SearchLimits:
    max_apps: int = 64
    timeout: float | None = None
    use_cut: bool = True


@dataclass
class SearchStats:
    states_per_level: list = field(default_factory=list)
    merged: int = 0
    pruned_bound: int = 0
    pruned_dead: int = 0
    closed_seen: int = 0
    unclean_seen: int = 0


@dataclass(frozen=True)
class SearchResult:
    proofs: tuple
    minimal_size: int
    stats: SearchStats

    @property
    def minimal_proofs(self) -> tuple:
        return self.proofs


def lower_bound(t: Tableau) -> tuple:
    """``(bound, dead)`` for clean proofs extending ``t``.

    Closed branches keep their justification DAGs, every derived node must
    join some DAG, and each open branch still needs ⊗, a hypothesis and at
    least one new node.  ``dead`` is set when a derived node lies only on
    closed branches whose DAGs skip it, so no clean extension exists.
    """
    used = set()
    total = 0
    closed = [l for l in t.leaves if l in t.closed_leaves]
    for l in closed:
        d = branch_dag(t, l)
        total += d.size
        used |= d.nodes
    open_leaves = [l for l in t.leaves if l not in t.closed_leaves]
    on_open = set()
    for l in open_leaves:
        on_open.update(t.branch(l))
    leftover = 0
    for n in t.nodes:
        if isinstance(n.just, Hyp) or n.id in used:
            continue
        if n.id not in on_open:
            return total, True
        leftover += 1
    return total + leftover + 3 * len(open_leaves), False


def expansions(t: Tableau, use_cut: bool = True) -> list:
    leaf = t.open_leaves()[0]
    apps = applicable_linear_instances(t, leaf, include_close=False)
    if use_cut:
        apps += applicable_cut_instances(t, leaf)
    return apps


def _finish(proofs: dict) -> tuple:
    out = []
    for t in proofs.values():
        p = Proof.of(renumber(t))
        out.append((json.dumps(proof_to_json(p), sort_keys=True, ensure_ascii=False), p))
    out.sort(key=lambda x: x[0])
    return tuple(p for _, p in out)


def minimal_proofs(rules: RuleSet, sfs, limits: SearchLimits | None = None,
                   first_only: bool = False) -> SearchResult:
    """All minimal clean proofs of ``sfs``, up to structural identity.

    With ``first_only`` the search returns as soon as one closed clean proof
    appears, without the minimality guarantee.
    """
    limits = limits or SearchLimits()
    deadline = None if limits.timeout is None else time.monotonic() + limits.timeout
    stats = SearchStats()
    start = init_tableau(sfs, rules)
    best = None
    found: dict = {}

    def consider(t: Tableau) -> None:
        nonlocal best
        stats.closed_seen += 1
        p = Proof.of(t)
        if not p.clean:
            stats.unclean_seen += 1
            return
        if best is None or p.size < best:
            best = p.size
            found.clear()
        if p.size == best:
            found.setdefault(canonical_key(t), t)

    frontier = []
    if tableau_closed(start):
        consider(start)
    else:
        frontier = [start]
    stats.states_per_level.append(len(frontier))
    level = 0
    timed_out = False
    while frontier and not (first_only and found):
        if level >= limits.max_apps:
            break
        level += 1
        nxt: dict = {}
        for t in frontier:
            if deadline is not None and time.monotonic() > deadline:
                timed_out = True
                break
            for app in expansions(t, limits.use_cut):
                c = apply(t, app)
                if tableau_closed(c):
                    consider(c)
                    continue
                bound, dead = lower_bound(c)
                if dead:
                    stats.pruned_dead += 1
                    continue
                if best is not None and bound > best:
                    stats.pruned_bound += 1
                    continue
                key = canonical_key(c)
                if key in nxt:
                    stats.merged += 1
                else:
                    nxt[key] = c
            if first_only and found:
                break
        if timed_out:
            break
        frontier = [c for c in nxt.values() if best is None or lower_bound(c)[0] <= best]
        stats.pruned_bound += len(nxt) - len(frontier)
        stats.states_per_level.append(len(frontier))

    if not found:
        if timed_out or frontier:
            why = "time budget" if timed_out else f"{limits.max_apps} applications"
            raise NotRefuted(f"not refuted within limits ({why})", exhausted=True)
        raise NotRefuted("not refutable: every tableau was explored and none closes",
                         exhausted=False)
    if timed_out or (frontier and not first_only):
        # the bound did not drain the frontier: minimality is not established
        why = "time budget" if timed_out else f"{limits.max_apps} applications"
        raise NotRefuted(f"minimality not established within limits ({why})", exhausted=True)
    return SearchResult(_finish(found), best, stats)


def prove_once(rules: RuleSet, sfs, limits: SearchLimits | None = None) -> Proof:
    """Some closed clean proof, found by the same breadth-first sweep."""
    return minimal_proofs(rules, sfs, limits, first_only=True).proofs[0]
