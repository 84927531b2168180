"""Theory-specific tableau proofs and generation of comparable proof exercises."""
from importlib import resources

from .extraction import Rule, RuleSet, extract_rules
from .isogen import deductively_isomorphic, generate
from .search import NotRefuted, SearchLimits, minimal_proofs, prove_once
from .tableau import Proof, deductive_size, init_tableau, is_clean, replay
from .theory import Theory, TheoryError, parse_exercise, parse_theory

__all__ = [
    "NotRefuted", "Proof", "Rule", "RuleSet", "SearchLimits", "Theory", "TheoryError",
    "deductive_size", "deductively_isomorphic", "extract_rules", "generate", "init_tableau",
    "is_clean", "load_bundled", "minimal_proofs", "parse_exercise", "parse_theory",
    "prove_once", "replay",
]


def load_bundled(name: str) -> str:
    """Text of a data file shipped with the package (e.g. ``sets.thy``)."""
    return (resources.files(__package__) / "data" / name).read_text(encoding="utf-8")
