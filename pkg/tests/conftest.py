import json
from contextlib import contextmanager
from pathlib import Path

import pytest

from tsgen import load_bundled
from tsgen.extraction import extract_rules
from tsgen.tableau import replay
from tsgen.theory import parse_exercise, parse_signed, parse_theory, signature

DATA = Path(__file__).parent / "data"

SETS = parse_theory(load_bundled("sets.thy"))
RULES = extract_rules(SETS)
SIG = signature(SETS)


def sf(text):
    """Parse one signed formula over the sets signature."""
    return parse_signed(text, SIG)


def exercise(*lines):
    return parse_exercise("\n".join(lines), SETS)


def bundled_exercise(name):
    return parse_exercise(load_bundled(name), SETS)


def fixture_json(name):
    return json.loads((DATA / f"{name}.json").read_text(encoding="utf-8"))


def fixture_proof(name):
    return replay(fixture_json(name), RULES, SETS)


@pytest.fixture(scope="session")
def sets_theory():
    return SETS


@pytest.fixture(scope="session")
def rules():
    return RULES


# --- acceptance bookkeeping ------------------------------------------------------

ACCEPTANCE: dict = {}


@contextmanager
def criterion(key, description):
    """Record the outcome of one acceptance criterion for the final summary."""
    ACCEPTANCE[key] = (False, description, "did not finish")
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE[key] = (False, description, f"{type(exc).__name__}: {exc}".splitlines()[0])
        raise
    ACCEPTANCE[key] = (True, description, "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, desc, why = ACCEPTANCE[key]
        line = f"criterion {key}: {'PASS' if ok else 'FAIL'} - {desc}"
        if why:
            line += f" ({why})"
        terminalreporter.write_line(line)
