import random

import pytest

from propindep import gen
from propindep.oracle import TruthTable

# acceptance criteria append (label, passed, detail) here; printed at the end of the run
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({detail})")


@pytest.fixture
def rng():
    return random.Random(12345)


def same_models(f, g, over=None) -> bool:
    """Model-set equality over the union alphabet (or ``over``)."""
    from propindep.formula import variables

    names = set(over) if over is not None else variables(f) | variables(g)
    tt = TruthTable(names)
    return bool((tt.eval(f) == tt.eval(g)).all())


def random_instance(rng, max_vars=6, depth=4, ops=gen.ALL_OPS):
    names = gen.var_names(rng.randint(1, max_vars))
    return names, gen.random_formula(rng, names, rng.randint(1, depth), ops)
