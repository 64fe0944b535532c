import sys
import random

import pytest

from opcdcl.cnf import random_kcnf


def naive_unit_propagation(clauses, assumptions):
    """Fixpoint unit propagation by repeated full sweeps. True iff a clause gets falsified."""
    assign = {}
    for lit in assumptions:
        if assign.get(abs(lit), lit > 0) != (lit > 0):
            return True
        assign[abs(lit)] = lit > 0
    changed = True
    while changed:
        changed = False
        for c in clauses:
            open_lits = []
            sat = False
            for lit in c:
                v = assign.get(abs(lit))
                if v is None:
                    open_lits.append(lit)
                elif v == (lit > 0):
                    sat = True
                    break
            if sat:
                continue
            if not open_lits:
                return True
            if len(open_lits) == 1:
                assign[abs(open_lits[0])] = open_lits[0] > 0
                changed = True
    return False


def random_formulas(seed, count, max_vars, max_clauses, min_vars=1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        v = rng.randint(min_vars, max_vars)
        m = rng.randint(1, min(max_clauses, 6 * v))
        k = rng.choice([2, 3, 3, 3])
        out.append(random_kcnf(rng, v, m, k))
    return out


@pytest.fixture
def naive_up():
    return naive_unit_propagation


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for name in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[name])
