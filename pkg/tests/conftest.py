import itertools

import pytest

from splitalg import builtin


def naive_check(A, identity):
    """Reference identity checker: plain loops over every assignment."""
    from splitalg.terms import eval_term

    for assignment in itertools.product(range(A.size), repeat=identity.var_count):
        if eval_term(identity.lhs, A, assignment) != eval_term(identity.rhs, A, assignment):
            return assignment
    return None


@pytest.fixture
def z6():
    return builtin("cyclic", 6)


@pytest.fixture
def z3():
    return builtin("cyclic", 3)


@pytest.fixture
def z2():
    return builtin("cyclic", 2)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
