import pytest

import kmerscan as ks

# Running example set used throughout: four 3-mers with shared suffixes, so
# failure transitions and overlapping matches are both exercised.
TOY_PATTERNS = "acg\ncat\ncta\ntta"


@pytest.fixture(scope="session")
def toy_exprs():
    return ks.parse_expressions(TOY_PATTERNS)


@pytest.fixture(scope="session")
def toy_table(toy_exprs):
    return ks.expand_to_literals(toy_exprs)


@pytest.fixture(scope="session")
def toy_dfa(toy_table):
    return ks.build_dfa(toy_table)


@pytest.fixture(scope="session")
def builtin_exprs():
    return ks.builtin_expression_set()


@pytest.fixture(scope="session")
def builtin_table(builtin_exprs):
    return ks.expand_to_literals(builtin_exprs)


@pytest.fixture(scope="session")
def builtin_dfa(builtin_table):
    return ks.build_dfa(builtin_table)
