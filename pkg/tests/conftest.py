import pytest

from falsetheta import qseries


@pytest.fixture(scope="session")
def alpha_tables():
    """Exact coefficient tables to n = 4000, shared by the expensive tests."""
    return {j: qseries.alpha(j, 4000) for j in range(3)}


@pytest.fixture(scope="session")
def partition_table():
    return qseries.partition_numbers(500)
