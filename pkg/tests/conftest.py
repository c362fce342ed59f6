import pytest

import grigtree as gt


@pytest.fixture(scope="session")
def quotient4():
    return gt.enumerate_quotient(4)


@pytest.fixture(scope="session")
def admissible4():
    return gt.enumerate_admissible_decorations(4)
