import doctest

import pytest

import cnftrack
import cnftrack.metrics


@pytest.mark.parametrize("module", [cnftrack, cnftrack.metrics], ids=lambda m: m.__name__)
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.attempted > 0 and result.failed == 0
