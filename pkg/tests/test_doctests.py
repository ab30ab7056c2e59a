import doctest

import pytest

import ganed.distances
import ganed.sequence


@pytest.mark.parametrize("module", [ganed.distances, ganed.sequence])
def test_module_doctests(module):
    failures, _ = doctest.testmod(module)
    assert failures == 0
