"""Run the docstring examples embedded in the library modules."""

import doctest

import tklwb.laurent
import tklwb.words


def test_doctests():
    for module in (tklwb.words, tklwb.laurent):
        result = doctest.testmod(module)
        assert result.failed == 0, module.__name__
        assert result.attempted > 0, module.__name__
