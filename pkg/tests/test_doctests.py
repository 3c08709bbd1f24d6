"""Collect the doctest examples from every module."""

import doctest

import pytest

import qschub.parabolic
import qschub.poly
import qschub.quantization
import qschub.quantum_ring
import qschub.schubert
import qschub.weyl

MODULES = [
    qschub.poly,
    qschub.weyl,
    qschub.schubert,
    qschub.quantization,
    qschub.parabolic,
    qschub.quantum_ring,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.attempted > 0
    assert result.failed == 0
