"""Shared tower stages."""

import pytest

from henselkit.series.tower import TowerDescriptor


@pytest.fixture
def q():
    return TowerDescriptor()


@pytest.fixture
def stage1():
    return TowerDescriptor.build(1)


@pytest.fixture
def stage2():
    return TowerDescriptor.build(2)
