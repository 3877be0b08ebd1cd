import numpy as np
import pytest

from aldvar import harness


@pytest.fixture(scope="session")
def catalog():
    """The twelve benchmark severities as {tag: model}."""
    return dict(harness.TABLE1)


@pytest.fixture()
def rng():
    return np.random.default_rng(20170925)
