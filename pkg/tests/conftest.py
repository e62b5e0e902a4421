import numpy as np
import pytest

from longmem.data import nile_data


@pytest.fixture(scope="session")
def nile():
    """Bundled Nile minima series (T = 663)."""
    return nile_data().series("NileMin")


@pytest.fixture(scope="session")
def nile_values(nile):
    return np.asarray(nile.values)
