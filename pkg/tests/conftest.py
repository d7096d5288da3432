import numpy as np
import pytest

import nbtrace as nt


@pytest.fixture(scope="session")
def test_graphs():
    """The standard desk-scale graph set used across the suite."""
    return {
        "C3": nt.cycle(3),
        "C5": nt.cycle(5),
        "K4": nt.complete(4),
        "petersen": nt.petersen(),
        "torus42": nt.torus(4, 2),
    }


@pytest.fixture(scope="session")
def eig_oracle():
    """Independent eigendecomposition (LAPACK) for cross-checking ours."""

    def compute(matrix):
        w, v = np.linalg.eigh(np.asarray(matrix, dtype=float))
        order = np.argsort(-w)
        return w[order], v[:, order]

    return compute
