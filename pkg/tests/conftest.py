import numpy as np
import pytest

from rpmargin import ProjectionMatrix


@pytest.fixture
def identity_factory():
    """Exact-isometry test double: ignores n and returns the d x d identity."""

    def factory(n, d, seed):
        return ProjectionMatrix(np.eye(d), "gaussian", seed)

    return factory
