import math

import numpy as np
import pytest

from chiralwalk.walk import SpinorField


def random_state(rng: np.random.Generator, max_sites: int = 30) -> SpinorField:
    """Normalized random state on a random window."""
    n = int(rng.integers(1, max_sites + 1))
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    norm = math.sqrt(float(np.sum(np.abs(a) ** 2 + np.abs(b) ** 2)))
    return SpinorField(
        (a / norm).astype(np.complex128),
        (b / norm).astype(np.complex128),
        offset=int(rng.integers(-10, 10)),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260825)
