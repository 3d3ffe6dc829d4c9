import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracle():
    return json.loads((DATA / "oracle_values.json").read_text())


def disc_grid(count=100, seed=11):
    """Points in the closed unit disc, including the origin, 1 and boundary points."""
    rng = np.random.default_rng(seed)
    fixed = np.array([0, 1, -1, 1j, -1j, np.exp(0.7j), 0.5, 0.3 + 0.4j], dtype=complex)
    m = count - len(fixed)
    rad = np.sqrt(rng.uniform(0, 1, m))
    ang = rng.uniform(0, 2 * np.pi, m)
    return np.concatenate([fixed, rad * np.exp(1j * ang)])


@pytest.fixture(scope="session")
def grid():
    return disc_grid()
