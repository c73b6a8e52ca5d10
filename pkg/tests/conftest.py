import numpy as np
import pytest
from hypothesis import settings, strategies as st

from opineq.sampler import SeededStream

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=6)


def rng_for(seed, stream=0):
    return SeededStream(seed, stream).generator()


@pytest.fixture
def rng():
    return rng_for(12345)


def diag(*xs):
    return np.diag(np.array(xs, dtype=np.complex128))
