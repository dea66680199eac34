import numpy as np
import pytest
import torch

from builders.corpus import create_corpus
from builders.landmarks import create_landmarks


@pytest.fixture
def landmarks():
    return create_landmarks()


@pytest.fixture
def corpus():
    return create_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def single_thread():
    threads = torch.get_num_threads()
    torch.set_num_threads(1)
    yield
    torch.set_num_threads(threads)
