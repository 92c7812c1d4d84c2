from pathlib import Path
from typing import Callable, List

import numpy as np
import pytest

from src.model.instance import Instance, euclidean_nint
from src.model.tsplib import load_tsplib
from src.utils import load_instance_json

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def en13k4() -> Instance:
    return load_tsplib(DATA / "tsplib" / "E-n13-k4.vrp")


@pytest.fixture
def nni_demo() -> Instance:
    """8 customers, Q=8, m=3; tight enough that greedy strands a customer."""
    return load_instance_json(DATA / "small" / "nni-n8-k3.json")


@pytest.fixture
def cws_demo() -> Instance:
    """8 customers, Q=10, m=3."""
    return load_instance_json(DATA / "small" / "cws-n8-k3.json")


@pytest.fixture
def minimal_standard_digits() -> List[int]:
    """First 100 outputs mod 100 of a=16807, m=2^31-1, seed 172361."""
    return [
        61, 80, 52, 61, 47, 14, 12, 8, 35, 55, 61, 40, 96, 90, 36, 49, 30, 34, 47, 45,
        92, 57, 25, 97, 87, 98, 26, 42, 88, 82, 56, 76, 55, 40, 80, 73, 35, 45, 64, 67,
        91, 74, 1, 47, 93, 73, 29, 65, 68, 46, 37, 50, 59, 87, 83, 67, 37, 32, 16, 66,
        97, 20, 6, 53, 28, 35, 59, 13, 2, 29, 96, 84, 24, 9, 11, 36, 10, 7, 92, 40,
        18, 14, 58, 71, 47, 40, 19, 93, 40, 62, 93, 97, 44, 58, 6, 24, 68, 54, 36, 25,
    ]  # fmt: skip


def random_instance(seed: int, n: int, capacity: int = 20) -> Instance:
    """
    Integer coordinates on a 100x100 grid, demands uniform in [1, Q/2] and
    one vehicle per customer.
    """
    rng = np.random.default_rng(seed)
    coords = rng.integers(0, 101, size=(n + 1, 2))
    demands = np.concatenate([[0], rng.integers(1, capacity // 2 + 1, size=n)])
    return Instance(f"random-{seed}-n{n}", euclidean_nint(coords), demands, capacity, n, coords)


@pytest.fixture
def make_random_instance() -> Callable[..., Instance]:
    return random_instance


@pytest.fixture
def tiny_instances() -> List[Instance]:
    return [random_instance(seed, 3 + seed % 4) for seed in range(10)]
