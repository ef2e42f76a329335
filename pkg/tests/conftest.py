"""pytest configuration for the cofactorization test suite."""

import os
import sys

import pytest

# Add the repository root to the path so tests can import `src` and `tests.helpers`
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from tests.helpers import make_random_problem, make_random_state  # noqa: E402
from src.problem import Variant, build_class_weights  # noqa: E402


@pytest.fixture(autouse=True)
def sequential_threads(monkeypatch):
    """Run every test in the deterministic single-threaded mode."""
    monkeypatch.setenv("COFACT_THREADS", "0")


@pytest.fixture(params=[Variant.QUADRATIC, Variant.CROSS_ENTROPY], ids=["quadratic", "ce"])
def variant(request):
    return request.param


@pytest.fixture
def random_instance(variant):
    """(problem, state, weights) of the default small size for the given variant."""
    problem = make_random_problem(seed=7, variant=variant)
    state = make_random_state(problem, seed=8)
    weights = build_class_weights(problem.labels, problem.num_classes)
    return problem, state, weights
