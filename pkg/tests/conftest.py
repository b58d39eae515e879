import pytest

from cutlab.experiment import ExperimentConfig, build_dataset


@pytest.fixture(scope="session")
def dataset():
    """The default 16-graph dataset (4 families x sizes 4, 6, 8, 10)."""
    return build_dataset(ExperimentConfig())


@pytest.fixture(scope="session")
def small_dataset(dataset):
    """Dataset graphs with at most 10 nodes (all of them, by construction)."""
    return [g for g in dataset if g.n <= 10]
