import pytest

import graphiso as gi


def dumbbell():
    """Two loops joined by a bridge edge."""
    return gi.build_graph(
        ["a", "b"],
        [("l1", "a", "a", 1.0), ("br", "a", "b", 1.0), ("l2", "b", "b", 1.0)])


def corpus():
    """Small named graphs used across the verification tests."""
    return [
        ("bouquet1", gi.bouquet(1)),
        ("bouquet2", gi.bouquet(2)),
        ("bouquet3", gi.bouquet(3)),
        ("bouquet4", gi.bouquet(4)),
        ("bouquet2w", gi.bouquet(2, [1.0, 2.0])),
        ("theta", gi.theta(3)),
        ("theta_w", gi.theta(3, [0.5, 0.7, 1.3])),
        ("theta_sub", gi.subdivide(gi.theta(3), "e1", 3)),
        ("k4", gi.complete(4)),
        ("cycle4", gi.cycle(4)),
        ("dumbbell", dumbbell()),
        ("reg3", gi.random_regular(10, 3, seed=1)),
        ("reg4", gi.random_regular(8, 4, seed=2)),
        ("rw1", gi.random_weighted(seed=11)),
        ("rw2", gi.random_weighted(seed=12)),
        ("rw3", gi.random_weighted(b_range=(2, 4), weight_range=(0.5, 2.0),
                                   seed=13)),
    ]


@pytest.fixture(scope="session")
def corpus_graphs():
    return corpus()


@pytest.fixture(scope="session")
def small_corpus():
    """Corpus graphs small enough for the brute-force walk oracle."""
    return [(name, g) for name, g in corpus() if g.num_edges <= 8]
