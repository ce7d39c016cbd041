import pytest

from signedteams import SignedGraph
from signedteams.harness import random_connected_signed_graph

# Six-node fixture behind the SBP-vs-SP separation example: the only
# shortest u-v path (u,x1,v) is negative, the positive detour (u,x2,x1,v)
# is unbalanced because of the chord (u,x1), and (u,x2,x3,x4,v) is a
# positive balanced path of length 4.
FIG_A_LABELS = ("u", "x1", "x2", "x3", "x4", "v")
FIG_A_EDGES = [(0, 1, 1), (1, 5, -1), (0, 2, 1), (2, 1, -1),
               (2, 3, 1), (3, 4, 1), (4, 5, 1)]

# Seven-node fixture behind the prefix-property failure example: the
# shortest balanced u-x4 path is (u,x3,x4), but the shortest balanced
# positive u-v path (u,x1,x2,x4,x5,v) does not extend it because
# (u,x3,x4,x5,v) is unbalanced (chord x3-x5).
FIG_B_LABELS = ("u", "x1", "x2", "x3", "x4", "x5", "v")
FIG_B_EDGES = [(0, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1),
               (0, 1, -1), (1, 2, -1), (2, 4, 1), (3, 5, -1)]


@pytest.fixture
def fig_a() -> SignedGraph:
    return SignedGraph(6, FIG_A_EDGES, FIG_A_LABELS)


@pytest.fixture
def fig_b() -> SignedGraph:
    return SignedGraph(7, FIG_B_EDGES, FIG_B_LABELS)


def small_random_graph(seed: int, n_max: int = 12) -> SignedGraph:
    """Seeded small connected signed graph for desk-scale comparisons."""
    n = 4 + seed % (n_max - 3)
    p = (0.2, 0.4)[seed % 2]
    neg = (0.2, 0.5)[(seed // 2) % 2]
    return random_connected_signed_graph(n, p, neg, seed)
