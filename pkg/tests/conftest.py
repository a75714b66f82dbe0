import random

import pytest

from minorflow.network import FlowNetwork


def dnet(pairs, extra=(), cap=1):
    """Directed unit-capacity network from (tail, head) pairs, ids serial."""
    return FlowNetwork.from_edges(
        [(i, u, v, cap) for i, (u, v) in enumerate(pairs)], extra
    )


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
