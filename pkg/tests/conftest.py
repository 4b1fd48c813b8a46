from __future__ import annotations

import pytest

from zfx.graphs import Graph, enumerate_graphs


@pytest.fixture(scope="session")
def graphs_by_n() -> dict[int, list[Graph]]:
    """All isomorphism classes (including disconnected) for n <= 6."""
    return {n: list(enumerate_graphs(n)) for n in range(0, 7)}


@pytest.fixture(scope="session")
def connected_by_n() -> dict[int, list[Graph]]:
    """Connected isomorphism classes for n <= 7."""
    return {n: list(enumerate_graphs(n, connected_only=True)) for n in range(1, 8)}
