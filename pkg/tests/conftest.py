import random
from collections import deque

import pytest

from pebblekit import Graph


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def path_graph(n: int, weight: int = 2) -> Graph:
    return Graph(n, [(i, i + 1, weight) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Center is vertex 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5, weights=(2,)) -> Graph:
    while True:
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.append((u, v, rng.choice(weights)))
        try:
            return Graph(n, edges)
        except Exception:
            continue


def naive_all_moves_solvable(G: Graph, config, root: int, k: int) -> bool:
    """Reference solvability: plain BFS over configurations allowing every
    move, including moves off the root."""
    start = tuple(config)
    seen = {start}
    q = deque([start])
    while q:
        c = q.popleft()
        if c[root] >= k:
            return True
        for u, v in G.edges:
            for a, b in ((u, v), (v, u)):
                w = G.weight(a, b)
                if c[a] >= w:
                    nc = list(c)
                    nc[a] -= w
                    nc[b] += 1
                    t = tuple(nc)
                    if t not in seen:
                        seen.add(t)
                        q.append(t)
    return False


@pytest.fixture
def rng():
    return random.Random(20260810)
