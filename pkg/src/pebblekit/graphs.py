"""Undirected weighted graphs, distances, BFS trees, and block decomposition.

Vertices are dense integer ids 0..n-1.  Every edge carries a positive
integer move weight (default 2): the number of pebbles consumed at one
endpoint to place a single pebble at the other.  Weights never affect
distances, which are always hop counts.

All values here are immutable after construction and safe to share across
concurrent tasks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

DEFAULT_WEIGHT = 2


class GraphError(ValueError):
    """Base class for graph construction errors."""


class DisconnectedGraphError(GraphError):
    """The edge list does not connect all vertices."""


class DuplicateEdgeError(GraphError):
    """The same unordered pair appears twice in the edge list."""


class BadWeightError(GraphError):
    """An edge weight is not a positive integer."""


class Graph:
    """Connected undirected graph with per-edge pebbling move weights."""

    __slots__ = ("n", "edges", "weights", "adj", "_cache")

    def __init__(self, n, edges):
        """Build from an iterable of (u, v) or (u, v, weight) tuples.

        Raises DuplicateEdgeError, BadWeightError or DisconnectedGraphError;
        self-loops and out-of-range endpoints raise GraphError.
        """
        if n <= 0:
            raise GraphError("vertex count must be positive")
        weight_map: dict[tuple[int, int], int] = {}
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = DEFAULT_WEIGHT
            else:
                u, v, w = item
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge endpoint out of range: ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not isinstance(w, int) or w < 1:
                raise BadWeightError(f"edge ({u}, {v}) has weight {w!r}; need integer >= 1")
            key = (u, v) if u < v else (v, u)
            if key in weight_map:
                raise DuplicateEdgeError(f"duplicate edge ({key[0]}, {key[1]})")
            weight_map[key] = w

        self.n = n
        self.edges = tuple(sorted(weight_map))
        self.weights = {e: weight_map[e] for e in self.edges}
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)

        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    queue.append(y)
        if count != n:
            raise DisconnectedGraphError(f"graph has {n} vertices but only {count} reachable from 0")
        self._cache = {}

    def cached(self, key, builder):
        """Memoize a derived structure on this (immutable) graph."""
        try:
            return self._cache[key]
        except KeyError:
            value = builder()
            self._cache[key] = value
            return value

    def weight(self, u: int, v: int) -> int:
        return self.weights[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.weights

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.n, self.edges, tuple(self.weights[e] for e in self.edges)))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(n: int, edges) -> Graph:
    """Validate and normalize an edge list into a Graph."""
    return Graph(n, edges)


def distances_from(G: Graph, v: int) -> list[int]:
    """Hop distances from v to every vertex (edge weights are ignored)."""
    dist = [-1] * G.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in G.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def eccentricity(G: Graph, v: int) -> int:
    return max(distances_from(G, v))


def diameter(G: Graph) -> int:
    """Maximum hop distance over all vertex pairs."""
    return max(eccentricity(G, v) for v in range(G.n))


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree given by a parent map; edge weights come from `graph`.

    parent[root] is None.  When produced by bfs_spanning_tree the tree
    preserves hop distances from the root.
    """

    graph: Graph
    root: int
    parent: tuple

    def tree_edges(self):
        return tuple(
            ((p, v) if p < v else (v, p))
            for v, p in enumerate(self.parent)
            if p is not None
        )

    def as_graph(self) -> Graph:
        """The tree itself as a Graph, inheriting source edge weights."""
        return Graph(
            self.graph.n,
            [(u, v, self.graph.weight(u, v)) for u, v in self.tree_edges()],
        )

    def depths(self) -> list[int]:
        children: list[list[int]] = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                children[p].append(v)
        d = [0] * self.graph.n
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in children[v]:
                d[c] = d[v] + 1
                stack.append(c)
        return d


def bfs_spanning_tree(G: Graph, r: int) -> RootedTree:
    """Distance-preserving spanning tree rooted at r.

    Deterministic: each vertex's parent is its lowest-indexed neighbor on
    the previous BFS level.
    """
    dist = distances_from(G, r)
    parent: list = [None] * G.n
    for v in range(G.n):
        if v == r:
            continue
        parent[v] = min(u for u in G.adj[v] if dist[u] == dist[v] - 1)
    return RootedTree(graph=G, root=r, parent=tuple(parent))


@dataclass(frozen=True)
class BlockCutTree:
    """Biconnected-component decomposition.

    blocks are vertex tuples sorted ascending and listed by smallest
    contained vertex; block_edges[i] holds the edges of block i (every
    graph edge belongs to exactly one block); tree_edges pairs a block
    index with each cut vertex it contains.
    """

    blocks: tuple
    block_edges: tuple
    cut_vertices: frozenset
    tree_edges: tuple

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, blk in enumerate(self.blocks) if v in blk]


def block_cutpoint_graph(G: Graph) -> BlockCutTree:
    """Blocks and cut vertices via iterative Hopcroft-Tarjan DFS from 0."""
    n = G.n
    if n == 1:
        return BlockCutTree(((0,),), ((),), frozenset(), ())

    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    edge_stack: list[tuple[int, int]] = []
    raw_blocks: list[list[tuple[int, int]]] = []
    cut: set[int] = set()

    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    stack: list[list[int]] = [[0, 0]]
    while stack:
        v, i = stack[-1]
        if i < len(G.adj[v]):
            stack[-1][1] = i + 1
            w = G.adj[v][i]
            if disc[w] < 0:
                parent[w] = v
                if v == 0:
                    root_children += 1
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                stack.append([w, 0])
            elif w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        else:
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    if u != 0:
                        cut.add(u)
                    blk = []
                    while True:
                        e = edge_stack.pop()
                        blk.append(e)
                        if e == (u, v):
                            break
                    raw_blocks.append(blk)
    if root_children >= 2:
        cut.add(0)

    normalized = []
    for blk in raw_blocks:
        edges = tuple(sorted((u, v) if u < v else (v, u) for u, v in blk))
        verts = tuple(sorted({x for e in edges for x in e}))
        normalized.append((verts, edges))
    normalized.sort()
    blocks = tuple(v for v, _ in normalized)
    block_edges = tuple(e for _, e in normalized)
    tree_edges = tuple(
        (i, c) for i, verts in enumerate(blocks) for c in verts if c in cut
    )
    return BlockCutTree(blocks, block_edges, frozenset(cut), tree_edges)


def is_clique_block(G: Graph) -> bool:
    """True iff every block induces a complete subgraph."""
    bct = block_cutpoint_graph(G)
    for verts in bct.blocks:
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if not G.has_edge(u, v):
                    return False
    return True
