"""Weighted pebbling moves, exhaustive solvability search, exact pebbling numbers.

A configuration is a tuple of non-negative pebble counts indexed by vertex.
A move across edge e removes w_e pebbles from one endpoint and places one
pebble on the other (weight-1 edges transfer a pebble for free).

Solvability queries run a depth-first reachability search over packed
integer states with a visited set, an optional shared memo of failed
states, and potential pruning.  Exact pebbling numbers are computed by
growing the complete per-size sets of unsolvable configurations level by
level (a configuration is unsolvable only if every one-pebble removal is);
a literal scan over all compositions of each size is kept as a cross-check
mode.  Both return the same value and the same colex-first witness.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from heapq import heappush, heappop
from math import lcm
from typing import NamedTuple, Optional

from .graphs import Graph, distances_from, eccentricity


class EngineError(Exception):
    """Base class for pebbling engine errors."""


class InsufficientPebblesError(EngineError):
    """A move's source vertex holds fewer pebbles than the edge weight."""


class BudgetExceededError(EngineError):
    """The caller-supplied search budget was exhausted before an answer."""


class NormalizationFailedError(EngineError):
    """No valid replay order exists after cycle cancellation (engine bug)."""


class Move(NamedTuple):
    src: int
    dst: int


@dataclass(frozen=True)
class Solution:
    """Replayable certificate: applying `moves` in order to the starting
    configuration leaves at least k pebbles on the root."""

    moves: tuple
    root: int
    k: int


@dataclass
class SearchStats:
    states_explored: int = 0
    pruned_by_potential: int = 0
    memo_hits: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.states_explored += other.states_explored
        self.pruned_by_potential += other.pruned_by_potential
        self.memo_hits += other.memo_hits


@dataclass(frozen=True)
class PebblingResult:
    value: int
    witness: tuple
    stats: SearchStats


@dataclass(frozen=True)
class GlobalPebblingResult:
    value: int
    root: int
    witness: tuple
    per_root: tuple


def as_config(G: Graph, counts) -> tuple:
    config = tuple(counts)
    if len(config) != G.n:
        raise ValueError(f"configuration has {len(config)} entries for {G.n} vertices")
    if any((not isinstance(c, int)) or c < 0 for c in config):
        raise ValueError("configuration counts must be non-negative integers")
    return config


def config_size(config) -> int:
    return sum(config)


def apply_move(G: Graph, config, move: Move):
    """Apply one pebbling move, returning the new configuration."""
    config = as_config(G, config)
    u, v = move
    if not G.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    w = G.weight(u, v)
    if config[u] < w:
        raise InsufficientPebblesError(f"vertex {u} has {config[u]} pebbles; move needs {w}")
    out = list(config)
    out[u] -= w
    out[v] += 1
    return tuple(out)


def min_path_cost(G: Graph, r: int) -> list[int]:
    """c(v): minimum over v-r paths of the product of edge weights; c(r)=1.

    One pebble placed on r costs c(v) pebbles taken from v along the best
    path, ignoring floor losses.
    """
    INF = None
    cost = [INF] * G.n
    cost[r] = 1
    heap = [(1, r)]
    while heap:
        c, v = heappop(heap)
        if cost[v] is not None and c > cost[v]:
            continue
        for u in G.adj[v]:
            nc = c * G.weight(u, v)
            if cost[u] is None or nc < cost[u]:
                cost[u] = nc
                heappush(heap, (nc, u))
    return cost


def potential(G: Graph, config, r: int) -> Fraction:
    """Sum of C(v)/c(v); never increased by any pebbling move, so a value
    below k certifies k-fold r-unsolvability."""
    config = as_config(G, config)
    cost = min_path_cost(G, r)
    return sum((Fraction(c, w) for c, w in zip(config, cost)), Fraction(0))


# ---------------------------------------------------------------------------
# Packed-state search machinery


def pack_config(config, width: int) -> int:
    state = 0
    for v, c in enumerate(config):
        state |= c << (v * width)
    return state


def unpack_config(state: int, n: int, width: int) -> tuple:
    mask = (1 << width) - 1
    return tuple((state >> (v * width)) & mask for v in range(n))


class _Problem:
    """Precomputed move tables for one (graph, root, width, greedy) query shape.

    Moves out of the root are omitted: removing pebbles from the root never
    helps reach a configuration with more pebbles on it.
    """

    __slots__ = ("G", "root", "width", "mask", "moves", "coef", "D", "shifts", "max_weight")

    def __init__(self, G: Graph, root: int, width: int, greedy_only: bool):
        self.G = G
        self.root = root
        self.width = width
        self.mask = (1 << width) - 1
        dist = G.cached(("dist", root), lambda: distances_from(G, root))
        cost = G.cached(("cost", root), lambda: min_path_cost(G, root))
        self.D = lcm(*cost)
        self.coef = [self.D // c for c in cost]
        self.shifts = [v * width for v in range(G.n)]
        raw = []
        for (u, v), w in G.weights.items():
            for a, b in ((u, v), (v, u)):
                if a == root:
                    continue
                if greedy_only and dist[b] >= dist[a]:
                    continue
                raw.append((dist[b] - dist[a], dist[b], a, b, w))
        # best moves last: the DFS stack pops them first
        raw.sort(key=lambda t: (-t[0], -t[1], -t[2], -t[3]))
        self.moves = tuple(
            (a * width, w, (1 << (b * width)) - (w << (a * width)),
             self.coef[b] - w * self.coef[a], b, a)
            for _, _, a, b, w in raw
        )
        self.max_weight = max(G.weights.values()) if G.weights else 1

    def pot(self, state: int) -> int:
        mask = self.mask
        coef = self.coef
        total = 0
        v = 0
        while state:
            total += (state & mask) * coef[v]
            state >>= self.width
            v += 1
        return total


def _problem(G: Graph, root: int, width: int, greedy_only: bool = False) -> _Problem:
    key = ("problem", root, width, greedy_only)
    return G.cached(key, lambda: _Problem(G, root, width, greedy_only))


def is_solvable(
    G: Graph,
    config,
    root: int,
    k: int = 1,
    *,
    greedy_only: bool = False,
    use_potential: bool = True,
    budget: Optional[int] = None,
    failed_memo: Optional[set] = None,
    stats: Optional[SearchStats] = None,
    _width: Optional[int] = None,
):
    """Search for a k-fold root-solution of `config`.

    Returns (Solution, SearchStats) when solvable, (None, SearchStats)
    otherwise.  `failed_memo` may be shared between queries with the same
    (graph, root, k, width); every state it holds is known unsolvable.
    Raises BudgetExceededError when more than `budget` states are expanded.
    """
    config = as_config(G, config)
    if k < 1:
        raise ValueError("k must be >= 1")
    stats = stats if stats is not None else SearchStats()
    if config[root] >= k:
        return Solution((), root, k), stats
    total = sum(config)
    if total < k:
        return None, stats

    width = _width if _width is not None else max(total.bit_length(), k.bit_length())
    prob = _problem(G, root, width, greedy_only)
    mask = prob.mask
    rshift = root * width
    start = pack_config(config, width)
    kD = k * prob.D

    if failed_memo is not None and start in failed_memo:
        stats.memo_hits += 1
        return None, stats
    pot0 = prob.pot(start)
    if use_potential and pot0 < kD:
        stats.pruned_by_potential += 1
        if failed_memo is not None:
            failed_memo.add(start)
        return None, stats

    visited = {start}
    parents: dict[int, tuple[int, int, int]] = {}
    stack = [(start, pot0)]
    moves = prob.moves
    goal = None
    while stack:
        state, pot = stack.pop()
        stats.states_explored += 1
        if budget is not None and stats.states_explored > budget:
            raise BudgetExceededError(f"solvability search exceeded {budget} states")
        for ashift, w, delta, dpot, b, a in moves:
            if (state >> ashift) & mask >= w:
                nxt = state + delta
                if nxt in visited:
                    continue
                if failed_memo is not None and nxt in failed_memo:
                    stats.memo_hits += 1
                    continue
                visited.add(nxt)
                parents[nxt] = (state, a, b)
                if (nxt >> rshift) & mask >= k:
                    goal = nxt
                    break
                npot = pot + dpot
                if use_potential and npot < kD:
                    stats.pruned_by_potential += 1
                    if failed_memo is not None:
                        failed_memo.add(nxt)
                    continue
                stack.append((nxt, npot))
        if goal is not None:
            break

    if goal is None:
        if failed_memo is not None:
            failed_memo.update(visited)
        return None, stats

    chain = []
    cur = goal
    while cur != start:
        prev, a, b = parents[cur]
        chain.append(Move(a, b))
        cur = prev
    chain.reverse()
    return Solution(tuple(chain), root, k), stats


def greedy_is_solvable(G: Graph, config, root: int, k: int = 1, **kwargs):
    """Solvability using only moves that strictly decrease distance to root."""
    return is_solvable(G, config, root, k, greedy_only=True, **kwargs)


def verify_solution(G: Graph, config, root: int, k: int, solution: Solution) -> bool:
    """Replay `solution` from `config`; True iff every move is legal and the
    root ends with at least k pebbles.  Independent of the search code."""
    counts = list(as_config(G, config))
    for mv in solution.moves:
        u, v = mv
        if u == v or not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            return False
        w = G.weight(u, v)
        if counts[u] < w:
            return False
        counts[u] -= w
        counts[v] += 1
    return counts[root] >= k


# ---------------------------------------------------------------------------
# Solution normalization (directed-cycle cancellation)


def _find_arc_cycle(arcs: Counter) -> Optional[list]:
    """A directed cycle in the multiset of arcs, as a list of arcs; None if
    the digraph is acyclic.  Deterministic: smallest start, sorted adjacency."""
    out: dict[int, list[int]] = {}
    for (u, v), c in arcs.items():
        if c > 0:
            out.setdefault(u, []).append(v)
    for u in out:
        out[u].sort()
    color: dict[int, int] = {}
    for start in sorted(out):
        if color.get(start):
            continue
        path = [start]
        iters = [iter(out[start])]
        color[start] = 1
        while path:
            try:
                nxt = next(iters[-1])
            except StopIteration:
                color[path.pop()] = 2
                iters.pop()
                continue
            c = color.get(nxt, 0)
            if c == 1:
                i = path.index(nxt)
                cyc = path[i:] + [nxt]
                return [(cyc[j], cyc[j + 1]) for j in range(len(cyc) - 1)]
            if c == 0 and nxt in out:
                color[nxt] = 1
                path.append(nxt)
                iters.append(iter(out[nxt]))
            elif c == 0:
                color[nxt] = 2
    return None


def normalize_solution(G: Graph, config, solution: Solution) -> Solution:
    """Cancel directed cycles in the move multiset and re-derive a valid
    replay order.  The result uses a sub-multiset of the input's moves, is
    acyclic as an arc digraph, and still verifies."""
    config = as_config(G, config)
    arcs = Counter((mv[0], mv[1]) for mv in solution.moves)
    while True:
        cyc = _find_arc_cycle(arcs)
        if cyc is None:
            break
        for arc in cyc:
            arcs[arc] -= 1
            if arcs[arc] == 0:
                del arcs[arc]

    # replay vertices in topological order; all arrivals precede departures
    nodes = sorted({x for arc in arcs for x in arc})
    indeg = {x: 0 for x in nodes}
    out: dict[int, list[int]] = {x: [] for x in nodes}
    for (u, v), c in arcs.items():
        if c > 0:
            indeg[v] += 1
            out[u].append(v)
    heap = [x for x in nodes if indeg[x] == 0]
    heap.sort()
    order = []
    while heap:
        x = heappop(heap)
        order.append(x)
        for y in sorted(out[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                heappush(heap, y)
    if len(order) != len(nodes):
        raise NormalizationFailedError("cycle cancellation left a cyclic move digraph")

    moves = []
    for u in order:
        for v in sorted(out[u]):
            moves.extend([Move(u, v)] * arcs[(u, v)])
    normalized = Solution(tuple(moves), solution.root, solution.k)
    if not verify_solution(G, config, solution.root, solution.k, normalized):
        raise NormalizationFailedError("normalized move sequence does not replay")
    return normalized


# ---------------------------------------------------------------------------
# Exact pebbling numbers


def compositions_colex(total: int, parts: int):
    """All weak compositions of `total` into `parts` parts, in colex order
    (packed-integer ascending order for any fixed field width)."""
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for head in compositions_colex(total - last, parts - 1):
            yield head + (last,)


def _assert_weight2_lower_bounds(G: Graph, r: int, k: int, value: int) -> None:
    # sanity net for k=1 on ordinary weight-2 pebbling only
    if k != 1 or any(w != 2 for w in G.weights.values()):
        return
    floor = max(G.n, 2 ** eccentricity(G, r))
    if value < floor:
        raise AssertionError(
            f"pi_1 ={value} below structural lower bound {floor}; engine bug"
        )


def pebbling_number(
    G: Graph,
    r: int,
    k: int = 1,
    *,
    method: str = "levelwise",
    budget: Optional[int] = None,
    use_potential: bool = True,
    start_width: int = 10,
) -> PebblingResult:
    """Exact rooted pebbling number with a maximum-size unsolvable witness.

    pi_k(G, r) = M + 1 where M is the largest size of a k-fold r-unsolvable
    configuration; since removing a pebble keeps a configuration unsolvable,
    sizes are scanned upward and the first size whose configurations are all
    solvable is the answer.  The witness is the colex-first unsolvable
    configuration of size M.

    method="levelwise" grows the complete set of unsolvable configurations
    one pebble at a time; method="scan" tests every composition of every
    size with the solvability search (slow; cross-check only).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (0 <= r < G.n):
        raise ValueError(f"root {r} out of range")
    if method == "levelwise":
        res = _pebbling_levelwise(G, r, k, budget, use_potential, start_width)
    elif method == "scan":
        res = _pebbling_scan(G, r, k, budget, use_potential, start_width)
    else:
        raise ValueError(f"unknown method {method!r}")
    _assert_weight2_lower_bounds(G, r, k, res.value)
    return res


def _pebbling_levelwise(G, r, k, budget, use_potential, width):
    n = G.n
    stats = SearchStats()
    prob = _problem(G, r, width, False)
    mask = prob.mask
    rshift = r * width
    kD = k * prob.D
    coef = prob.coef
    # per-size complete maps of unsolvable configurations to their potential
    levels: dict[int, dict] = {0: {0: 0}}
    witness_state = 0
    witness_size = 0
    m = 0
    while True:
        m += 1
        if m > mask:
            width += 4
            prob = _problem(G, r, width, False)
            mask = prob.mask
            rshift = r * width
            levels = {
                size: {
                    pack_config(unpack_config(s, n, width - 4), width): pot
                    for s, pot in states.items()
                }
                for size, states in levels.items()
            }
            witness_state = pack_config(unpack_config(witness_state, n, width - 4), width)
        prev = levels[m - 1]
        bits = [1 << sh for sh in prob.shifts]
        unsolvable: dict[int, int] = {}
        candidates: dict[int, int] = {}
        explored = stats.states_explored
        pruned = stats.pruned_by_potential
        if use_potential:
            # anything below the potential threshold is unsolvable outright
            for S, pot in prev.items():
                for v in range(n):
                    T = S + bits[v]
                    if T in unsolvable or T in candidates:
                        continue
                    npot = pot + coef[v]
                    if npot < kD:
                        explored += 1
                        pruned += 1
                        unsolvable[T] = npot
                    else:
                        candidates[T] = npot
        else:
            for S, pot in prev.items():
                for v in range(n):
                    candidates.setdefault(S + bits[v], pot + coef[v])
        stats.states_explored = explored
        stats.pruned_by_potential = pruned
        if budget is not None and stats.states_explored > budget:
            raise BudgetExceededError(f"pebbling number search exceeded {budget} states")

        known_solvable: set[int] = set()
        shifts = prob.shifts
        for S, pot in candidates.items():
            if S in unsolvable or S in known_solvable:
                continue
            stats.states_explored += 1
            if budget is not None and stats.states_explored > budget:
                raise BudgetExceededError(f"pebbling number search exceeded {budget} states")
            if (S >> rshift) & mask >= k:
                continue
            # a superset of a solvable configuration is solvable
            removal_hit = False
            for sh in shifts:
                if (S >> sh) & mask and (S - (1 << sh)) not in prev:
                    removal_hit = True
                    break
            if removal_hit:
                stats.memo_hits += 1
                continue
            _slice_test(S, pot, m, k, prob, levels, unsolvable, known_solvable, stats, budget)

        if not unsolvable:
            witness = unpack_config(witness_state, n, width)
            assert sum(witness) == witness_size == m - 1
            return PebblingResult(m, witness, stats)
        levels[m] = unsolvable
        witness_state = min(unsolvable)
        witness_size = m
        # only the last max_weight-1 levels are reachable from the next one
        for old in [s for s in levels if s < m - prob.max_weight + 1]:
            del levels[old]


def _slice_test(S0, pot0, m, k, prob, levels, unsolvable, known_solvable, stats, budget):
    """Classify a size-m state given complete unsolvable maps for all smaller
    sizes.  Weight-1 moves stay on the same size level and are followed by
    reachability; heavier moves land on a smaller level where membership
    answers immediately.  Unsolvable discoveries are recorded in-place."""
    mask = prob.mask
    width = prob.width
    rshift = prob.root * width
    seen = {S0: pot0}
    stack = [(S0, pot0)]
    good = False
    while stack:
        S, pot = stack.pop()
        stats.states_explored += 1
        if budget is not None and stats.states_explored > budget:
            raise BudgetExceededError(f"pebbling number search exceeded {budget} states")
        if (S >> rshift) & mask >= k:
            good = True
            break
        found = False
        for ashift, w, delta, dpot, b, a in prob.moves:
            if (S >> ashift) & mask >= w:
                T = S + delta
                if w == 1:
                    if T in seen or T in unsolvable:
                        continue
                    if T in known_solvable:
                        found = True
                        break
                    npot = pot + dpot
                    seen[T] = npot
                    stack.append((T, npot))
                else:
                    if T not in levels[m - (w - 1)]:
                        found = True
                        break
        if found:
            good = True
            break
    if good:
        known_solvable.add(S0)
    else:
        unsolvable.update(seen)


def _pebbling_scan(G, r, k, budget, use_potential, width):
    n = G.n
    stats = SearchStats()
    failed_memo: set = set()
    witness: tuple = tuple([0] * n)
    m = 0
    while True:
        m += 1
        if m > (1 << width) - 1:
            width += 4
            failed_memo = set()
        first_unsolvable = None
        for comp in compositions_colex(m, n):
            remaining = None if budget is None else budget - stats.states_explored
            if remaining is not None and remaining <= 0:
                raise BudgetExceededError(f"pebbling number scan exceeded {budget} states")
            sol, _ = is_solvable(
                G,
                comp,
                r,
                k,
                use_potential=use_potential,
                budget=remaining,
                failed_memo=failed_memo,
                stats=stats,
                _width=width,
            )
            if sol is None:
                first_unsolvable = comp
                break
        if first_unsolvable is None:
            return PebblingResult(m, witness, stats)
        witness = first_unsolvable


def pebbling_number_global(G: Graph, k: int = 1, **kwargs) -> GlobalPebblingResult:
    """max over roots of pi_k(G, r), reporting the smallest maximizing root."""
    per_root = []
    witnesses = []
    for r in range(G.n):
        res = pebbling_number(G, r, k, **kwargs)
        per_root.append(res.value)
        witnesses.append(res.witness)
    value = max(per_root)
    root = per_root.index(value)
    return GlobalPebblingResult(value, root, witnesses[root], tuple(per_root))
