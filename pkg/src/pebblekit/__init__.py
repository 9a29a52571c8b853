"""pebblekit: exact graph pebbling numbers, block-structure bounds, and
diameter-2 machinery, with every formula cross-validated against the
brute-force engine at desk scale."""

from .graphs import (
    Graph,
    GraphError,
    DisconnectedGraphError,
    DuplicateEdgeError,
    BadWeightError,
    RootedTree,
    BlockCutTree,
    build_graph,
    distances_from,
    eccentricity,
    diameter,
    bfs_spanning_tree,
    block_cutpoint_graph,
    is_clique_block,
)
from .engine import (
    Move,
    Solution,
    SearchStats,
    PebblingResult,
    GlobalPebblingResult,
    EngineError,
    InsufficientPebblesError,
    BudgetExceededError,
    NormalizationFailedError,
    apply_move,
    potential,
    min_path_cost,
    is_solvable,
    greedy_is_solvable,
    verify_solution,
    normalize_solution,
    pebbling_number,
    pebbling_number_global,
)

__version__ = "0.1.0"
