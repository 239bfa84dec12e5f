"""Independent cop-win checks for small graphs.

Two unrelated characterisations are kept side by side: dismantlability
(repeatedly delete a vertex whose closed neighbourhood sits inside a
neighbour's) and a retrograde fixed point over game states. They must agree.
"""
import logging

import networkx as nx
import numpy as np

from models.errors import DisconnectedInput
from models.rgg import Rgg

MAX_BRUTEFORCE_N = 60


def is_dismantlable(graph):
    """True iff graph can be reduced to one vertex by deleting dominated
    vertices. Vertices are tried in the graph's node order."""
    if graph.number_of_nodes() == 0:
        raise ValueError("empty graph")
    closed = {v: set(graph[v]) | {v} for v in graph.nodes}
    remaining = list(graph.nodes)
    while len(remaining) > 1:
        dominated = None
        for u in remaining:
            # N[u] inside N[v] forces v to be a neighbour of u.
            if any(closed[u] <= closed[v] for v in closed[u] if v != u):
                dominated = u
                break
        if dominated is None:
            return False
        remaining.remove(dominated)
        for w in closed.pop(dominated):
            if w != dominated:
                closed[w].discard(dominated)
    return True


def copwin_bruteforce(graph):
    """Solve the one-cop game exhaustively.

    States are (cop, robber, side to move). A state is won for the cop once
    they share a vertex; the cop wins a cop-to-move state if some closed
    neighbour leads to a won robber-to-move state, and a robber-to-move state
    if every closed neighbour of the robber leads to a won state. The graph
    is cop-win iff some start vertex wins against every robber start.
    """
    n = graph.number_of_nodes()
    if n == 0:
        raise ValueError("empty graph")
    if not nx.is_connected(graph):
        raise DisconnectedInput("cop-win is only defined for connected graphs")
    if n > MAX_BRUTEFORCE_N:
        raise ValueError(f"brute force is limited to {MAX_BRUTEFORCE_N} vertices, got {n}")

    closed = nx.to_numpy_array(graph, nodelist=list(graph.nodes), dtype=np.int64)
    np.fill_diagonal(closed, 1)
    degree = closed.sum(axis=1)

    cop_to_move = np.eye(n, dtype=bool)
    robber_to_move = np.eye(n, dtype=bool)
    while True:
        next_cop = cop_to_move | ((closed @ robber_to_move.astype(np.int64)) > 0)
        next_robber = robber_to_move | ((next_cop.astype(np.int64) @ closed) == degree[None, :])
        if np.array_equal(next_cop, cop_to_move) and np.array_equal(next_robber, robber_to_move):
            break
        cop_to_move, robber_to_move = next_cop, next_robber
    return bool(np.any(cop_to_move.all(axis=1)))


def random_connected_rgg(n, r, rng, attempts=1000):
    """A connected planar G_2(n, r) as a networkx graph, resampling until connected."""
    for attempt in range(attempts):
        g = Rgg.from_positions(rng.random((n, 2)), r)
        graph = g.to_networkx()
        if nx.is_connected(graph):
            if attempt:
                logging.debug(f"connected G_2({n}, {r}) after {attempt + 1} samples")
            return graph
    raise DisconnectedInput(f"no connected G_2({n}, {r}) in {attempts} samples")
