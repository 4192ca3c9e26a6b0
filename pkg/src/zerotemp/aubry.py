"""Mane potential, Aubry decomposition and inter-component costs.

For a locally constant potential the dynamics at cylinder granularity is a
weighted digraph on k-words (the word graph); the Mane potential S(u, v) is
then the maximum total weight of a directed path u -> v, the Aubry set is the
union of zero-weight cycles, and the cost a_ij of travelling into component
Sigma_i from component Sigma_j drives the max-plus eigenproblem of the
pressure's zero-temperature speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .maxplus import (
    NEG_INF,
    MaxPlusMatrix,
    _strongly_connected_components,
    mp_eigenvalue,
)
from .spectral import LocallyConstantPotential

__all__ = [
    "WordGraph",
    "AubryDecomposition",
    "PositiveCycleError",
    "EmptyAubrySetError",
    "word_graph",
    "max_cycle_mean",
    "mane_potential",
    "decompose_aubry",
    "symmetrized_mane_check",
]

ZERO_CYCLE_TOL = 1e-12


class PositiveCycleError(ValueError):
    """The word graph has a positive-weight cycle, i.e. m(A) != 0."""


class EmptyAubrySetError(ValueError):
    """No zero-weight cycle found; the potential is not normalized."""


@dataclass(frozen=True)
class WordGraph:
    """Weighted digraph on k-words; edge u -> v carries A(u . v[-1])."""

    nodes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, float], ...]  # (source index, target index, weight)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def weight_matrix(self) -> MaxPlusMatrix:
        rows = [[NEG_INF] * self.n for _ in range(self.n)]
        for (u, v, w) in self.edges:
            rows[u][v] = w
        return MaxPlusMatrix.from_rows(rows)


def word_graph(pot: LocallyConstantPotential) -> WordGraph:
    from .symbolic import is_admissible

    nodes = tuple(pot.states)
    index = {w: i for i, w in enumerate(nodes)}
    k = pot.word_length
    edges = []
    for u in nodes:
        for s in range(pot.sft.alphabet_size):
            long_word = u + (s,)
            if not is_admissible(pot.sft, long_word):
                continue
            v = long_word[-k:]
            edges.append((index[u], index[v], pot.value(long_word)))
    return WordGraph(nodes=nodes, edges=tuple(edges))


def max_cycle_mean(g: WordGraph) -> float:
    return mp_eigenvalue(g.weight_matrix())


@lru_cache(maxsize=None)
def _best_paths(g: WordGraph) -> tuple[tuple[float, ...], ...]:
    """best[u][v] = max weight over paths u -> v of length >= 1.

    Longest-path relaxation over walk lengths 1..n; valid because the graph
    has no positive cycles, so an optimal walk never needs more than n edges.
    """
    n = g.n
    if max_cycle_mean(g) > ZERO_CYCLE_TOL:
        raise PositiveCycleError("positive cycle: potential has m(A) != 0")
    best = [[NEG_INF] * n for _ in range(n)]
    for (u, v, w) in g.edges:
        if w > best[u][v]:
            best[u][v] = w
    cur = [row[:] for row in best]
    for _ in range(n - 1):
        nxt = [[NEG_INF] * n for _ in range(n)]
        for (u, v, w) in g.edges:
            for s in range(n):
                c = cur[s][u]
                if c != NEG_INF and c + w > nxt[s][v]:
                    nxt[s][v] = c + w
        for s in range(n):
            for t in range(n):
                if nxt[s][t] > best[s][t]:
                    best[s][t] = nxt[s][t]
        cur = nxt
    return tuple(tuple(row) for row in best)


def mane_potential(g: WordGraph, u: int, v: int) -> float:
    """Maximum path weight from node u to node v (length >= 1); -inf if unreachable."""
    return _best_paths(g)[u][v]


def symmetrized_mane_check(g: WordGraph, u: int, v: int) -> bool:
    """True iff S(u,v) + S(v,u) = 0, i.e. u and v share an Aubry component."""
    suv = mane_potential(g, u, v)
    svu = mane_potential(g, v, u)
    if suv == NEG_INF or svu == NEG_INF:
        return False
    return abs(suv + svu) <= ZERO_CYCLE_TOL


def _entropy_of_adjacency(adj: np.ndarray) -> float:
    """log of the Perron root of a 0/1 adjacency matrix."""
    if adj.shape == (1, 1):
        return 0.0 if adj[0, 0] else -math.inf
    rho = max(abs(np.linalg.eigvals(adj.astype(float))))
    return float(np.log(rho))


@dataclass(frozen=True)
class AubryDecomposition:
    """Irreducible components of the Aubry set with entropies and costs.

    ``cost`` is the full L x L matrix (a_ij), a_ij = best way to enter
    Sigma_i coming from Sigma_j; ``maximal_set`` indexes the components of
    maximal entropy.  ``flagged_edges`` records non-critical edges between
    nodes of one component that contributed cost candidates (a sub-case the
    cost definition does not single out).
    """

    graph: WordGraph
    components: tuple[tuple[int, ...], ...]
    entropies: tuple[float, ...]
    maximal_set: tuple[int, ...]
    cost: MaxPlusMatrix
    flagged_edges: tuple[tuple[int, int], ...]
    critical_pairs: tuple[tuple[int, int], ...]

    @property
    def h(self) -> float:
        return max(self.entropies)

    def component_of(self, node: int) -> int | None:
        for i, comp in enumerate(self.components):
            if node in comp:
                return i
        return None

    def maximal_cost(self) -> MaxPlusMatrix:
        return self.cost.restrict(self.maximal_set)


def decompose_aubry(g: WordGraph) -> AubryDecomposition:
    """Critical subgraph, its components, entropies and the cost matrix."""
    best = _best_paths(g)  # raises on positive cycles
    n = g.n

    def edge_critical(u: int, v: int, w: float) -> bool:
        through = w + best[v][u] if best[v][u] != NEG_INF else NEG_INF
        if u == v:
            through = max(through, w)
        return through >= -ZERO_CYCLE_TOL

    crit_edges = [(u, v, w) for (u, v, w) in g.edges if edge_critical(u, v, w)]
    crit_adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v, _) in crit_edges:
        crit_adj[u].append(v)
    crit_nodes = {u for (u, v, _) in crit_edges} | {v for (_, v, _) in crit_edges}
    if not crit_nodes:
        raise EmptyAubrySetError("no zero-weight cycle: potential not normalized")
    comps = [
        tuple(sorted(c))
        for c in _strongly_connected_components(crit_adj)
        if (len(c) > 1 and set(c) <= crit_nodes)
        or (len(c) == 1 and c[0] in crit_adj[c[0]])
    ]
    comps.sort(key=lambda c: c[0])
    node_comp = {}
    for i, comp in enumerate(comps):
        for v in comp:
            node_comp[v] = i

    entropies = []
    crit_pairs = {(u, v) for (u, v, _) in crit_edges}
    for comp in comps:
        pos = {v: t for t, v in enumerate(comp)}
        adj = np.zeros((len(comp), len(comp)), dtype=np.int64)
        for (u, v) in crit_pairs:
            if u in pos and v in pos:
                adj[pos[u], pos[v]] = 1
        entropies.append(_entropy_of_adjacency(adj))
    h = max(entropies)
    maximal = tuple(i for i, hi in enumerate(entropies) if hi >= h - ZERO_CYCLE_TOL)

    # cost a_ij: edges u -> v entering Sigma_i that are not internal critical
    # edges of Sigma_i, weighted by the best approach from Sigma_j to u.
    L = len(comps)
    sources = [comp[0] for comp in comps]  # lexicographically least node
    cost = [[NEG_INF] * L for _ in range(L)]
    flagged = []
    for (u, v, w) in g.edges:
        i = node_comp.get(v)
        if i is None:
            continue
        internal = (u, v) in crit_pairs and node_comp.get(u) == i
        if internal:
            continue
        if node_comp.get(u) == i:
            flagged.append((u, v))
        for j in range(L):
            src = sources[j]
            approach = 0.0 if u in comps[j] else best[src][u]
            if approach == NEG_INF:
                continue
            cand = w + approach
            if cand > cost[i][j]:
                cost[i][j] = cand
    return AubryDecomposition(
        graph=g,
        components=tuple(comps),
        entropies=tuple(entropies),
        maximal_set=maximal,
        cost=MaxPlusMatrix.from_rows(cost),
        flagged_edges=tuple(flagged),
        critical_pairs=tuple(sorted(crit_pairs)),
    )
