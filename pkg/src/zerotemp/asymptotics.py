"""Zero-temperature asymptotics for locally constant potentials.

Cross-checks the pressure route (1/beta * log(P(beta A) - h), from spectral
data) against the max-plus route (eigenvalue of the Aubry inter-component
cost matrix), and extracts calibrated-subaction estimates from eigenfunction
logarithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .aubry import AubryDecomposition, decompose_aubry, mane_potential, word_graph
from .maxplus import NEG_INF, mp_eigenvalue, mp_eigenvectors
from .spectral import LocallyConstantPotential, PerronData, equilibrium_cylinder_mass, perron

__all__ = [
    "GammaEstimate",
    "SubactionEstimate",
    "estimate_gamma",
    "estimate_subaction",
    "limit_measure_estimate",
    "DEFAULT_BETA_GRID",
]

DEFAULT_BETA_GRID = (2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0)


@dataclass(frozen=True)
class GammaEstimate:
    beta_grid: tuple[float, ...]
    gamma_hat: tuple[float, ...]
    gamma_maxplus: float
    h: float
    decomposition: AubryDecomposition


def _entropy_mp(decomp: AubryDecomposition, dps: int):
    """Maximal component entropy at working precision.

    Entropy 0 components (periodic orbits) give an exact zero; otherwise the
    Perron root of the 0/1 component adjacency is recomputed with mpmath.
    """
    h_float = decomp.h
    if abs(h_float) <= 1e-13:
        return mpmath.mpf(0)
    i = decomp.entropies.index(max(decomp.entropies))
    comp = decomp.components[i]
    pos = {v: t for t, v in enumerate(comp)}
    with mpmath.workdps(dps):
        adj = mpmath.zeros(len(comp), len(comp))
        for (u, v) in decomp.critical_pairs:
            if u in pos and v in pos:
                adj[pos[u], pos[v]] = 1
        eigvals, _ = mpmath.eig(adj, left=False, right=True)
        rho = max(mpmath.re(e) for e in eigvals)
        return mpmath.log(rho)


def estimate_gamma(
    pot: LocallyConstantPotential,
    beta_grid=DEFAULT_BETA_GRID,
    tol: float = 1e-14,
) -> GammaEstimate:
    """gamma_hat(beta) = (1/beta) log(P(beta A) - h) along the grid, plus the
    max-plus eigenvalue of the cost matrix restricted to maximal-entropy
    components (the predicted limit)."""
    grid = tuple(float(b) for b in beta_grid)
    if any(b2 <= b1 for b1, b2 in zip(grid, grid[1:])):
        raise ValueError("beta grid must be strictly increasing")
    decomp = decompose_aubry(word_graph(pot))
    h_mp = _entropy_mp(decomp, dps=600)
    gamma_hat = []
    for beta in grid:
        p = perron(pot, beta, tol)
        gamma_hat.append(p.pressure_excess_log(h_mp) / beta)
    gamma_mp = mp_eigenvalue(decomp.maximal_cost())
    return GammaEstimate(
        beta_grid=grid,
        gamma_hat=tuple(gamma_hat),
        gamma_maxplus=float(gamma_mp),
        h=float(h_mp),
        decomposition=decomp,
    )


@dataclass(frozen=True)
class SubactionEstimate:
    beta: float
    nodes: tuple[tuple[int, ...], ...]
    v_hat: tuple[float, ...]
    v_rec: tuple[float, ...]
    calibration_residual: float
    eigenspace_dim: int
    component_offsets: tuple[tuple[float, ...], ...]
    perron_data: PerronData


def estimate_subaction(pot: LocallyConstantPotential, beta: float) -> SubactionEstimate:
    """Finite-beta subaction V_hat = (1/beta) log H, and its max-plus
    reconstruction V_rec(x) = max_j [V(Sigma_j) + S_j(x)].

    Both are normalized to vanish at the all-zeros word.  When the max-plus
    eigenspace has dimension > 1 all basis offsets are reported and the
    first is used for the reconstruction.
    """
    p = perron(pot, beta)
    g = word_graph(pot)
    decomp = decompose_aubry(g)
    nodes = g.nodes
    v_hat = tuple(lh / beta for lh in p.log_H)

    eig = mp_eigenvectors(decomp.maximal_cost())
    offsets = tuple(tuple(float(x) for x in vec) for vec in eig.eigenvectors)
    lead = offsets[0]
    v_rec = []
    for x in range(len(nodes)):
        best = NEG_INF
        for jj, j in enumerate(decomp.maximal_set):
            comp = decomp.components[j]
            s_j = 0.0 if x in comp else mane_potential(g, comp[0], x)
            if s_j == NEG_INF:
                continue
            best = max(best, lead[jj] + s_j)
        v_rec.append(best)
    zero_word = tuple([0] * pot.word_length)
    anchor = v_rec[nodes.index(zero_word)]
    v_rec = tuple(x if x == NEG_INF else x - anchor for x in v_rec)

    residual = 0.0
    incoming: dict[int, list[tuple[int, float]]] = {v: [] for v in range(len(nodes))}
    for (u, v, w) in g.edges:
        incoming[v].append((u, w))
    for v in range(len(nodes)):
        if not incoming[v]:
            continue
        m = max(w + v_hat[u] - v_hat[v] for (u, w) in incoming[v])
        residual = max(residual, abs(m))
    return SubactionEstimate(
        beta=beta,
        nodes=nodes,
        v_hat=v_hat,
        v_rec=v_rec,
        calibration_residual=residual,
        eigenspace_dim=eig.eigenspace_dim,
        component_offsets=offsets,
        perron_data=p,
    )


def limit_measure_estimate(pot: LocallyConstantPotential, beta: float, words) -> dict:
    """Equilibrium cylinder masses at the given beta for each word."""
    p = perron(pot, beta)
    return {tuple(w): equilibrium_cylinder_mass(p, w) for w in words}
