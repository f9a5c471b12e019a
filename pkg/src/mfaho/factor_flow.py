"""Symmetric (0,1)-digraph construction and optimal factor computation.

Both factor problems reduce to a square assignment after splitting every
vertex into an out-copy (row) and an in-copy (column): a perfect matching in
that bipartite graph is exactly a successor function, i.e. a spanning set of
disjoint cycles.  The one-path variant adds a source row and a sink column.
Costs are swapped (0 <-> 1) first, so a minimum-cost assignment corresponds
to a maximum-cost factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .digraph import Digraph
from .errors import InputError, InternalVerificationError


@dataclass(frozen=True)
class CostDigraph:
    """A digraph together with per-arc costs in {0, 1}."""

    base: Digraph
    cost: dict[tuple[int, int], int]

    @property
    def n(self) -> int:
        return self.base.n


@dataclass(frozen=True)
class SpanningFactor:
    """One optional directed path plus disjoint directed cycles covering V.

    path is None for a cycle factor; cycles are vertex sequences read as
    closed walks (a digon gives a legal 2-cycle).
    """

    path: tuple[int, ...] | None
    cycles: tuple[tuple[int, ...], ...]
    cost: int

    @property
    def is_cycle_factor(self) -> bool:
        return self.path is None

    def arcs(self):
        if self.path is not None:
            for i in range(len(self.path) - 1):
                yield self.path[i], self.path[i + 1]
        for cyc in self.cycles:
            for i in range(len(cyc)):
                yield cyc[i], cyc[(i + 1) % len(cyc)]


def symmetric_01(d: Digraph) -> CostDigraph:
    """Cost 1 on every arc of d, plus a cost-0 reverse for each one-way arc."""
    cost: dict[tuple[int, int], int] = {}
    arcs = set()
    for u, v in d.arcs:
        arcs.add((u, v))
        cost[(u, v)] = 1
        if (v, u) not in d.arcs:
            arcs.add((v, u))
            cost[(v, u)] = 0
    return CostDigraph(Digraph(d.n, frozenset(arcs)), cost)


def min_cost_assignment(
    cost_matrix: np.ndarray, forbidden: np.ndarray | None = None
) -> list[int] | None:
    """Minimum-cost perfect matching on a square matrix with forbidden cells.

    Returns cols such that cols[row] is the matched column, or None when no
    perfect matching avoids the forbidden cells.  Shortest-augmenting-path
    method with row/column potentials, O(n^3) with vectorized inner loops.
    """
    c = np.asarray(cost_matrix, dtype=float).copy()
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise InputError("cost matrix must be square")
    if forbidden is not None:
        c[np.asarray(forbidden, dtype=bool)] = np.inf
    n = c.shape[0]
    if n == 0:
        return []

    u = np.zeros(n)          # row potentials
    v = np.zeros(n + 1)      # column potentials; column n is the virtual root
    match_col = np.full(n + 1, -1, dtype=int)

    for row in range(n):
        match_col[n] = row
        j_cur = n
        min_to = np.full(n, np.inf)
        prev_col = np.full(n, -1, dtype=int)
        in_tree = np.zeros(n + 1, dtype=bool)
        while match_col[j_cur] != -1:
            in_tree[j_cur] = True
            r = match_col[j_cur]
            avail = ~in_tree[:n]
            reduced = c[r] - u[r] - v[:n]
            better = avail & (reduced < min_to)
            min_to[better] = reduced[better]
            prev_col[better] = j_cur
            masked = np.where(avail, min_to, np.inf)
            j_next = int(masked.argmin())
            delta = masked[j_next]
            if not np.isfinite(delta):
                return None
            tree_cols = in_tree[:n]
            u[match_col[:n][tree_cols]] += delta
            v[:n][tree_cols] -= delta
            u[row] += delta
            v[n] -= delta
            min_to[avail] -= delta
            j_cur = j_next
        while j_cur != n:
            j_prev = prev_col[j_cur]
            match_col[j_cur] = match_col[j_prev]
            j_cur = j_prev

    cols = [-1] * n
    for col in range(n):
        cols[match_col[col]] = col
    return cols


def _solve_swapped(h: CostDigraph, with_path: bool) -> dict[int, int] | None:
    """Successor map of an optimal factor, via the swapped-cost assignment.

    Rows are out-copies, columns in-copies; with_path adds source row n and
    sink column n, with the (source, sink) cell forbidden so the path is
    nonempty.  Returns successor[v] over 0..n-1 plus, when with_path, n -> v
    for the path start and v -> n for the path end.
    """
    n = h.n
    size = n + 1 if with_path else n
    big = np.inf
    c = np.full((size, size), big)
    for (a, b), w in h.cost.items():
        c[a, b] = 1 - w
    if with_path:
        c[n, :n] = 0.0
        c[:n, n] = 0.0
        # the source-to-sink cell stays forbidden
    cols = min_cost_assignment(c)
    if cols is None:
        return None
    succ = {}
    for row, col in enumerate(cols):
        succ[row] = col
    # a matched forbidden cell can only appear if no feasible matching exists
    for row, col in succ.items():
        if not np.isfinite(c[row][col]):
            return None
    return succ


def _decompose(succ: dict[int, int], n: int, with_path: bool) -> SpanningFactor:
    path: tuple[int, ...] | None = None
    seen = [False] * n
    if with_path:
        p = []
        v = succ[n]
        while v != n:
            p.append(v)
            seen[v] = True
            v = succ[v]
        path = tuple(p)
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = succ[v]
        cycles.append(tuple(cyc))
    return SpanningFactor(path, tuple(cycles), 0)


def _with_cost(h: CostDigraph, f: SpanningFactor) -> SpanningFactor:
    total = sum(h.cost[a] for a in f.arcs())
    return SpanningFactor(f.path, f.cycles, total)


def verify_factor(h: CostDigraph, f: SpanningFactor) -> None:
    """Re-check disjointness, coverage, arc membership and the summed cost."""
    covered: list[int] = list(f.path or ())
    for cyc in f.cycles:
        if len(cyc) < 2:
            raise InternalVerificationError("factor cycle shorter than 2")
        covered.extend(cyc)
    if sorted(covered) != list(range(h.n)):
        raise InternalVerificationError("factor does not partition the vertex set")
    total = 0
    for a in f.arcs():
        if a not in h.cost:
            raise InternalVerificationError(f"factor uses missing arc {a}")
        total += h.cost[a]
    if total != f.cost:
        raise InternalVerificationError("factor cost does not re-sum")


def max_cost_cycle_factor(h: CostDigraph) -> SpanningFactor | None:
    """A maximum-cost cycle factor of h, or None if h has no cycle factor."""
    if h.n == 0:
        return None
    succ = _solve_swapped(h, with_path=False)
    if succ is None:
        return None
    factor = _with_cost(h, _decompose(succ, h.n, with_path=False))
    verify_factor(h, factor)
    return factor


def max_cost_one_path_cycle_factor(h: CostDigraph) -> SpanningFactor | None:
    """A maximum-cost 1-path-cycle factor of h, or None if none exists.

    The path is always nonempty; a single vertex is a legal path.
    """
    if h.n == 0:
        return None
    succ = _solve_swapped(h, with_path=True)
    if succ is None:
        return None
    factor = _with_cost(h, _decompose(succ, h.n, with_path=True))
    verify_factor(h, factor)
    return factor
