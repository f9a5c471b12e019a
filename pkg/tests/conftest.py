"""Shared fixtures and helpers for building structured test instances."""

import numpy as np

from mfaho.digraph import Digraph, PartiteStructure, build_digraph
from mfaho.factor_flow import SpanningFactor, min_cost_assignment

# pinned by instance search: two digons give a full-cost cycle factor, but
# vertex 0 only ever reaches 3 and comes straight back, so there is no
# directed Hamilton cycle and the cycle optimum drops to n - 1
EXCEPTIONAL_ARCS = [(0, 3), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0)]


def find_distinct_ends_1pcf(d: Digraph, parts: PartiteStructure):
    """Some 1-path-cycle factor of d whose path ends lie in different parts.

    Solves the source/sink assignment over the arcs of d with the source row
    pinned to a and the sink column pinned to b, over candidate (a, b) pairs
    from different partite sets.  Returns a SpanningFactor or None.
    """
    n = d.n
    base = np.full((n + 1, n + 1), np.inf)
    for u, v in d.arcs:
        base[u, v] = 0.0
    for a in range(n):
        for b in range(n):
            if a == b or parts.same_part(a, b):
                continue
            c = base.copy()
            c[n, a] = 0.0
            c[b, n] = 0.0
            cols = min_cost_assignment(c)
            if cols is None:
                continue
            succ = {row: col for row, col in enumerate(cols)}
            path = []
            v = succ[n]
            seen = set()
            while v != n:
                path.append(v)
                seen.add(v)
                v = succ[v]
            cycles = []
            for s in range(n):
                if s in seen:
                    continue
                cyc = []
                v = s
                while v not in seen:
                    seen.add(v)
                    cyc.append(v)
                    v = succ[v]
                cycles.append(tuple(cyc))
            return SpanningFactor(tuple(path), tuple(cycles), 0)
    return None


def figure_cycles_digraph():
    """The three-cycle weak-domination configuration, forward arcs completed.

    Vertices 0..8 stand for the first cycle (0,1,2), the second (3,4,5,6) and
    the third (7,8).  Parts in presentation order: {0,4,6}, {1,7}, {2,3,5,8}.
    The three cross arcs against the cycle order are (3,1), (5,1), (7,4);
    every remaining cross-part pair gets a forward arc.
    """
    arcs = [
        (0, 1), (1, 2), (2, 0),
        (3, 4), (4, 5), (5, 6), (6, 3),
        (7, 8), (8, 7),
        (3, 1), (5, 1), (7, 4),
        (0, 3), (0, 5), (1, 4), (1, 6), (2, 4), (2, 6),
        (0, 7), (0, 8), (1, 8), (2, 7),
        (3, 7), (4, 8), (5, 7), (6, 7), (6, 8),
    ]
    d = build_digraph(9, arcs)
    parts = PartiteStructure.from_parts(9, [{0, 4, 6}, {1, 7}, {2, 3, 5, 8}])
    c1, c2, c3 = (0, 1, 2), (3, 4, 5, 6), (7, 8)
    return d, parts, c1, c2, c3
