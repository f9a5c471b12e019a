"""Solvers for locally semicomplete digraphs.

For a strong input the optimum is all-forward; otherwise the deficit equals
the component distance between the first and last strong components, and the
certificate is a Hamilton path of the digraph minus the interior of a
shortest first-to-last path, closed by walking that path backwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    ComponentDecomposition,
    Digraph,
    WalkKind,
    is_semicomplete,
    is_strong,
    recognize_lsd,
    strong_components,
    underlying_is_2connected,
    underlying_is_connected,
    validate_walk,
)
from .errors import InputError, InternalVerificationError, StrongDigraphError


@dataclass(frozen=True)
class LsdDecomposition:
    """Acyclic ordering of strong components with verified domination.

    For a connected non-strong locally semicomplete digraph the ordering is
    unique, every component induces a semicomplete digraph, each component
    fully dominates the next, and an arc between distant components forces
    full domination of every layer in between (interval property).
    domination_verified records that all of this was re-checked.
    """

    ordering: ComponentDecomposition
    domination_verified: bool

    @property
    def components(self):
        return self.ordering.components

    @property
    def cn(self):
        return self.ordering.cn


def _dominates(d: Digraph, source, target) -> bool:
    tmask = 0
    for v in target:
        tmask |= 1 << v
    return all(d.out_mask[u] & tmask == tmask for u in source)


def _induced(d: Digraph, vertices) -> tuple[Digraph, list[int]]:
    removed = set(range(d.n)) - set(vertices)
    return d.without_vertices(removed)


def lsd_decomposition(d: Digraph) -> LsdDecomposition:
    """Unique component ordering of a connected non-strong LSD, re-verified."""
    if not recognize_lsd(d):
        raise InputError("digraph is not locally semicomplete")
    if not underlying_is_connected(d):
        raise InputError("digraph is disconnected")
    if is_strong(d):
        raise StrongDigraphError("digraph is strong; the decomposition is trivial")
    dec = strong_components(d)
    comps = dec.components
    for i in range(len(comps) - 1):
        if not _dominates(d, comps[i], comps[i + 1]):
            raise InternalVerificationError(
                f"component {i} does not dominate component {i + 1}"
            )
    for comp in comps:
        sub, _ = _induced(d, comp)
        if not is_semicomplete(sub):
            raise InternalVerificationError("a strong component is not semicomplete")
    arc_between = [[False] * len(comps) for _ in comps]
    for u, v in d.arcs:
        arc_between[dec.cn[u]][dec.cn[v]] = True
    for i in range(len(comps)):
        for k in range(i + 1, len(comps)):
            if not arc_between[i][k]:
                continue
            for j in range(i + 1, k + 1):
                if not _dominates(d, comps[i], comps[j]):
                    raise InternalVerificationError("interval property fails")
            for t in range(i, k):
                if not _dominates(d, comps[t], comps[k]):
                    raise InternalVerificationError("interval property fails")
    return LsdDecomposition(dec, True)


def ham_cycle_strong_semicomplete(d: Digraph) -> tuple[int, ...]:
    """Hamilton cycle of a strong semicomplete digraph by vertex insertion.

    Starts from a digon or a short cycle and inserts one outside vertex per
    round; when no single vertex is insertable, an arc between the two
    one-sided outside classes admits a pair insertion.
    """
    if d.n < 2:
        raise InputError("a Hamilton cycle needs at least 2 vertices")
    if not is_semicomplete(d):
        raise InputError("digraph is not semicomplete")
    if not is_strong(d):
        raise InputError("digraph is not strong")
    if d.n == 2:
        return (0, 1)
    cycle = _short_cycle_semicomplete(d)
    in_cycle = 0
    for v in cycle:
        in_cycle |= 1 << v
    outside = sorted(set(range(d.n)) - set(cycle))
    while outside:
        pick = None
        for v in outside:
            if d.in_mask[v] & in_cycle and d.out_mask[v] & in_cycle:
                pick = v
                break
        if pick is not None:
            k = len(cycle)
            jmask = d.in_mask[pick] & in_cycle
            j_vertex = (jmask & -jmask).bit_length() - 1
            j = cycle.index(j_vertex)
            for step in range(k):
                t = (j + step) % k
                if d.has_arc(cycle[t], pick) and d.has_arc(pick, cycle[(t + 1) % k]):
                    cycle.insert(t + 1, pick)
                    break
            else:
                raise InternalVerificationError("no insertion point found")
            outside.remove(pick)
            in_cycle |= 1 << pick
            continue
        # every outside vertex is one-sided; strongness forces an arc from the
        # dominated side to the dominating side
        receivers = [v for v in outside if not d.out_mask[v] & in_cycle]
        senders = {v for v in outside if not d.in_mask[v] & in_cycle}
        pair = None
        for x in receivers:
            for y in sorted(d.out_neighbors(x)):
                if y in senders:
                    pair = (x, y)
                    break
            if pair:
                break
        if pair is None:
            raise InternalVerificationError("outside classes admit no linking arc")
        x, y = pair
        cycle[1:1] = [x, y]
        outside.remove(x)
        outside.remove(y)
        in_cycle |= (1 << x) | (1 << y)
    return tuple(cycle)


def _short_cycle_semicomplete(d: Digraph) -> list[int]:
    for u, v in sorted(d.arcs):
        if u < v and d.has_arc(v, u):
            return [u, v]
    for v in range(d.n):
        ins = d.in_neighbors(v)
        for a in sorted(d.out_neighbors(v)):
            back = sorted(d.out_neighbors(a) & ins)
            if back:
                return [v, a, back[0]]
    raise InternalVerificationError("strong semicomplete digraph without a short cycle")


def ham_path_lsd(d: Digraph) -> tuple[int, ...]:
    """Hamilton path of a connected LSD: per-component cycles, concatenated."""
    if not recognize_lsd(d):
        raise InputError("digraph is not locally semicomplete")
    if not underlying_is_connected(d):
        raise InputError("digraph is disconnected")
    if d.n == 1:
        return (0,)
    if is_strong(d):
        return ham_cycle_strong_lsd(d)
    seq = _component_path(d, strong_components(d).components)
    walk = validate_walk(d, seq, WalkKind.PATH)
    if walk.sigma_minus:
        raise InternalVerificationError("component concatenation used a missing arc")
    return seq


def _component_path(d, comps, first_vertex=None, last_vertex=None) -> tuple[int, ...]:
    """Concatenate per-component Hamilton cycles into a directed path.

    Components must be in the acyclic order with full consecutive domination.
    first_vertex/last_vertex rotate the first/last component's cycle so the
    path starts/ends there.
    """
    seq: list[int] = []
    for i, comp in enumerate(comps):
        if len(comp) == 1:
            seg = list(comp)
        else:
            sub, back = _induced(d, comp)
            cyc = [back[v] for v in ham_cycle_strong_semicomplete(sub)]
            if i == 0 and first_vertex is not None:
                j = cyc.index(first_vertex)
            elif i == len(comps) - 1 and last_vertex is not None:
                j = (cyc.index(last_vertex) + 1) % len(cyc)
            else:
                j = cyc.index(min(cyc))
            seg = cyc[j:] + cyc[:j]
        seq.extend(seg)
    return tuple(seq)


def ham_cycle_strong_lsd(d: Digraph) -> tuple[int, ...]:
    """Hamilton cycle of a strong LSD by splicing shortest returning paths.

    Grows a cycle; each round finds a shortest path that leaves the cycle and
    returns to it through outside vertices and splices its interior in.  In a
    locally semicomplete digraph an insertion point always exists along the
    cycle once the interior is fixed.
    """
    if not recognize_lsd(d):
        raise InputError("digraph is not locally semicomplete")
    if not is_strong(d) or d.n < 2:
        raise InputError("digraph is not strong")
    if d.n == 2:
        return (0, 1)
    cycle = _initial_cycle_strong(d)
    while len(cycle) < d.n:
        interior = _shortest_returning_interior(d, cycle)
        u1, ur = interior[0], interior[-1]
        k = len(cycle)
        for t in range(k):
            if d.has_arc(cycle[t], u1) and d.has_arc(ur, cycle[(t + 1) % k]):
                cycle[t + 1 : t + 1] = interior
                break
        else:
            raise InternalVerificationError("returning path admits no splice point")
    return tuple(cycle)


def _initial_cycle_strong(d: Digraph) -> list[int]:
    """A shortest directed cycle through vertex 0."""
    parent = {0: -1}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(d.out_neighbors(u)):
                if w == 0:
                    seq = [u]
                    while seq[-1] != 0:
                        seq.append(parent[seq[-1]])
                    return seq[::-1]
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    raise InputError("vertex 0 lies on no cycle; digraph is not strong")


def _shortest_returning_interior(d: Digraph, cycle: list[int]) -> list[int]:
    """Interior of a shortest cycle-leaving, cycle-returning path."""
    in_cycle = 0
    for v in cycle:
        in_cycle |= 1 << v
    full = (1 << d.n) - 1
    outside = full & ~in_cycle
    start = 0
    for v in cycle:
        start |= d.out_mask[v]
    start &= outside
    layers = []
    seen = 0
    frontier = start
    while frontier:
        layers.append(frontier)
        seen |= frontier
        hit = 0
        f = frontier
        while f:
            low = f & -f
            f ^= low
            v = low.bit_length() - 1
            if d.out_mask[v] & in_cycle:
                hit |= low
        if hit:
            # reconstruct interior backwards through the layers
            low = hit & -hit
            path = [low.bit_length() - 1]
            for layer in reversed(layers[:-1]):
                cand = layer & d.in_mask[path[-1]]
                low = cand & -cand
                path.append(low.bit_length() - 1)
            return path[::-1]
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            f ^= low
            nxt |= d.out_mask[low.bit_length() - 1]
        frontier = nxt & outside & ~seen
    raise InternalVerificationError("no returning path; digraph is not strong")


def greedy_c1_cl_path(d: Digraph, dec: LsdDecomposition) -> tuple[int, ...]:
    """Greedy shortest path from the first to the last strong component.

    From the lowest-index vertex of the first component, always steps to the
    out-neighbour in the highest-indexed component, ties broken by lowest
    vertex index.
    """
    comps = dec.components
    if len(comps) < 2:
        raise InputError("decomposition has a single component")
    cn = dec.cn
    last = len(comps) - 1
    p = [min(comps[0])]
    while cn[p[-1]] != last:
        outs = d.out_neighbors(p[-1])
        if not outs:
            raise InternalVerificationError("greedy path ran into a sink")
        p.append(min(outs, key=lambda w: (-cn[w], w)))
    return tuple(p)


def _component_distance(d: Digraph, dec: LsdDecomposition) -> int:
    """BFS length of a shortest (first, last)-component path; the interior
    stays outside both end components."""
    comps = dec.components
    first, last = set(comps[0]), set(comps[-1])
    frontier = first
    seen = set(first)
    dist = 0
    while frontier:
        dist += 1
        nxt = set()
        for u in frontier:
            for w in d.out_neighbors(u):
                if w in last:
                    return dist
                if w not in seen and w not in first:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
    raise InternalVerificationError("last component unreachable from the first")


def mfahoc_lsd(d: Digraph):
    """Maximum forward arcs over Hamilton oriented cycles of a connected LSD.

    Returns (sigma, walk, branch), or None when the underlying graph has a
    cut vertex (no Hamilton oriented cycle exists; by convention the optimum
    is reported as 0 at the interface level).
    """
    if not recognize_lsd(d):
        raise InputError("digraph is not locally semicomplete")
    if d.n < 3:
        raise InputError("Hamilton oriented cycles need at least 3 vertices")
    if not underlying_is_connected(d):
        raise InputError("digraph is disconnected")
    if is_strong(d):
        seq = ham_cycle_strong_lsd(d)
        walk = validate_walk(d, seq, WalkKind.CYCLE)
        if walk.sigma_minus:
            raise InternalVerificationError("strong-case cycle has a backward step")
        return d.n, walk, "lsd-strong"
    if not underlying_is_2connected(d):
        return None
    dec = lsd_decomposition(d)
    p = greedy_c1_cl_path(d, dec)
    dist = len(p) - 1
    if dist != _component_distance(d, dec):
        raise InternalVerificationError("greedy path is not a shortest one")
    interior = set(p[1:-1])
    sub, back = d.without_vertices(interior)
    if not underlying_is_connected(sub):
        raise InternalVerificationError("interior removal disconnected the digraph")
    fwd = {old: new for new, old in enumerate(back)}
    sub_comps = strong_components(sub).components
    q_sub = _component_path(
        sub, sub_comps, first_vertex=fwd[p[0]], last_vertex=fwd[p[-1]]
    )
    q = [back[v] for v in q_sub]
    if q[0] != p[0] or q[-1] != p[-1]:
        raise InternalVerificationError("forward path misses the anchor vertices")
    seq = tuple(q) + tuple(p[i] for i in range(dist - 1, 0, -1))
    walk = validate_walk(d, seq, WalkKind.CYCLE)
    sigma = d.n - dist
    if walk.sigma_plus != sigma:
        raise InternalVerificationError(
            f"certificate has {walk.sigma_plus} forward arcs, expected {sigma}"
        )
    backward_steps = {
        step for step, fwd_flag in zip(walk.steps(), walk.forward_mask) if not fwd_flag
    }
    expected = {(p[i + 1], p[i]) for i in range(dist)}
    if backward_steps != expected:
        raise InternalVerificationError(
            "backward steps are not exactly the reversed shortest path"
        )
    return sigma, walk, "lsd-nonstrong-2connected"
