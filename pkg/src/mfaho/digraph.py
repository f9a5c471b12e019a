"""Core digraph model and structural queries.

Vertices are dense integers 0..n-1.  A digon is the ordered pair (u,v) together
with (v,u); self-loops and parallel copies of the same ordered pair are never
stored.  All types are immutable after construction, so instances can be shared
freely between concurrent callers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import InputError, NotAWalkError


class Digraph:
    """A digraph on vertices 0..n-1 with O(1) adjacency queries.

    Besides out/in neighbour sets, every vertex carries integer bitmasks of its
    out-, in- and undirected neighbourhoods; the recognizers and connectivity
    tests work on those masks.
    """

    __slots__ = ("n", "arcs", "_out", "_in", "out_mask", "in_mask", "adj_mask")

    def __init__(self, n: int, arcs: frozenset[tuple[int, int]]):
        self.n = n
        self.arcs = arcs
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        out_mask = [0] * n
        in_mask = [0] * n
        for u, v in arcs:
            out[u].add(v)
            inn[v].add(u)
            out_mask[u] |= 1 << v
            in_mask[v] |= 1 << u
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)
        self.out_mask = tuple(out_mask)
        self.in_mask = tuple(in_mask)
        self.adj_mask = tuple(o | i for o, i in zip(out_mask, in_mask))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def adjacent(self, u: int, v: int) -> bool:
        """True iff u and v are joined in the underlying graph."""
        return (u, v) in self.arcs or (v, u) in self.arcs

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    @property
    def m(self) -> int:
        return len(self.arcs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"

    def with_arc(self, u: int, v: int) -> "Digraph":
        """A copy with arc (u,v) added (no-op if already present)."""
        if (u, v) in self.arcs:
            return self
        return Digraph(self.n, self.arcs | {(u, v)})

    def without_vertices(self, removed: set[int]) -> tuple["Digraph", list[int]]:
        """Induced subdigraph on V minus `removed`, relabelled densely.

        Returns the subdigraph and the list mapping new labels to old ones.
        """
        keep = [v for v in range(self.n) if v not in removed]
        new_id = {v: i for i, v in enumerate(keep)}
        arcs = frozenset(
            (new_id[u], new_id[v])
            for (u, v) in self.arcs
            if u not in removed and v not in removed
        )
        return Digraph(len(keep), arcs), keep


def build_digraph(n: int, arcs) -> Digraph:
    """Validate and build a digraph; duplicate ordered pairs collapse silently.

    Raises InputError naming the offending pair on self-loops or out-of-range
    endpoints.
    """
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    clean = set()
    for pair in arcs:
        u, v = pair
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
        clean.add((u, v))
    return Digraph(n, frozenset(clean))


@dataclass(frozen=True)
class PartiteStructure:
    """Partition of the vertices of a semicomplete multipartite digraph."""

    parts: tuple[frozenset[int], ...]
    part_index: tuple[int, ...] = field(repr=False)

    @staticmethod
    def from_parts(n: int, parts) -> "PartiteStructure":
        idx = [-1] * n
        frozen = []
        for i, p in enumerate(parts):
            fs = frozenset(p)
            if not fs:
                raise InputError("empty partite set")
            for v in fs:
                if not (0 <= v < n) or idx[v] != -1:
                    raise InputError("parts must disjointly cover 0..n-1")
                idx[v] = i
            frozen.append(fs)
        if any(i == -1 for i in idx):
            raise InputError("parts must cover every vertex")
        return PartiteStructure(tuple(frozen), tuple(idx))

    @property
    def p(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(part) for part in self.parts)

    def part_of(self, v: int) -> int:
        return self.part_index[v]

    def same_part(self, u: int, v: int) -> bool:
        return self.part_index[u] == self.part_index[v]


@dataclass(frozen=True)
class ComponentDecomposition:
    """Strong components in an acyclic ordering (no arc from later to earlier)."""

    components: tuple[tuple[int, ...], ...]
    cn: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.components)


class WalkKind(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class OrientedHamWalk:
    """A Hamilton vertex sequence with per-step forward/backward classification.

    A step (v_i, v_{i+1}) is forward iff the arc (v_i, v_{i+1}) exists; a digon
    step therefore counts as forward.  For CYCLE walks the sequence is closed
    cyclically, so there are n steps; for PATH walks there are n-1.
    """

    kind: WalkKind
    seq: tuple[int, ...]
    forward_mask: tuple[bool, ...]
    sigma_plus: int
    sigma_minus: int

    def steps(self):
        """Consecutive vertex pairs of the walk, closed for cycles."""
        n = len(self.seq)
        last = n if self.kind is WalkKind.CYCLE else n - 1
        for i in range(last):
            yield self.seq[i], self.seq[(i + 1) % n]


def validate_walk(d: Digraph, seq, kind: WalkKind) -> OrientedHamWalk:
    """Classify a Hamilton vertex sequence against d.

    Raises NotAWalkError on the first consecutive pair that is nonadjacent in
    the underlying graph, and InputError if seq is not a permutation of V.
    """
    seq = tuple(seq)
    if sorted(seq) != list(range(d.n)):
        raise InputError("sequence is not a permutation of the vertex set")
    n = d.n
    steps = n if kind is WalkKind.CYCLE else n - 1
    mask = []
    for i in range(steps):
        u, v = seq[i], seq[(i + 1) % n]
        if d.has_arc(u, v):
            mask.append(True)
        elif d.has_arc(v, u):
            mask.append(False)
        else:
            raise NotAWalkError(u, v)
    plus = sum(mask)
    return OrientedHamWalk(kind, seq, tuple(mask), plus, steps - plus)


def strong_components(d: Digraph) -> ComponentDecomposition:
    """Strong components, ordered so that all inter-component arcs go forward."""
    sccs = _tarjan(d)
    comp_of = [0] * d.n
    for i, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = i
    # Kahn's algorithm on the condensation gives the acyclic ordering.
    k = len(sccs)
    succ: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u, v in d.arcs:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv and cv not in succ[cu]:
            succ[cu].add(cv)
            indeg[cv] += 1
    ready = sorted(i for i in range(k) if indeg[i] == 0)
    order: list[int] = []
    while ready:
        c = ready.pop(0)
        order.append(c)
        for nxt in succ[c]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
        ready.sort()
    components = tuple(tuple(sorted(sccs[c])) for c in order)
    cn = [0] * d.n
    for i, comp in enumerate(components):
        for v in comp:
            cn[v] = i
    return ComponentDecomposition(components, tuple(cn))


def _tarjan(d: Digraph) -> list[list[int]]:
    """Iterative Tarjan; safe for deep graphs."""
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(d.n):
        if index[root] != -1:
            continue
        work = [(root, iter(sorted(d.out_neighbors(root))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(d.out_neighbors(w)))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def is_strong(d: Digraph) -> bool:
    return d.n <= 1 or len(_tarjan(d)) == 1


def _reach_mask(adj: tuple[int, ...], start_mask: int, allowed: int) -> int:
    """Vertices reachable from start_mask walking masks, restricted to allowed."""
    seen = start_mask & allowed
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def underlying_is_connected(d: Digraph) -> bool:
    if d.n == 0:
        return True
    full = (1 << d.n) - 1
    return _reach_mask(d.adj_mask, 1, full) == full


def underlying_is_2connected(d: Digraph) -> bool:
    """True iff U(d) is connected and has no cut vertex.  Requires n >= 3."""
    if d.n < 3:
        raise InputError("2-connectivity test needs at least 3 vertices")
    full = (1 << d.n) - 1
    if _reach_mask(d.adj_mask, 1, full) != full:
        return False
    for v in range(d.n):
        allowed = full & ~(1 << v)
        start = allowed & -allowed
        if _reach_mask(d.adj_mask, start, allowed) != allowed:
            return False
    return True


def recognize_smd(d: Digraph) -> PartiteStructure | None:
    """The partition into maximal independent sets of U(d), if d is an SMD.

    Candidate classes come from the non-adjacency relation of U(d); the
    candidate partition is then verified directly (same part: nonadjacent,
    different parts: adjacent).  Returns None when d is not semicomplete
    multipartite.  Parts come back sorted by (size desc, smallest vertex).
    """
    n = d.n
    if n < 2:
        return None
    full = (1 << n) - 1
    assigned = 0
    parts: list[frozenset[int]] = []
    for v in range(n):
        if assigned >> v & 1:
            continue
        cls = full & ~d.adj_mask[v] & ~assigned
        cls |= 1 << v
        members = _mask_bits(cls)
        # verify: mutually nonadjacent inside, all adjacent across
        for u in members:
            if d.adj_mask[u] & cls:
                return None
            if (d.adj_mask[u] | cls) != full:
                return None
        assigned |= cls
        parts.append(frozenset(members))
    if len(parts) < 2:
        return None
    parts.sort(key=lambda p: (-len(p), min(p)))
    return PartiteStructure.from_parts(n, parts)


def recognize_lsd(d: Digraph) -> bool:
    """True iff every out- and in-neighbourhood induces a semicomplete digraph."""
    for v in range(d.n):
        for mask in (d.out_mask[v], d.in_mask[v]):
            for u in _mask_bits(mask):
                rest = mask & ~(1 << u)
                if rest & ~d.adj_mask[u]:
                    return False
    return True


def is_semicomplete(d: Digraph) -> bool:
    full = (1 << d.n) - 1
    return all(d.adj_mask[v] == full & ~(1 << v) for v in range(d.n))


def _mask_bits(mask: int) -> list[int]:
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low.bit_length() - 1)
        mask ^= low
    return bits
