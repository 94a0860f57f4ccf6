"""Multigraphs with reference orientations.

A graph is a list of edges (tail, head) over vertices 0..n-1; parallel
edges and loops are allowed, and the edge order defines both the edge
ids and the reference orientation.  An Orientation is a tuple of flip
bits relative to that reference; loops carry exactly one orientation,
so their bit is pinned to False.

Rank of an edge subset X is |V| minus the number of components of
(V, X); nullity is |X| minus rank.  A directed circuit is an edge set
carrying a simple directed cycle (every touched vertex has in-degree
and out-degree one, and the set is connected); a directed bond is a
minimal edge cut all of whose arrows cross one way.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import check_edge_count


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        for e, (t, h) in enumerate(self.edges):
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"edge {e} endpoint out of range: ({t}, {h})")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_loop(self, e: int) -> bool:
        t, h = self.edges[e]
        return t == h

    def loop_ids(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.edge_count) if self.is_loop(e))

    def non_loop_ids(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.edge_count) if not self.is_loop(e))

    def fingerprint(self) -> str:
        body = ",".join(f"{t}-{h}" for t, h in self.edges)
        return f"v{self.vertex_count}:{body}"


@dataclass(frozen=True)
class Orientation:
    """Flip bits relative to the reference orientation; loops never flip."""

    flips: tuple[bool, ...]

    @classmethod
    def reference(cls, g: MultiGraph) -> "Orientation":
        return cls((False,) * g.edge_count)

    @classmethod
    def for_graph(cls, g: MultiGraph, flips: Sequence[bool]) -> "Orientation":
        flips = tuple(bool(b) for b in flips)
        if len(flips) != g.edge_count:
            raise ValueError("flip vector length does not match edge count")
        for e in g.loop_ids():
            if flips[e]:
                raise ValueError(f"loop edge {e} cannot be flipped")
        return cls(flips)


def arc(g: MultiGraph, o: Orientation, e: int) -> tuple[int, int]:
    """Actual (tail, head) of edge e under orientation o."""
    t, h = g.edges[e]
    return (h, t) if o.flips[e] else (t, h)


@dataclass(frozen=True)
class EdgeSubset:
    """Bitset over edge ids; width is the total edge count."""

    mask: int
    width: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.width:
            raise ValueError(f"mask {self.mask:#x} does not fit width {self.width}")

    @classmethod
    def empty(cls, width: int) -> "EdgeSubset":
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "EdgeSubset":
        return cls((1 << width) - 1, width)

    @classmethod
    def of(cls, width: int, edges: Sequence[int] = ()) -> "EdgeSubset":
        mask = 0
        for e in edges:
            if not 0 <= e < width:
                raise ValueError(f"edge id {e} out of range")
            mask |= 1 << e
        return cls(mask, width)

    def __contains__(self, e: int) -> bool:
        return bool(self.mask >> e & 1)

    def members(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.width) if self.mask >> e & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def complement(self) -> "EdgeSubset":
        return EdgeSubset(self.mask ^ ((1 << self.width) - 1), self.width)

    def union(self, other: "EdgeSubset") -> "EdgeSubset":
        self._check(other)
        return EdgeSubset(self.mask | other.mask, self.width)

    def intersection(self, other: "EdgeSubset") -> "EdgeSubset":
        self._check(other)
        return EdgeSubset(self.mask & other.mask, self.width)

    def difference(self, other: "EdgeSubset") -> "EdgeSubset":
        self._check(other)
        return EdgeSubset(self.mask & ~other.mask, self.width)

    def is_subset_of(self, other: "EdgeSubset") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def _check(self, other: "EdgeSubset") -> None:
        if self.width != other.width:
            raise ValueError("edge subsets over different graphs")


# -- rank and nullity ---------------------------------------------------


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def rank_nullity(g: MultiGraph, x: EdgeSubset | None = None) -> tuple[int, int]:
    """(rank, nullity) of the spanning subgraph (V, X); X defaults to E."""
    if x is None:
        x = EdgeSubset.full(g.edge_count)
    if x.width != g.edge_count:
        raise ValueError("subset width does not match graph")
    uf = _UnionFind(g.vertex_count)
    rank = 0
    for e in range(g.edge_count):
        if x.mask >> e & 1:
            t, h = g.edges[e]
            if t != h and uf.union(t, h):
                rank += 1
    return rank, x.size - rank


def components_count(g: MultiGraph) -> int:
    r, _ = rank_nullity(g)
    return g.vertex_count - r


@functools.lru_cache(maxsize=None)
def subset_rank_table(g: MultiGraph, guard: int | None = None) -> tuple[int, ...]:
    """rank<X> for every edge subset mask, indexed by mask."""
    check_edge_count(g.edge_count, guard, "subset rank table")
    table = [0] * (1 << g.edge_count)
    for mask in range(1, 1 << g.edge_count):
        low = mask & -mask
        e = low.bit_length() - 1
        rest = mask ^ low
        t, h = g.edges[e]
        if t == h:
            table[mask] = table[rest]
            continue
        # recompute from scratch; desk scale keeps this cheap
        table[mask] = rank_nullity(g, EdgeSubset(mask, g.edge_count))[0]
    return tuple(table)


# -- minors --------------------------------------------------------------


def delete(g: MultiGraph, e: int) -> tuple[MultiGraph, dict[int, int]]:
    """Remove edge e; vertices unchanged.  Returns (graph, old id -> new id)."""
    if not 0 <= e < g.edge_count:
        raise ValueError(f"edge id {e} out of range")
    edges = []
    mapping: dict[int, int] = {}
    for old, pair in enumerate(g.edges):
        if old == e:
            continue
        mapping[old] = len(edges)
        edges.append(pair)
    return MultiGraph(g.vertex_count, tuple(edges)), mapping


def contract(g: MultiGraph, e: int) -> tuple[MultiGraph, dict[int, int]]:
    """Identify the endpoints of e and drop e; contracting a loop deletes it.

    Vertices renumber densely (the larger endpoint collapses onto the
    smaller, later vertices shift down); surviving edges keep their
    relative order.
    """
    if not 0 <= e < g.edge_count:
        raise ValueError(f"edge id {e} out of range")
    t, h = g.edges[e]
    if t == h:
        return delete(g, e)
    lo, hi = min(t, h), max(t, h)

    def vmap(v: int) -> int:
        if v == hi:
            return lo
        return v - 1 if v > hi else v

    edges = []
    mapping: dict[int, int] = {}
    for old, (a, b) in enumerate(g.edges):
        if old == e:
            continue
        mapping[old] = len(edges)
        edges.append((vmap(a), vmap(b)))
    return MultiGraph(g.vertex_count - 1, tuple(edges)), mapping


def restriction(g: MultiGraph, o: Orientation, x: EdgeSubset) -> tuple[MultiGraph, Orientation, dict[int, int]]:
    """Spanning subgraph on the edges of X, with o restricted."""
    edges = []
    flips = []
    mapping: dict[int, int] = {}
    for e in x.members():
        mapping[e] = len(edges)
        edges.append(g.edges[e])
        flips.append(o.flips[e])
    sub = MultiGraph(g.vertex_count, tuple(edges))
    return sub, Orientation.for_graph(sub, flips), mapping


# -- orientation structure ------------------------------------------------


def _out_neighbors(g: MultiGraph, o: Orientation) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for e in range(g.edge_count):
        t, h = arc(g, o, e)
        if t != h:
            adj[t].append(h)
    return adj


def _reaches(adj: list[list[int]], src: int, dst: int) -> bool:
    if src == dst:
        return True
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w == dst:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def is_edge_cyclic(g: MultiGraph, o: Orientation, e: int) -> bool:
    """True iff e lies on a directed circuit of (G, o).  Loops always do."""
    if g.is_loop(e):
        return True
    t, h = arc(g, o, e)
    # a simple directed path head -> tail cannot reuse e, so plain
    # reachability suffices
    return _reaches(_out_neighbors(g, o), h, t)


def is_acyclic(g: MultiGraph, o: Orientation) -> bool:
    return not any(is_edge_cyclic(g, o, e) for e in range(g.edge_count))


def is_totally_cyclic(g: MultiGraph, o: Orientation) -> bool:
    return all(is_edge_cyclic(g, o, e) for e in range(g.edge_count))


def directed_circuits(g: MultiGraph, o: Orientation, guard: int | None = None) -> list[EdgeSubset]:
    """All edge sets carrying a simple directed cycle of (G, o)."""
    check_edge_count(g.edge_count, guard, "directed circuit enumeration")
    out: list[EdgeSubset] = []
    for mask in range(1, 1 << g.edge_count):
        indeg: dict[int, int] = {}
        outdeg: dict[int, int] = {}
        ok = True
        uf = _UnionFind(g.vertex_count)
        parts = 0
        touched: set[int] = set()
        for e in range(g.edge_count):
            if not mask >> e & 1:
                continue
            t, h = arc(g, o, e)
            outdeg[t] = outdeg.get(t, 0) + 1
            indeg[h] = indeg.get(h, 0) + 1
            if outdeg[t] > 1 or indeg[h] > 1:
                ok = False
                break
            touched.update((t, h))
            if t != h:
                uf.union(t, h)
        if not ok:
            continue
        verts = touched
        if not verts:
            continue
        if any(indeg.get(v, 0) != 1 or outdeg.get(v, 0) != 1 for v in verts):
            continue
        roots = {uf.find(v) for v in verts}
        if len(roots) == 1:
            out.append(EdgeSubset(mask, g.edge_count))
    return out


def _component_vertex_sets(g: MultiGraph) -> list[set[int]]:
    uf = _UnionFind(g.vertex_count)
    for t, h in g.edges:
        if t != h:
            uf.union(t, h)
    groups: dict[int, set[int]] = {}
    for v in range(g.vertex_count):
        groups.setdefault(uf.find(v), set()).add(v)
    return list(groups.values())


def bonds(g: MultiGraph, guard: int | None = None) -> list[EdgeSubset]:
    """All bonds (minimal non-empty edge cuts), as edge subsets."""
    check_edge_count(g.edge_count, guard, "bond enumeration")
    seen: set[int] = set()
    out: list[EdgeSubset] = []
    for comp in _component_vertex_sets(g):
        verts = sorted(comp)
        if len(verts) < 2:
            continue
        anchor = verts[0]
        rest = verts[1:]
        # bipartitions (S, comp - S); fix anchor in S to kill mirror duplicates
        for r in range(len(rest) + 1):
            for chosen in itertools.combinations(rest, r):
                side = {anchor, *chosen}
                other = comp - side
                if not other:
                    continue
                if not _induced_connected(g, side) or not _induced_connected(g, other):
                    continue
                mask = 0
                for e, (t, h) in enumerate(g.edges):
                    if (t in side) != (h in side):
                        mask |= 1 << e
                if mask and mask not in seen:
                    seen.add(mask)
                    out.append(EdgeSubset(mask, g.edge_count))
    out.sort(key=lambda s: s.mask)
    return out


def _induced_connected(g: MultiGraph, verts: set[int]) -> bool:
    if not verts:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for t, h in g.edges:
        if t != h and t in verts and h in verts:
            adj[t].append(h)
            adj[h].append(t)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def directed_bonds(g: MultiGraph, o: Orientation, guard: int | None = None) -> list[EdgeSubset]:
    """Bonds whose arrows all cross the cut the same way under o."""
    out: list[EdgeSubset] = []
    for bond in bonds(g, guard):
        side = _bond_side(g, bond)
        forward = backward = 0
        for e in bond.members():
            t, h = arc(g, o, e)
            if t in side:
                forward += 1
            else:
                backward += 1
        if forward == 0 or backward == 0:
            out.append(bond)
    return out


def _bond_side(g: MultiGraph, bond: EdgeSubset) -> set[int]:
    """One shore of the cut: vertices reachable without crossing the bond."""
    t0, _ = g.edges[bond.members()[0]]
    seen = {t0}
    stack = [t0]
    while stack:
        v = stack.pop()
        for e, (t, h) in enumerate(g.edges):
            if e in bond or t == h:
                continue
            if t == v and h not in seen:
                seen.add(h)
                stack.append(h)
            elif h == v and t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def coupling(
    g: MultiGraph,
    o1: Orientation,
    o2: Orientation,
    support: EdgeSubset | None = None,
) -> tuple[int, ...]:
    """[o1, o2](e): +1 where the orientations agree, -1 where they differ,
    0 outside the support.  Loops never differ."""
    if support is None:
        support = EdgeSubset.full(g.edge_count)
    vals = []
    for e in range(g.edge_count):
        if e not in support:
            vals.append(0)
        else:
            vals.append(-1 if o1.flips[e] != o2.flips[e] else 1)
    return tuple(vals)


@functools.lru_cache(maxsize=None)
def spanning_forest(g: MultiGraph) -> tuple[int, ...]:
    """Greedy maximal forest (lowest edge ids win); loops never enter."""
    uf = _UnionFind(g.vertex_count)
    forest = []
    for e, (t, h) in enumerate(g.edges):
        if t != h and uf.union(t, h):
            forest.append(e)
    return tuple(forest)


def incidence_matrix(g: MultiGraph, o: Orientation) -> list[list[int]]:
    """V x E incidence matrix: +1 at the tail, -1 at the head, loops zero."""
    rows = [[0] * g.edge_count for _ in range(g.vertex_count)]
    for e in range(g.edge_count):
        t, h = arc(g, o, e)
        if t != h:
            rows[t][e] += 1
            rows[h][e] -= 1
    return rows
