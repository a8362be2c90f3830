"""Undirected simple graphs and the combinatorial algorithms built on them.

Graphs are immutable, with adjacency stored as one bitset row per vertex
(Python ints), giving O(1) edge queries and fast row intersections for the
clique search.  Vertices are indexed 0..n-1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

EXACT_CLIQUE_LIMIT = 48


class SizeLimitError(ValueError):
    """Raised when an exact search would exceed its configured size limit."""


def _pack_row(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _unpack_row(row: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(row.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Undirected simple graph on n vertices with bitset adjacency rows."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        self.n = n
        self.rows = tuple(rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_bool_matrix(cls, mat: np.ndarray) -> "Graph":
        """Build from a symmetric boolean adjacency matrix (diagonal ignored)."""
        n = mat.shape[0]
        m = mat.copy()
        np.fill_diagonal(m, False)
        return cls(n, [_pack_row(m[i]) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return list(_iter_bits(self.rows[u]))

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges in canonical slot order: (0,1),(0,2),...,(n-2,n-1)."""
        for u in range(self.n):
            yield from ((u, v) for v in _iter_bits(self.rows[u] >> (u + 1) << (u + 1)))

    def complement(self) -> "Graph":
        mask = (1 << self.n) - 1
        return Graph(self.n, [mask & ~r & ~(1 << i) for i, r in enumerate(self.rows)])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        vs = list(vertices)
        rows = [0] * len(vs)
        for a, u in enumerate(vs):
            for b, v in enumerate(vs):
                if a != b and self.has_edge(u, v):
                    rows[a] |= 1 << b
        return Graph(len(vs), rows)

    def to_packed(self) -> np.ndarray:
        """Adjacency as packed little-endian bits, shape (n, ceil(n/8)) uint8."""
        nbytes = (self.n + 7) // 8
        out = np.empty((self.n, nbytes), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            out[i] = np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def validate(self) -> None:
        mask = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~mask:
                raise ValueError(f"row {i} has bits beyond n={self.n}")
            if (r >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for u in range(self.n):
            for v in _iter_bits(self.rows[u]):
                if not self.has_edge(v, u):
                    raise ValueError(f"asymmetric edge ({u},{v})")


# ---------------------------------------------------------------------------
# text serialization:  line 1 "n m", then m lines "u v" with u < v
# ---------------------------------------------------------------------------

def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    n, m = map(int, lines[0].split())
    edges = []
    for ln in lines[1 : m + 1]:
        u, v = map(int, ln.split())
        if not u < v:
            raise ValueError(f"edge line '{ln}' must have u < v")
        edges.append((u, v))
    if len(edges) != m:
        raise ValueError(f"expected {m} edge lines, found {len(edges)}")
    return Graph.from_edges(n, edges)


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(graph_to_text(g))


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        return graph_from_text(fh.read())


# ---------------------------------------------------------------------------
# bipartiteness
# ---------------------------------------------------------------------------

def is_bipartite(g: Graph) -> tuple[bool, list[int]]:
    """BFS 2-coloring.

    Returns (True, side) where side[v] in {0,1} is a valid 2-coloring, or
    (False, cycle) where cycle is the vertex list of an odd cycle.
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for v in _iter_bits(g.rows[u]):
                    if side[v] == -1:
                        side[v] = side[u] ^ 1
                        parent[v] = u
                        nxt.append(v)
                    elif side[v] == side[u]:
                        return False, _odd_cycle(parent, u, v)
            queue = nxt
    return True, side


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    path_u, path_v = [u], [v]
    seen = {u: 0}
    a = u
    while parent[a] != -1:
        a = parent[a]
        seen[a] = len(path_u)
        path_u.append(a)
    b = v
    while b not in seen:
        b = parent[b]
        path_v.append(b)
    # path_u up to the meeting point, then back down the v-branch
    cycle = path_u[: seen[b] + 1] + path_v[:-1][::-1]
    return cycle


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------

def max_clique_exact(g: Graph, limit: int = EXACT_CLIQUE_LIMIT) -> tuple[int, ...]:
    """Maximum clique by branch and bound with a greedy-coloring upper bound.

    Raises SizeLimitError for n beyond `limit`; the default is far past the
    exhaustively verified regime but keeps accidental exponential blowups out.
    """
    if g.n > limit:
        raise SizeLimitError(f"exact clique search limited to n <= {limit}, got n={g.n}")
    if g.n == 0:
        return ()
    rows = g.rows
    best: list[int] = []

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy coloring of candidates; vertices emitted in nondecreasing
        # color, paired with that color as a pruning bound
        order: list[tuple[int, int]] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                avail &= ~rows[v] & ~(1 << v)
                rest &= ~(1 << v)
        return order

    def expand(cand: int, cur: list[int]) -> None:
        order = color_bound(cand)
        for v, color in reversed(order):
            if len(cur) + color <= len(best):
                return
            cur.append(v)
            nxt = cand & rows[v]
            if nxt:
                expand(nxt, cur)
            elif len(cur) > len(best):
                best[:] = cur
            cur.pop()
            cand &= ~(1 << v)

    expand((1 << g.n) - 1, [])
    return tuple(sorted(best))


def greedy_clique(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    """Scan `order`, adding each vertex adjacent to all members so far."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of 0..n-1")
    members: list[int] = []
    mask = 0
    for v in order:
        if mask & ~g.rows[v] == 0:
            members.append(v)
            mask |= 1 << v
    return tuple(sorted(members))


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(mask & ~g.rows[v] & ~(1 << v) == 0 for v in vertices)


def is_independent_set(g: Graph, vertices: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(mask & g.rows[v] == 0 for v in vertices)


# ---------------------------------------------------------------------------
# greedy batched coloring and clique covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """A valid vertex coloring with contiguous color ids 0..num_colors-1."""

    color_of: tuple[int, ...]
    num_colors: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.color_of):
            out[c].append(v)
        return out

    def validate(self, g: Graph) -> None:
        if len(self.color_of) != g.n:
            raise ValueError("coloring length mismatch")
        if sorted(set(self.color_of)) != list(range(self.num_colors)):
            raise ValueError("color ids must be exactly 0..num_colors-1")
        for u, v in g.edges():
            if self.color_of[u] == self.color_of[v]:
                raise ValueError(f"adjacent vertices {u},{v} share color {self.color_of[u]}")


def _extract_independent_set(rows: Sequence[int], batch_mask: int) -> int:
    """Greedy min-degree independent set of the subgraph induced on batch_mask.

    Repeatedly takes a minimum-degree vertex of the induced subgraph (lowest
    index on ties), deleting it and its neighbors.  Returns the set as a mask.
    """
    picked = 0
    while batch_mask:
        best_v, best_deg = -1, -1
        for v in _iter_bits(batch_mask):
            deg = (rows[v] & batch_mask).bit_count()
            if best_deg < 0 or deg < best_deg:
                best_v, best_deg = v, deg
        picked |= 1 << best_v
        batch_mask &= ~rows[best_v] & ~(1 << best_v)
    return picked


def greedy_color(g: Graph, m: int, k_target: int = 1) -> Coloring:
    """Batched greedy coloring.

    While uncolored vertices remain, take the min(m, #uncolored)
    lowest-indexed of them, extract a greedy independent set from their
    induced subgraph, and spend one fresh color on it.  k_target is the
    per-class size the caller hopes for; classes smaller than it are still
    used, so the procedure never fails.  Deterministic in g, m.
    """
    n = g.n
    if not 1 <= m <= max(n, 1):
        raise ValueError(f"batch size m must satisfy 1 <= m <= n, got m={m}, n={n}")
    if k_target < 1:
        raise ValueError(f"k_target must be >= 1, got {k_target}")
    if n == 0:
        return Coloring((), 0)
    if n > 512:
        return _greedy_color_large(g, m)
    color_of = [-1] * n
    alive = (1 << n) - 1
    color = 0
    while alive:
        if alive.bit_count() <= m:
            batch = alive
        else:
            batch = 0
            taken = 0
            for v in _iter_bits(alive):
                batch |= 1 << v
                taken += 1
                if taken == m:
                    break
        cls = _extract_independent_set(g.rows, batch)
        for v in _iter_bits(cls):
            color_of[v] = color
        alive &= ~cls
        color += 1
    return Coloring(tuple(color_of), color)


def _greedy_color_large(g: Graph, m: int) -> Coloring:
    """Same semantics as greedy_color, vectorized for large n.

    Keeps per-vertex counts of alive neighbors so the full-batch case (m >= n,
    used by protocol clique covers) never rescans the whole adjacency.
    """
    n = g.n
    packed = g.to_packed()  # (n, W) uint8
    pad = np.zeros(n, dtype=bool)
    alive_bool = np.ones(n, dtype=bool)
    alive_count = n
    # alive-neighbor counts, maintained incrementally as vertices get colored
    deg = np.bitwise_count(packed).sum(axis=1, dtype=np.int64)
    color_of = np.full(n, -1, dtype=np.int64)
    color = 0
    big = np.int64(1 << 60)

    def unpack(row_idx: int) -> np.ndarray:
        return np.unpackbits(packed[row_idx], bitorder="little")[:n].astype(bool)

    while alive_count:
        if alive_count <= m:
            batch_bool = alive_bool.copy()
        else:
            idx = np.flatnonzero(alive_bool)[:m]
            batch_bool = pad.copy()
            batch_bool[idx] = True
        full_batch = alive_count <= m
        cls: list[int] = []
        while True:
            members = np.flatnonzero(batch_bool)
            if members.size == 0:
                break
            if full_batch and not cls:
                cand_deg = np.where(batch_bool, deg, big)
                v = int(np.argmin(cand_deg))
            else:
                batch_packed = np.packbits(batch_bool, bitorder="little")
                rows = packed[members]
                degs = np.bitwise_count(rows & batch_packed).sum(axis=1)
                v = int(members[np.argmin(degs)])
            cls.append(v)
            nbrs = unpack(v)
            batch_bool &= ~nbrs
            batch_bool[v] = False
        for v in cls:
            color_of[v] = color
            alive_bool[v] = False
            deg -= unpack(v)
        alive_count -= len(cls)
        color += 1
    return Coloring(tuple(int(c) for c in color_of), color)


def clique_cover(g: Graph, m: int | None = None, k_target: int = 1) -> list[tuple[int, ...]]:
    """Partition of the vertices into cliques, via coloring the complement.

    Deterministic in its inputs (fixed vertex order, no randomness), so two
    parties computing the cover independently always agree.  With the default
    m = n the extraction is global greedy; smaller m processes lowest-indexed
    batches.
    """
    if m is None:
        m = max(g.n, 1)
    coloring = greedy_color(g.complement(), m, k_target)
    return [tuple(part) for part in coloring.classes()]
