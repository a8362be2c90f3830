"""Multiparty pointer jumping: instances, evaluation oracles, and protocols.

The pointer-jumping game follows pointers through layered functions from a
start index; the Boolean variant ends in a bit string, the non-Boolean one in
a final index.  All protocols here are parameterized by a shared bipartite
graph known to every party, produce bit-exact transcripts, and are correct
for every input; the bipartite parameter only affects cost.

Index conventions: everything is 0-based; values are log2(n)-bit integers
sliced MSB-first where bit slicing is needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, clique_cover
from .rng import stream, trial_seed


class ProtocolError(RuntimeError):
    """A protocol invariant failed during a run (decode impossible)."""


# ---------------------------------------------------------------------------
# instances and evaluation oracles
# ---------------------------------------------------------------------------

def _check_pointer_layer(f: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    f = tuple(int(v) for v in f)
    if len(f) != n:
        raise ValueError(f"{name} must have length {n}, got {len(f)}")
    if any(not 0 <= v < n for v in f):
        raise ValueError(f"{name} values must lie in 0..{n - 1}")
    return f


@dataclass(frozen=True)
class Mpj3Instance:
    """Boolean 3-player instance: start index, pointer layer, bit string."""

    n: int
    i: int
    f2: tuple[int, ...]
    x: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0 <= self.i < self.n:
            raise ValueError(f"i={self.i} out of range")
        object.__setattr__(self, "f2", _check_pointer_layer(self.f2, self.n, "f2"))
        x = tuple(int(b) for b in self.x)
        if len(x) != self.n or any(b not in (0, 1) for b in x):
            raise ValueError("x must be a bit string of length n")
        object.__setattr__(self, "x", x)

    def eval(self) -> int:
        return eval_mpj(self.i, [self.f2], self.x)


@dataclass(frozen=True)
class MpjHatInstance:
    """Non-Boolean k-player instance: start index and k-1 pointer layers."""

    n: int
    k: int
    i: int
    fs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 2, got {self.n}")
        if self.k < 3:
            raise ValueError(f"k must be >= 3, got {self.k}")
        if not 0 <= self.i < self.n:
            raise ValueError(f"i={self.i} out of range")
        if len(self.fs) != self.k - 1:
            raise ValueError(f"expected {self.k - 1} function layers, got {len(self.fs)}")
        object.__setattr__(
            self,
            "fs",
            tuple(_check_pointer_layer(f, self.n, f"f{j + 2}") for j, f in enumerate(self.fs)),
        )

    def eval(self) -> int:
        return eval_mpj_hat(self.i, self.fs)


def eval_mpj(i: int, fs: Iterable[Sequence[int]], x: Sequence[int]) -> int:
    """Follow the pointer layers from i, then read the final bit."""
    for f in fs:
        i = f[i]
    return int(x[i])


def eval_mpj_hat(i: int, fs: Iterable[Sequence[int]]) -> int:
    """Follow the pointer layers from i; the final index is the answer."""
    for f in fs:
        i = f[i]
    return int(i)


# ---------------------------------------------------------------------------
# the shared bipartite parameter graph
# ---------------------------------------------------------------------------

class Bipartite:
    """Bipartite graph with equal sides of size n, packed-bit adjacency.

    Side A and side B are both indexed 0..n-1.  `density` records the
    Bernoulli parameter the graph was (or would have been) sampled with.
    """

    __slots__ = ("n", "density", "seed", "_rows", "_cols")

    def __init__(self, n: int, rows: np.ndarray, cols: np.ndarray,
                 density: float | None = None, seed: int | None = None):
        self.n = n
        self.density = density
        self.seed = seed
        self._rows = rows  # (n, ceil(n/8)) uint8, bit b of row a = edge (a, b)
        self._cols = cols  # transpose, packed the same way

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   density: float | None = None) -> "Bipartite":
        mat = np.zeros((n, n), dtype=bool)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bipartite edge ({a},{b}) out of range for n={n}")
            mat[a, b] = True
        return cls.from_matrix(mat, density=density)

    @classmethod
    def from_matrix(cls, mat: np.ndarray, density: float | None = None,
                    seed: int | None = None) -> "Bipartite":
        n = mat.shape[0]
        rows = np.packbits(mat, axis=1, bitorder="little")
        cols = np.packbits(mat.T.copy(), axis=1, bitorder="little")
        return cls(n, rows, cols, density=density, seed=seed)

    @classmethod
    def complete(cls, n: int, density: float = 1.0) -> "Bipartite":
        return cls.from_matrix(np.ones((n, n), dtype=bool), density=density)

    @classmethod
    def empty(cls, n: int, density: float = 0.0) -> "Bipartite":
        return cls.from_matrix(np.zeros((n, n), dtype=bool), density=density)

    def has(self, a: int, b: int) -> bool:
        return bool((self._rows[a, b >> 3] >> (b & 7)) & 1)

    def row_bools(self, a: int) -> np.ndarray:
        return np.unpackbits(self._rows[a], bitorder="little")[: self.n].astype(bool)

    def col_bools(self, b: int) -> np.ndarray:
        return np.unpackbits(self._cols[b], bitorder="little")[: self.n].astype(bool)

    def degree(self, a: int) -> int:
        return int(np.bitwise_count(self._rows[a]).sum())

    def neighbors(self, a: int) -> list[int]:
        return np.flatnonzero(self.row_bools(a)).tolist()

    @property
    def num_edges(self) -> int:
        return int(np.bitwise_count(self._rows).sum())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Bipartite)
            and self.n == other.n
            and np.array_equal(self._rows, other._rows)
        )

    def __repr__(self) -> str:
        return f"Bipartite(n={self.n}, m={self.num_edges}, density={self.density})"


def sample_bipartite(n: int, density: float, seed: int) -> Bipartite:
    """Each of the n^2 side-A/side-B slots present independently w.p. density.

    Row a is drawn from the sub-stream (seed, a), so the graph is a pure
    function of (n, density, seed) and every party derives the same one.
    """
    if not 0 <= density <= 1:
        raise ValueError(f"density must be in [0,1], got {density}")
    width = (n + 7) // 8
    rows = np.empty((n, width), dtype=np.uint8)
    if n <= 4096 or n % 8:
        mat = np.empty((n, n), dtype=bool)
        for a in range(n):
            mat[a] = stream(seed, a).random(n) < density
        return Bipartite.from_matrix(mat, density=density, seed=seed)
    # large case: chunked so the full boolean matrix never materializes
    cols = np.empty((n, width), dtype=np.uint8)
    chunk = 2048
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        buf = np.empty((hi - lo, n), dtype=bool)
        for a in range(lo, hi):
            buf[a - lo] = stream(seed, a).random(n) < density
        rows[lo:hi] = np.packbits(buf, axis=1, bitorder="little")
        cols[:, lo // 8 : lo // 8 + (hi - lo) // 8] = np.packbits(
            buf.T.copy(), axis=1, bitorder="little"
        )
    return Bipartite(n, rows, cols, density=density, seed=seed)


def induced_graph(h: Bipartite, f: Sequence[int]) -> Graph:
    """Graph with edge {i,j} iff (i, f(j)) and (j, f(i)) are both in h."""
    n = h.n
    f = _check_pointer_layer(f, n, "f")
    fa = np.asarray(f)
    rows = []
    for i in range(n):
        a = h.row_bools(i)[fa]      # a[j] = h(i, f(j))
        b = h.col_bools(f[i])       # b[j] = h(j, f(i))
        row = a & b
        row[i] = False
        rows.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))
    return Graph(n, rows)


# ---------------------------------------------------------------------------
# bipartite serialization: marker line, then the 2n-vertex graph text
# ---------------------------------------------------------------------------

def bipartite_to_text(h: Bipartite) -> str:
    density = "none" if h.density is None else repr(float(h.density))
    lines = [f"bipartite {h.n} {density}"]
    edges = []
    for a in range(h.n):
        edges.extend((a, h.n + b) for b in h.neighbors(a))
    lines.append(f"{2 * h.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def bipartite_from_text(text: str) -> Bipartite:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("bipartite"):
        raise ValueError("missing 'bipartite' marker line")
    _, n_str, dens_str = lines[0].split()
    n = int(n_str)
    density = None if dens_str == "none" else float(dens_str)
    total, m = map(int, lines[1].split())
    if total != 2 * n:
        raise ValueError(f"marker n={n} inconsistent with vertex count {total}")
    edges = []
    for ln in lines[2 : 2 + m]:
        u, v = map(int, ln.split())
        if not (u < n <= v < 2 * n):
            raise ValueError(f"edge ({u},{v}) does not go from side A to side B")
        edges.append((u, v - n))
    return Bipartite.from_edges(n, edges, density=density)


def save_bipartite(h: Bipartite, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(bipartite_to_text(h))


def load_bipartite(path: str) -> Bipartite:
    with open(path) as fh:
        return bipartite_from_text(fh.read())


# ---------------------------------------------------------------------------
# transcripts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Message:
    party: str
    round: int
    bits: str


@dataclass
class Transcript:
    """Ordered per-party messages; cost is the exact total bit count."""

    messages: list[Message] = field(default_factory=list)

    def add(self, party: str, round_: int, bits: str) -> None:
        self.messages.append(Message(party, round_, bits))

    @property
    def total_bits(self) -> int:
        return sum(len(m.bits) for m in self.messages)

    def bits_by_party(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for m in self.messages:
            out[m.party] = out.get(m.party, 0) + len(m.bits)
        return out

    def dump(self) -> str:
        return "".join(f"{m.party} {m.round} {m.bits}\n" for m in self.messages)


# ---------------------------------------------------------------------------
# the cover-based protocol core
# ---------------------------------------------------------------------------

class CoverContext:
    """The deterministic clique-cover view shared by the message senders.

    Both the sender XOR-ing clusters and the receiver undoing them recompute
    this from (h, f) alone, so it must be a pure function of those inputs;
    `clique_cover` guarantees that.
    """

    def __init__(self, h: Bipartite, f: Sequence[int]):
        self.h = h
        self.f = tuple(f)
        self.graph = induced_graph(h, f)
        self.parts = clique_cover(self.graph)
        self.part_of = [0] * h.n
        for idx, part in enumerate(self.parts):
            for v in part:
                self.part_of[v] = idx
        self.images = [sorted({self.f[j] for j in part}) for part in self.parts]

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def cluster_bits(self, x: Sequence[int]) -> str:
        """One bit per part: the XOR of x over the part's distinct images."""
        out = []
        for values in self.images:
            acc = 0
            for s in values:
                acc ^= x[s]
            out.append("01"[acc])
        return "".join(out)

    def receiver_plan(self, i: int) -> tuple:
        """How the receiver recovers x[f(i)] from the two messages.

        Returns ("direct", f(i)) when some other member of i's part shares
        its image (that bit is then available verbatim from the neighbor
        message), else ("unxor", part index, images to XOR back out).
        """
        idx = self.part_of[i]
        fi = self.f[i]
        if any(j != i and self.f[j] == fi for j in self.parts[idx]):
            return ("direct", fi)
        others = [s for s in self.images[idx] if s != fi]
        return ("unxor", idx, others)


def _neighbor_message(h: Bipartite, i: int, x: Sequence[int]) -> tuple[list[int], str]:
    js = h.neighbors(i)
    return js, "".join("01"[x[j]] for j in js)


def _decode(plan: tuple, cluster_bits: str, nbr_js: list[int], nbr_bits: str) -> int:
    rank = {j: pos for pos, j in enumerate(nbr_js)}
    if plan[0] == "direct":
        fi = plan[1]
        if fi not in rank:
            raise ProtocolError(f"bit for {fi} not present in neighbor message")
        return int(nbr_bits[rank[fi]])
    _, idx, others = plan
    acc = int(cluster_bits[idx])
    for s in others:
        if s not in rank:
            raise ProtocolError(f"bit for {s} not present in neighbor message")
        acc ^= int(nbr_bits[rank[s]])
    return acc


def _mask_positions(plan: tuple, num_cluster_bits: int, nbr_js: list[int]) -> list[int]:
    """Relevant-bit positions in the concatenated cluster+neighbor payload."""
    rank = {j: pos for pos, j in enumerate(nbr_js)}
    if plan[0] == "direct":
        return [num_cluster_bits + rank[plan[1]]]
    _, idx, others = plan
    return [idx] + [num_cluster_bits + rank[s] for s in others]


def run_oneway_core(h: Bipartite, inst: Mpj3Instance,
                    ctx: CoverContext | None = None) -> tuple[Transcript, int]:
    """Cover-based one-way protocol; correct for every h and every input.

    Alice sends one XOR bit per clique of the cover of the induced graph,
    Bob the x-bits at i's bipartite neighbors; Carol reconstructs x[f2(i)].
    """
    if ctx is None:
        ctx = CoverContext(h, inst.f2)
    alice = ctx.cluster_bits(inst.x)
    nbr_js, bob = _neighbor_message(h, inst.i, inst.x)
    t = Transcript()
    t.add("alice", 0, alice)
    t.add("bob", 0, bob)
    out = _decode(ctx.receiver_plan(inst.i), alice, nbr_js, bob)
    return t, out


def count_preimages(f: Sequence[int], n: int) -> list[int]:
    counts = [0] * n
    for v in f:
        counts[v] += 1
    return counts


def is_preimage_limited(f: Sequence[int], cap: int) -> bool:
    return max(count_preimages(f, len(f))) <= cap


def lex_least_limited(f: Sequence[int], cap: int) -> list[int]:
    """Lexicographically least cap-limited function agreeing with f wherever
    f's value has preimage size <= cap.

    Free positions are filled in increasing index order, each receiving the
    smallest value whose accumulated preimage count stays <= cap.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    n = len(f)
    counts = count_preimages(f, n)
    g = [-1] * n
    used = [0] * n
    for j, v in enumerate(f):
        if counts[v] <= cap:
            g[j] = v
            used[v] += 1
    cursor = 0  # smallest value that might still have spare capacity
    for j in range(n):
        if g[j] != -1:
            continue
        while used[cursor] >= cap:
            cursor += 1
        v = cursor
        while used[v] >= cap:
            v += 1
        g[j] = v
        used[v] += 1
    return g


def run_oneway(h: Bipartite, inst: Mpj3Instance, cap: int) -> tuple[Transcript, int]:
    """General one-way protocol: cover protocol on a preimage-capped proxy
    function, plus the x-bits at values with large preimages sent verbatim.

    Positions of the verbatim bits are implied by f2, which the receiver also
    sees, so they cost nothing beyond the bits themselves (at most n/cap).
    """
    counts = count_preimages(inst.f2, inst.n)
    g = lex_least_limited(inst.f2, cap)
    ctx = CoverContext(h, g)
    alice = ctx.cluster_bits(inst.x)
    big_js = [j for j in range(inst.n) if counts[j] > cap]
    supplement = "".join("01"[inst.x[j]] for j in big_js)
    nbr_js, bob = _neighbor_message(h, inst.i, inst.x)
    t = Transcript()
    t.add("alice", 0, alice)
    t.add("alice", 1, supplement)
    t.add("bob", 0, bob)
    fi = inst.f2[inst.i]
    if counts[fi] > cap:
        out = int(supplement[big_js.index(fi)])
    else:
        out = _decode(ctx.receiver_plan(inst.i), alice, nbr_js, bob)
    return t, out


def run_sm(h: Bipartite, inst: Mpj3Instance,
           ctx: CoverContext | None = None) -> tuple[Transcript, int]:
    """Simultaneous-message conversion: sender messages unchanged, the third
    party sends a relevance bitmask, and the referee XORs the masked bits.
    Costs exactly twice the one-way core protocol.
    """
    if ctx is None:
        ctx = CoverContext(h, inst.f2)
    alice = ctx.cluster_bits(inst.x)
    nbr_js, bob = _neighbor_message(h, inst.i, inst.x)
    positions = _mask_positions(ctx.receiver_plan(inst.i), len(alice), nbr_js)
    mask = ["0"] * (len(alice) + len(bob))
    for pos in positions:
        mask[pos] = "1"
    carol = "".join(mask)
    t = Transcript()
    t.add("alice", 0, alice)
    t.add("bob", 0, bob)
    t.add("carol", 0, carol)
    payload = alice + bob
    out = 0
    for pos, m in enumerate(carol):
        if m == "1":
            out ^= int(payload[pos])
    return t, out


# ---------------------------------------------------------------------------
# non-Boolean protocols
# ---------------------------------------------------------------------------

def log2_exact(n: int) -> int:
    l = n.bit_length() - 1
    if 1 << l != n:
        raise ValueError(f"n must be a power of two, got {n}")
    return l


def bit_slice(values: Sequence[int], j: int, width: int) -> tuple[int, ...]:
    """Slice j (1-based, 1 = most significant) of each width-bit value."""
    return tuple((v >> (width - j)) & 1 for v in values)


def run_hat3_sm(h: Bipartite, inst: MpjHatInstance) -> tuple[Transcript, int]:
    """Non-Boolean 3-player SM protocol: one SM run per output bit, on the
    MSB-first bit slices of the final layer, assembled by the referee."""
    if inst.k != 3:
        raise ValueError(f"expected a 3-player instance, got k={inst.k}")
    width = log2_exact(inst.n)
    f2, f3 = inst.fs
    ctx = CoverContext(h, f2)
    t = Transcript()
    value = 0
    for j in range(1, width + 1):
        z = bit_slice(f3, j, width)
        slice_inst = Mpj3Instance(inst.n, inst.i, f2, z)
        sub, bit = run_sm(h, slice_inst, ctx=ctx)
        for msg in sub.messages:
            t.add(msg.party, j - 1, msg.bits)
        value = (value << 1) | bit
    return t, value


def default_prefix_bits(n: int) -> int:
    """Cost-minimizing phase-1 slice count, rounded half-up and clamped."""
    width = log2_exact(n)
    if width <= 1:
        return 1
    raw = 2.0 * math.log2(math.log(2) * width / math.log2(width))
    return max(1, min(width, math.floor(raw + 0.5)))


def run_hat4(h: Bipartite, inst: MpjHatInstance,
             prefix_bits: int | None = None) -> tuple[Transcript, int]:
    """Non-Boolean 4-player one-way protocol.

    Phase 1: the first three players run the SM protocol on the top
    `prefix_bits` bit slices of the third layer, letting player 3 learn that
    prefix of the answer's predecessor.  Phase 2: player 3 sends the final
    layer's value for every index matching the prefix, in increasing order;
    player 4 picks the one at the true index.
    """
    if inst.k != 4:
        raise ValueError(f"expected a 4-player instance, got k={inst.k}")
    width = log2_exact(inst.n)
    if prefix_bits is None:
        prefix_bits = default_prefix_bits(inst.n)
    if not 1 <= prefix_bits <= width:
        raise ValueError(f"prefix_bits must be in 1..{width}, got {prefix_bits}")
    f2, f3, f4 = inst.fs
    ctx = CoverContext(h, f2)
    t = Transcript()
    prefix = 0
    for j in range(1, prefix_bits + 1):
        z = bit_slice(f3, j, width)
        slice_inst = Mpj3Instance(inst.n, inst.i, f2, z)
        sub, bit = run_sm(h, slice_inst, ctx=ctx)
        for msg in sub.messages:
            t.add({"alice": "plr1", "bob": "plr2", "carol": "plr3"}[msg.party], j - 1, msg.bits)
        prefix = (prefix << 1) | bit
    tail = width - prefix_bits
    base = prefix << tail
    table = "".join(format(f4[z], f"0{width}b") for z in range(base, base + (1 << tail)))
    t.add("plr3", prefix_bits, table)
    z_star = f3[f2[inst.i]]
    if z_star >> tail != prefix:
        raise ProtocolError("phase-1 prefix disagrees with the true pointer value")
    pos = z_star & ((1 << tail) - 1)
    out = int(table[pos * width : (pos + 1) * width], 2)
    return t, out


# ---------------------------------------------------------------------------
# random instances and bipartite-parameter validation
# ---------------------------------------------------------------------------

def random_mpj3_instance(n: int, seed: int) -> Mpj3Instance:
    gen = stream(seed, 11)
    return Mpj3Instance(
        n,
        int(gen.integers(n)),
        tuple(int(v) for v in gen.integers(0, n, n)),
        tuple(int(b) for b in gen.integers(0, 2, n)),
    )


def random_mpjhat_instance(n: int, k: int, seed: int) -> MpjHatInstance:
    gen = stream(seed, 12)
    fs = tuple(tuple(int(v) for v in gen.integers(0, n, n)) for _ in range(k - 1))
    return MpjHatInstance(n, k, int(gen.integers(n)), fs)


def random_limited_function(n: int, cap: int, seed: int) -> list[int]:
    """Uniform-ish function with all preimages of size <= cap (by redraw)."""
    gen = stream(seed, 13)
    counts = [0] * n
    f = []
    for _ in range(n):
        v = int(gen.integers(n))
        while counts[v] >= cap:
            v = int(gen.integers(n))
        counts[v] += 1
        f.append(v)
    return f


@dataclass
class HValidation:
    """Monte-Carlo quality report for a bipartite protocol parameter."""

    n: int
    density: float
    degree_bound: float
    max_degree: int
    degree_ok: bool
    cover_bound: float
    cover_sizes: list[int]
    cover_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.degree_ok and self.cover_ok


def validate_bipartite(h: Bipartite, cap: int, sample_functions: int, seed: int,
                       density: float | None = None, epsilon: float = 1.0) -> HValidation:
    """Check the degree bound and, for sampled cap-limited functions, the
    cover-size bound.  Monte-Carlo only: it cannot certify all functions."""
    dens = h.density if density is None else density
    if dens is None:
        raise ValueError("no density parameter available for validation")
    n = h.n
    degree_bound = 2.0 * dens * n
    max_degree = max((h.degree(a) for a in range(n)), default=0)
    cover_bound = (1.0 + epsilon) * (-n * math.log(dens * dens)) / math.log(n) if 0 < dens < 1 else float("inf")
    cover_sizes = []
    for idx in range(sample_functions):
        f = random_limited_function(n, cap, trial_seed(seed, idx))
        cover_sizes.append(CoverContext(h, f).num_parts)
    cover_ok = all(size <= cover_bound for size in cover_sizes)
    return HValidation(
        n=n,
        density=float(dens),
        degree_bound=degree_bound,
        max_degree=max_degree,
        degree_ok=max_degree <= degree_bound,
        cover_bound=cover_bound,
        cover_sizes=cover_sizes,
        cover_ok=cover_ok,
    )


# ---------------------------------------------------------------------------
# instance serialization
# ---------------------------------------------------------------------------

def instance_to_json(inst: Mpj3Instance | MpjHatInstance) -> str:
    if isinstance(inst, Mpj3Instance):
        payload = {
            "n": inst.n,
            "i": inst.i,
            "f2": list(inst.f2),
            "x": "".join("01"[b] for b in inst.x),
        }
    else:
        payload = {"n": inst.n, "k": inst.k, "i": inst.i}
        for j, f in enumerate(inst.fs):
            payload[f"f{j + 2}"] = list(f)
    return json.dumps(payload, sort_keys=True)


def instance_from_json(text: str) -> Mpj3Instance | MpjHatInstance:
    data = json.loads(text)
    if "x" in data:
        return Mpj3Instance(
            int(data["n"]), int(data["i"]), tuple(data["f2"]),
            tuple(int(c) for c in data["x"]),
        )
    k = int(data["k"])
    fs = tuple(tuple(data[f"f{j}"]) for j in range(2, k + 1))
    return MpjHatInstance(int(data["n"]), k, int(data["i"]), fs)
