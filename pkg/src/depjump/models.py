"""Generative models for random graphs with locally dependent edges.

Each model samples n-vertex graphs whose edge indicators are functions of a
small set of latent Bernoulli variables.  Two edge slots are dependent exactly
when they read a common latent, which makes the dependency graph over slots,
the uncorrelated-set test, and the exhaustive independence checks all fall out
of one latent-bookkeeping mechanism (`slot_latents` / `slot_value`).

Variants:
  ErdosRenyi      one latent per slot; no dependence at all.
  VertexColorAnd  vertices split into blocks of size d/2; edge (i,j) appears
                  when both per-vertex-per-block bits fire (AND of two
                  Bernoulli(sqrt(p)) latents).  Builds large cliques.
  BlockLift       vertices split into blocks of size sqrt(d); one Bernoulli(p)
                  latent per unordered block pair drives every edge between
                  (or inside) those blocks.
  XorBipartite    one bit per vertex; edge iff the endpoint bits differ.
                  Bipartite with certainty.
  EqualityClique  one bit per vertex; edge iff the endpoint bits agree.
                  Union of two cliques, so clique number >= n/2 always.
  ProtocolInduced edge (i,j) iff (i, f(j)) and (j, f(i)) both lie in a fixed
                  bipartite graph; deterministic, with the dependency
                  structure of the random-bipartite ensemble it comes from.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterator, Mapping, Sequence

import numpy as np

from .graphs import Graph
from .rng import stream

Slot = tuple[int, int]


def num_slots(n: int) -> int:
    return n * (n - 1) // 2


def slot_index(n: int, u: int, v: int) -> int:
    """Canonical row-major index of the unordered pair {u,v}."""
    if u > v:
        u, v = v, u
    if not 0 <= u < v < n:
        raise ValueError(f"invalid slot ({u},{v}) for n={n}")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def slot_pair(n: int, index: int) -> Slot:
    if not 0 <= index < num_slots(n):
        raise ValueError(f"slot index {index} out of range for n={n}")
    u = 0
    row = n - 1
    while index >= row:
        index -= row
        u += 1
        row -= 1
    return u, u + 1 + index


def _norm(e: Slot) -> Slot:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DependencyGraph:
    """Dependency structure over edge slots.

    Slots are adjacent exactly when their indicators read a shared latent
    variable, so every slot is independent of the joint distribution of all
    non-neighbors.  `max_degree` is the exact maximum adjacency degree,
    computed analytically per variant.
    """

    n: int
    max_degree: int
    _model: "DependentModel"

    def adjacent(self, e: Slot, f: Slot) -> bool:
        e, f = _norm(e), _norm(f)
        if e == f:
            return False
        le = self._model.slot_latents(*e)
        lf = self._model.slot_latents(*f)
        return not set(le).isdisjoint(lf)

    def neighbors(self, e: Slot) -> Iterator[Slot]:
        for k in range(num_slots(self.n)):
            f = slot_pair(self.n, k)
            if self.adjacent(e, f):
                yield f

    def degree(self, e: Slot) -> int:
        return sum(1 for _ in self.neighbors(e))


class DependentModel:
    """Base class: a parameterized distribution over n-vertex graphs."""

    variant: str
    n: int
    p: float

    # -- latent bookkeeping ------------------------------------------------
    def slot_latents(self, u: int, v: int) -> tuple[Hashable, ...]:
        """Ids of the latent variables the indicator of {u,v} reads."""
        raise NotImplementedError

    def latent_prob(self, latent: Hashable) -> float:
        """P[latent bit = 1]."""
        raise NotImplementedError

    def slot_value(self, u: int, v: int, assignment: Mapping[Hashable, int]) -> int:
        """Edge indicator of {u,v} under a full assignment of its latents."""
        raise NotImplementedError

    # -- public operations ---------------------------------------------------
    def sample(self, seed: int) -> Graph:
        raise NotImplementedError

    def marginal_edge_probability(self) -> float:
        raise NotImplementedError

    def dependency_graph(self) -> DependencyGraph:
        return DependencyGraph(self.n, self._max_degree(), self)

    def _max_degree(self) -> int:
        raise NotImplementedError

    def is_uncorrelated(self, vertices: Sequence[int]) -> bool:
        """True iff no two edge slots inside `vertices` share a latent."""
        vs = sorted(set(vertices))
        if len(vs) < 2:
            raise ValueError(f"need at least 2 vertices, got {len(vs)}")
        seen: set[Hashable] = set()
        for u, v in combinations(vs, 2):
            for lat in self.slot_latents(u, v):
                if lat in seen:
                    return False
                seen.add(lat)
        return True

    def descriptor(self) -> dict:
        return {"variant": self.variant, "n": self.n, "p": self.p}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(f'{k}={v}' for k, v in self.descriptor().items() if k != 'variant')})"


def _check_prob(p: float, lo: float = 0.0, hi: float = 1.0, *, name: str = "p") -> float:
    if not lo <= p <= hi:
        raise ValueError(f"{name} must be in [{lo}, {hi}], got {p}")
    return float(p)


def _graph_from_sym(mat: np.ndarray) -> Graph:
    return Graph.from_bool_matrix(mat)


class ErdosRenyi(DependentModel):
    variant = "ErdosRenyi"

    def __init__(self, n: int, p: float):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.n = n
        self.p = _check_prob(p)

    def sample(self, seed: int) -> Graph:
        draws = stream(seed, 0).random(num_slots(self.n)) < self.p
        mat = np.zeros((self.n, self.n), dtype=bool)
        mat[np.triu_indices(self.n, 1)] = draws
        return _graph_from_sym(mat | mat.T)

    def marginal_edge_probability(self) -> float:
        return self.p

    def slot_latents(self, u, v):
        return (("slot", *_norm((u, v))),)

    def latent_prob(self, latent):
        return self.p

    def slot_value(self, u, v, assignment):
        return assignment[("slot", *_norm((u, v)))]

    def _max_degree(self) -> int:
        return 0


class VertexColorAnd(DependentModel):
    """Blocks of size d/2; edge (i,j) iff X[i, block(j)] and X[j, block(i)]."""

    variant = "VertexColorAnd"

    def __init__(self, n: int, p: float, d: int):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        if d < 2 or d % 2:
            raise ValueError(f"d must be even and >= 2, got d={d}")
        if n % (d // 2):
            raise ValueError(f"block size d/2={d // 2} must divide n={n}")
        self.n = n
        self.p = _check_prob(p)
        self.d = d
        self.block_size = d // 2
        self.num_blocks = n // self.block_size

    def block_of(self, v: int) -> int:
        return v // self.block_size

    def sample(self, seed: int) -> Graph:
        q = math.sqrt(self.p)
        lat = stream(seed, 0).random((self.n, self.num_blocks)) < q
        c = np.arange(self.n) // self.block_size
        hits = lat[np.arange(self.n)[:, None], c[None, :]]  # hits[i,j] = X[i, block(j)]
        return _graph_from_sym(hits & hits.T)

    def marginal_edge_probability(self) -> float:
        return self.p

    def slot_latents(self, u, v):
        return (("X", u, self.block_of(v)), ("X", v, self.block_of(u)))

    def latent_prob(self, latent):
        return math.sqrt(self.p)

    def slot_value(self, u, v, assignment):
        return assignment[("X", u, self.block_of(v))] & assignment[("X", v, self.block_of(u))]

    def _max_degree(self) -> int:
        s = self.block_size
        inter = 2 * s - 2 if self.num_blocks >= 2 else 0
        intra = 2 * s - 4 if s >= 2 else 0
        return max(inter, intra, 0)

    def descriptor(self) -> dict:
        return {**super().descriptor(), "d": self.d}


class BlockLift(DependentModel):
    """Blocks of size sqrt(d); one latent per block pair drives all its edges."""

    variant = "BlockLift"

    def __init__(self, n: int, p: float, d: int):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        root = math.isqrt(d)
        if d < 1 or root * root != d:
            raise ValueError(f"d must be a perfect square, got d={d}")
        if n % root:
            raise ValueError(f"block size sqrt(d)={root} must divide n={n}")
        self.n = n
        self.p = _check_prob(p)
        self.d = d
        self.block_size = root
        self.num_blocks = n // root

    def block_of(self, v: int) -> int:
        return v // self.block_size

    def sample(self, seed: int) -> Graph:
        b = self.num_blocks
        upper = stream(seed, 0).random((b, b)) < self.p
        lat = np.triu(upper)  # upper triangle plus diagonal, mirrored below
        lat = lat | np.triu(lat, 1).T
        c = np.arange(self.n) // self.block_size
        return _graph_from_sym(lat[c[:, None], c[None, :]])

    def marginal_edge_probability(self) -> float:
        return self.p

    def slot_latents(self, u, v):
        a, b = self.block_of(u), self.block_of(v)
        return (("B", min(a, b), max(a, b)),)

    def latent_prob(self, latent):
        return self.p

    def slot_value(self, u, v, assignment):
        a, b = self.block_of(u), self.block_of(v)
        return assignment[("B", min(a, b), max(a, b))]

    def _max_degree(self) -> int:
        r = self.block_size
        inter = r * r - 1 if self.num_blocks >= 2 else 0
        intra = r * (r - 1) // 2 - 1 if r >= 2 else 0
        return max(inter, intra, 0)

    def descriptor(self) -> dict:
        return {**super().descriptor(), "d": self.d}


class _VertexBitModel(DependentModel):
    """Shared machinery for models driven by one Bernoulli bit per vertex."""

    def __init__(self, n: int, p: float):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.n = n
        self.p = float(p)

    def bit_probability(self) -> float:
        raise NotImplementedError

    def _edge_rule(self, xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sample(self, seed: int) -> Graph:
        bits = stream(seed, 0).random(self.n) < self.bit_probability()
        return _graph_from_sym(self._edge_rule(bits[:, None], bits[None, :]))

    def slot_latents(self, u, v):
        return (("V", u), ("V", v))

    def latent_prob(self, latent):
        return self.bit_probability()

    def _max_degree(self) -> int:
        return max(0, 2 * self.n - 4)


class XorBipartite(_VertexBitModel):
    """Edge iff endpoint bits differ; two sides, so bipartite with certainty.

    The bit probability follows the construction's stated formula
    q = 1 - sqrt(1-p); the realized marginal is 2q(1-q), which this class
    reports (it differs from p itself except at the endpoints).
    """

    variant = "XorBipartite"

    def __init__(self, n: int, p: float):
        super().__init__(n, _check_prob(p))

    def bit_probability(self) -> float:
        return 1.0 - math.sqrt(1.0 - self.p)

    def _edge_rule(self, xi, xj):
        return xi ^ xj

    def marginal_edge_probability(self) -> float:
        q = self.bit_probability()
        return 2.0 * q * (1.0 - q)

    def slot_value(self, u, v, assignment):
        return assignment[("V", u)] ^ assignment[("V", v)]


class EqualityClique(_VertexBitModel):
    """Edge iff endpoint bits agree; the two bit-classes are cliques."""

    variant = "EqualityClique"

    def __init__(self, n: int, p: float):
        if not 0.5 <= p <= 1.0:
            raise ValueError(f"p must be >= 1/2 for EqualityClique, got {p}")
        super().__init__(n, p)

    def bit_probability(self) -> float:
        return (1.0 - math.sqrt(2.0 * self.p - 1.0)) / 2.0

    def _edge_rule(self, xi, xj):
        return ~(xi ^ xj)

    def marginal_edge_probability(self) -> float:
        q = self.bit_probability()
        return q * q + (1.0 - q) * (1.0 - q)

    def slot_value(self, u, v, assignment):
        return int(assignment[("V", u)] == assignment[("V", v)])


class ProtocolInduced(DependentModel):
    """Deterministic graph induced by a pointer function through a bipartite graph.

    Edge (i,j) iff (i, f(j)) and (j, f(i)) are both bipartite edges.  The seed
    is ignored; the dependency structure is that of the ensemble where each
    bipartite slot is an independent Bernoulli(density) bit, under which each
    edge depends on at most 2*cap-2 others when f is cap-limited.
    """

    variant = "ProtocolInduced"

    def __init__(self, h, f: Sequence[int]):
        from .pointer_jumping import Bipartite  # deferred: avoids import cycle at module load

        if not isinstance(h, Bipartite):
            raise ValueError("h must be a Bipartite graph")
        if len(f) != h.n:
            raise ValueError(f"f must have length n={h.n}, got {len(f)}")
        if any(not 0 <= val < h.n for val in f):
            raise ValueError("f values must lie in 0..n-1")
        if h.density is None:
            raise ValueError("h must carry a density parameter")
        self.h = h
        self.f = tuple(int(v) for v in f)
        self.n = h.n
        self.p = float(h.density)
        counts = [0] * self.n
        for val in self.f:
            counts[val] += 1
        self.preimage_counts = tuple(counts)
        self.preimage_cap = max(counts)

    def sample(self, seed: int) -> Graph:
        from .pointer_jumping import induced_graph

        return induced_graph(self.h, self.f)

    def marginal_edge_probability(self) -> float:
        return self.p * self.p

    def slot_latents(self, u, v):
        return (("H", u, self.f[v]), ("H", v, self.f[u]))

    def latent_prob(self, latent):
        return self.p

    def slot_value(self, u, v, assignment):
        return assignment[("H", u, self.f[v])] & assignment[("H", v, self.f[u])]

    def _max_degree(self) -> int:
        sizes = sorted((c for c in self.preimage_counts if c), reverse=True)
        best = 0
        if len(sizes) >= 2:
            best = sizes[0] + sizes[1] - 2
        if sizes and sizes[0] >= 2:
            best = max(best, 2 * sizes[0] - 4)
        return best if self.n >= 2 else 0

    def descriptor(self) -> dict:
        from .pointer_jumping import bipartite_to_text

        return {
            "variant": self.variant,
            "n": self.n,
            "p": self.p,
            "h": bipartite_to_text(self.h),
            "f": list(self.f),
        }


_VARIANTS = {
    cls.variant: cls
    for cls in (ErdosRenyi, VertexColorAnd, BlockLift, XorBipartite, EqualityClique)
}


def model_from_descriptor(desc: Mapping) -> DependentModel:
    """Build a model from its JSON descriptor {variant, n, p, d?, ...}."""
    try:
        variant = desc["variant"]
    except KeyError:
        raise ValueError("descriptor missing 'variant'") from None
    if variant == "ProtocolInduced":
        from .pointer_jumping import bipartite_from_text

        h = bipartite_from_text(desc["h"])
        return ProtocolInduced(h, desc["f"])
    try:
        cls = _VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown model variant {variant!r}") from None
    kwargs = {"n": int(desc["n"]), "p": float(desc["p"])}
    if variant in ("VertexColorAnd", "BlockLift"):
        if "d" not in desc:
            raise ValueError(f"{variant} descriptor requires 'd'")
        kwargs["d"] = int(desc["d"])
    return cls(**kwargs)


def model_to_json(model: DependentModel) -> str:
    return json.dumps(model.descriptor(), sort_keys=True)


def model_from_json(text: str) -> DependentModel:
    return model_from_descriptor(json.loads(text))


# ---------------------------------------------------------------------------
# exact joint distributions over latents (used by the independence checks)
# ---------------------------------------------------------------------------

def exact_joint(model: DependentModel, e: Slot, f: Slot) -> tuple[float, float, float]:
    """(P[e], P[f], P[e and f]) by enumerating the slots' latent variables."""
    e, f = _norm(e), _norm(f)
    latents = sorted(set(model.slot_latents(*e)) | set(model.slot_latents(*f)), key=repr)
    pe = pf = pef = 0.0
    for bits in range(1 << len(latents)):
        assignment = {lat: (bits >> k) & 1 for k, lat in enumerate(latents)}
        w = 1.0
        for lat in latents:
            q = model.latent_prob(lat)
            w *= q if assignment[lat] else (1.0 - q)
        ve = model.slot_value(*e, assignment)
        vf = model.slot_value(*f, assignment)
        pe += w * ve
        pf += w * vf
        pef += w * (ve & vf)
    return pe, pf, pef
