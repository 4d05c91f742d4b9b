"""Extremal host graphs and input-graph generators.

Hosts are the fixed graphs that vertex labelings embed into; every host
carries a verified certificate (forbidden-family freeness, exact girth,
minimum degree).  Construction aborts if verification fails.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .graph import (
    INFINITE,
    CertificationError,
    CycleWitness,
    ForbiddenFamily,
    Graph,
    GirthValue,
    check_family_free,
    find_cycle_up_to,
    find_short_even_cycle,
    girth,
    induced_subgraph,
)

GREEDY_ORDER_CAP = 3000  # all-pairs permutation kept in memory


@dataclass(frozen=True)
class HostGraph:
    """A graph plus its verified certificate.

    ``parts`` carries a bipartition when the construction is bipartite;
    ``degraded`` marks best-effort outputs whose requested guarantee could
    not be met (the achieved values are still verified).
    """

    graph: Graph
    certified_family: Optional[ForbiddenFamily]
    certified_girth: GirthValue
    min_degree: int
    label: str
    parts: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    degraded: bool = False

    @property
    def order(self) -> int:
        return self.graph.n

    def metadata_block(self) -> str:
        """Human-readable side-car record for exported hosts."""
        fam = self.certified_family.describe() if self.certified_family else "none"
        lines = [
            f"label: {self.label}",
            f"order: {self.graph.n}",
            f"edges: {self.graph.m}",
            f"certified_family: {fam}",
            f"certified_girth: {self.certified_girth!r}",
            f"min_degree: {self.min_degree}",
            f"degraded: {str(self.degraded).lower()}",
        ]
        return "\n".join(lines) + "\n"


def _certify(
    graph: Graph,
    family: Optional[ForbiddenFamily],
    label: str,
    parts=None,
    degraded: bool = False,
    known_girth: Optional[GirthValue] = None,
) -> HostGraph:
    """Verify the certificate and assemble a HostGraph; raises on failure."""
    if family is not None:
        verdict = check_family_free(graph, family)
        if not verdict.free:
            raise CertificationError(
                f"host {label!r} contains a forbidden cycle of length "
                f"{verdict.witness.length}"
            )
    g_val = known_girth if known_girth is not None else girth(graph)
    return HostGraph(
        graph=graph,
        certified_family=family,
        certified_girth=g_val,
        min_degree=graph.min_degree(),
        label=label,
        parts=parts,
        degraded=degraded,
    )


# ---------------------------------------------------------------------------
# primes and projective-plane machinery
# ---------------------------------------------------------------------------


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def smallest_prime_with_plane_order(size: int) -> int:
    """Smallest prime q with q*q + q + 1 >= size (trial division)."""
    q = 2
    while q * q + q + 1 < size:
        q += 1
    while not is_prime(q):
        q += 1
    return q


def _pg2_points(q: int) -> list[tuple[int, int, int]]:
    """Normalized homogeneous triples: one representative per projective point."""
    pts = [(1, a, b) for a in range(q) for b in range(q)]
    pts.extend((0, 1, a) for a in range(q))
    pts.append((0, 0, 1))
    return pts


@functools.lru_cache(maxsize=None)
def polarity_graph(q: int) -> HostGraph:
    """C4-free polarity graph of the projective plane of order q.

    Vertices are the q^2+q+1 projective points; x ~ y iff x . y == 0 (mod q)
    and x != y.  Degrees are q+1, except q at the q+1 absolute points.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if not (2 <= q <= 101):
        raise ValueError("q outside the supported range 2..101")
    pts = _pg2_points(q)
    n = len(pts)
    if n <= 400:
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if sum(a * b for a, b in zip(pts[i], pts[j])) % q == 0
        ]
    else:
        import numpy as np

        arr = np.array(pts, dtype=np.int64)
        prod = (arr @ arr.T) % q
        ii, jj = np.nonzero(np.triu(prod == 0, k=1))
        edges = list(zip(ii.tolist(), jj.tolist()))
    graph = Graph.from_edges(n, edges)
    host = _certify(
        graph,
        ForbiddenFamily.even_cycles_up_to(4),
        label=f"polarity(q={q})",
    )
    expected_m = q * (q + 1) ** 2 // 2
    if graph.m != expected_m:
        raise CertificationError(
            f"polarity(q={q}) edge count {graph.m} != {expected_m}"
        )
    return host


@functools.lru_cache(maxsize=None)
def incidence_graph_pg2(q: int) -> HostGraph:
    """Point-line incidence graph of PG(2,q): bipartite, (q+1)-regular, girth 6.

    The exact girth is certified without a full girth scan: the graph is
    verified bipartite and C4-free (girth >= 6) and a 6-cycle is exhibited.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if not (2 <= q <= 101):
        raise ValueError("q outside the supported range 2..101")
    pts = _pg2_points(q)
    n = len(pts)
    if n <= 400:
        edges = [
            (i, n + j)
            for i in range(n)
            for j in range(n)
            if sum(a * b for a, b in zip(pts[i], pts[j])) % q == 0
        ]
    else:
        import numpy as np

        arr = np.array(pts, dtype=np.int64)
        prod = (arr @ arr.T) % q
        ii, jj = np.nonzero(prod == 0)
        edges = [(int(i), n + int(j)) for i, j in zip(ii, jj)]
    graph = Graph.from_edges(2 * n, edges)
    parts = (tuple(range(n)), tuple(range(n, 2 * n)))
    for v in range(2 * n):
        if graph.degree(v) != q + 1:
            raise CertificationError(f"incidence(q={q}): vertex {v} not (q+1)-regular")
    host = _certify(
        graph,
        ForbiddenFamily.even_cycles_up_to(4),
        label=f"incidence_pg2(q={q})",
        parts=parts,
        known_girth=_bipartite_c4free_girth_is_six(graph),
    )
    return host


def _bipartite_c4free_girth_is_six(graph: Graph) -> int:
    """Certify girth exactly 6: bipartite + C4-free gives girth >= 6;
    exhibiting one 6-cycle pins it."""
    from .graph import bipartition

    if bipartition(graph) is None:
        raise CertificationError("incidence graph is not bipartite")
    witness = find_short_even_cycle(graph, 4)
    if witness is not None:
        raise CertificationError("incidence graph contains a C4")
    six = find_cycle_up_to(graph, 6)
    if six is None or six.length != 6:
        raise CertificationError("incidence graph has no 6-cycle")
    return 6


# ---------------------------------------------------------------------------
# greedy high-girth construction
# ---------------------------------------------------------------------------


def _within_distance(adj: list[set], u: int, v: int, d: int) -> bool:
    """dist(u, v) <= d, via bidirectional balls of radius ceil/floor(d/2)."""
    ru, rv = (d + 1) // 2, d // 2
    ball_u = {u}
    frontier = {u}
    for _ in range(ru):
        frontier = {y for x in frontier for y in adj[x]} - ball_u
        ball_u |= frontier
    if v in ball_u:
        return True
    ball_v = {v}
    frontier = {v}
    for _ in range(rv):
        frontier = {y for x in frontier for y in adj[x]} - ball_v
        if frontier & ball_u:
            return True
        ball_v |= frontier
    return False


def greedy_high_girth(n: int, min_girth: int, seed: int) -> HostGraph:
    """Maximal girth->=min_girth graph from one seeded pass over all pairs.

    Scans a seeded uniform permutation of the vertex pairs, adding an edge
    iff it closes no cycle shorter than ``min_girth``; certified per run.
    """
    if not (n >= min_girth >= 3):
        raise ValueError("need n >= min_girth >= 3")
    if n > GREEDY_ORDER_CAP:
        raise ValueError(f"greedy construction capped at {GREEDY_ORDER_CAP} vertices")
    total = n * (n - 1) // 2
    order = list(range(total))
    random.Random(seed).shuffle(order)
    adj: list[set] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    # pair index -> (u, v) with u < v, row-major over the strict upper triangle
    forbidden = min_girth - 2  # reject if dist(u,v) <= min_girth - 2
    for idx in order:
        u = 0
        rem = idx
        row = n - 1
        while rem >= row:
            rem -= row
            row -= 1
            u += 1
        v = u + 1 + rem
        if not _within_distance(adj, u, v, forbidden):
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    graph = Graph.from_edges(n, edges)
    family = (
        ForbiddenFamily.all_cycles_up_to(min_girth - 1) if min_girth >= 4 else None
    )
    host = _certify(graph, family, label=f"greedy(n={n},girth>={min_girth},seed={seed})")
    if host.certified_girth < min_girth:
        raise CertificationError("greedy construction violated its girth target")
    return host


# ---------------------------------------------------------------------------
# pruning and trimming
# ---------------------------------------------------------------------------


def prune_min_degree(g: Graph, q: int) -> Graph:
    """The q-core: maximal induced subgraph with min degree >= q (possibly
    empty); independent of removal order."""
    if q < 0:
        raise ValueError("threshold must be >= 0")
    alive = [True] * g.n
    deg = list(g.degrees())
    stack = [v for v in range(g.n) if deg[v] < q]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < q:
                    stack.append(w)
    keep = [v for v in range(g.n) if alive[v]]
    sub, _ = induced_subgraph(g, keep)
    return sub


def dense_subhost(g_prime: HostGraph, k: int) -> HostGraph:
    """Subgraph of order in (k, 2k] and large min degree via low-degree pruning.

    The degree threshold is the construction's own edge count over 4k.  If
    pruning would drop the order to <= k, the last iterate with order > k is
    returned with its achieved min degree and flagged degraded; if the input
    order already exceeds 2k the (possibly pruned) result is flagged too.
    """
    if k < 1:
        raise ValueError("target size must be >= 1")
    g = g_prime.graph
    threshold = -(-g.m // (4 * k))  # ceil(m / 4k)
    alive = [True] * g.n
    deg = list(g.degrees())
    order = g.n
    degraded = g.n > 2 * k
    # lowest-index victim first; lazily revalidated heap
    candidates = [v for v in range(g.n) if deg[v] < threshold]
    heapq.heapify(candidates)
    while order > k + 1 and candidates:
        victim = heapq.heappop(candidates)
        if not alive[victim] or deg[victim] >= threshold:
            continue
        alive[victim] = False
        order -= 1
        for w in g.adjacency[victim]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < threshold:
                    heapq.heappush(candidates, w)
    still_low = any(alive[v] and deg[v] < threshold for v in range(g.n))
    if still_low:
        degraded = True
    keep = [v for v in range(g.n) if alive[v]]
    label = f"dense_subhost(k={k}) of {g_prime.label}"
    if len(keep) == g.n:
        # nothing pruned: the parent's certificate carries over verbatim
        return HostGraph(
            graph=g,
            certified_family=g_prime.certified_family,
            certified_girth=g_prime.certified_girth,
            min_degree=g_prime.min_degree,
            label=label,
            parts=g_prime.parts,
            degraded=degraded,
        )
    sub, _ = induced_subgraph(g, keep)
    # an induced subgraph cannot gain shorter cycles, so the parent's girth
    # is a lower bound; exhibiting one cycle of that length pins it exactly
    known = None
    parent_girth = g_prime.certified_girth
    if isinstance(parent_girth, int):
        witness = find_cycle_up_to(sub, parent_girth)
        if witness is not None and witness.length == parent_girth:
            known = parent_girth
    host = _certify(
        sub,
        g_prime.certified_family,
        label=label,
        degraded=degraded,
        known_girth=known,
    )
    return host


def bipartite_trim(
    g: Graph,
    parts: tuple[tuple[int, ...], tuple[int, ...]],
    k: int,
) -> tuple[Graph, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Induced subgraph on the top-k part-A vertices (by degree, ties by
    lower index) plus all of part B; relabeled compactly."""
    part_a, part_b = parts
    if k > len(part_a):
        raise ValueError(f"k={k} exceeds |A|={len(part_a)}")
    set_a = set(part_a)
    if len(set_a | set(part_b)) != g.n or len(set_a) + len(part_b) != g.n:
        raise ValueError("parts do not partition the vertex set")
    for u, v in g.edges:
        if (u in set_a) == (v in set_a):
            raise ValueError("graph is not bipartite with the given parts")
    ranked = sorted(part_a, key=lambda v: (-g.degree(v), v))[:k]
    keep = sorted(ranked) + sorted(part_b)
    sub, mapping = induced_subgraph(g, keep)
    pos = {old: new for new, old in enumerate(mapping)}
    new_a = tuple(sorted(pos[v] for v in ranked))
    new_b = tuple(sorted(pos[v] for v in part_b))
    return sub, (new_a, new_b)


# ---------------------------------------------------------------------------
# input-graph generators
# ---------------------------------------------------------------------------


def star(n: int) -> Graph:
    """Star with n leaves (n+1 vertices), center 0."""
    if n < 0:
        raise ValueError("leaf count must be >= 0")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("order must be >= 0")
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: part A = 0..a-1, part B = a..a+b-1."""
    if a < 0 or b < 0:
        raise ValueError("part sizes must be >= 0")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def clique_apex(delta: int, Delta: int) -> Graph:
    """Delta disjoint copies of K_{delta+1} plus an apex joined to one vertex
    per clique; min degree delta, apex degree Delta."""
    if delta < 1 or Delta < 1:
        raise ValueError("need delta >= 1 and Delta >= 1")
    edges = []
    size = delta + 1
    for c in range(Delta):
        base = 1 + c * size
        edges.extend(
            (base + i, base + j) for i in range(size) for j in range(i + 1, size)
        )
        edges.append((0, base))
    return Graph.from_edges(1 + Delta * size, edges)


def random_gnm(n: int, m: int, seed: int) -> Graph:
    """Uniform graph with exactly m edges, deterministic given seed."""
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds C({n},2)={total}")
    rng = random.Random(seed)
    chosen = rng.sample(range(total), m)
    edges = []
    for idx in chosen:
        u = 0
        rem = idx
        row = n - 1
        while rem >= row:
            rem -= row
            row -= 1
            u += 1
        edges.append((u, u + 1 + rem))
    return Graph.from_edges(n, edges)


GENERATORS = ("star", "clique_apex", "complete_bipartite", "random_gnm", "complete")


def generate(kind: str, **params) -> Graph:
    """Dispatch by construction name; parameter errors are rejected."""
    if kind == "star":
        return star(params["n"])
    if kind == "clique_apex":
        return clique_apex(params["delta"], params["Delta"])
    if kind == "complete_bipartite":
        return complete_bipartite(params["a"], params["b"])
    if kind == "random_gnm":
        return random_gnm(params["n"], params["m"], params["seed"])
    if kind == "complete":
        return complete(params["n"])
    raise ValueError(f"unknown generator kind {kind!r}")
