"""Immutable simple-graph core: construction, girth, short-cycle certification.

Every other module builds on :class:`Graph` and uses
:func:`check_family_free` as the independent certifier for its outputs.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union


class EdgeListParseError(ValueError):
    """Malformed edge-list input; message carries the offending line number."""


class CertificationError(RuntimeError):
    """An output that must be certificate-clean failed verification."""


class _InfiniteGirth:
    """Sentinel for the girth of an acyclic graph.

    Compares greater than every integer so that bounds like
    ``girth(g) >= 2 * r + 2`` read naturally.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    def __eq__(self, other) -> bool:
        return isinstance(other, _InfiniteGirth)

    def __hash__(self) -> int:
        return hash("girthforge-infinite")

    def __gt__(self, other) -> bool:
        return not isinstance(other, _InfiniteGirth)

    def __ge__(self, other) -> bool:
        return True

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return isinstance(other, _InfiniteGirth)


INFINITE = _InfiniteGirth()

GirthValue = Union[int, _InfiniteGirth]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``edges`` holds unordered pairs normalized to ``u < v``; ``adjacency``
    holds one sorted neighbor tuple per vertex.  No self-loops, no parallel
    edges.  Instances are safe to share across concurrent readers.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"parallel edge ({e[0]},{e[1]})")
            seen.add(e)
            norm.append(e)
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        return Graph(
            n=n,
            edges=tuple(norm),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @functools.cached_property
    def adjacency_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @functools.cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]


@dataclass(frozen=True)
class CycleWitness:
    """A concrete short cycle certifying non-freeness.

    ``vertices`` is the cyclic sequence; consecutive pairs (wrapping) must
    be edges of the graph under test and all vertices must be distinct.
    """

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise CertificationError("cycle witness shorter than 3")
        if len(set(vs)) != len(vs):
            raise CertificationError("cycle witness repeats a vertex")
        for i, u in enumerate(vs):
            v = vs[(i + 1) % len(vs)]
            if not g.has_edge(u, v):
                raise CertificationError(f"witness pair ({u},{v}) is not an edge")


@dataclass(frozen=True)
class ForbiddenFamily:
    """Family of forbidden cycles: all even cycles up to ``bound`` or all
    cycles up to ``bound``."""

    kind: str  # "even" or "all"
    bound: int

    def __post_init__(self):
        if self.kind == "even":
            if self.bound < 4 or self.bound % 2 != 0:
                raise ValueError("even-cycle bound must be an even integer >= 4")
        elif self.kind == "all":
            if self.bound < 3:
                raise ValueError("all-cycle bound must be >= 3")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    @staticmethod
    def even_cycles_up_to(bound: int) -> "ForbiddenFamily":
        return ForbiddenFamily("even", bound)

    @staticmethod
    def all_cycles_up_to(bound: int) -> "ForbiddenFamily":
        return ForbiddenFamily("all", bound)

    @staticmethod
    def parse(text: str) -> "ForbiddenFamily":
        """Parse 'even:2r' / 'all:L' as used on the command line."""
        try:
            kind, bound_s = text.split(":")
            return ForbiddenFamily(kind, int(bound_s))
        except ValueError as exc:
            raise ValueError(f"bad family spec {text!r}: {exc}") from exc

    def describe(self) -> str:
        return f"{self.kind}:{self.bound}"

    def matches(self, length: int) -> bool:
        if self.kind == "even":
            return length % 2 == 0 and 4 <= length <= self.bound
        return 3 <= length <= self.bound


@dataclass(frozen=True)
class Verdict:
    """Result of a family-freeness check."""

    free: bool
    witness: Optional[CycleWitness] = None

    def __bool__(self) -> bool:
        return self.free


@dataclass(frozen=True)
class VertexColoring:
    """Total coloring of vertices with colors in ``0..ell-1``."""

    colors: tuple[int, ...]
    ell: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("color count must be >= 1")
        for c in self.colors:
            if not (0 <= c < self.ell):
                raise ValueError(f"color {c} outside 0..{self.ell - 1}")

    @staticmethod
    def uniform(n: int, ell: int, rng) -> "VertexColoring":
        return VertexColoring(tuple(rng.randrange(ell) for _ in range(n)), ell)

    def is_proper_on(self, g: Graph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)


# ---------------------------------------------------------------------------
# subgraph operations
# ---------------------------------------------------------------------------


def edge_subgraph(
    g: Graph, keep: Union[Callable[[tuple[int, int]], bool], Iterable[int]]
) -> Graph:
    """Spanning subgraph with the selected edges.

    ``keep`` is either a predicate over edge pairs or an iterable of edge
    indices into ``g.edges``; an unknown index is rejected.
    """
    if callable(keep):
        kept = [e for e in g.edges if keep(e)]
    else:
        idx = sorted(set(keep))
        for i in idx:
            if not (0 <= i < g.m):
                raise ValueError(f"unknown edge index {i}")
        kept = [g.edges[i] for i in idx]
    return Graph.from_edges(g.n, kept)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices`` (relabeled 0..k-1).

    Returns the subgraph and the tuple mapping new labels to old ones.
    """
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    ]
    return Graph.from_edges(len(keep), edges), tuple(keep)


def bipartition(g: Graph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Two-color ``g`` if bipartite, else return None."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    part0 = tuple(v for v in range(g.n) if side[v] == 0)
    part1 = tuple(v for v in range(g.n) if side[v] == 1)
    return part0, part1


# ---------------------------------------------------------------------------
# girth and short-cycle detection
# ---------------------------------------------------------------------------


def _bfs_detect(g: Graph, root: int, depth_cap: int):
    """Truncated BFS from ``root`` reporting the best non-tree detection.

    Returns ``(value, x, y, parent, depth)`` where value is
    ``depth[x] + depth[y] + 1`` minimized over non-tree edges (x, y) scanned
    while expanding vertices of depth < depth_cap, or None if none found.
    A detection value bounds the length of a genuine simple cycle from above.
    """
    parent = {root: -1}
    depth = {root: 0}
    queue = deque([root])
    best = None
    adj = g.adjacency
    while queue:
        x = queue.popleft()
        dx = depth[x]
        if dx >= depth_cap:
            break
        if best is not None and 2 * dx >= best[0]:
            break
        for y in adj[x]:
            dy = depth.get(y)
            if dy is None:
                depth[y] = dx + 1
                parent[y] = x
                queue.append(y)
            elif y != parent[x]:
                value = dx + dy + 1
                if best is None or value < best[0]:
                    best = (value, x, y)
    if best is None:
        return None
    return best[0], best[1], best[2], parent, depth


def _witness_from_detection(x: int, y: int, parent: dict) -> CycleWitness:
    """Build a simple cycle from two BFS parent chains plus the edge xy."""
    chain_x = []
    v = x
    while v != -1:
        chain_x.append(v)
        v = parent[v]
    on_x = set(chain_x)
    chain_y = []
    v = y
    while v not in on_x:
        chain_y.append(v)
        v = parent[v]
    meet = v
    cut = chain_x.index(meet)
    cycle = chain_x[: cut + 1] + list(reversed(chain_y))
    return CycleWitness(tuple(cycle))


def girth_with_witness(g: Graph) -> tuple[GirthValue, Optional[CycleWitness]]:
    """Exact girth with a shortest-cycle witness (BFS from every vertex).

    Per root, BFS is truncated at half the current best bound; the minimum
    detection over all roots equals the girth.
    """
    best: GirthValue = INFINITE
    best_witness: Optional[CycleWitness] = None
    for root in range(g.n):
        cap = g.n if isinstance(best, _InfiniteGirth) else (best + 1) // 2
        hit = _bfs_detect(g, root, cap)
        if hit is None:
            continue
        value, x, y, parent, _ = hit
        if isinstance(best, _InfiniteGirth) or value < best:
            witness = _witness_from_detection(x, y, parent)
            witness.validate(g)
            # The trimmed cycle can only be shorter than the detection value.
            best = min(value, witness.length)
            best_witness = witness
        if best == 3:
            break
    return best, best_witness


def girth(g: Graph) -> GirthValue:
    """Length of a shortest cycle of ``g``; :data:`INFINITE` for forests."""
    return girth_with_witness(g)[0]


def find_cycle_up_to(g: Graph, bound: int) -> Optional[CycleWitness]:
    """Any simple cycle of length <= bound, or None.

    Complete: a cycle of length c <= bound is detected from any of its
    vertices by a BFS truncated at depth ceil(c/2).
    """
    if bound < 3:
        raise ValueError("cycle bound must be >= 3")
    cap = (bound + 1) // 2
    for root in range(g.n):
        hit = _bfs_detect(g, root, cap)
        if hit is None:
            continue
        value, x, y, parent, _ = hit
        if value <= bound:
            witness = _witness_from_detection(x, y, parent)
            witness.validate(g)
            if witness.length <= bound:
                return witness
    return None


def _find_c4(g: Graph) -> Optional[CycleWitness]:
    """C4 search by common-neighbor pair counting, O(sum C(d,2))."""
    workload = sum(d * (d - 1) // 2 for d in g.degrees())
    if workload > 400_000:
        pair = _duplicated_pair_numpy(g)
        if pair is None:
            return None
        a, b = pair
        mids = sorted(g.adjacency_sets[a] & g.adjacency_sets[b])
        return CycleWitness((mids[0], a, mids[1], b))
    seen: dict[tuple[int, int], int] = {}
    for u in range(g.n):
        nbrs = g.adjacency[u]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                key = (nbrs[i], nbrs[j])
                other = seen.get(key)
                if other is not None:
                    return CycleWitness((other, key[0], u, key[1]))
                seen[key] = u
    return None


def _duplicated_pair_numpy(g: Graph):
    """Find a neighbor pair shared by two vertices, vectorized for big hosts."""
    import numpy as np

    codes = []
    n = g.n
    for u in range(n):
        nbrs = np.asarray(g.adjacency[u], dtype=np.int64)
        if nbrs.size < 2:
            continue
        ii, jj = np.triu_indices(nbrs.size, k=1)
        codes.append(nbrs[ii] * n + nbrs[jj])
    if not codes:
        return None
    allcodes = np.concatenate(codes)
    uniq, counts = np.unique(allcodes, return_counts=True)
    dup = uniq[counts >= 2]
    if dup.size == 0:
        return None
    code = int(dup[0])
    return code // n, code % n


def _even_cycle_meet_in_middle(g: Graph, half: int) -> Optional[CycleWitness]:
    """Find a C_{2*half} as two internally disjoint length-``half`` paths.

    Enumerates simple paths rooted at the minimum vertex of the candidate
    cycle; sound for any graph, intended for bounds where shorter even
    cycles are already excluded.
    """
    adj = g.adjacency
    for v in range(g.n):
        paths_to: dict[int, list[tuple[tuple[int, ...], frozenset]]] = {}
        stack = [(v, (v,), frozenset())]
        while stack:
            cur, path, interior = stack.pop()
            if len(path) == half + 1:
                w = cur
                inter = interior - {w}
                for other_path, other_inter in paths_to.get(w, ()):
                    if not (inter & other_inter):
                        cycle = path[:-1] + tuple(reversed(other_path[1:]))
                        witness = CycleWitness(cycle)
                        witness.validate(g)
                        return witness
                paths_to.setdefault(w, []).append((path, inter))
                continue
            for nxt in adj[cur]:
                if nxt <= v or nxt in interior:
                    continue
                stack.append((nxt, path + (nxt,), interior | {nxt}))
    return None


def find_short_even_cycle(g: Graph, bound: int) -> Optional[CycleWitness]:
    """Any even cycle of length <= ``bound`` (even, >= 4), or None."""
    if bound < 4 or bound % 2 != 0:
        raise ValueError("even-cycle bound must be an even integer >= 4")
    witness = _find_c4(g)
    if witness is not None:
        return witness
    if bound == 4:
        return None
    if bipartition(g) is not None:
        # every cycle is even; plain short-cycle BFS covers lengths 6..bound
        return find_cycle_up_to(g, bound)
    for half in range(3, bound // 2 + 1):
        witness = _even_cycle_meet_in_middle(g, half)
        if witness is not None:
            return witness
    return None


def check_family_free(g: Graph, fam: ForbiddenFamily) -> Verdict:
    """Certify ``g`` against ``fam``; the single verifier used by every
    extractor and host constructor."""
    if fam.kind == "all":
        witness = find_cycle_up_to(g, fam.bound)
    else:
        witness = find_short_even_cycle(g, fam.bound)
    if witness is None:
        return Verdict(free=True)
    witness.validate(g)
    if not fam.matches(witness.length):
        raise CertificationError(
            f"internal: witness of length {witness.length} outside family "
            f"{fam.describe()}"
        )
    return Verdict(free=False, witness=witness)


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the one-edge-per-line format.

    Two whitespace-separated 0-based vertex ids per line; '#' starts a
    comment line; blank lines ignored; loops and duplicates rejected with
    the offending line number.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_v = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: non-integer vertex in {raw!r}")
        if u < 0 or v < 0:
            raise EdgeListParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise EdgeListParseError(f"line {lineno}: self-loop at {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListParseError(f"line {lineno}: duplicate edge ({u},{v})")
        seen.add(key)
        edges.append(key)
        max_v = max(max_v, u, v)
    return Graph.from_edges(max_v + 1, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"# girthforge edge list: n={g.n} m={g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
