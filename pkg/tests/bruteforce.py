"""Independent brute-force oracles for the test suite.

Everything here recomputes ground truth from first principles (exhaustive
enumeration), sharing no code paths with the library's certified
algorithms beyond the Graph container itself.
"""

from __future__ import annotations

import itertools

from girthforge.graph import Graph


def all_cycles(g: Graph, max_len=None):
    """Every simple cycle (of length <= max_len when given) as a vertex
    tuple, each found once per rotation class (anchored at its minimum
    vertex, smaller second neighbor first)."""
    adj = [set(a) for a in g.adjacency]
    cap = g.n if max_len is None else max_len
    cycles = []
    for start in range(g.n):
        # DFS over simple paths from start using only vertices >= start
        stack = [(start, (start,))]
        while stack:
            cur, path = stack.pop()
            for nxt in adj[cur]:
                if nxt == start and len(path) >= 3:
                    if path[1] < path[-1]:
                        cycles.append(path)
                    continue
                if nxt > start and nxt not in path and len(path) < cap:
                    stack.append((nxt, path + (nxt,)))
    return cycles


def brute_girth(g: Graph, max_len=None):
    """Shortest cycle length by exhaustive bounded enumeration; None if no
    cycle (of length <= max_len when given) exists."""
    lengths = [len(c) for c in all_cycles(g, max_len)]
    return min(lengths) if lengths else None


def brute_shortest_even(g: Graph, bound: int):
    """Shortest even cycle length <= bound, or None."""
    lengths = [len(c) for c in all_cycles(g, bound) if len(c) % 2 == 0]
    return min(lengths) if lengths else None


def has_forbidden(g: Graph, kind: str, bound: int) -> bool:
    for c in all_cycles(g, bound):
        length = len(c)
        if length > bound:
            continue
        if kind == "all" or length % 2 == 0:
            return True
    return False


def brute_ex(g: Graph, kind: str, bound: int) -> int:
    """Maximum family-free subgraph size by subset enumeration, largest
    subsets first."""
    edges = g.edges
    for size in range(g.m, -1, -1):
        for subset in itertools.combinations(range(g.m), size):
            sub = Graph.from_edges(g.n, [edges[i] for i in subset])
            if not has_forbidden(sub, kind, bound):
                return size
    return 0


def brute_max_cut_parts(g: Graph, p: int) -> int:
    """Maximum cross-edge count over all assignments into p parts."""
    best = 0
    for assign in itertools.product(range(p), repeat=g.n):
        cut = sum(1 for u, v in g.edges if assign[u] != assign[v])
        best = max(best, cut)
    return best


def projective_degree_counts(q: int):
    """Degrees in the orthogonality graph on projective points over GF(q),
    recomputed from scratch: normalized nonzero triples, adjacency by dot
    product zero.  Returns {degree: count}."""
    points = []
    seen = set()
    for x in range(q):
        for y in range(q):
            for z in range(q):
                if x == y == z == 0:
                    continue
                for lam in range(1, q):
                    key = (lam * x % q, lam * y % q, lam * z % q)
                    if key in seen:
                        break
                else:
                    seen.add((x, y, z))
                    points.append((x, y, z))
    counts: dict[int, int] = {}
    for i, p1 in enumerate(points):
        deg = 0
        for j, p2 in enumerate(points):
            if i != j and sum(a * b for a, b in zip(p1, p2)) % q == 0:
                deg += 1
        counts[deg] = counts.get(deg, 0) + 1
    return counts
