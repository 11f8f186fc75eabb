"""Brute-force reference implementations used as test oracles.

Everything here is exponential and deliberately naive: it shares no
code with the package beyond the Graph container.
"""

from __future__ import annotations

import random
from itertools import combinations

from tpkernel.graph import Graph


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def edge(g: Graph, u: int, v: int) -> bool:
    return v in g.adj[u]


def four_vertex_obstructions(g: Graph, within=None):
    """Every 4-subset inducing a C4 or a P4."""
    vs = range(g.n) if within is None else sorted(within)
    for quad in combinations(vs, 4):
        pairs = [(a, b) for a, b in combinations(quad, 2) if edge(g, a, b)]
        if len(pairs) not in (3, 4):
            continue
        deg = {x: 0 for x in quad}
        for a, b in pairs:
            deg[a] += 1
            deg[b] += 1
        degs = sorted(deg.values())
        if degs == [2, 2, 2, 2]:
            yield "C4", quad
        elif degs == [1, 1, 2, 2]:
            yield "P4", quad


def brute_is_tp(g: Graph, within=None) -> bool:
    return next(four_vertex_obstructions(g, within), None) is None


def brute_max_matching(g: Graph) -> int:
    edges = [(u, v) for u, v in combinations(range(g.n), 2) if edge(g, u, v)]
    best = 0

    def go(i: int, used: set[int], size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - i) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                used.update((u, v))
                go(j + 1, used, size + 1)
                used.difference_update((u, v))

    go(0, set(), 0)
    return best


def brute_complement(g: Graph, within=None) -> Graph:
    vs = range(g.n) if within is None else sorted(within)
    idx = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in combinations(vs, 2) if not edge(g, u, v)])


def brute_modules(g: Graph) -> list[frozenset[int]]:
    out = []
    for r in range(1, g.n + 1):
        for s in combinations(range(g.n), r):
            ss = set(s)
            outside = [x for x in range(g.n) if x not in ss]
            if all(len({edge(g, x, y) for y in s}) == 1 for x in outside):
                out.append(frozenset(s))
    return out


def brute_strong_modules(g: Graph) -> set[frozenset[int]]:
    mods = brute_modules(g)
    strong = set()
    for m in mods:
        if all(m <= o or o <= m or not (m & o) for o in mods):
            strong.add(m)
    return strong


def brute_solve(g: Graph, k: int, mode: str) -> bool:
    pool = [
        p
        for p in combinations(range(g.n), 2)
        if mode == "editing" or edge(g, *p) == (mode == "deletion")
    ]
    for size in range(min(k, len(pool)) + 1):
        for f in combinations(pool, size):
            adj = [set(a) for a in g.adj]
            for u, v in f:
                if v in adj[u]:
                    adj[u].discard(v)
                    adj[v].discard(u)
                else:
                    adj[u].add(v)
                    adj[v].add(u)
            if brute_is_tp(Graph(g.n, adj)):
                return True
    return False


def brute_max_anti_matching(g: Graph, within=None) -> int:
    return brute_max_matching(brute_complement(g, within))
