"""Maximum matchings in general graphs, anti-matchings and r-packings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, InvalidInputError, normalize_pair

__all__ = [
    "AntiMatching",
    "Matching",
    "Packing",
    "build_packing",
    "max_anti_matching",
    "maximum_matching",
]


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)


@dataclass(frozen=True)
class AntiMatching:
    """Disjoint pairs of non-adjacent vertices."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)


class _Blossom:
    """Edmonds' augmenting-path search with odd-cycle contraction.

    Works on an adjacency list and a mate array shared with the caller.
    Bookkeeping arrays are reset only on the vertices a search touched,
    so a failed search from a root costs time proportional to its tree.
    """

    def __init__(self, adj: Sequence[Sequence[int]], mate: list[int]):
        n = len(adj)
        self.adj = adj
        self.mate = mate
        self.base = list(range(n))
        self.link = [-1] * n
        self.even = [False] * n
        self.touched: list[int] = []

    def _touch(self, v: int) -> None:
        self.touched.append(v)

    def _reset(self) -> None:
        for v in self.touched:
            self.base[v] = v
            self.link[v] = -1
            self.even[v] = False
        self.touched.clear()

    def _lca(self, a: int, b: int) -> int:
        base, mate, link = self.base, self.mate, self.link
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] < 0:
                break
            a = link[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = link[mate[b]]

    def _mark(self, v: int, top: int, child: int, inside: set[int]) -> None:
        base, mate, link = self.base, self.mate, self.link
        while base[v] != top:
            inside.add(base[v])
            inside.add(base[mate[v]])
            link[v] = child
            child = mate[v]
            v = link[mate[v]]

    def augment_from(self, root: int) -> bool:
        adj, mate, base, link, even = self.adj, self.mate, self.base, self.link, self.even
        even[root] = True
        self._touch(root)
        queue = deque([root])
        try:
            while queue:
                v = queue.popleft()
                for to in adj[v]:
                    if base[v] == base[to] or mate[v] == to:
                        continue
                    if to == root or (mate[to] >= 0 and link[mate[to]] >= 0):
                        top = self._lca(v, to)
                        inside: set[int] = set()
                        self._mark(v, top, to, inside)
                        self._mark(to, top, v, inside)
                        for i in list(self.touched):
                            if base[i] in inside:
                                base[i] = top
                                if not even[i]:
                                    even[i] = True
                                    queue.append(i)
                    elif link[to] < 0:
                        link[to] = v
                        self._touch(to)
                        if mate[to] < 0:
                            self._flip(to)
                            return True
                        nxt = mate[to]
                        even[nxt] = True
                        self._touch(nxt)
                        queue.append(nxt)
            return False
        finally:
            self._reset()

    def _flip(self, v: int) -> None:
        mate, link = self.mate, self.link
        while v >= 0:
            pv = link[v]
            ppv = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = ppv


def _match(adj: Sequence[Sequence[int]], mate: list[int], limit: int | None) -> int:
    n = len(adj)
    size = sum(1 for v in range(n) if mate[v] > v)
    if limit is not None and size >= limit:
        return size
    search = _Blossom(adj, mate)
    for root in range(n):
        if mate[root] < 0 and adj[root]:
            # a root without an augmenting path never gains one later
            if search.augment_from(root):
                size += 1
                if limit is not None and size >= limit:
                    break
    return size


def _greedy(adj: Sequence[Sequence[int]], mate: list[int]) -> None:
    for u in range(len(adj)):
        if mate[u] < 0:
            for v in adj[u]:
                if mate[v] < 0 and v != u:
                    mate[u] = v
                    mate[v] = u
                    break


def maximum_matching(g: Graph, limit: int | None = None) -> Matching:
    """Maximum-cardinality matching of ``g``.

    Vertices are scanned in increasing id order.  With ``limit`` set the
    search stops as soon as ``limit`` pairs are matched (the result is then
    maximum only if it is smaller than ``limit``).
    """
    adj = [sorted(a) for a in g.adj]
    mate = [-1] * g.n
    _greedy(adj, mate)
    _match(adj, mate, limit)
    pairs = tuple((v, mate[v]) for v in range(g.n) if mate[v] > v)
    if limit is not None:
        pairs = pairs[:limit]
    return Matching(pairs)


def max_anti_matching(g: Graph, m: Iterable[int] | None = None, limit: int | None = None) -> AntiMatching:
    """Maximum anti-matching of ``g[m]``: a maximum matching of its complement.

    A greedy pass runs first.  If it is maximal but short, every unmatched
    pair of ``m`` is an edge, so the complement's edges all touch the few
    greedily matched vertices and the exact search runs on that sparse
    complement only.
    """
    members = sorted(range(g.n) if m is None else set(m))
    member_set = set(members)
    adj = g.adj
    free = set(members)
    mate: dict[int, int] = {}
    found = 0
    for u in members:
        if u not in free:
            continue
        free.discard(u)
        cand = free - adj[u]
        if cand:
            v = min(cand)
            free.discard(v)
            mate[u] = v
            mate[v] = u
            found += 1
            if limit is not None and found >= limit:
                break
        # otherwise u sees every free vertex and stays unmatched
    if limit is not None and found >= limit:
        pairs = tuple(sorted((min(u, v), max(u, v)) for u, v in mate.items() if u < v))
        return AntiMatching(pairs[:limit])

    index = {v: i for i, v in enumerate(members)}
    local_adj: list[set[int]] = [set() for _ in members]
    for u in mate:
        iu = index[u]
        for v in member_set - adj[u]:
            if v != u:
                iv = index[v]
                local_adj[iu].add(iv)
                local_adj[iv].add(iu)
    sorted_adj = [sorted(a) for a in local_adj]
    local_mate = [-1] * len(members)
    for u, v in mate.items():
        local_mate[index[u]] = index[v]
    _match(sorted_adj, local_mate, limit)
    pairs = tuple(
        sorted(
            (members[i], members[local_mate[i]])
            for i in range(len(members))
            if local_mate[i] > i
        )
    )
    if limit is not None:
        pairs = pairs[:limit]
    return AntiMatching(pairs)


@dataclass(frozen=True)
class Packing:
    """Shortest prefix ``C_1..C_p`` of an ordered set list reaching ``r`` vertices."""

    prefix: tuple[tuple[int, ...], ...]
    vertex_total: int

    @property
    def length(self) -> int:
        return len(self.prefix)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for s in self.prefix for v in s)


def build_packing(sets: Sequence[Iterable[int]], r: int) -> Packing | None:
    """The r-packing of ``sets`` in the given order, or None if the total is below ``r``.

    Raises:
        InvalidInputError: on overlapping or empty input sets, or ``r < 1``.
    """
    if r < 1:
        raise InvalidInputError("r must be at least 1")
    seen: set[int] = set()
    frozen: list[tuple[int, ...]] = []
    for s in sets:
        members = tuple(sorted(set(s)))
        if not members:
            raise InvalidInputError("packing input sets must be nonempty")
        if not seen.isdisjoint(members):
            raise InvalidInputError("packing input sets must be pairwise disjoint")
        seen.update(members)
        frozen.append(members)
    total = 0
    for i, members in enumerate(frozen):
        total += len(members)
        if total >= r:
            return Packing(tuple(frozen[: i + 1]), total)
    return None


def anti_matching_pairs_valid(g: Graph, pairs: Iterable[tuple[int, int]]) -> bool:
    used: set[int] = set()
    for u, v in pairs:
        normalize_pair(u, v)
        if g.is_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True
