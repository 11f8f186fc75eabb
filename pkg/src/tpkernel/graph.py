"""Undirected simple graphs over dense integer vertex ids."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

__all__ = [
    "EditSet",
    "Graph",
    "InvalidInputError",
    "apply_edits",
    "complement",
    "connected_components",
    "induced_subgraph",
    "maximal_cliques",
    "neighborhood_of_set",
    "normalize_pair",
    "read_edge_list",
    "parse_edge_list",
    "format_edge_list",
]

Pair = tuple[int, int]


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


def normalize_pair(u: int, v: int) -> Pair:
    if u == v:
        raise InvalidInputError(f"loop pair ({u}, {v})")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph on vertices ``0 .. n-1``.

    Adjacency is kept as one frozenset per vertex.  Sorted views are
    produced on demand by :meth:`neighbors_sorted`; all iteration that
    can leak into output goes through sorted views so results do not
    depend on set ordering.
    """

    __slots__ = ("_n", "_adj", "_m", "_hash")

    def __init__(self, n: int, adjacency: Iterable[Iterable[int]]):
        adj = tuple(frozenset(a) for a in adjacency)
        if len(adj) != n:
            raise InvalidInputError(f"expected {n} adjacency rows, got {len(adj)}")
        total = 0
        for u, nb in enumerate(adj):
            if u in nb:
                raise InvalidInputError(f"self-loop at vertex {u}")
            for v in nb:
                if not 0 <= v < n:
                    raise InvalidInputError(f"neighbor {v} of {u} out of range")
                if u not in adj[v]:
                    raise InvalidInputError(f"asymmetric adjacency between {u} and {v}")
            total += len(nb)
        self._n = n
        self._adj = adj
        self._m = total // 2
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, n: int, adj: tuple[frozenset[int], ...], m: int | None = None) -> Graph:
        # Skips validation; callers guarantee symmetry and range.
        g = cls.__new__(cls)
        g._n = n
        g._adj = adj
        g._m = sum(len(a) for a in adj) // 2 if m is None else m
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        if n < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls._trusted(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(n, tuple(frozenset() for _ in range(n)), 0)

    @classmethod
    def complete(cls, n: int) -> Graph:
        every = frozenset(range(n))
        return cls._trusted(n, tuple(every - {u} for u in range(n)))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def neighbors_sorted(self, u: int) -> list[int]:
        return sorted(self._adj[u])

    def closed_neighborhood(self, u: int) -> frozenset[int]:
        return self._adj[u] | {u}

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def is_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[Pair]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u in range(self._n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(vs - {u} <= self._adj[u] for u in vs)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self._adj[u] & vs) for u in vs)

    def add_vertex(self, neighbors: Iterable[int] = ()) -> Graph:
        """Return a copy with one new vertex ``n`` joined to ``neighbors``."""
        nb = frozenset(neighbors)
        for v in nb:
            if not 0 <= v < self._n:
                raise InvalidInputError(f"neighbor {v} out of range")
        new = self._n
        adj = tuple(a | {new} if u in nb else a for u, a in enumerate(self._adj)) + (nb,)
        return Graph._trusted(self._n + 1, adj, self._m + len(nb))

    def remove_vertices(self, removed: Iterable[int]) -> tuple[Graph, list[int]]:
        """Delete ``removed`` and compact ids.

        Returns the new graph and ``kept``, where ``kept[new_id]`` is the
        old id of each surviving vertex.
        """
        gone = set(removed)
        for v in gone:
            if not 0 <= v < self._n:
                raise InvalidInputError(f"vertex {v} out of range")
        kept = [v for v in range(self._n) if v not in gone]
        sub, _ = induced_subgraph(self, kept)
        return sub, kept

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[s]`` with vertices renumbered in increasing old-id order.

    The second element maps new ids to old ids.
    """
    kept = sorted(set(s))
    for v in kept:
        if not 0 <= v < g.n:
            raise InvalidInputError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(kept)}
    keep = index.keys()
    adj = tuple(frozenset(map(index.__getitem__, g.adj[v] & keep)) for v in kept)
    return Graph._trusted(len(kept), adj), kept


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of ``g`` (or of ``g[within]``).

    Each component is a sorted list; components are ordered by their
    smallest member.
    """
    remaining = set(range(g.n)) if within is None else set(within)
    comps: list[list[int]] = []
    adj = g.adj
    while remaining:
        s = remaining.pop()
        comp = [s]
        stack = [s]
        while stack and remaining:
            # intersection walks the smaller side, so dense graphs get cheap as remaining shrinks
            fresh = remaining & adj[stack.pop()]
            if fresh:
                remaining -= fresh
                comp.extend(fresh)
                stack.extend(fresh)
        comp.sort()
        comps.append(comp)
    comps.sort(key=lambda c: c[0])
    return comps


def co_components(g: Graph, within: Iterable[int]) -> list[list[int]]:
    """Connected components of the complement of ``g[within]``."""
    remaining = set(within)
    comps: list[list[int]] = []
    adj = g.adj
    while remaining:
        s = min(remaining)
        remaining.discard(s)
        comp = [s]
        queue = [s]
        for u in queue:
            # everything still unassigned and not adjacent to u joins u's co-component
            far = remaining - adj[u]
            if far:
                remaining &= adj[u]
                comp.extend(far)
                queue.extend(far)
        comp.sort()
        comps.append(comp)
    comps.sort(key=lambda c: c[0])
    return comps


def neighborhood_of_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """External neighborhood ``N(S) = (union of N(v), v in S) minus S``."""
    members = set(s)
    out: set[int] = set()
    for v in members:
        out |= g.adj[v]
    return frozenset(out - members)


def complement(g: Graph) -> Graph:
    every = frozenset(range(g.n))
    adj = tuple(every - a - {u} for u, a in enumerate(g.adj))
    return Graph._trusted(g.n, adj, g.n * (g.n - 1) // 2 - g.edge_count)


def maximal_cliques(g: Graph) -> list[list[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), each sorted."""
    out: list[list[int]] = []
    adj = g.adj

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    if g.n:
        expand([], set(range(g.n)), set())
    out.sort()
    return out


@dataclass(frozen=True)
class EditSet:
    """A set of unordered vertex pairs to toggle.

    Pairs are stored normalized as ``(u, v)`` with ``u < v``.  Whether a
    pair is an addition or a deletion depends on a reference graph; see
    :meth:`additions` and :meth:`deletions`.
    """

    pairs: frozenset[Pair] = field(default_factory=frozenset)

    @classmethod
    def of(cls, pairs: Iterable[Iterable[int]]) -> EditSet:
        out = set()
        for p in pairs:
            u, v = p
            out.add(normalize_pair(u, v))
        return cls(frozenset(out))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        u, v = pair
        return (min(u, v), max(u, v)) in self.pairs

    def additions(self, g: Graph) -> list[Pair]:
        return [p for p in self if not g.is_edge(*p)]

    def deletions(self, g: Graph) -> list[Pair]:
        return [p for p in self if g.is_edge(*p)]

    def affected(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)

    def respects_mode(self, g: Graph, mode: str) -> bool:
        if mode == "deletion":
            return not self.additions(g)
        if mode == "completion":
            return not self.deletions(g)
        return True


def apply_edits(g: Graph, f: EditSet | Iterable[Iterable[int]]) -> Graph:
    """Return ``(V, E symmetric-difference F)``; ``g`` is left untouched."""
    if not isinstance(f, EditSet):
        f = EditSet.of(f)
    if not f.pairs:
        return g
    adj = [set(a) for a in g.adj]
    for u, v in f.pairs:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidInputError(f"pair ({u}, {v}) out of range for n={g.n}")
        if v in adj[u]:
            adj[u].discard(v)
            adj[v].discard(u)
        else:
            adj[u].add(v)
            adj[v].add(u)
    return Graph._trusted(g.n, tuple(frozenset(a) for a in adj))


# -- edge-list text format ---------------------------------------------------
#
#   # comment lines anywhere
#   n m k          (k = -1: no parameter)
#   u v            (m lines, 0 <= u < v < n)


@dataclass
class EdgeListFile:
    graph: Graph
    k: int | None
    comments: list[str]


def parse_edge_list(text: str | TextIO) -> EdgeListFile:
    stream = io.StringIO(text) if isinstance(text, str) else text
    header: list[int] | None = None
    edges: list[Pair] = []
    comments: list[str] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise InvalidInputError(f"line {lineno}: expected integers, got {line!r}") from None
        if header is None:
            if len(nums) != 3:
                raise InvalidInputError(f"line {lineno}: header must be 'n m k'")
            header = nums
            continue
        if len(nums) != 2:
            raise InvalidInputError(f"line {lineno}: edge line must be 'u v'")
        u, v = nums
        if not 0 <= u < v < header[0]:
            raise InvalidInputError(f"line {lineno}: edge ({u}, {v}) violates 0 <= u < v < n")
        edges.append((u, v))
    if header is None:
        raise InvalidInputError("missing 'n m k' header")
    n, m, k = header
    if n < 0 or m < 0 or k < -1:
        raise InvalidInputError("header values out of range")
    if len(edges) != m:
        raise InvalidInputError(f"header announces {m} edges, found {len(edges)}")
    if len(set(edges)) != m:
        raise InvalidInputError("duplicate edge")
    return EdgeListFile(Graph.from_edges(n, edges), None if k == -1 else k, comments)


def read_edge_list(path: str | os.PathLike[str]) -> EdgeListFile:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def format_edge_list(g: Graph, k: int | None = None, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.edge_count} {-1 if k is None else k}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
