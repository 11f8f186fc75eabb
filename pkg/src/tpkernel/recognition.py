"""Recognition of trivially perfect graphs and universal clique decompositions.

A graph is trivially perfect when it has no induced C4 and no induced P4.
Recognition follows the classic degree-ordering argument: sort vertices
by non-increasing degree and hang every vertex below its latest earlier
neighbor.  The graph is trivially perfect exactly when every vertex's
earlier neighbors are its parent plus the parent's earlier neighbors.
When that fails at some vertex, four vertices around the failure form an
induced C4 or P4, found in time proportional to a few degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .graph import Graph, InvalidInputError, connected_components, induced_subgraph, neighborhood_of_set

__all__ = [
    "NotTriviallyPerfectError",
    "Obstruction",
    "UCD",
    "build_ucd",
    "check_nested_family",
    "find_obstruction",
    "is_trivially_perfect",
    "tp_characterization_check",
    "universal_clique",
    "validate_ucd",
]


@dataclass(frozen=True)
class Obstruction:
    """An induced C4 (vertices in cycle order) or P4 (in path order)."""

    kind: Literal["C4", "P4"]
    vertices: tuple[int, int, int, int]

    def expected_pairs(self) -> set[tuple[int, int]]:
        a, b, c, d = self.vertices
        pairs = {(a, b), (b, c), (c, d)}
        if self.kind == "C4":
            pairs.add((d, a))
        return {(min(u, v), max(u, v)) for u, v in pairs}

    def holds_in(self, g: Graph) -> bool:
        """True when the four vertices induce exactly this obstruction in ``g``."""
        vs = self.vertices
        if len(set(vs)) != 4:
            return False
        present = {
            (min(u, v), max(u, v))
            for i, u in enumerate(vs)
            for v in vs[i + 1 :]
            if g.is_edge(u, v)
        }
        return present == self.expected_pairs()


class NotTriviallyPerfectError(InvalidInputError):
    def __init__(self, obstruction: Obstruction):
        super().__init__(f"graph is not trivially perfect: induced {obstruction.kind} {obstruction.vertices}")
        self.obstruction = obstruction


class _Forest:
    """Vertex forest produced by the degree ordering."""

    __slots__ = ("order", "parent", "failure")

    def __init__(self, order: list[int], parent: list[int], failure: Obstruction | None):
        self.order = order
        self.parent = parent
        self.failure = failure


def _four(x: int, p: int, v: int, w: int, g: Graph) -> Obstruction:
    # x-p-v-w is a path with x!~v and p!~w; the closing pair decides the kind
    if g.is_edge(x, w):
        return Obstruction("C4", (x, p, v, w))
    return Obstruction("P4", (x, p, v, w))


def _degree_forest(g: Graph) -> _Forest:
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    parent = [-1] * g.n
    up: list[list[int]] = [[] for _ in range(g.n)]
    for v in order:
        pv = pos[v]
        best = -1
        mine = up[v]
        for u in adj[v]:
            if pos[u] < pv:
                mine.append(u)
                if best < 0 or pos[u] > pos[best]:
                    best = u
        if best < 0:
            continue
        parent[v] = best
        p = best
        # earlier neighbours of v must be exactly p together with p's
        ok = len(mine) == len(up[p]) + 1
        nv = adj[v]
        pp = pos[p]
        missing = next((u for u in up[p] if u not in nv), -1)
        if ok and missing < 0:
            continue
        if missing >= 0:
            # w adjacent to p, earlier than p, not adjacent to v
            w = missing
            x = next((y for y in sorted(nv) if y != p and y not in adj[p]), -1)
            if x >= 0:
                return _Forest(order, parent, _four(x, v, p, w, g))
            # N[v] within N[p] and deg(w) >= deg(p), so w sees something p does not
            np_closed = adj[p] | {p}
            y = next(y for y in sorted(adj[w]) if y not in np_closed)
            return _Forest(order, parent, Obstruction("P4", (y, w, p, v)))
        # some earlier neighbour w of v other than p is not adjacent to p
        w = next(u for u in sorted(nv) if pos[u] < pp and u not in adj[p])
        nv_closed = nv | {v}
        x = next(y for y in sorted(adj[p]) if y not in nv_closed)
        return _Forest(order, parent, _four(x, p, v, w, g))
    return _Forest(order, parent, None)


def find_obstruction(g: Graph) -> Obstruction | None:
    """Return an induced C4 or P4 of ``g``, or None if ``g`` is trivially perfect."""
    obs = _degree_forest(g).failure
    assert obs is None or obs.holds_in(g), obs
    return obs


def is_trivially_perfect(g: Graph) -> bool:
    return _degree_forest(g).failure is None


def universal_clique(g: Graph, within: Iterable[int] | None = None) -> list[int]:
    """Vertices adjacent to every other vertex of ``g`` (or of ``g[within]``)."""
    if within is None:
        return [v for v in range(g.n) if len(g.adj[v]) == g.n - 1]
    s = set(within)
    size = len(s) - 1
    return sorted(v for v in s if len(g.adj[v] & s) == size)


# -- universal clique decompositions ----------------------------------------


@dataclass(frozen=True)
class UCD:
    """Rooted forest of bags partitioning the vertex set.

    Node ids are assigned in preorder; children and roots are ordered by
    the smallest vertex in their subtree.
    """

    bags: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def node_of(self) -> dict[int, int]:
        return {v: t for t, bag in enumerate(self.bags) for v in bag}

    def subtree_nodes(self, t: int) -> list[int]:
        out = [t]
        for s in out:
            out.extend(self.children[s])
        return out

    def subtree_vertices(self, t: int) -> list[int]:
        return sorted(v for s in self.subtree_nodes(t) for v in self.bags[s])

    def ancestors(self, t: int) -> list[int]:
        """Proper ancestors of ``t``, nearest first."""
        out = []
        p = self.parent[t]
        while p >= 0:
            out.append(p)
            p = self.parent[p]
        return out

    def leaves(self) -> list[int]:
        return [t for t in range(self.node_count) if not self.children[t]]

    def root_to_leaf_paths(self, root: int | None = None) -> list[list[int]]:
        starts = self.roots if root is None else (root,)
        paths: list[list[int]] = []
        for r in starts:
            stack = [[r]]
            while stack:
                path = stack.pop()
                kids = self.children[path[-1]]
                if not kids:
                    paths.append(path)
                for c in reversed(kids):
                    stack.append(path + [c])
        return paths

    def relabel(self, mapping: Sequence[int]) -> UCD:
        """Rename vertices through ``mapping[old] = new`` (node structure kept)."""
        bags = tuple(tuple(sorted(mapping[v] for v in bag)) for bag in self.bags)
        return UCD(bags, self.parent, self.children, self.roots)

    def format(self) -> str:
        lines = [
            f"{t} {self.parent[t]} : " + " ".join(map(str, self.bags[t]))
            for t in range(self.node_count)
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def build_ucd(g: Graph) -> UCD:
    """Universal clique decomposition of a trivially perfect graph.

    Disconnected graphs get one tree per connected component.

    Raises:
        NotTriviallyPerfectError: carrying an induced C4/P4 of ``g``.
    """
    forest = _degree_forest(g)
    if forest.failure is not None:
        raise NotTriviallyPerfectError(forest.failure)
    adj = g.adj
    parent = forest.parent
    # group twins hanging in a chain; N[v] == N[parent] iff degrees match
    bag_of = [-1] * g.n
    members: list[list[int]] = []
    bag_parent: list[int] = []
    for v in forest.order:
        p = parent[v]
        if p >= 0 and len(adj[p]) == len(adj[v]):
            bag_of[v] = bag_of[p]
            members[bag_of[v]].append(v)
            continue
        bag_of[v] = len(members)
        members.append([v])
        bag_parent.append(bag_of[p] if p >= 0 else -1)

    count = len(members)
    kids: list[list[int]] = [[] for _ in range(count)]
    tops = []
    for b in range(count):
        if bag_parent[b] >= 0:
            kids[bag_parent[b]].append(b)
        else:
            tops.append(b)
    # children are created after their parents, so a reverse sweep sees subtrees first
    low = [min(m) for m in members]
    for b in range(count - 1, -1, -1):
        pb = bag_parent[b]
        if pb >= 0 and low[b] < low[pb]:
            low[pb] = low[b]
    for ks in kids:
        ks.sort(key=lambda b: low[b])
    tops.sort(key=lambda b: low[b])

    new_id = [-1] * count
    preorder: list[int] = []
    stack = list(reversed(tops))
    while stack:
        b = stack.pop()
        new_id[b] = len(preorder)
        preorder.append(b)
        stack.extend(reversed(kids[b]))
    bags = tuple(tuple(sorted(members[b])) for b in preorder)
    par = tuple(new_id[bag_parent[b]] if bag_parent[b] >= 0 else -1 for b in preorder)
    children = tuple(tuple(new_id[c] for c in kids[b]) for b in preorder)
    roots = tuple(new_id[b] for b in tops)
    return UCD(bags, par, children, roots)


def validate_ucd(g: Graph, d: UCD) -> bool:
    """Check both defining conditions of a UCD literally.

    Besides the forest being well formed and the bags partitioning V:
    edges only join bags on a common root-to-leaf path, and every bag is
    exactly the universal clique of the union of its subtree's bags.
    """
    count = d.node_count
    if len(d.parent) != count or len(d.children) != count:
        return False
    seen: dict[int, int] = {}
    for t, bag in enumerate(d.bags):
        if not bag:
            return False
        for v in bag:
            if not 0 <= v < g.n or v in seen:
                return False
            seen[v] = t
    if len(seen) != g.n:
        return False
    for t in range(count):
        for c in d.children[t]:
            if not 0 <= c < count or d.parent[c] != t:
                return False
        p = d.parent[t]
        if p >= 0 and t not in d.children[p]:
            return False
        if (p < 0) != (t in d.roots):
            return False

    # Euler intervals; also rejects cycles because every node must be reached once
    tin = [-1] * count
    tout = [-1] * count
    clock = 0
    for r in d.roots:
        stack: list[tuple[int, bool]] = [(r, False)]
        while stack:
            t, done = stack.pop()
            if done:
                tout[t] = clock
                continue
            if tin[t] >= 0:
                return False
            tin[t] = clock
            clock += 1
            stack.append((t, True))
            for c in reversed(d.children[t]):
                stack.append((c, False))
    if clock != count:
        return False

    def related(s: int, t: int) -> bool:
        return (tin[s] <= tin[t] and tout[t] <= tout[s]) or (tin[t] <= tin[s] and tout[s] <= tout[t])

    for u, v in g.edges():
        if not related(seen[u], seen[v]):
            return False

    by_tin = sorted(range(count), key=lambda t: tin[t])
    for t in range(count):
        sub = by_tin[tin[t] : tout[t]]
        w = {v for s in sub for v in d.bags[s]}
        if set(universal_clique(g, w)) != set(d.bags[t]):
            return False
    return True


# -- nested families and the maximal-clique characterization -----------------


def check_nested_family(sets: Iterable[Iterable[int]]) -> bool:
    """True when every two members are comparable under inclusion."""
    family = sorted((frozenset(s) for s in sets), key=len)
    return all(a <= b for a, b in zip(family, family[1:]))


def tp_characterization_check(g: Graph, s: Iterable[int]) -> bool:
    """Evaluate the maximal-clique characterization of trivial perfection.

    With ``S`` a maximal clique and ``K_1..K_r`` the components of
    ``G - S``, the graph is trivially perfect iff every ``G[S + K_i]`` is,
    the sets ``N(K_i)`` are pairwise nested, and every ``K_i`` is complete
    to its own neighborhood.

    Raises:
        InvalidInputError: if ``s`` is not a maximal clique of ``g``.
    """
    clique = set(s)
    if not clique or any(not 0 <= v < g.n for v in clique) or not g.is_clique(clique):
        raise InvalidInputError("expected a maximal clique")
    outside = [v for v in range(g.n) if v not in clique]
    if any(clique <= g.adj[v] for v in outside):
        raise InvalidInputError("clique is not maximal")
    comps = connected_components(g, outside)
    nbhds = [neighborhood_of_set(g, comp) for comp in comps]
    for comp, nb in zip(comps, nbhds):
        sub, _ = induced_subgraph(g, clique | set(comp))
        if not is_trivially_perfect(sub):
            return False
        if any(not nb <= g.adj[u] for u in comp):
            return False
    return check_nested_family(nbhds)
