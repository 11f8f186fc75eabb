"""Critical cliques, modules and the modular decomposition tree."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

from .graph import Graph, co_components, connected_components

__all__ = [
    "CriticalCliquePartition",
    "ModuleList",
    "ModuleNode",
    "critical_cliques",
    "is_module",
    "strong_modules",
    "trivially_perfect_modules",
]


@dataclass(frozen=True)
class CriticalCliquePartition:
    """Partition of V into maximal classes of true twins."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def largest(self) -> int:
        return max((len(c) for c in self.classes), default=0)


def critical_cliques(g: Graph) -> CriticalCliquePartition:
    """Group vertices by closed neighborhood.

    Classes are sorted by their smallest member.
    """
    groups: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v] | {v}, []).append(v)
    classes = sorted((tuple(members) for members in groups.values()), key=lambda c: c[0])
    class_of = [0] * g.n
    for i, cls in enumerate(classes):
        for v in cls:
            class_of[v] = i
    return CriticalCliquePartition(tuple(classes), tuple(class_of))


def is_module(g: Graph, m: Iterable[int]) -> bool:
    """True when all members of ``m`` see the same vertices outside ``m``."""
    members = set(m)
    if len(members) <= 1:
        return True
    it = iter(members)
    first = next(it)
    outside = g.adj[first] - members
    return all(g.adj[v] - members == outside for v in it)


def _maximal_modules_avoiding(g: Graph, within: set[int], v: int) -> list[list[int]]:
    """Partition ``within - {v}`` into maximal modules of ``g[within]`` not containing ``v``.

    Partition refinement starting from N(v) and its complement.  Every
    vertex splits the other parts once by its neighborhood; afterwards,
    whenever a part breaks in two, the halves are reconciled against each
    other by scanning only the smaller half's adjacency.
    """
    adj = g.adj
    part_of = [-1] * g.n
    parts: list[set[int]] = []
    for group in (adj[v] & within, within - adj[v] - {v}):
        if group:
            for x in group:
                part_of[x] = len(parts)
            parts.append(set(group))
    events: list[tuple[list[int], list[int]]] = []

    def refine(pivot_hits: Iterable[int], skip: int) -> None:
        groups: dict[int, list[int]] = {}
        for x in pivot_hits:
            pid = part_of[x]
            if pid >= 0 and pid != skip:
                if pid in groups:
                    groups[pid].append(x)
                else:
                    groups[pid] = [x]
        for pid, inside in groups.items():
            whole = parts[pid]
            if len(inside) == len(whole):
                continue
            new_id = len(parts)
            parts.append(set(inside))
            whole.difference_update(inside)
            for x in inside:
                part_of[x] = new_id
            events.append((list(whole), inside))

    for w in sorted(within - {v}):
        refine(adj[w], part_of[w])
    while events:
        first, second = events.pop()
        small, large = (first, second) if len(first) <= len(second) else (second, first)
        large_set = set(large)
        seen_by: dict[int, list[int]] = {}
        for s in small:
            hits = [x for x in adj[s] if x in large_set]
            refine(hits, -1)
            for x in hits:
                seen_by.setdefault(x, []).append(s)
        for x in sorted(seen_by):
            refine(seen_by[x], part_of[x])
    return sorted((sorted(p) for p in parts), key=lambda p: p[0])


def _bits(b: int) -> list[int]:
    out = []
    while b:
        low = b & -b
        out.append(low.bit_length() - 1)
        b ^= low
    return out


def _reach_is_full(out: list[int]) -> list[bool]:
    """For each node of a digraph given by successor bitmasks: does it reach every node?"""
    t = len(out)
    index = [-1] * t
    low = [0] * t
    on_stack = [False] * t
    stack: list[int] = []
    comp = [-1] * t
    comps: list[list[int]] = []
    counter = 0
    for start in range(t):
        if index[start] >= 0:
            continue
        work = [(start, _bits(out[start]), 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            node, succ, pos = work[-1]
            if pos < len(succ):
                work[-1] = (node, succ, pos + 1)
                w = succ[pos]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, _bits(out[w]), 0))
                elif on_stack[w]:
                    low[node] = min(low[node], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(comps)
                    members.append(w)
                    if w == node:
                        break
                comps.append(members)
    # components come out sinks first, so successors are finished before use
    reach = [0] * len(comps)
    for c, members in enumerate(comps):
        acc = 0
        for x in members:
            acc |= (1 << x) | out[x]
        for d in {comp[y] for x in members for y in _bits(out[x])}:
            if d != c:
                acc |= reach[d]
        reach[c] = acc
    full = (1 << t) - 1
    return [reach[comp[x]] == full for x in range(t)]


def _prime_children(g: Graph, members: list[int]) -> list[list[int]]:
    """Maximal strong modules of a connected, co-connected ``g[members]``.

    The parts avoiding ``v`` are modules, so they can be treated as
    single vertices.  Part ``Y`` is forced into any module holding ``v``
    and part ``Z`` when ``Y`` sees ``Z`` differently from ``v``; ``v``'s
    own maximal strong module collects the parts that do not force
    everything.
    """
    within = set(members)
    adj = g.adj
    v = members[0]
    parts = _maximal_modules_avoiding(g, within, v)
    part_of = {x: i for i, p in enumerate(parts) for x in p}

    def mask(vertices: Iterable[int]) -> int:
        acc = 0
        for x in vertices:
            i = part_of.get(x)
            if i is not None:
                acc |= 1 << i
        return acc

    v_mask = mask(adj[v] & within)
    out = [(mask(adj[p[0]] & within) ^ v_mask) & ~(1 << i) for i, p in enumerate(parts)]
    full = _reach_is_full(out)
    mine = [v]
    children = []
    for i, part in enumerate(parts):
        if full[i]:
            children.append(part)
        else:
            mine.extend(part)
    children.append(sorted(mine))
    children.sort(key=lambda c: c[0])
    return children


Kind = Literal["leaf", "parallel", "series", "prime"]


@dataclass
class ModuleNode:
    members: tuple[int, ...]
    kind: Kind
    parent: int
    children: list[int] = field(default_factory=list)
    trivially_perfect: bool = False


@dataclass
class ModuleList:
    """Strong modules organized as the modular decomposition tree.

    ``nodes`` are in preorder (root first, children by smallest member).
    """

    nodes: list[ModuleNode]

    @property
    def modules(self) -> list[tuple[int, ...]]:
        """Every strong module, largest first, ties by smallest member."""
        return [self.nodes[i].members for i in self.by_size()]

    def by_size(self) -> list[int]:
        return sorted(range(len(self.nodes)), key=lambda i: (-len(self.nodes[i].members), self.nodes[i].members[0]))

    def __len__(self) -> int:
        return len(self.nodes)


def strong_modules(g: Graph) -> ModuleList:
    """Modular decomposition of ``g``: all strong modules as a tree.

    Parallel and series nodes come from components and co-components.
    At a prime node the children are obtained from the maximal modules
    avoiding one fixed vertex plus that vertex's own maximal module,
    found by module closure.  Polynomial, not linear.
    """
    nodes: list[ModuleNode] = []
    if g.n == 0:
        return ModuleList(nodes)
    stack: list[tuple[list[int], int]] = [(list(range(g.n)), -1)]
    while stack:
        members, parent = stack.pop()
        idx = len(nodes)
        if len(members) == 1:
            kind: Kind = "leaf"
            children: list[list[int]] = []
        else:
            children = connected_components(g, members)
            kind = "parallel"
            if len(children) == 1:
                children = co_components(g, members)
                kind = "series"
                if len(children) == 1:
                    children = _prime_children(g, members)
                    kind = "prime"
        nodes.append(ModuleNode(tuple(members), kind, parent))
        if parent >= 0:
            nodes[parent].children.append(idx)
        for child in reversed(children):
            stack.append((child, idx))

    # trivially perfect graphs are exactly the cographs without C4, so
    # the flag composes bottom-up over the tree
    for node in reversed(nodes):
        if node.kind == "leaf":
            node.trivially_perfect = True
        elif node.kind == "parallel":
            node.trivially_perfect = all(nodes[c].trivially_perfect for c in node.children)
        elif node.kind == "series":
            kids = [nodes[c] for c in node.children]
            node.trivially_perfect = all(k.trivially_perfect for k in kids) and sum(
                len(k.members) > 1 for k in kids
            ) <= 1
        else:
            node.trivially_perfect = False
    return ModuleList(nodes)


def trivially_perfect_modules(g: Graph, md: ModuleList | None = None) -> list[tuple[int, ...]]:
    """Strong modules other than V inducing trivially perfect graphs, largest first."""
    md = strong_modules(g) if md is None else md
    return [
        md.nodes[i].members
        for i in md.by_size()
        if md.nodes[i].parent >= 0 and md.nodes[i].trivially_perfect
    ]


def parallel_tp_unions(md: ModuleList) -> list[tuple[int, ...]]:
    """Unions of the trivially perfect children of each parallel node.

    Such a union is a trivially perfect module that need not be strong
    (when some sibling is not trivially perfect).  Only unions of at least
    two children that differ from the node itself are returned.
    """
    out = []
    for node in md.nodes:
        if node.kind != "parallel" or node.trivially_perfect:
            continue
        tp_kids = [md.nodes[c] for c in node.children if md.nodes[c].trivially_perfect]
        if len(tp_kids) >= 2:
            out.append(tuple(sorted(v for k in tp_kids for v in k.members)))
    out.sort(key=lambda m: (-len(m), m[0]))
    return out
