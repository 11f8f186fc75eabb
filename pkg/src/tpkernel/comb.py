"""Combs: a clique shaft of twin classes with nested trivially perfect teeth.

A comb ``(C, R)`` has its shaft ``C`` split into classes ``C_1..C_l`` and
its teeth ``R`` into nonempty, pairwise non-adjacent trivially perfect
modules ``R_1..R_l``, where ``C_i`` sees exactly the teeth ``R_i..R_l``
and ``R_i`` sees exactly the shaft classes ``C_1..C_i``.  Outside the
comb, every tooth vertex sees the same set ``vp`` and every shaft vertex
sees ``vp`` plus a further set ``vf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomposition import ModuleList, critical_cliques, is_module, parallel_tp_unions, strong_modules
from .graph import Graph, InvalidInputError, connected_components, induced_subgraph, neighborhood_of_set
from .matching import max_anti_matching
from .recognition import UCD, build_ucd, is_trivially_perfect, universal_clique

__all__ = [
    "Comb",
    "build_comb_small_antimatching",
    "canonical_comb",
    "comb_from_ucd_path",
    "enumerate_reducible_combs",
    "validate_comb",
]


@dataclass(frozen=True)
class Comb:
    shaft: tuple[tuple[int, ...], ...]
    teeth: tuple[tuple[int, ...], ...]
    vp: frozenset[int] = frozenset()
    vf: frozenset[int] = frozenset()

    @property
    def length(self) -> int:
        return len(self.shaft)

    @property
    def shaft_vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.shaft for v in c)

    @property
    def teeth_vertices(self) -> frozenset[int]:
        return frozenset(v for r in self.teeth for v in r)

    @property
    def vertices(self) -> frozenset[int]:
        return self.shaft_vertices | self.teeth_vertices

    @property
    def is_degenerate(self) -> bool:
        """Shaft-only structure (some tooth empty); never a valid comb."""
        return not self.teeth or any(not r for r in self.teeth)

    def key(self) -> tuple:
        return (self.shaft, self.teeth)

    def relabel(self, mapping: Sequence[int] | dict[int, int]) -> Comb:
        def tr(vs: Iterable[int]) -> tuple[int, ...]:
            return tuple(sorted(mapping[v] for v in vs))

        return Comb(
            tuple(tr(c) for c in self.shaft),
            tuple(tr(r) for r in self.teeth),
            frozenset(tr(self.vp)),
            frozenset(tr(self.vf)),
        )

    def format(self) -> str:
        def row(vs: Iterable[int]) -> str:
            return " ".join(map(str, sorted(vs)))

        lines = [f"SHAFT {i + 1}: {row(c)}" for i, c in enumerate(self.shaft)]
        lines += [f"TOOTH {i + 1}: {row(r)}" for i, r in enumerate(self.teeth)]
        lines.append(f"VP: {row(self.vp)}")
        lines.append(f"VF: {row(self.vf)}")
        return "\n".join(lines) + "\n"


def validate_comb(g: Graph, cb: Comb) -> bool:
    """Check every comb condition literally against ``g``."""
    l = cb.length
    if l == 0 or len(cb.teeth) != l or cb.is_degenerate:
        return False
    if any(not c for c in cb.shaft):
        return False
    shaft = cb.shaft_vertices
    teeth = cb.teeth_vertices
    if sum(map(len, cb.shaft)) != len(shaft) or sum(map(len, cb.teeth)) != len(teeth):
        return False
    if not shaft.isdisjoint(teeth):
        return False
    comb = shaft | teeth
    if any(not 0 <= v < g.n for v in comb):
        return False
    if not comb.isdisjoint(cb.vp) or not comb.isdisjoint(cb.vf) or not cb.vp.isdisjoint(cb.vf):
        return False
    adj = g.adj

    if not g.is_clique(shaft):
        return False
    # shaft classes are exactly the true-twin classes of g restricted to C
    closed = {v: adj[v] | {v} for v in shaft}
    for cell in cb.shaft:
        ref = closed[cell[0]]
        if any(closed[v] != ref for v in cell):
            return False
    for i, ci in enumerate(cb.shaft):
        for cj in cb.shaft[i + 1 :]:
            if closed[ci[0]] == closed[cj[0]]:
                return False

    for i, tooth in enumerate(cb.teeth):
        members = set(tooth)
        if not is_module(g, members):
            return False
        sub, _ = induced_subgraph(g, members)
        if not is_trivially_perfect(sub):
            return False
        # no edges from this tooth into any other tooth
        for v in tooth:
            if (adj[v] & teeth) - members:
                return False

    prefix: set[int] = set()
    suffixes: list[frozenset[int]] = []
    acc: set[int] = set()
    for tooth in reversed(cb.teeth):
        acc |= set(tooth)
        suffixes.append(frozenset(acc))
    suffixes.reverse()
    for i in range(l):
        prefix |= set(cb.shaft[i])
        if neighborhood_of_set(g, cb.shaft[i]) & teeth != suffixes[i]:
            return False
        if neighborhood_of_set(g, cb.teeth[i]) & shaft != prefix:
            return False

    outer_shaft = cb.vp | cb.vf
    for x in shaft:
        if adj[x] - comb != outer_shaft:
            return False
    for y in teeth:
        if adj[y] - comb != cb.vp:
            return False
    return True


def canonical_comb(g: Graph, shaft: Iterable[int], teeth: Iterable[int]) -> Comb | None:
    """Recover the ordered partitions and outside sets from the shaft and teeth alone.

    Returns None when the two sets cannot carry a comb structure.  The
    result still has to pass :func:`validate_comb`.
    """
    c_set = frozenset(shaft)
    r_set = frozenset(teeth)
    if not c_set or not r_set:
        return None
    adj = g.adj
    groups: dict[frozenset[int], list[int]] = {}
    for v in sorted(c_set):
        groups.setdefault(adj[v] | {v}, []).append(v)
    cells = sorted(groups.values(), key=lambda c: (-len(adj[c[0]] & r_set), c[0]))
    position = {v: i for i, cell in enumerate(cells) for v in cell}
    buckets: list[list[int]] = [[] for _ in cells]
    for y in sorted(r_set):
        seen = adj[y] & c_set
        deepest = max((position[v] for v in seen), default=-1)
        if deepest < 0 or sum(len(cells[i]) for i in range(deepest + 1)) != len(seen):
            return None
        buckets[deepest].append(y)
    comb = c_set | r_set
    first_tooth = next(iter(sorted(r_set)))
    vp = adj[first_tooth] - comb
    vf = (adj[cells[0][0]] - comb) - vp
    return Comb(tuple(tuple(c) for c in cells), tuple(tuple(b) for b in buckets), frozenset(vp), frozenset(vf))


def _outside_sets(g: Graph, shaft: Sequence[Sequence[int]], teeth: Sequence[Sequence[int]]) -> tuple[frozenset[int], frozenset[int]]:
    comb = {v for c in shaft for v in c} | {v for r in teeth for v in r}
    y = next(v for r in teeth for v in r)
    vp = g.adj[y] - comb
    vf = (g.adj[shaft[0][0]] - comb) - vp
    return frozenset(vp), frozenset(vf)


def comb_from_ucd_path(g: Graph, d: UCD, path: Sequence[int]) -> Comb:
    """Comb read off a top-down chain of UCD nodes.

    The shaft is the bags along the path; tooth ``i`` collects the subtrees
    hanging off node ``i`` away from the path (all subtrees at the last
    node).  A node whose tooth would be empty is merged into the next shaft
    cell when the two bags are true twins; otherwise the path is cut there
    and the cut-off part joins the previous tooth.  ``vp`` and ``vf`` are
    read from ``g``, so ``d`` may decompose just a module of ``g``.

    Raises:
        InvalidInputError: if ``path`` is not a chain or no nonempty tooth survives.
    """
    if not path:
        raise InvalidInputError("empty path")
    for a, b in zip(path, path[1:]):
        if d.parent[b] != a:
            raise InvalidInputError(f"nodes {a} -> {b} are not parent and child")
    if any(not 0 <= t < d.node_count for t in path):
        raise InvalidInputError("node id out of range")

    cells: list[list[int]] = []
    teeth: list[list[int]] = []
    carry: list[int] = []
    for i, t in enumerate(path):
        nxt = path[i + 1] if i + 1 < len(path) else None
        tooth = [v for c in d.children[t] if c != nxt for v in d.subtree_vertices(c)]
        cell = carry + list(d.bags[t])
        carry = []
        if tooth:
            cells.append(cell)
            teeth.append(tooth)
            continue
        if nxt is not None:
            here = g.adj[cell[0]] | {cell[0]}
            there = g.adj[d.bags[nxt][0]] | {d.bags[nxt][0]}
            if here == there:
                carry = cell
                continue
        # cut: this node and everything below it join the previous tooth
        if not teeth:
            raise InvalidInputError("path yields no nonempty tooth")
        teeth[-1].extend(d.subtree_vertices(t))
        break

    shaft_t = tuple(tuple(sorted(c)) for c in cells)
    teeth_t = tuple(tuple(sorted(r)) for r in teeth)
    vp, vf = _outside_sets(g, shaft_t, teeth_t)
    comb = Comb(shaft_t, teeth_t, vp, vf)
    if not validate_comb(g, comb):
        raise InvalidInputError("path does not induce a comb of the graph")
    return comb


def build_comb_small_antimatching(g: Graph, within: Iterable[int] | None = None) -> Comb:
    """Comb covering a connected trivially perfect (sub)graph with few teeth vertices.

    Peels universal cliques: at every step at most one component of the
    remainder exceeds the maximum anti-matching size ``alpha``; the others
    become the current tooth and peeling continues inside the big one.
    When no component is big, all of them form the last tooth.  The teeth
    hold at most ``4 * alpha`` vertices.

    If the last peeled set leaves nothing behind (the innermost part is a
    clique), one of its vertices is turned into the last tooth so that
    every tooth stays nonempty.  A clique input yields a degenerate comb
    with an empty tooth.

    Raises:
        InvalidInputError: if ``g[within]`` is disconnected or not trivially perfect.
    """
    members = sorted(range(g.n) if within is None else set(within))
    if not members:
        raise InvalidInputError("empty vertex set")
    sub, _ = induced_subgraph(g, members)
    if len(connected_components(sub)) != 1:
        raise InvalidInputError("graph must be connected")
    if not is_trivially_perfect(sub):
        raise InvalidInputError("graph must be trivially perfect")

    alpha = len(max_anti_matching(g, members))
    current = set(members)
    shaft: list[list[int]] = []
    teeth: list[list[int]] = []
    while True:
        peel = universal_clique(g, current)
        rest = current - set(peel)
        comps = connected_components(g, rest)
        big = [c for c in comps if len(c) > alpha]
        shaft.append(peel)
        if not big:
            teeth.append(sorted(rest))
            break
        assert len(big) == 1
        teeth.append(sorted(rest - set(big[0])))
        current = set(big[0])

    if not teeth[-1] and alpha > 0:
        last = shaft[-1]
        teeth[-1] = [last.pop()]
    shaft_t = tuple(tuple(c) for c in shaft)
    teeth_t = tuple(tuple(r) for r in teeth)
    if not teeth_t[-1]:
        return Comb(shaft_t, teeth_t, neighborhood_of_set(g, members), frozenset())
    vp, vf = _outside_sets(g, shaft_t, teeth_t)
    return Comb(shaft_t, teeth_t, vp, vf)


# -- enumeration ---------------------------------------------------------------


def _module_combs(g: Graph, module: Sequence[int]) -> list[Comb]:
    out = []
    for comp in connected_components(g, module):
        if len(comp) < 2 or g.is_clique(comp):
            continue
        cb = build_comb_small_antimatching(g, comp)
        if validate_comb(g, cb):
            out.append(cb)
        sub, back = induced_subgraph(g, comp)
        d = build_ucd(sub).relabel(back)
        for path in d.root_to_leaf_paths():
            try:
                out.append(comb_from_ucd_path(g, d, path))
            except InvalidInputError:
                continue
    return out


def _tooth_fits(g: Graph, tooth: frozenset[int], shaft: set[int], vp: frozenset[int] | None) -> frozenset[int] | None:
    """Outside neighborhood ``vp`` of ``tooth`` if it can extend the chain, else None."""
    if not tooth or not tooth.isdisjoint(shaft):
        return None
    # cheap rejection on one vertex before the full module test
    probe = g.adj[min(tooth)] - tooth
    if not shaft <= probe or (vp is not None and probe - shaft != vp):
        return None
    if not is_module(g, tooth):
        return None
    outside = neighborhood_of_set(g, tooth)
    if not shaft <= outside:
        return None
    mine = outside - shaft
    if vp is not None and mine != vp:
        return None
    sub, _ = induced_subgraph(g, tooth)
    if not is_trivially_perfect(sub):
        return None
    return frozenset(mine)


def _last_tooth(g: Graph, shaft: set[int], teeth: set[int], vp: frozenset[int], bottom: frozenset[int]) -> list[int]:
    """Largest final tooth under the deepest shaft class, possibly empty."""
    frame = shaft | vp
    pool = set(bottom) - shaft - teeth - vp
    while True:
        allowed = frame | pool
        keep = {y for y in pool if g.adj[y] <= allowed}
        if keep == pool:
            break
        pool = keep
    chosen: list[int] = []
    for comp in connected_components(g, pool):
        if all(g.adj[y] - set(comp) == frame for y in comp):
            sub, _ = induced_subgraph(g, comp)
            if is_trivially_perfect(sub):
                chosen.extend(comp)
    return sorted(chosen)


def _chain_combs(g: Graph) -> list[Comb]:
    """Combs grown greedily along chains of twin classes with nested neighborhoods.

    From a seed class, repeatedly step to the class with the largest
    closed neighborhood strictly inside the current one whose difference
    is a usable tooth.  Seeds are tried from the largest neighborhood
    down, and classes already reached from an earlier seed are skipped.
    """
    cc = critical_cliques(g)
    classes = cc.classes
    closed = [g.adj[c[0]] | {c[0]} for c in classes]
    bits = [sum(1 << v for v in nb) for nb in closed]
    order = sorted(range(len(classes)), key=lambda i: (-len(closed[i]), classes[i][0]))
    adj_bits: dict[int, int] = {}

    def neighbors_mask(y: int) -> int:
        if y not in adj_bits:
            adj_bits[y] = sum(1 << w for w in g.adj[y])
        return adj_bits[y]

    reached: set[int] = set()
    out: list[Comb] = []
    for seed in order:
        if seed in reached:
            continue
        chain = [seed]
        shaft = set(classes[seed])
        shaft_mask = sum(1 << v for v in shaft)
        teeth: list[frozenset[int]] = []
        union_mask = 0
        vp: frozenset[int] | None = None
        vp_mask = 0
        while True:
            cur = chain[-1]
            ncur = closed[cur]
            cands = {cc.class_of[v] for v in ncur} - set(chain)
            above = bits[cur]
            ranked = sorted(
                (j for j in cands if bits[j] | above == above and bits[j] != above),
                key=lambda j: (-len(closed[j]), classes[j][0]),
            )
            step = None
            for j in ranked:
                tooth_mask = above & ~bits[j]
                if not tooth_mask or tooth_mask & union_mask:
                    continue
                # one tooth vertex must already see the whole shaft and exactly vp besides
                y = (tooth_mask & -tooth_mask).bit_length() - 1
                seen = neighbors_mask(y) & ~tooth_mask
                if seen & shaft_mask != shaft_mask:
                    continue
                if vp is not None and seen & ~shaft_mask != vp_mask:
                    continue
                tooth = frozenset(ncur - closed[j])
                got = _tooth_fits(g, tooth, shaft, vp)
                if got is not None:
                    step = (j, tooth, tooth_mask, got)
                    break
            if step is None:
                break
            j, tooth, tooth_mask, got = step
            if vp is None:
                vp = got
                vp_mask = sum(1 << v for v in got)
            teeth.append(tooth)
            union_mask |= tooth_mask
            chain.append(j)
            shaft |= set(classes[j])
            shaft_mask |= sum(1 << v for v in classes[j])
        if len(chain) < 2 or vp is None:
            continue
        shaft_cells = [tuple(classes[i]) for i in chain]
        tooth_union = {v for t in teeth for v in t}
        last = _last_tooth(g, shaft, tooth_union, vp, closed[chain[-1]])
        candidates = []
        if last:
            candidates.append((shaft_cells, [tuple(sorted(t)) for t in teeth] + [tuple(last)]))
        if len(chain) >= 3:
            candidates.append((shaft_cells[:-1], [tuple(sorted(t)) for t in teeth]))
        for cells, tth in candidates:
            vp_, vf_ = _outside_sets(g, cells, tth)
            cb = Comb(tuple(cells), tuple(tth), vp_, vf_)
            if validate_comb(g, cb):
                out.append(cb)
                reached.update(chain[1:])
                break
    return out


def enumerate_reducible_combs(g: Graph, k: int | None = None, md: ModuleList | None = None) -> list[Comb]:
    """Validated combs for the shaft and teeth rules to try.

    Two sources: inside every maximal trivially perfect module, the
    peeling comb and the comb of each root-to-leaf path of each
    component's decomposition; elsewhere, combs grown greedily along
    chains of twin classes.  Duplicates are dropped; order is
    deterministic.  ``k`` is accepted for interface symmetry and unused.
    """
    del k
    md = strong_modules(g) if md is None else md
    targets: list[tuple[int, ...]] = []
    for node in md.nodes:
        if not node.trivially_perfect:
            continue
        if node.parent >= 0 and md.nodes[node.parent].trivially_perfect:
            continue
        targets.append(node.members)
    targets.extend(parallel_tp_unions(md))
    out: list[Comb] = []
    seen: set[tuple] = set()
    for module in targets:
        for cb in _module_combs(g, module):
            if cb.key() not in seen:
                seen.add(cb.key())
                out.append(cb)
    for cb in _chain_combs(g):
        if cb.key() not in seen:
            seen.add(cb.key())
            out.append(cb)
    return out
