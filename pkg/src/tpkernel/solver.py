"""Exact decision procedures for trivially perfect editing, deletion and completion."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import EditSet, Graph, InvalidInputError, Pair, apply_edits
from .kernel import Instance
from .recognition import find_obstruction, is_trivially_perfect

__all__ = ["SolveResult", "blow_up", "solve", "solve_bruteforce"]


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    witness: EditSet | None = None

    def format(self, g: Graph) -> str:
        if not self.decision:
            return "NO\n"
        assert self.witness is not None
        lines = ["YES"]
        for u, v in self.witness:
            lines.append(f"{'-' if g.is_edge(u, v) else '+'}{u} {v}")
        return "\n".join(lines) + "\n"


def _allowed(g: Graph, pair: Pair, mode: str) -> bool:
    if mode == "deletion":
        return g.is_edge(*pair)
    if mode == "completion":
        return not g.is_edge(*pair)
    return True


def _toggle(adj: list[set[int]], u: int, v: int) -> None:
    if v in adj[u]:
        adj[u].discard(v)
        adj[v].discard(u)
    else:
        adj[u].add(v)
        adj[v].add(u)


def solve(inst: Instance) -> SolveResult:
    """Bounded search tree: branch on the allowed pairs of one obstruction.

    Each pair is toggled at most once along a branch, so the tree has at
    most ``6^k`` leaves.  Modes filter pairs against the input graph.
    """
    g, mode = inst.graph, inst.mode
    adj = [set(a) for a in g.adj]
    edited: list[Pair] = []
    frozen: set[Pair] = set()

    def search(budget: int) -> bool:
        obs = find_obstruction(Graph._trusted(g.n, tuple(frozenset(a) for a in adj)))
        if obs is None:
            return True
        if budget == 0:
            return False
        vs = sorted(obs.vertices)
        for pair in combinations(vs, 2):
            if pair in frozen or not _allowed(g, pair, mode):
                continue
            frozen.add(pair)
            edited.append(pair)
            _toggle(adj, *pair)
            if search(budget - 1):
                return True
            _toggle(adj, *pair)
            edited.pop()
            frozen.discard(pair)
        return False

    if search(inst.k):
        return SolveResult(True, EditSet.of(edited))
    return SolveResult(False)


def solve_bruteforce(inst: Instance) -> SolveResult:
    """Try every allowed edit set of size at most ``k``, smallest first."""
    g = inst.graph
    pool = [p for p in combinations(range(g.n), 2) if _allowed(g, p, inst.mode)]
    for size in range(min(inst.k, len(pool)) + 1):
        for pairs in combinations(pool, size):
            f = EditSet.of(pairs)
            if is_trivially_perfect(apply_edits(g, f)):
                return SolveResult(True, f)
    return SolveResult(False)


def blow_up(g: Graph, u: int, h: Graph) -> Graph:
    """Replace vertex ``u`` of ``g`` by a copy of ``h`` joined to ``N_g(u)``.

    Vertices of ``g`` other than ``u`` keep their relative order and come
    first; the vertices of ``h`` follow in their own order.
    """
    if not 0 <= u < g.n:
        raise InvalidInputError(f"vertex {u} not in graph")
    rest = [v for v in range(g.n) if v != u]
    pos = {v: i for i, v in enumerate(rest)}
    offset = len(rest)
    outside = [pos[w] for w in g.adj[u]]
    edges = [(pos[a], pos[b]) for a, b in g.edges() if u not in (a, b)]
    edges += [(offset + a, offset + b) for a, b in h.edges()]
    edges += [(w, offset + x) for x in range(h.n) for w in outside]
    return Graph.from_edges(offset + h.n, edges)
