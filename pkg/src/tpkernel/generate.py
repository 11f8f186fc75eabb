"""Seeded random trivially perfect graphs and planted editing instances.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded
with the integer seed, so the same spec gives the same graph on every
run and platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .graph import EditSet, Graph, InvalidInputError, apply_edits, format_edge_list
from .kernel import MODES, Instance

__all__ = ["GenSpec", "PlantedInstance", "gen_tp_graph", "graph_from_forest", "plant_instance"]


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a random rooted forest of bags and of the planted edits.

    Each new forest node starts a new tree with probability ``root_prob``
    and otherwise hangs below one of the ``parent_window`` most recent
    nodes (a small window gives deep trees, a large one bushy trees).
    Bag sizes are uniform in ``1..bag_max``.
    """

    seed: int
    n: int
    root_prob: float = 0.05
    parent_window: int = 8
    bag_max: int = 3
    r: int = 0
    mode: str = "editing"

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInputError("n must be nonnegative")
        if not 0.0 <= self.root_prob <= 1.0:
            raise InvalidInputError("root_prob must lie in [0, 1]")
        if self.parent_window < 1 or self.bag_max < 1:
            raise InvalidInputError("parent_window and bag_max must be positive")
        if not 0 <= self.r <= self.n * (self.n - 1) // 2:
            raise InvalidInputError("r must lie in [0, n(n-1)/2]")
        if self.mode not in MODES:
            raise InvalidInputError(f"unknown mode {self.mode!r}")


def graph_from_forest(parent: Sequence[int], bags: Sequence[Sequence[int]], n: int) -> Graph:
    """Graph in which each vertex sees its own bag and every ancestor bag.

    ``parent[t]`` is the parent node of ``t`` (``-1`` for roots) and must
    precede ``t``.
    """
    edges: list[tuple[int, int]] = []
    above: list[list[int]] = []
    for t, bag in enumerate(bags):
        p = parent[t]
        if p >= t:
            raise InvalidInputError("parents must precede their children")
        anc = [] if p < 0 else above[p] + list(bags[p])
        above.append(anc)
        for i, u in enumerate(bag):
            edges.extend((u, v) for v in bag[i + 1 :])
            edges.extend((u, a) for a in anc)
    return Graph.from_edges(n, edges)


def _forest(spec: GenSpec, rng: random.Random) -> tuple[list[int], list[list[int]]]:
    parent: list[int] = []
    bags: list[list[int]] = []
    placed = 0
    while placed < spec.n:
        t = len(bags)
        if t == 0 or rng.random() < spec.root_prob:
            parent.append(-1)
        else:
            parent.append(rng.randrange(max(0, t - spec.parent_window), t))
        size = min(rng.randint(1, spec.bag_max), spec.n - placed)
        bags.append(list(range(placed, placed + size)))
        placed += size
    return parent, bags


def gen_tp_graph(spec: GenSpec) -> Graph:
    """Random trivially perfect graph on ``spec.n`` vertices with shuffled ids."""
    rng = random.Random(spec.seed)
    return _gen(spec, rng)


def _gen(spec: GenSpec, rng: random.Random) -> Graph:
    parent, bags = _forest(spec, rng)
    label = list(range(spec.n))
    rng.shuffle(label)
    bags = [[label[v] for v in bag] for bag in bags]
    return graph_from_forest(parent, bags, spec.n)


@dataclass(frozen=True)
class PlantedInstance:
    instance: Instance
    planted: EditSet
    base: Graph

    def to_edge_list(self) -> str:
        comments = [f"mode {self.instance.mode}"]
        comments += [f"planted: {u} {v}" for u, v in self.planted]
        comments.append("k equals the planted count; the optimum may be smaller")
        return format_edge_list(self.instance.graph, self.instance.k, comments)


def plant_instance(spec: GenSpec) -> PlantedInstance:
    """Random trivially perfect graph perturbed by ``spec.r`` distinct pair toggles.

    In deletion mode only non-edges are toggled (so deleting them repairs
    the graph); in completion mode only edges.  The instance has
    ``k = r`` and the planted set is a solution.

    Raises:
        InvalidInputError: if fewer than ``r`` pairs are eligible.
    """
    rng = random.Random(spec.seed)
    base = _gen(spec, rng)
    n = spec.n
    if spec.mode == "deletion":
        pool_size = n * (n - 1) // 2 - base.edge_count
    elif spec.mode == "completion":
        pool_size = base.edge_count
    else:
        pool_size = n * (n - 1) // 2
    if pool_size < spec.r:
        raise InvalidInputError(f"only {pool_size} eligible pairs for {spec.r} edits")

    chosen: list[tuple[int, int]] = []
    if 2 * spec.r > pool_size:
        pool = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if spec.mode == "editing" or base.is_edge(u, v) == (spec.mode == "completion")
        ]
        chosen = rng.sample(pool, spec.r)
    else:
        seen: set[tuple[int, int]] = set()
        while len(chosen) < spec.r:
            u, v = sorted(rng.sample(range(n), 2))
            if (u, v) in seen:
                continue
            if spec.mode == "deletion" and base.is_edge(u, v):
                continue
            if spec.mode == "completion" and not base.is_edge(u, v):
                continue
            seen.add((u, v))
            chosen.append((u, v))
    planted = EditSet.of(chosen)
    g = apply_edits(base, planted)
    return PlantedInstance(Instance(g, spec.r, spec.mode), planted, base)
