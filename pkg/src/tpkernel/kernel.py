"""Reduction rules and the exhaustive reduction driver.

Each rule has a ``find_*`` helper returning the vertices it would remove
(empty when it does not apply) and a ``rule*`` wrapper returning the
reduced :class:`Instance` or None.  Instances remember the original id of
every surviving vertex so traces and kernels can be reported in the
caller's ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .comb import Comb, enumerate_reducible_combs, build_comb_small_antimatching, validate_comb
from .decomposition import ModuleList, critical_cliques, is_module, parallel_tp_unions, strong_modules
from .graph import Graph, InvalidInputError, connected_components, format_edge_list, induced_subgraph
from .matching import build_packing, max_anti_matching
from .recognition import is_trivially_perfect

__all__ = [
    "MODES",
    "AuditReport",
    "Instance",
    "ReductionTrace",
    "TraceStep",
    "audit_bounds",
    "reduce_exhaustively",
    "rule1_remove_tp_components",
    "rule2_trim_critical_cliques",
    "rule3_antimatching_module",
    "rule4_shaft",
    "rule5_teeth",
]

MODES = ("editing", "deletion", "completion")


@dataclass(frozen=True)
class Instance:
    """A graph, an edit budget and the kind of edits allowed.

    ``origin[v]`` is the id vertex ``v`` had in the instance this one was
    reduced from; None means the identity.
    """

    graph: Graph
    k: int
    mode: str = "editing"
    origin: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 0:
            raise InvalidInputError(f"k must be a nonnegative integer, got {self.k!r}")
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.origin is not None and len(self.origin) != self.graph.n:
            raise InvalidInputError("origin map length differs from vertex count")

    @property
    def n(self) -> int:
        return self.graph.n

    def original_ids(self) -> Sequence[int]:
        return range(self.graph.n) if self.origin is None else self.origin

    def without(self, removed: Iterable[int]) -> tuple[Instance, list[int]]:
        """Instance minus ``removed`` (current ids) and the kept list ``kept[new] = old``."""
        g, kept = self.graph.remove_vertices(removed)
        ids = self.original_ids()
        return Instance(g, self.k, self.mode, tuple(ids[v] for v in kept)), kept

    def to_edge_list(self) -> str:
        ids = self.original_ids()
        comments = [f"mode {self.mode}", "origin " + " ".join(map(str, ids))]
        return format_edge_list(self.graph, self.k, comments)


@dataclass(frozen=True)
class TraceStep:
    rule: int
    target: str
    removed: tuple[int, ...]
    mapping: tuple[tuple[int, int], ...]

    def format(self) -> str:
        removed = ",".join(map(str, self.removed))
        mapping = ",".join(f"{a}->{b}" for a, b in self.mapping)
        return f"RULE{self.rule} removed={{{removed}}} map=[{mapping}]"


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    final_instance: Instance | None = None

    def rules_fired(self) -> int:
        return len(self.steps)

    def format(self) -> str:
        return "".join(s.format() + "\n" for s in self.steps)

    def replay(self, inst: Instance) -> Instance:
        """Re-apply the recorded removals (in original ids) to ``inst``."""
        cur = inst
        for step in self.steps:
            where = {o: v for v, o in enumerate(cur.original_ids())}
            cur, _ = cur.without(where[o] for o in step.removed)
        return cur


# -- rules -----------------------------------------------------------------------


def find_tp_components(g: Graph) -> list[int]:
    out: list[int] = []
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        if is_trivially_perfect(sub):
            out.extend(comp)
    return sorted(out)


def rule1_remove_tp_components(inst: Instance) -> Instance | None:
    """Remove every connected component that is already trivially perfect."""
    removed = find_tp_components(inst.graph)
    return inst.without(removed)[0] if removed else None


def find_oversized_cliques(g: Graph, k: int) -> list[int]:
    out: list[int] = []
    for cls in critical_cliques(g).classes:
        if len(cls) > k + 1:
            out.extend(cls[k + 1 :])
    return sorted(out)


def rule2_trim_critical_cliques(inst: Instance) -> Instance | None:
    """Shrink every class of true twins to ``k + 1`` vertices, dropping the largest ids."""
    removed = find_oversized_cliques(inst.graph, inst.k)
    return inst.without(removed)[0] if removed else None


def find_antimatching_excess(g: Graph, k: int, m: Iterable[int]) -> list[int]:
    """Vertices of the module ``m`` outside a ``(k+1)``-anti-matching, if one exists.

    Raises:
        InvalidInputError: if ``m`` is not a trivially perfect module.
    """
    members = sorted(set(m))
    if not members or any(not 0 <= v < g.n for v in members):
        raise InvalidInputError("module must be a nonempty set of vertices")
    if not is_module(g, members):
        raise InvalidInputError("vertex set is not a module")
    sub, _ = induced_subgraph(g, members)
    if not is_trivially_perfect(sub):
        raise InvalidInputError("module is not trivially perfect")
    d = max_anti_matching(g, members, limit=k + 1)
    if len(d) < k + 1:
        return []
    keep = d.vertices()
    return [v for v in members if v not in keep]


def rule3_antimatching_module(inst: Instance, m: Iterable[int]) -> Instance | None:
    """Keep only the ``2(k+1)`` endpoints of a large anti-matching inside a trivially perfect module."""
    removed = find_antimatching_excess(inst.graph, inst.k, m)
    return inst.without(removed)[0] if removed else None


def _require_comb(g: Graph, cb: Comb) -> None:
    if not validate_comb(g, cb):
        raise InvalidInputError("not a comb of the graph")


def find_shaft_excess(g: Graph, k: int, cb: Comb) -> list[int]:
    """Shaft vertices strictly between the two end packings of size ``2k+1``."""
    _require_comb(g, cb)
    return _shaft_excess(k, cb)


def _shaft_excess(k: int, cb: Comb) -> list[int]:
    r = 2 * k + 1
    front = build_packing(cb.shaft, r)
    back = build_packing(cb.shaft[::-1], r)
    if front is None or back is None or front.length + back.length > cb.length:
        return []
    middle = cb.shaft[front.length : cb.length - back.length]
    return sorted(v for cell in middle for v in cell)


def rule4_shaft(inst: Instance, cb: Comb) -> Instance | None:
    removed = find_shaft_excess(inst.graph, inst.k, cb)
    return inst.without(removed)[0] if removed else None


def find_teeth_excess(g: Graph, k: int, cb: Comb) -> list[int]:
    """Teeth strictly between the first packing and the two packings taken from the back.

    The first packing runs forward from ``R_1``.  The last runs backward
    from ``R_l`` and ends at some ``R_q``; the middle one runs backward
    from ``R_{q-1}``.  All three must be disjoint.
    """
    _require_comb(g, cb)
    return _teeth_excess(k, cb)


def _teeth_excess(k: int, cb: Comb) -> list[int]:
    r = 2 * k + 1
    teeth = cb.teeth
    l = len(teeth)
    first = build_packing(teeth, r)
    last = build_packing(teeth[::-1], r)
    if first is None or last is None:
        return []
    q = l - last.length  # index of R_q
    middle = build_packing(teeth[:q][::-1], r) if q > 0 else None
    if middle is None or first.length + middle.length > q:
        return []
    gap = teeth[first.length : q - middle.length]
    return sorted(v for tooth in gap for v in tooth)


def rule5_teeth(inst: Instance, cb: Comb) -> Instance | None:
    removed = find_teeth_excess(inst.graph, inst.k, cb)
    return inst.without(removed)[0] if removed else None


# -- driver ----------------------------------------------------------------------


class _Driver:
    def __init__(self, inst: Instance):
        self.inst = inst
        self.trace = ReductionTrace()
        self.where = {o: v for v, o in enumerate(inst.original_ids())}
        self._md: ModuleList | None = None

    def apply(self, rule: int, target: str, removed: Iterable[int]) -> bool:
        return self.apply_many([(rule, target, removed)])

    def apply_many(self, batch: Sequence[tuple[int, str, Iterable[int]]]) -> bool:
        """Remove several vertex sets (current ids), one trace step each, rebuilding the graph once."""
        ids = list(self.inst.original_ids())
        alive = list(range(len(ids)))  # current id of each vertex at the start of the batch
        gone: set[int] = set()
        for rule, target, removed in batch:
            removed = sorted(set(removed) - gone)
            if not removed:
                continue
            drop = set(removed)
            orig = tuple(sorted(ids[v] for v in removed))
            kept_now = [v for v in alive if v not in drop]
            new_index = {v: i for i, v in enumerate(kept_now)}
            old_index = {v: i for i, v in enumerate(alive)}
            mapping = tuple((old_index[v], new_index[v]) for v in kept_now)
            self.trace.steps.append(TraceStep(rule, target, orig, mapping))
            alive = kept_now
            gone |= drop
        if not gone:
            return False
        self.inst, _ = self.inst.without(gone)
        self.where = {o: v for v, o in enumerate(self.inst.original_ids())}
        self._md = None
        return True

    @property
    def md(self) -> ModuleList:
        if self._md is None:
            self._md = strong_modules(self.inst.graph)
        return self._md

    def current(self, originals: Iterable[int]) -> list[int] | None:
        """Current ids for a set given in original ids, or None if any vertex is gone."""
        where = self.where
        out = []
        for o in originals:
            v = where.get(o)
            if v is None:
                return None
            out.append(v)
        return out

    def comb_now(self, cb: Comb) -> Comb | None:
        """Translate a comb recorded in original ids; None if it lost vertices or broke."""
        where = self.where
        if any(o not in where for o in cb.vertices):
            return None
        moved = Comb(
            tuple(tuple(sorted(where[o] for o in c)) for c in cb.shaft),
            tuple(tuple(sorted(where[o] for o in r)) for r in cb.teeth),
            frozenset(where[o] for o in cb.vp if o in where),
            frozenset(where[o] for o in cb.vf if o in where),
        )
        return moved if validate_comb(self.inst.graph, moved) else None

    def in_original(self, cb: Comb) -> Comb:
        return cb.relabel(self.inst.original_ids())

    # passes ------------------------------------------------------------------

    def simple_rules(self) -> bool:
        changed = self.apply(1, "tp-components", find_tp_components(self.inst.graph))
        changed |= self.apply(2, "critical-cliques", find_oversized_cliques(self.inst.graph, self.inst.k))
        return changed

    def module_targets(self) -> list[tuple[int, ...]]:
        md = self.md
        found = [md.nodes[i].members for i in md.by_size() if md.nodes[i].parent >= 0 and md.nodes[i].trivially_perfect]
        found.extend(parallel_tp_unions(md))
        found.sort(key=lambda m: (-len(m), m[0]))
        ids = self.inst.original_ids()
        return [tuple(ids[v] for v in m) for m in found]

    def antimatching_pass(self) -> bool:
        # targets are processed largest first and skipped once they meet an
        # earlier hit, so every hit lies in a module disjoint from the others
        # and all removals can be computed on the current graph
        g, k = self.inst.graph, self.inst.k
        batch = []
        touched: set[int] = set()
        for target in self.module_targets():
            # the rule keeps 2(k+1) vertices, so smaller modules cannot shrink
            if len(target) <= 2 * (k + 1) or not touched.isdisjoint(target):
                continue
            members = self.current(target)
            if members is None or not is_module(g, members):
                continue
            removed = find_antimatching_excess(g, k, members)
            if removed:
                batch.append((3, "module", removed))
                touched.update(target)
        return self.apply_many(batch)

    def module_shaft_pass(self) -> bool:
        changed = False
        combs: list[Comb] = []
        for target in self.module_targets():
            for comp in connected_components(self.inst.graph, self.current(target) or ()):
                # two disjoint end packings already need 4k+2 shaft vertices
                if len(comp) < 4 * self.inst.k + 4:
                    continue
                cb = build_comb_small_antimatching(self.inst.graph, comp)
                if not cb.is_degenerate and validate_comb(self.inst.graph, cb):
                    combs.append(self.in_original(cb))
        for cb in combs:
            now = self.comb_now(cb)
            if now is not None:
                changed |= self.apply(4, "module-comb", _shaft_excess(self.inst.k, now))
        return changed

    def comb_pass(self) -> bool:
        changed = False
        found = enumerate_reducible_combs(self.inst.graph, self.inst.k, self.md)
        combs = [self.in_original(cb) for cb in found]
        for cb in combs:
            now = self.comb_now(cb)
            if now is not None and self.apply(4, "comb", _shaft_excess(self.inst.k, now)):
                changed = True
                now = self.comb_now(cb)
            if now is not None:
                changed |= self.apply(5, "comb", _teeth_excess(self.inst.k, now))
        return changed

    def run(self) -> tuple[Instance, ReductionTrace]:
        while True:
            changed = self.simple_rules()
            changed |= self.antimatching_pass()
            changed |= self.module_shaft_pass()
            changed |= self.comb_pass()
            if not changed:
                break
        self.trace.final_instance = self.inst
        return self.inst, self.trace


def reduce_exhaustively(inst: Instance) -> tuple[Instance, ReductionTrace]:
    """Apply all rules until a full pass changes nothing.

    Pass order: trivially perfect components, oversized twin classes,
    anti-matchings in trivially perfect modules, shaft trimming on the
    peeling comb of each such module, then shaft and teeth trimming on
    every enumerated comb.  Every application removes at least one
    vertex, so there are at most ``n`` of them.
    """
    return _Driver(inst).run()


# -- audit -----------------------------------------------------------------------


@dataclass
class AuditReport:
    k: int
    largest_clique_class: int = 0
    largest_tp_module: int = 0
    largest_shaft: int = 0
    largest_comb: int = 0
    combs_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = [
            f"k {self.k}",
            f"largest critical clique {self.largest_clique_class} (bound {self.k + 1})",
            f"largest trivially perfect strong module {self.largest_tp_module} (bound {11 * self.k + 2})",
            f"combs checked {self.combs_checked}",
            f"largest shaft {self.largest_shaft} (bound {6 * self.k + 2})",
            f"largest comb {self.largest_comb} (bound {45 * self.k + 8})",
        ]
        lines += [f"VIOLATION {v}" for v in self.violations]
        return "\n".join(lines) + "\n"


def audit_bounds(inst: Instance, combs: Sequence[Comb] | None = None) -> AuditReport:
    """Check the size bounds a reduced instance must meet.

    Twin classes hold at most ``k+1`` vertices, trivially perfect strong
    modules at most ``11k+2``, and every enumerated comb has a shaft of at
    most ``6k+2`` and at most ``45k+8`` vertices overall.
    """
    g, k = inst.graph, inst.k
    rep = AuditReport(k)
    rep.largest_clique_class = critical_cliques(g).largest()
    if rep.largest_clique_class > k + 1:
        rep.violations.append(f"critical clique of size {rep.largest_clique_class} exceeds {k + 1}")
    md = strong_modules(g)
    for node in md.nodes:
        if node.trivially_perfect:
            size = len(node.members)
            rep.largest_tp_module = max(rep.largest_tp_module, size)
            if size > 11 * k + 2:
                rep.violations.append(f"trivially perfect strong module of size {size} exceeds {11 * k + 2}")
    combs = enumerate_reducible_combs(g, k, md) if combs is None else combs
    rep.combs_checked = len(combs)
    for cb in combs:
        c, total = len(cb.shaft_vertices), len(cb.vertices)
        rep.largest_shaft = max(rep.largest_shaft, c)
        rep.largest_comb = max(rep.largest_comb, total)
        if c > 6 * k + 2:
            rep.violations.append(f"comb shaft of size {c} exceeds {6 * k + 2}")
        if total > 45 * k + 8:
            rep.violations.append(f"comb of size {total} exceeds {45 * k + 8}")
    return rep
