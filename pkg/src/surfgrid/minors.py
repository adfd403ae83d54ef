"""Minor models, their validation, and exhaustive (rooted) minor search."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DomainError
from .graph import Graph, connected_components, from_json_obj, grid_graph, \
    complete_graph, is_connected_set, to_json_obj


@dataclass(frozen=True)
class MinorModel:
    pattern: Graph
    host: Graph
    branch_sets: tuple  # branch_sets[v] is a sorted tuple of host vertices
    roots: tuple | None = None

    def to_json(self) -> str:
        obj = {
            "pattern": to_json_obj(self.pattern),
            "host": to_json_obj(self.host),
            "branch_sets": {str(v): list(s) for v, s in enumerate(self.branch_sets)},
            "roots": None if self.roots is None else list(self.roots),
        }
        return json.dumps(obj, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "MinorModel":
        return model_from_obj(json.loads(text))


def make_model(pattern: Graph, host: Graph, sets: Sequence[Iterable[int]],
               roots: Iterable[int] | None = None) -> MinorModel:
    bs = tuple(tuple(sorted(set(s))) for s in sets)
    rt = None if roots is None else tuple(sorted(set(roots)))
    return MinorModel(pattern, host, bs, rt)


def model_from_obj(obj) -> MinorModel:
    pattern = from_json_obj(obj["pattern"])
    host = from_json_obj(obj["host"])
    raw = obj["branch_sets"]
    sets = [tuple(raw.get(str(v), ())) for v in range(pattern.n)]
    roots = obj.get("roots")
    return MinorModel(pattern, host, tuple(tuple(s) for s in sets),
                      None if roots is None else tuple(roots))


def validate_model(m: MinorModel) -> list:
    """Empty list when ``m`` is a valid (rooted) model, else the violations."""
    out = []
    host, pat = m.host, m.pattern
    if len(m.branch_sets) != pat.n:
        out.append(f"expected {pat.n} branch sets, got {len(m.branch_sets)}")
        return out
    owner = {}
    for v, s in enumerate(m.branch_sets):
        if not s:
            out.append(f"branch set {v} is empty")
            continue
        bad = [x for x in s if not 0 <= x < host.n]
        if bad:
            out.append(f"branch set {v} has vertices outside the host: {bad}")
            continue
        for x in s:
            if x in owner:
                out.append(f"disjointness: host vertex {x} in branch sets "
                           f"{owner[x]} and {v}")
            else:
                owner[x] = v
        if not is_connected_set(host, s):
            out.append(f"connectivity: branch set {v} is not connected")
    for a, b in pat.edges:
        sa, sb = set(m.branch_sets[a]), set(m.branch_sets[b])
        if not sa or not sb:
            continue
        if not any(host.neighbors(x) & sb for x in sa):
            out.append(f"missing edge: no host edge between branch sets of "
                       f"pattern edge ({a}, {b})")
    if m.roots is not None:
        roots = set(m.roots)
        for v, s in enumerate(m.branch_sets):
            if s and not roots.intersection(s):
                out.append(f"roots: branch set {v} contains no root")
    return out


@dataclass(frozen=True)
class SearchBudget:
    max_pattern_vertices: int = 10
    max_host_vertices: int = 20
    node_limit: int = 10 ** 8
    time_limit: float | None = None

    def __post_init__(self):
        for name in ("max_pattern_vertices", "max_host_vertices", "node_limit"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise DomainError("time_limit must be positive")


DEFAULT_BUDGET = SearchBudget()


def _twin_classes(p: Graph) -> list:
    """prev[v] = previous vertex in v's twin class (or -1)."""
    prev = [-1] * p.n
    for v in range(p.n):
        for u in range(v - 1, -1, -1):
            nu, nv = set(p.neighbors(u)) - {v}, set(p.neighbors(v)) - {u}
            if nu == nv:
                prev[v] = u
                break
    return prev


class _Search:
    def __init__(self, host, pattern, roots, budget):
        self.h = host
        self.p = pattern
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()
        self.adj = [0] * host.n
        for u, v in host.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.rootmask = None
        if roots is not None:
            self.rootmask = 0
            for r in roots:
                self.rootmask |= 1 << r
        self.pedges = list(pattern.edges)
        self.prev = _twin_classes(pattern)

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExceeded("node limit reached", self.nodes)
        if self.budget.time_limit is not None and self.nodes % 2048 == 0:
            if time.monotonic() - self.start > self.budget.time_limit:
                raise BudgetExceeded("time limit reached", self.nodes)

    def flood(self, seed, allowed):
        reach = seed
        frontier = seed
        adj = self.adj
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= adj[low.bit_length() - 1]
                f ^= low
            grow &= allowed & ~reach
            reach |= grow
            frontier = grow
        return reach

    def feasible(self, labels, free):
        p = self.p.n
        reach = [0] * p
        empty = 0
        for a in range(p):
            la = labels[a]
            if not la:
                empty += 1
                continue
            low = la & -la
            r = self.flood(low, la | free)
            if la & ~r:
                return False
            reach[a] = r
        if empty > bin(free).count("1"):
            return False
        for a, b in self.pedges:
            if labels[a] and labels[b]:
                ra, rb = reach[a], reach[b]
                if ra & rb & free:
                    continue
                f = ra
                touch = 0
                while f:
                    low = f & -f
                    touch |= self.adj[low.bit_length() - 1]
                    f ^= low
                if not touch & rb:
                    return False
        if self.rootmask is not None:
            need = 0
            for a in range(p):
                if labels[a] & self.rootmask:
                    continue
                need += 1
                if labels[a] and not reach[a] & self.rootmask & free:
                    return False
            if need > bin(self.rootmask & free).count("1"):
                return False
        return True

    def run(self, cover):
        order = []
        for comp in cover:
            seen = [comp[0]]
            mark = {comp[0]}
            i = 0
            while i < len(seen):
                u = seen[i]
                i += 1
                for w in sorted(self.h.neighbors(u)):
                    if w not in mark:
                        mark.add(w)
                        seen.append(w)
            order += seen
        free = 0
        for v in order:
            free |= 1 << v
        labels = [0] * self.p.n
        if not self.feasible(labels, free):
            return None
        return self._dfs(order, 0, labels, free)

    def _dfs(self, order, i, labels, free):
        if i == len(order):
            return list(labels) if self._final(labels) else None
        v = order[i]
        bit = 1 << v
        free &= ~bit
        for a in range(self.p.n):
            pa = self.prev[a]
            if pa >= 0 and not labels[pa] and not labels[a]:
                continue
            self.tick()
            labels[a] |= bit
            if self.feasible(labels, free):
                got = self._dfs(order, i + 1, labels, free)
                if got is not None:
                    return got
            labels[a] &= ~bit
        return None

    def _final(self, labels):
        return all(labels) and self.feasible(labels, 0)


def _masks_to_sets(masks):
    out = []
    for m in masks:
        s = []
        while m:
            low = m & -m
            s.append(low.bit_length() - 1)
            m ^= low
        out.append(s)
    return out


def find_minor(host: Graph, pattern: Graph, roots: Iterable[int] | None = None,
               budget: SearchBudget = DEFAULT_BUDGET) -> MinorModel | None:
    """A model of ``pattern`` in ``host`` (each branch set hitting ``roots``
    when given), or None once the search space is exhausted.

    Raises BudgetExceeded when the limits stop the search first.  Branch
    sets are grown to cover every vertex of the host components they use,
    which loses no generality since unused neighbours can always be absorbed.
    """
    if pattern.n > budget.max_pattern_vertices:
        raise BudgetExceeded(f"pattern has {pattern.n} vertices, budget allows "
                             f"{budget.max_pattern_vertices}")
    if host.n > budget.max_host_vertices:
        raise BudgetExceeded(f"host has {host.n} vertices, budget allows "
                             f"{budget.max_host_vertices}")
    roots = None if roots is None else sorted(set(roots))
    if pattern.n == 0:
        return make_model(pattern, host, [], roots)
    if pattern.n > host.n or pattern.m > host.m:
        return None
    if roots is not None and pattern.n > len(roots):
        return None
    comps = connected_components(host)
    pcomps = len(connected_components(pattern))
    search = _Search(host, pattern, roots, budget)
    for r in range(1, min(len(comps), pattern.n) + 1):
        if r < 1 or (pcomps < r):
            # every covered component needs at least one pattern component
            continue
        for pick in combinations(comps, r):
            if sum(len(c) for c in pick) < pattern.n:
                continue
            got = search.run(list(pick))
            if got is not None:
                model = make_model(pattern, host, _masks_to_sets(got), roots)
                assert not validate_model(model), validate_model(model)
                return model
    return None


def has_minor(host, pattern, roots=None, budget=DEFAULT_BUDGET) -> bool:
    return find_minor(host, pattern, roots, budget) is not None


def bg_annotated(g: Graph, x: Iterable[int] | None = None,
                 budget: SearchBudget = DEFAULT_BUDGET) -> tuple:
    """Largest k with a k x k grid as an x-rooted minor, plus its model.

    ``x=None`` means every vertex is a root.
    """
    roots = list(range(g.n)) if x is None else sorted(set(x))
    best, witness = 0, None
    k = 1
    while k * k <= len(roots):
        grid = grid_graph(k, k)
        big = SearchBudget(max(budget.max_pattern_vertices, grid.n),
                           budget.max_host_vertices, budget.node_limit,
                           budget.time_limit) if k == 1 else budget
        model = find_minor(g, grid, roots, big)
        if model is None:
            break
        best, witness = k, model
        k += 1
    return best, witness


def hadwiger(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> tuple:
    """Largest t with K_t as a minor, plus its model."""
    best, witness = 0, None
    t = 1
    while t <= g.n:
        model = find_minor(g, complete_graph(t), None, budget)
        if model is None:
            break
        best, witness = t, model
        t += 1
    return best, witness
