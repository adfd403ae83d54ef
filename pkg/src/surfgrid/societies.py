"""Societies: a graph with a cyclic order on some of its vertices.

Covers segments of the cyclic order, transactions and their crosscap/handle
patterns, exhaustive cross detection, depth, and linear decompositions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .connectivity import (Separation, disjoint_paths, max_disjoint_count,
                           min_separation, _max_flow)
from .errors import BudgetExceeded, DomainError
from .graph import Graph, from_json_obj, to_json_obj

OMEGA_LIMIT = 16


@dataclass(frozen=True)
class Society:
    graph: Graph
    omega: tuple

    def __post_init__(self):
        om = tuple(self.omega)
        object.__setattr__(self, "omega", om)
        if len(set(om)) != len(om):
            raise DomainError("omega repeats a vertex", omega=list(om))
        bad = [v for v in om if not 0 <= v < self.graph.n]
        if bad:
            raise DomainError("omega vertex not in the graph", vertices=bad)

    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.omega)}

    def to_json_obj(self) -> dict:
        return {"graph": to_json_obj(self.graph), "omega": list(self.omega)}

    @staticmethod
    def from_json_obj(obj) -> "Society":
        return Society(from_json_obj(obj["graph"]), tuple(obj["omega"]))


def same_cyclic_order(a: Sequence[int], b: Sequence[int]) -> bool:
    """Equal up to rotation and reversal."""
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    for cand in (list(b), list(b)[::-1]):
        i = cand.index(a[0])
        if cand[i:] + cand[:i] == list(a):
            return True
    return False


# ----------------------------------------------------------------- segments

def segments(omega: Sequence[int]):
    """Every non-empty segment: the proper cyclic intervals, then the whole order."""
    n = len(omega)
    for length in range(1, n):
        for start in range(n):
            yield frozenset(omega[(start + i) % n] for i in range(length))
    if n:
        yield frozenset(omega)


def is_segment(omega: Sequence[int], part: Iterable[int]) -> bool:
    """No two members separated from each other by two non-members."""
    s = set(part)
    if not s <= set(omega):
        return False
    # along the cycle, membership may switch at most twice
    flags = [v in s for v in omega]
    switches = sum(1 for i in range(len(flags)) if flags[i] != flags[i - 1])
    return switches <= 2


def segment_between(omega: Sequence[int], s: int, t: int) -> list:
    """The segment from s to t along the order; all of it when t precedes s."""
    n = len(omega)
    i, j = omega.index(s), omega.index(t)
    if (i - j) % n == 1 or n == 1:
        return list(omega[i:]) + list(omega[:i])
    out = []
    k = i
    while True:
        out.append(omega[k])
        if k == j:
            return out
        k = (k + 1) % n


# ------------------------------------------------------------- transactions

@dataclass(frozen=True)
class Transaction:
    A: tuple
    B: tuple
    paths: tuple

    @property
    def order(self) -> int:
        return len(self.paths)


def transaction_violations(soc: Society, paths: Sequence[Sequence[int]],
                           a: Iterable[int] | None = None,
                           b: Iterable[int] | None = None) -> list:
    """Checks paths are disjoint Ω-paths; with a and b, that they link them."""
    g, om = soc.graph, set(soc.omega)
    out = []
    seen = set()
    for p in paths:
        if not p or p[0] not in om or p[-1] not in om:
            out.append(f"path {list(p)} does not end on omega")
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                out.append(f"path {list(p)} uses non-edge ({u}, {v})")
        if len(set(p)) != len(p):
            out.append(f"path {list(p)} repeats a vertex")
        if seen & set(p):
            out.append(f"path {list(p)} meets another path")
        seen |= set(p)
    if a is not None and b is not None:
        sa, sb = set(a), set(b)
        if sa & sb or not is_segment(soc.omega, sa) or not is_segment(soc.omega, sb):
            out.append("A and B are not disjoint segments")
        for p in paths:
            if not ((p[0] in sa and p[-1] in sb) or (p[0] in sb and p[-1] in sa)):
                out.append(f"path {list(p)} does not join A and B")
    return out


def _check_limit(soc: Society, limit: int):
    if len(soc.omega) > limit:
        raise BudgetExceeded(f"omega has {len(soc.omega)} vertices, limit is {limit}")


def max_transaction(soc: Society, limit: int = OMEGA_LIMIT) -> Transaction:
    """A transaction of maximum order.

    Enlarging either segment never lowers the number of disjoint paths, so
    only pairs of complementary arcs are tried.
    """
    _check_limit(soc, limit)
    om = list(soc.omega)
    n = len(om)
    best = Transaction((), (), ())
    for i in range(n):
        for length in range(1, n):
            a = [om[(i + t) % n] for t in range(length)]
            b = [om[(i + t) % n] for t in range(length, n)]
            c = max_disjoint_count(soc.graph, a, b)
            if c > best.order:
                best = _transaction(soc.graph, a, b)
    return best


def _transaction(g: Graph, a, b) -> Transaction:
    """Disjoint A-B paths, each trimmed to meet A and B only at its ends."""
    sa, sb = set(a), set(b)
    out = []
    for p in disjoint_paths(g, a, b):
        first_b = next(i for i, v in enumerate(p) if v in sb)
        last_a = max(i for i, v in enumerate(p[:first_b + 1]) if v in sa)
        out.append(tuple(p[last_a:first_b + 1]))
    return Transaction(tuple(a), tuple(b), tuple(out))


def transaction_depth(soc: Society, limit: int = OMEGA_LIMIT) -> int:
    return max_transaction(soc, limit).order


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class Classification:
    kind: str        # "cross", "crosscap", "handle", "planar" or "none"
    thickness: int


def _interleaved(p, q, pos) -> bool:
    a, b = sorted((pos[p[0]], pos[p[-1]]))
    c, d = pos[q[0]], pos[q[-1]]
    return (a < c < b) != (a < d < b)


def classify_transaction(paths: Sequence[Sequence[int]], omega: Sequence[int]) -> Classification:
    """Match the endpoint pattern of a linkage against the crosscap and handle
    patterns, allowing any rotation or reversal of omega.

    Two crossing paths are a cross.  A single path, or paths that pairwise
    do not interleave, are planar.
    """
    pos = {v: i for i, v in enumerate(omega)}
    for p in paths:
        if p[0] not in pos or p[-1] not in pos:
            raise DomainError("path endpoint not on omega", path=list(p))
        if p[0] == p[-1]:
            raise DomainError("path has a single endpoint", path=list(p))
    n = len(paths)
    if n == 0:
        return Classification("none", 0)
    if all(not _interleaved(p, q, pos) for i, p in enumerate(paths) for q in paths[i + 1:]):
        return Classification("planar", n)
    if n == 2:
        return Classification("cross", 1)
    labels = {}
    for idx, p in enumerate(paths):
        labels[pos[p[0]]] = idx
        labels[pos[p[-1]]] = idx
    seq = [labels[i] for i in sorted(labels)]
    for word in _rotations(seq):
        if _is_crosscap(word):
            return Classification("crosscap", n)
        if n % 2 == 0 and _is_handle(word):
            return Classification("handle", n // 2)
    return Classification("none", n)


def _rotations(seq):
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            yield s[i:] + s[:i]


def _is_crosscap(word) -> bool:
    n = len(word) // 2
    first = word[:n]
    return len(set(first)) == n and word[n:] == first


def _is_handle(word) -> bool:
    m = len(word) // 2
    n = m // 2
    first = word[:m]
    if len(set(first)) != m:
        return False
    return word[m:] == first[:n][::-1] + first[n:][::-1]


# -------------------------------------------------------------------- cross

def has_cross(soc: Society, node_limit: int = 2_000_000):
    """Two disjoint Ω-paths with interleaved ends and no inner Ω-vertex, or None."""
    g, om = soc.graph, list(soc.omega)
    pos = {v: i for i, v in enumerate(om)}
    inner_ok = [v not in pos for v in range(g.n)]
    budget = [node_limit]
    n = len(om)
    for i in range(n):
        for j in range(i + 2, n):
            s1, t1 = om[i], om[j]
            for s2 in om[i + 1:j]:
                for t2 in om[j + 1:] + om[:i]:
                    got = _two_paths(g, inner_ok, (s1, t1), (s2, t2), budget)
                    if got is not None:
                        return got
    return None


def _two_paths(g, inner_ok, first, second, budget):
    s1, t1 = first
    s2, t2 = second
    for p in _simple_paths(g, inner_ok, s1, t1, {s2, t2}, budget):
        blocked = set(p)
        q = _bfs_path(g, inner_ok, s2, t2, blocked)
        if q is not None:
            return (tuple(p), tuple(q))
    return None


def _simple_paths(g, inner_ok, s, t, avoid, budget):
    stack = [(s, [s])]
    while stack:
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("cross search exhausted its node budget")
        v, path = stack.pop()
        for u in sorted(g.neighbors(v), reverse=True):
            if u == t:
                yield path + [t]
            elif inner_ok[u] and u not in avoid and u not in path:
                stack.append((u, path + [u]))


def _bfs_path(g, inner_ok, s, t, blocked):
    from collections import deque
    parent = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        for u in sorted(g.neighbors(v)):
            if u == t:
                out = [t, v]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return out[::-1]
            if inner_ok[u] and u not in blocked and u not in parent:
                parent[u] = v
                q.append(u)
    return None


# ------------------------------------------------------ linear decompositions

@dataclass(frozen=True)
class LinearDecomposition:
    bags: tuple
    anchors: tuple

    def adhesion(self) -> int:
        return max((len(set(a) & set(b)) for a, b in zip(self.bags, self.bags[1:])), default=0)

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def to_json_obj(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "anchors": list(self.anchors)}


def linear_decomposition_violations(soc: Society, ld: LinearDecomposition) -> list:
    g = soc.graph
    out = []
    if len(ld.bags) != len(ld.anchors):
        return ["bags and anchors differ in number"]
    pos = soc.position()
    if any(a not in pos for a in ld.anchors):
        out.append("an anchor is not on omega")
        return out
    idx = [pos[a] for a in ld.anchors]
    if len(set(idx)) != len(idx) or not _cyclically_increasing(idx, len(soc.omega)):
        out.append("anchors do not follow omega")
    for a, bag in zip(ld.anchors, ld.bags):
        if a not in bag:
            out.append(f"anchor {a} missing from its bag")
    covered = set().union(*ld.bags) if ld.bags else set()
    if covered != set(range(g.n)):
        out.append(f"vertices in no bag: {sorted(set(range(g.n)) - covered)}")
    for u, v in g.edges:
        if not any(u in b and v in b for b in ld.bags):
            out.append(f"edge ({u}, {v}) is in no bag")
    for v in range(g.n):
        where = [i for i, b in enumerate(ld.bags) if v in b]
        if where and where[-1] - where[0] + 1 != len(where):
            out.append(f"bags holding {v} do not form an interval")
    return out


def _cyclically_increasing(idx, n) -> bool:
    if not idx:
        return True
    steps = sum((b - a) % n for a, b in zip(idx, idx[1:]))
    return steps < n or len(idx) == 1


def linear_decomposition(soc: Society, theta: int):
    """A linear decomposition of adhesion at most 2θ, or a transaction of order > θ.

    For each cut of omega into a prefix and a suffix we take the minimum
    separation closest to the prefix.  These are nested as the prefix grows,
    and bag i collects what enters the prefix side at step i together with
    the separators on both sides of it.
    """
    g, om = soc.graph, list(soc.omega)
    if not om:
        raise DomainError("a linear decomposition needs a non-empty omega")
    m = len(om)
    sides, seps = [frozenset()], [frozenset()]
    for i in range(1, m):
        left, right = om[:i], om[i:]
        f = _max_flow(g, left, right)
        if f.value > theta:
            return _transaction(g, left, right)
        sep = min_separation(g, left, right, side="source")
        sides.append(sep.A)
        seps.append(sep.A & sep.B)
    sides.append(frozenset(range(g.n)))
    seps.append(frozenset())
    bags = []
    for i in range(1, m + 1):
        bag = (sides[i] - sides[i - 1]) | seps[i - 1] | seps[i]
        bags.append(frozenset(bag))
    ld = LinearDecomposition(tuple(bags), tuple(om))
    bad = linear_decomposition_violations(soc, ld)
    if bad:
        raise AssertionError(f"sweep produced an invalid decomposition: {bad[0]}")
    if ld.adhesion() > 2 * theta:
        raise AssertionError(f"adhesion {ld.adhesion()} exceeds 2θ = {2 * theta}")
    return ld
