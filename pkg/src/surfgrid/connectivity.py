"""Separations, well-linked and strongly linked sets, free sets and tangles.

Everything here is exhaustive or flow based and meant for small graphs.
Ratios such as ``alpha`` are kept as :class:`fractions.Fraction` and every
comparison against them is done by cross-multiplication.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DomainError
from .graph import Graph, connected_components, delete_edges, from_edge_list

TWO_THIRDS = Fraction(2, 3)


def _frac(alpha) -> Fraction:
    a = Fraction(alpha)
    if not TWO_THIRDS <= a < 1:
        raise DomainError("alpha must lie in [2/3, 1)", alpha=str(a))
    return a


def _exceeds(count: int, alpha: Fraction, total: int) -> bool:
    """count > alpha * total, exactly."""
    return count * alpha.denominator > alpha.numerator * total


# ------------------------------------------------------------- separations

@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    @property
    def separator(self) -> list:
        return sorted(self.A & self.B)

    def flipped(self) -> "Separation":
        return Separation(self.B, self.A)

    def key(self) -> tuple:
        return (self.order, self.separator, sorted(self.A), sorted(self.B))

    def to_json_obj(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B)}

    @staticmethod
    def from_json_obj(obj) -> "Separation":
        return Separation(frozenset(obj["A"]), frozenset(obj["B"]))


def separation_violations(g: Graph, sep: Separation) -> list:
    out = []
    if sep.A | sep.B != frozenset(range(g.n)):
        out.append("A and B do not cover the vertex set")
    bad = [v for v in sep.A | sep.B if not 0 <= v < g.n]
    if bad:
        out.append(f"vertices out of range: {sorted(bad)}")
    a_only, b_only = sep.A - sep.B, sep.B - sep.A
    for u, v in g.edges:
        if (u in a_only and v in b_only) or (v in a_only and u in b_only):
            out.append(f"edge ({u}, {v}) crosses the separation")
            break
    return out


def is_separation(g: Graph, sep: Separation) -> bool:
    return not separation_violations(g, sep)


def separations_with_separator(g: Graph, x: Iterable[int]) -> list:
    """All separations (A, B) with A ∩ B exactly ``x``."""
    xs = frozenset(x)
    comps = connected_components(g, [v for v in range(g.n) if v not in xs])
    out = []
    for sides in product((0, 1), repeat=len(comps)):
        a = set(xs)
        b = set(xs)
        for side, comp in zip(sides, comps):
            (a if side == 0 else b).update(comp)
        out.append(Separation(frozenset(a), frozenset(b)))
    return out


def enumerate_separations(g: Graph, k: int, limit: int = 200_000) -> list:
    """Every separation of order less than ``k``, both orientations, sorted."""
    out = []
    for size in range(0, min(k, g.n + 1)):
        for x in combinations(range(g.n), size):
            out.extend(separations_with_separator(g, x))
            if len(out) > limit:
                raise BudgetExceeded(f"more than {limit} separations of order < {k}")
    out.sort(key=Separation.key)
    return out


# ---------------------------------------------------------------- max flow

class _Flow:
    """Unit vertex capacities via split vertices: v_in = 2v, v_out = 2v + 1."""

    def __init__(self, g: Graph, sources, sinks, removed=()):
        n = g.n
        self.g = g
        self.src_node, self.snk_node = 2 * n, 2 * n + 1
        self.sources = sorted(set(sources) - set(removed))
        self.sinks = sorted(set(sinks) - set(removed))
        cap = {}

        def arc(a, b, c):
            cap.setdefault(a, {})
            cap.setdefault(b, {})
            cap[a][b] = cap[a].get(b, 0) + c
            cap[b].setdefault(a, 0)
        gone = set(removed)
        big = n + 1   # only vertex arcs may be cut
        for v in range(n):
            arc(2 * v, 2 * v + 1, 0 if v in gone else 1)
        for u, v in g.edges:
            arc(2 * u + 1, 2 * v, big)
            arc(2 * v + 1, 2 * u, big)
        for v in self.sources:
            arc(self.src_node, 2 * v, big)
        for v in self.sinks:
            arc(2 * v + 1, self.snk_node, big)
        cap.setdefault(self.src_node, {})
        cap.setdefault(self.snk_node, {})
        self.cap = cap
        self.orig = {a: dict(d) for a, d in cap.items()}
        self.value = 0

    def _bfs(self):
        parent = {self.src_node: None}
        q = deque([self.src_node])
        while q:
            a = q.popleft()
            for b in sorted(self.cap[a]):
                if self.cap[a][b] > 0 and b not in parent:
                    parent[b] = a
                    if b == self.snk_node:
                        return parent
                    q.append(b)
        return parent

    def run(self, limit=None):
        while limit is None or self.value < limit:
            parent = self._bfs()
            if self.snk_node not in parent:
                break
            b = self.snk_node
            while parent[b] is not None:
                a = parent[b]
                self.cap[a][b] -= 1
                self.cap[b][a] += 1
                b = a
            self.value += 1
        return self.value

    def reachable(self) -> set:
        return set(self._bfs())

    def flow_on(self, a, b) -> int:
        return self.orig[a].get(b, 0) - self.cap[a][b]

    def paths(self) -> list:
        """Decompose the flow into vertex paths."""
        left = {a: {b: self.flow_on(a, b) for b in self.cap[a] if self.flow_on(a, b) > 0}
                for a in self.cap}
        out = []
        for first in sorted(left[self.src_node]):
            node, path = first, []
            while node != self.snk_node:
                if node % 2 == 0:
                    path.append(node // 2)
                nxt = min(left[node])
                left[node][nxt] -= 1
                if not left[node][nxt]:
                    del left[node][nxt]
                node = nxt
            out.append(path)
        return out


def _max_flow(g: Graph, sources, sinks, removed=(), limit=None) -> _Flow:
    f = _Flow(g, sources, sinks, removed)
    f.run(limit)
    return f


def disjoint_paths(g: Graph, sources: Iterable[int], sinks: Iterable[int],
                   limit: int | None = None, removed: Iterable[int] = ()) -> list:
    """A maximum family of vertex-disjoint source-sink paths.

    A vertex lying in both sets forms a path by itself.
    """
    return _max_flow(g, sources, sinks, removed, limit).paths()


def max_disjoint_count(g: Graph, sources, sinks, removed=(), limit=None) -> int:
    return _max_flow(g, sources, sinks, removed, limit).value


def min_separation(g: Graph, sources: Iterable[int], sinks: Iterable[int],
                   side: str = "lex") -> Separation:
    """A minimum-order separation (A, B) with sources ⊆ A and sinks ⊆ B.

    ``side`` picks among minimum separators: ``"source"`` gives the one
    closest to the sources, ``"lex"`` the lexicographically smallest A ∩ B.
    """
    src, snk = sorted(set(sources)), sorted(set(sinks))
    f = _max_flow(g, src, snk)
    c = f.value
    if side == "source":
        reach = f.reachable()
        cut = sorted(v for v in range(g.n) if 2 * v in reach and 2 * v + 1 not in reach)
    elif side == "lex":
        cut = []
        for v in range(g.n):
            if len(cut) == c:
                break
            if max_disjoint_count(g, src, snk, removed=cut + [v]) == c - len(cut) - 1:
                cut.append(v)
    else:
        raise DomainError("side must be 'source' or 'lex'", side=side)
    return _separation_from_cut(g, src, cut)


def _separation_from_cut(g: Graph, sources, cut) -> Separation:
    cut = set(cut)
    seen = set()
    q = deque(v for v in sources if v not in cut)
    seen.update(q)
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u not in cut and u not in seen:
                seen.add(u)
                q.append(u)
    a = frozenset(seen | cut)
    b = frozenset(set(range(g.n)) - seen)
    return Separation(a, b)


# ----------------------------------------------------------- well-linkedness

@dataclass(frozen=True)
class WellLinkedCertificate:
    S: tuple
    q: int
    alpha: Fraction
    well_linked: bool
    witness: tuple | None = None

    def to_json_obj(self) -> dict:
        return {"S": list(self.S), "q": self.q, "alpha": str(self.alpha),
                "well_linked": self.well_linked,
                "witness": None if self.witness is None else list(self.witness)}


def is_balanced_separator(g: Graph, s: Iterable[int], x: Iterable[int], alpha) -> bool:
    alpha = _frac(alpha)
    ss, xs = set(s), set(x)
    for comp in connected_components(g, [v for v in range(g.n) if v not in xs]):
        if _exceeds(len(ss.intersection(comp)), alpha, len(ss)):
            return False
    return True


def is_well_linked(g: Graph, s: Iterable[int], q: int, alpha=TWO_THIRDS,
                   limit: int = 2_000_000) -> WellLinkedCertificate:
    """Decide (q, alpha)-well-linkedness by trying every set of at most q vertices."""
    alpha = _frac(alpha)
    ss = tuple(sorted(set(s)))
    tried = 0
    for size in range(0, min(q, g.n) + 1):
        for x in combinations(range(g.n), size):
            tried += 1
            if tried > limit:
                raise BudgetExceeded(f"more than {limit} candidate separators", nodes=tried)
            if is_balanced_separator(g, ss, x, alpha):
                return WellLinkedCertificate(ss, q, alpha, False, x)
    return WellLinkedCertificate(ss, q, alpha, True)


def well_linkedness(g: Graph, s: Iterable[int], alpha=TWO_THIRDS) -> int:
    """Largest q for which s is (q, alpha)-well-linked, or -1 if none."""
    q = -1
    while q + 1 <= g.n and is_well_linked(g, s, q + 1, alpha).well_linked:
        q += 1
    return q


@dataclass(frozen=True)
class LinkViolation:
    S1: tuple
    S2: tuple
    separation: Separation


def is_strongly_linked(g: Graph, s: Iterable[int]) -> tuple:
    """(True, None) or (False, LinkViolation) for the first bad bipartition."""
    ss = sorted(set(s))
    if len(ss) > 16:
        raise BudgetExceeded("strong linkedness is checked for at most 16 vertices")
    if len(ss) <= 1:
        return True, None
    first, rest = ss[0], ss[1:]
    for mask in range(0, 1 << len(rest)):
        s1 = [first] + [v for i, v in enumerate(rest) if mask >> i & 1]
        s2 = [v for i, v in enumerate(rest) if not mask >> i & 1]
        if not s2:
            continue
        need = min(len(s1), len(s2))
        if max_disjoint_count(g, s1, s2, limit=need) < need:
            sep = min_separation(g, s1, s2)
            return False, LinkViolation(tuple(s1), tuple(s2), sep)
    return True, None


# ----------------------------------------------------------------- free sets

def _majority_side(sep: Separation, s: Sequence[int], alpha: Fraction) -> bool:
    """True when B carries more than alpha |S| vertices of S."""
    return _exceeds(len(sep.B.intersection(s)), alpha, len(s))


def free_violation(g: Graph, s: Iterable[int], f: Iterable[int], alpha=TWO_THIRDS):
    """A separation of order < |F| with F on a side that is not S-heavy, else None."""
    alpha = _frac(alpha)
    ss, fs = sorted(set(s)), frozenset(f)
    for sep in enumerate_separations(g, len(fs)):
        if fs <= sep.B and not _majority_side(sep, ss, alpha):
            return sep
    return None


def is_free(g, s, f, alpha=TWO_THIRDS) -> bool:
    return free_violation(g, s, f, alpha) is None


def _push(g: Graph, sep: Separation, s: list, alpha: Fraction, order: int) -> Separation:
    """Grow A while some separation of order <= ``order`` keeps B S-heavy."""
    a = sep.A
    while True:
        grown = None
        for v in sorted(sep.B - sep.A):
            for t in s:
                if t in a or t == v:
                    continue
                if max_disjoint_count(g, a | {v}, [t], limit=order + 1) > order:
                    continue
                cand = min_separation(g, a | {v}, [t], side="source")
                if _majority_side(cand, s, alpha):
                    grown = cand
                    break
            if grown is not None:
                break
        if grown is None:
            return sep
        sep = grown
        a = sep.A


def free_set(g: Graph, s: Iterable[int], alpha=TWO_THIRDS, k: int = 1,
             verify: bool = True) -> list:
    """An S-free set of size k-1 for a (k, alpha)-well-linked S.

    Starts from a vertex of the S-heavy component, then repeatedly pushes a
    separation that keeps the current set on its light side as far towards
    S as possible and adds a vertex beyond it.  With ``verify`` every
    intermediate set is checked against all separations of smaller order.
    """
    alpha = _frac(alpha)
    ss = sorted(set(s))
    if k < 1:
        raise DomainError("k must be positive", k=k)
    if k == 1:
        return []
    if not ss:
        raise DomainError("S is empty")
    heavy = [c for c in connected_components(g) if _exceeds(len(set(c) & set(ss)), alpha, len(ss))]
    if not heavy:
        raise DomainError("no component carries more than alpha |S| vertices of S; "
                          "S is not well-linked")
    f = [min(heavy[0])]
    while len(f) < k - 1:
        order = len(f)
        sep = Separation(frozenset(f), frozenset(range(g.n)))
        sep = _push(g, sep, ss, alpha, order)
        rest = sorted(sep.B - sep.A)
        if not rest:
            raise DomainError("push left nothing beyond the separator",
                              separation=sep.to_json_obj())
        f = sorted(f + [rest[0]])
        if verify:
            bad = free_violation(g, ss, f, alpha)
            if bad is not None:
                raise DomainError("free set broken; S is not well-linked enough",
                                  free_set=f, separation=bad.to_json_obj())
    return f


# ------------------------------------------------------------------ tangles

@dataclass(frozen=True)
class Tangle:
    order: int
    oriented: frozenset = field(default=frozenset())

    def sorted_list(self) -> list:
        return sorted(self.oriented, key=Separation.key)

    def to_json_obj(self) -> dict:
        return {"order": self.order,
                "separations": [s.to_json_obj() for s in self.sorted_list()]}

    @staticmethod
    def from_json_obj(obj) -> "Tangle":
        return Tangle(obj["order"], frozenset(Separation.from_json_obj(s)
                                              for s in obj["separations"]))


def tangle_from_rule(g: Graph, k: int, big_side) -> Tangle:
    """Orient every separation of order < k towards the side ``big_side`` likes."""
    return Tangle(k, frozenset(sep for sep in enumerate_separations(g, k) if big_side(sep)))


def tangle_validate(g: Graph, t: Tangle) -> list:
    """Violations of the orientation and triple axioms, empty when valid."""
    out = []
    k = t.order
    for sep in t.sorted_list():
        bad = separation_violations(g, sep)
        if bad:
            out.append(f"not a separation: {sep.to_json_obj()}: {bad[0]}")
        elif sep.order >= k:
            out.append(f"order {sep.order} too large: {sep.to_json_obj()}")
    done = set()
    for sep in enumerate_separations(g, k):
        if sep in done:
            continue
        done.add(sep.flipped())
        if (sep in t.oriented) == (sep.flipped() in t.oriented):
            which = "both" if sep in t.oriented else "neither"
            out.append(f"orientation: {which} of {sep.to_json_obj()} and its flip present")
    if out:
        return out
    triple = covering_triple(g, t)
    if triple is not None:
        out.append("triple axiom: small sides cover V: "
                   + "; ".join(str(sorted(a)) for a in triple))
    return out


def covering_triple(g: Graph, t: Tangle):
    """Three small sides (with repetition) whose union is V, or None."""
    full = (1 << g.n) - 1
    masks = {}
    for sep in t.oriented:
        m = 0
        for v in sep.A:
            m |= 1 << v
        masks[m] = sep.A
    # only inclusion-maximal small sides matter
    items = sorted(masks, key=lambda m: (-bin(m).count("1"), m))
    maximal = []
    for m in items:
        if not any(m | b == b for b in maximal):
            maximal.append(m)
    sizes = [bin(m).count("1") for m in maximal]
    for i, a in enumerate(maximal):
        if 3 * sizes[i] < g.n:
            break
        for j in range(i, len(maximal)):
            if sizes[i] + 2 * sizes[j] < g.n:
                break
            ab = a | maximal[j]
            for l in range(j, len(maximal)):
                if sizes[i] + sizes[j] + sizes[l] < g.n:
                    break
                if ab | maximal[l] == full:
                    return masks[a], masks[maximal[j]], masks[maximal[l]]
    return None


def tangle_of_welllinked(g: Graph, s: Iterable[int], q: int, alpha=TWO_THIRDS) -> Tangle:
    """Separations of order at most q oriented towards the S-heavy side."""
    alpha = _frac(alpha)
    ss = sorted(set(s))
    return tangle_from_rule(g, q + 1, lambda sep: _majority_side(sep, ss, alpha))


def tangle_from_free_set(g: Graph, f: Iterable[int], k: int) -> Tangle:
    """Separations of order < k oriented towards the side holding more than
    two thirds of F; for |F| = 3k this is the side with more than 2k."""
    fs = frozenset(f)
    return tangle_from_rule(g, k, lambda sep: 3 * len(sep.B & fs) > 2 * len(fs))


def tangle_of_wall(g: Graph, rows: Sequence[Iterable[int]],
                   columns: Sequence[Iterable[int]], k: int | None = None) -> Tangle:
    """Orientation towards the side whose private part holds a whole row and
    a whole column of the wall.  ``k`` defaults to the number of rows."""
    rows = [frozenset(r) for r in rows]
    columns = [frozenset(c) for c in columns]
    k = len(rows) if k is None else k

    def big(sep):
        private = sep.B - sep.A
        return any(r <= private for r in rows) and any(c <= private for c in columns)
    return tangle_from_rule(g, k, big)


def is_truncation(t1: Tangle, t2: Tangle) -> tuple:
    """(True, None) when t1 ⊆ t2, else (False, first separation missing from t2)."""
    for sep in t1.sorted_list():
        if sep not in t2.oriented:
            return False, sep
    return True, None


def wall_rows_columns(labels: dict, k: int) -> tuple:
    """Rows and columns of an elementary wall from its (row, col) labels."""
    rows = [[v for v, (i, _) in labels.items() if i == r] for r in range(1, k + 1)]
    cols = [[v for v, (_, j) in labels.items() if (j + 1) // 2 == c] for c in range(1, k + 1)]
    return [sorted(r) for r in rows], [sorted(c) for c in cols]


# ------------------------------------------------- augmenting or separating

@dataclass(frozen=True)
class AugmentOutcome:
    kind: str                      # "paths", "separation" or "edge"
    paths: tuple = ()
    separation: Separation | None = None
    edge: tuple | None = None


def augment_or_separate(g: Graph, x: Iterable[int], y: Iterable[int], k: int,
                        sep: Separation | None = None, check: bool = True) -> AugmentOutcome:
    """k disjoint X-Y paths, or a separation pushed strictly into B, or an
    edge of G[B] whose deletion keeps X strongly linked.

    Hypotheses on X and Y are only needed once the linkage is known to be
    missing, so they are checked at that point.
    """
    xs, ys = sorted(set(x)), sorted(set(y))
    if len(xs) < k:
        raise DomainError("|X| must be at least k", size=len(xs), k=k)
    if sep is None:
        paths = disjoint_paths(g, xs, ys, limit=k)
        if len(paths) >= k:
            return AugmentOutcome("paths", tuple(tuple(p) for p in paths[:k]))
        sep = min_separation(g, xs, ys)
    if len(ys) < 3 * k:
        raise DomainError("|Y| must be at least 3k", size=len(ys), k=k)
    if check:
        for name, part in (("X", xs), ("Y", ys)):
            ok, why = is_strongly_linked(g, part)
            if not ok:
                raise DomainError(f"{name} is not strongly linked",
                                  S1=list(why.S1), S2=list(why.S2))
    bad = separation_violations(g, sep)
    if bad or sep.order >= k or not set(xs) <= sep.A or len(sep.B & set(ys)) < k:
        raise DomainError("given separation does not fit the hypotheses",
                          separation=sep.to_json_obj())
    inner = [(u, v) for u, v in g.edges if u in sep.B and v in sep.B]
    if not inner:
        raise DomainError("G[B] has no edges", separation=sep.to_json_obj())
    u, v = inner[0]
    h = delete_edges(g, [(u, v)])
    ok, why = is_strongly_linked(h, xs)
    if ok:
        return AugmentOutcome("edge", edge=(u, v))
    lr = why.separation
    l_side, r_side = (lr.A, lr.B) if u in lr.A - lr.B else (lr.B, lr.A)
    ends = (u, v) if u in l_side - r_side else (v, u)
    a, b = sep.A, sep.B
    candidates = [
        Separation(a | l_side, (b & r_side) | {ends[0]}),
        Separation(a | r_side, (b & l_side) | {ends[1]}),
    ]
    candidates.extend(_pushed_by_flow(g, sep, ys, k))
    for cand in candidates:
        if _pushes(g, cand, sep, xs, ys, k):
            return AugmentOutcome("separation", separation=cand)
    raise DomainError("no pushed separation and no safe edge",
                      edge=[u, v], separation=sep.to_json_obj())


def _pushes(g, cand, sep, xs, ys, k) -> bool:
    return (is_separation(g, cand) and cand.order < k and set(xs) <= cand.A
            and sep.A <= cand.A and cand.B < sep.B and len(cand.B & set(ys)) >= k)


def _pushed_by_flow(g: Graph, sep: Separation, ys, k: int):
    """Separations pulling one more vertex of B into A, found by min cuts."""
    a, b = sep.A, sep.B
    sinks = sorted(set(ys) & (b - a))
    for v in sorted(b - a):
        keep = [t for t in sinks if t != v]
        if len(keep) < k or max_disjoint_count(g, a | {v}, keep, limit=k) >= k:
            continue
        cut = min_separation(g, a | {v}, keep)
        yield Separation(a | cut.A, b & cut.B)


def check_paths(g: Graph, paths: Sequence[Sequence[int]], x, y) -> list:
    out = []
    seen = set()
    xs, ys = set(x), set(y)
    for p in paths:
        if not p or p[0] not in xs or p[-1] not in ys:
            out.append(f"path {list(p)} does not run from X to Y")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                out.append(f"path {list(p)} uses non-edge ({a}, {b})")
        if seen & set(p):
            out.append(f"path {list(p)} meets an earlier path")
        seen |= set(p)
    return out


# ------------------------------------------------ wall from well-linked set

@dataclass(frozen=True)
class WallResult:
    found: bool
    wall_edges: tuple = ()
    rows: tuple = ()
    columns: tuple = ()
    free_set: tuple = ()
    treewidth: int | None = None
    deleted_edges: tuple = ()


def _subdivision_from_model(host: Graph, pattern: Graph, sets: Sequence[Sequence[int]]) -> dict:
    """Turn a minor model of a subcubic pattern into a subdivision.

    Returns pattern edge -> host path and pattern vertex -> host branch vertex.
    """
    owner = {v: i for i, bs in enumerate(sets) for v in bs}
    link = {}
    for a, b in pattern.edges:
        for u in sorted(sets[a]):
            hit = sorted(w for w in host.neighbors(u) if owner.get(w) == b)
            if hit:
                link[(a, b)] = (u, hit[0])
                break
    centre, legs = {}, {}
    for p in range(pattern.n):
        inside = set(sets[p])
        uses = Counter(link[e][0] if e[0] == p else link[e][1] for e in link if p in e)
        ends = sorted(uses)
        root = ends[0] if ends else min(inside)
        parent = {root: None}
        q = deque([root])
        while q:
            w = q.popleft()
            for z in sorted(host.neighbors(w)):
                if z in inside and z not in parent:
                    parent[z] = w
                    q.append(z)

        def up(w):
            out = [w]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return out
        branches = [up(e) for e in ends]
        if len(ends) <= 2:
            # an end carrying two pattern edges has to be the branch vertex
            c = max(ends, key=lambda e: (uses[e], e == root)) if ends else root
        else:
            # the deepest pairwise meeting point of the three tree paths
            meet = [next(w for w in branches[i] if w in set(branches[j]))
                    for i, j in ((1, 2), (0, 1), (0, 2))]
            c = max(meet, key=lambda w: (len(up(w)), -w))
        centre[p] = c
        for e, br in zip(ends, branches):
            legs[(p, e)] = _tree_path(parent, up, e, c)
    paths = {}
    for (a, b), (u, w) in link.items():
        pa = legs[(a, u)][::-1]
        pb = legs[(b, w)]
        paths[(a, b)] = pa + pb
    return {"paths": paths, "centre": centre}


def _tree_path(parent, up, start, goal) -> list:
    a, b = up(start), up(goal)
    sb = set(b)
    meet = next(w for w in a if w in sb)
    left = a[:a.index(meet) + 1]
    right = b[:b.index(meet)]
    return left + right[::-1]


def _dissolve(h):
    """Suppress degree-2 vertices whose removal keeps the graph simple.

    Returns the smaller graph and, for each of its edges, the path it stands for.
    """
    import networkx as nx
    h = nx.Graph(h)
    paths = {tuple(sorted(e)): list(sorted(e)) for e in h.edges}
    changed = True
    while changed:
        changed = False
        for v in sorted(h.nodes):
            if h.degree(v) != 2:
                continue
            a, b = sorted(h.neighbors(v))
            if h.has_edge(a, b):
                continue
            pa = paths.pop(tuple(sorted((a, v))))
            pb = paths.pop(tuple(sorted((v, b))))
            pa = pa if pa[-1] == v else pa[::-1]
            pb = pb if pb[0] == v else pb[::-1]
            route = pa + pb[1:]
            h.remove_node(v)
            h.add_edge(a, b)
            paths[tuple(sorted((a, b)))] = route if route[0] == min(a, b) else route[::-1]
            changed = True
    return h, paths


def _skeleton_match(host, pat, limit=10_000):
    """Embed the dissolved pattern into the dissolved host, then expand.

    Sound but incomplete: every hit is a genuine subdivision.
    """
    from networkx.algorithms.isomorphism import GraphMatcher
    hs, hpaths = _dissolve(host)
    ps, ppaths = _dissolve(pat)
    for tried, hit in enumerate(GraphMatcher(hs, ps).subgraph_monomorphisms_iter()):
        if tried >= limit:
            break
        got = _expand(hit, hpaths, ppaths)
        if got is not None:
            return got
    return None


def _expand(hit, hpaths, ppaths):
    to_host = {p: h for h, p in hit.items()}
    at = {p: [to_host[p]] for p in to_host}
    paths = {}
    for (a, b), ppath in ppaths.items():
        hpath = hpaths[tuple(sorted((to_host[a], to_host[b])))]
        if hpath[0] != to_host[a]:
            hpath = hpath[::-1]
        # spread the pattern path's inner vertices over the host path
        inner = ppath[1:-1]
        if len(inner) > len(hpath) - 2:
            return None
        for i, p in enumerate(inner):
            at[p] = [hpath[i + 1]]
        pos = [0] + list(range(1, len(inner) + 1)) + [len(hpath) - 1]
        for i, (x, y) in enumerate(zip(ppath, ppath[1:])):
            paths[(x, y)] = hpath[pos[i]:pos[i + 1] + 1]
    return {"at": at, "paths": paths}


WALL_LIMIT = 3


def find_wall(g: Graph, k: int, budget=None):
    """A subdivided elementary k-wall in g as (edges, rows, columns), or None.

    An unsubdivided copy is looked for first by subgraph matching; failing
    that, a minor model of the wall is searched for and, the wall being
    subcubic, turned into a subdivision.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher
    from .generators import elementary_wall_labeled
    from .minors import SearchBudget, find_minor
    if k > WALL_LIMIT:
        raise BudgetExceeded(f"wall search is limited to k <= {WALL_LIMIT}")
    w, labels = elementary_wall_labeled(k)
    wrows, wcols = wall_rows_columns(labels, k)
    host = nx.Graph()
    host.add_nodes_from(range(g.n))
    host.add_edges_from(g.edges)
    pat = nx.Graph()
    pat.add_nodes_from(range(w.n))
    pat.add_edges_from(w.edges)
    hit = next(GraphMatcher(host, pat).subgraph_monomorphisms_iter(), None)
    if hit is not None:
        to_host = {p: h for h, p in hit.items()}
        edges = sorted(tuple(sorted((to_host[a], to_host[b]))) for a, b in w.edges)
        rows = [sorted(to_host[p] for p in part) for part in wrows]
        cols = [sorted(to_host[p] for p in part) for part in wcols]
        return edges, rows, cols
    got = _skeleton_match(host, pat)
    if got is not None:
        rows = [sorted({v for p in part for v in got["at"][p]}) for part in wrows]
        cols = [sorted({v for p in part for v in got["at"][p]}) for part in wcols]
        for part, out in ((wrows, rows), (wcols, cols)):
            for i, grp in enumerate(part):
                ps = set(grp)
                extra = {v for (a, b), path in got["paths"].items() if a in ps and b in ps
                         for v in path}
                out[i] = sorted(set(out[i]) | extra)
        edges = sorted({tuple(sorted(e)) for path in got["paths"].values()
                        for e in zip(path, path[1:])})
        return edges, rows, cols
    if budget is None:
        budget = SearchBudget(w.n, max(g.n, 20), 10 ** 7, 60.0)
    model = find_minor(g, w, None, budget)
    if model is None:
        return None
    sets = [sorted(model.branch_sets[i]) for i in range(w.n)]
    sub = _subdivision_from_model(g, w, sets)
    edges = set()
    for path in sub["paths"].values():
        for u, v in zip(path, path[1:]):
            edges.add((min(u, v), max(u, v)))
    rows, cols = [], []
    for group, out in ((wrows, rows), (wcols, cols)):
        for part in group:
            ps = set(part)
            vs = {sub["centre"][p] for p in part}
            for (a, b), path in sub["paths"].items():
                if a in ps and b in ps:
                    vs.update(path)
            out.append(sorted(vs))
    return sorted(edges), rows, cols


def wall_from_welllinked(g: Graph, s: Iterable[int], k: int, alpha=TWO_THIRDS,
                         budget=None) -> WallResult:
    """A k-wall whose tangle is contained in the tangle of the well-linked set s.

    Finds a free set, then alternates between looking for a wall and asking
    for a linkage from the free set to the wall's first column; a missing
    linkage leads to pushing a separation until an edge can be deleted
    safely.  The final containment of tangles is checked by enumeration.
    """
    from .width import treewidth_exact
    alpha = _frac(alpha)
    ss = sorted(set(s))
    if find_wall(g, k, budget) is None:
        # deleting edges never creates a wall, so report the treewidth
        tw = treewidth_exact(g, cap=max(g.n, 15)).value if g.n <= 16 else None
        return WallResult(False, treewidth=tw)
    q = well_linkedness(g, ss, alpha)
    if k - 1 > q:
        raise DomainError("wall order exceeds the well-linkedness of S", k=k, q=q)
    f = free_set(g, ss, alpha, q)
    # only separations of order < k are compared, so truncate T_S there
    ts = tangle_of_welllinked(g, ss, k - 1, alpha)
    h = g
    deleted = []
    for _ in range(g.m + 1):
        got = find_wall(h, k, budget)
        if got is None:
            tw = treewidth_exact(g, cap=max(g.n, 15)).value if g.n <= 16 else None
            return WallResult(False, free_set=tuple(f), treewidth=tw,
                              deleted_edges=tuple(deleted))
        edges, rows, cols = got
        first = cols[0]
        need = min(len(f), len(first))
        if max_disjoint_count(h, f, first, limit=need) >= need:
            tw_wall = tangle_of_wall(g, rows, cols, k)
            ok, bad = is_truncation(tw_wall, ts)
            if not ok:
                raise DomainError("wall tangle is not a truncation of the tangle of S",
                                  separation=bad.to_json_obj())
            return WallResult(True, tuple(edges), tuple(map(tuple, rows)),
                              tuple(map(tuple, cols)), tuple(f), None, tuple(deleted))
        sep = min_separation(h, f, first)
        while True:
            out = augment_or_separate(h, f, first, need, sep, check=False)
            if out.kind == "edge":
                deleted.append(out.edge)
                h = delete_edges(h, [out.edge])
                break
            sep = out.separation
    raise DomainError("ran out of edges to delete")
