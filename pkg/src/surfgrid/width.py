"""Tree-decompositions, torsos, exact treewidth and annotated parameters."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded, DomainError
from .graph import Graph, _simple, complete_graph, connected_components, \
    contract_partition, delete_vertices, induced_subgraph, is_connected_set

TW_CAP = 15


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple  # bags[t] is a sorted tuple of vertices

    @staticmethod
    def make(tree_edges, bags) -> "TreeDecomposition":
        bags = tuple(tuple(sorted(set(b))) for b in bags)
        return TreeDecomposition(_simple(len(bags), tree_edges), bags)


@dataclass(frozen=True)
class AnnotatedValue:
    param: str
    value: int
    witness: object = None


def validate_td(g: Graph, td: TreeDecomposition) -> list:
    out = []
    t = td.tree
    if t.n != len(td.bags):
        out.append("tree and bag count differ")
        return out
    if t.n == 0:
        if g.n:
            out.append("empty decomposition of a non-empty graph")
        return out
    if t.m != t.n - 1 or len(connected_components(t)) != 1:
        out.append("tree: decomposition graph is not a tree")
    where = {v: [] for v in range(g.n)}
    for node, bag in enumerate(td.bags):
        for v in bag:
            if v not in where:
                out.append(f"bag {node} holds unknown vertex {v}")
            else:
                where[v].append(node)
    for v in range(g.n):
        if not where[v]:
            out.append(f"vertex {v} is in no bag")
    bagsets = [set(b) for b in td.bags]
    for u, v in g.edges:
        if not any(u in b and v in b for b in bagsets):
            out.append(f"edge ({u}, {v}) is in no bag")
    for v, nodes in where.items():
        if nodes and not is_connected_set(t, nodes):
            out.append(f"subtree: bags containing vertex {v} are not connected")
    return out


def width(td: TreeDecomposition) -> int:
    return max((len(b) for b in td.bags), default=0) - 1


def adhesion(td: TreeDecomposition) -> int:
    return max((len(set(td.bags[a]) & set(td.bags[b])) for a, b in td.tree.edges),
               default=0)


def torso_at(g: Graph, td: TreeDecomposition, node: int) -> tuple:
    """Torso at ``node`` as (graph on the bag, bag vertex list)."""
    bad = validate_td(g, td)
    if bad:
        raise DomainError("invalid tree-decomposition", violations=bad)
    bag = list(td.bags[node])
    sub, index = induced_subgraph(g, bag)
    extra = []
    for other in td.tree.neighbors(node):
        shared = sorted(set(bag) & set(td.bags[other]))
        extra += [(index[a], index[b]) for a, b in combinations(shared, 2)]
    return _simple(sub.n, list(sub.edges) + extra), bag


def torso_annotated(g: Graph, x: Iterable[int]) -> tuple:
    """Graph on ``x``: g[x] plus a clique on N(C) for each component C of g - x.

    Returns (graph, sorted x) with vertex i standing for the i-th member.
    """
    xs = sorted(set(x))
    sub, index = induced_subgraph(g, xs)
    rest = [v for v in range(g.n) if v not in index]
    extra = []
    for comp in connected_components(g, rest):
        nb = sorted({w for v in comp for w in g.neighbors(v) if w in index})
        extra += [(index[a], index[b]) for a, b in combinations(nb, 2)]
    return _simple(sub.n, list(sub.edges) + extra), xs


# ------------------------------------------------------ exact treewidth

def _masks(g: Graph) -> list:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _q_size(adj, inside: int, v: int) -> int:
    # vertices outside inside+v reachable from v through ``inside``
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        nb = adj[u] & ~seen
        seen |= nb
        out |= nb & ~inside
        inner = nb & inside
        while inner:
            low = inner & -inner
            stack.append(low.bit_length() - 1)
            inner ^= low
    return bin(out).count("1")


def _order_to_td(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition from an elimination order (elimination game)."""
    if g.n == 0:
        return TreeDecomposition(Graph(0, ()), ())
    pos = {v: i for i, v in enumerate(order)}
    nb = [set(g.neighbors(v)) for v in range(g.n)]
    bags = []
    parent = []
    for v in order:
        later = {w for w in nb[v] if pos[w] > pos[v]}
        bags.append({v} | later)
        for a in later:
            nb[a] |= later - {a}
        parent.append(min(later, key=pos.get) if later else None)
    edges = []
    roots = []
    for i, p in enumerate(parent):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    edges += [(roots[j], roots[j + 1]) for j in range(len(roots) - 1)]
    return TreeDecomposition.make(edges, bags)


def treewidth_dp(g: Graph) -> tuple:
    """Exact treewidth by dynamic programming over eliminated vertex sets.

    Returns (width, elimination order).
    """
    n = g.n
    if n == 0:
        return -1, []
    adj = _masks(g)
    full = (1 << n) - 1
    best = {0: -1}
    choice = {}
    # process subsets by size so every predecessor is ready
    layer = {0}
    for _ in range(n):
        nxt = {}
        for s in layer:
            base = best[s]
            rest = full & ~s
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                val = max(base, _q_size(adj, s, v))
                t = s | low
                if t not in nxt or val < nxt[t][0]:
                    nxt[t] = (val, v)
        layer = set()
        for t, (val, v) in nxt.items():
            best[t] = val
            choice[t] = v
            layer.add(t)
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return best[full], order


def _min_degree_bound(adj_sets) -> int:
    # degeneracy of the remaining graph: a lower bound on treewidth
    nb = {v: set(a) for v, a in adj_sets.items()}
    lb = 0
    while nb:
        v = min(nb, key=lambda u: (len(nb[u]), u))
        lb = max(lb, len(nb[v]))
        for w in nb[v]:
            nb[w].discard(v)
        del nb[v]
    return lb


def treewidth_bb(g: Graph) -> tuple:
    """Exact treewidth by branch and bound over elimination orderings."""
    n = g.n
    if n == 0:
        return -1, []
    start = {v: set(g.neighbors(v)) for v in range(n)}

    def eliminate(nb, v):
        out = {u: set(a) for u, a in nb.items() if u != v}
        for a in nb[v]:
            out[a] |= nb[v] - {a}
            out[a].discard(v)
        return out

    # greedy min-fill upper bound
    nb = start
    ub_order = []
    ub = 0
    while nb:
        def fill(u):
            ns = list(nb[u])
            return sum(1 for i in range(len(ns)) for j in range(i + 1, len(ns))
                       if ns[j] not in nb[ns[i]])
        v = min(nb, key=lambda u: (fill(u), len(nb[u]), u))
        ub = max(ub, len(nb[v]))
        ub_order.append(v)
        nb = eliminate(nb, v)
    best = [ub, ub_order]
    seen = {}

    def rec(nb, done, cur, order):
        if cur >= best[0]:
            return
        if len(nb) <= cur + 1:
            best[0], best[1] = cur, order + sorted(nb)
            return
        key = frozenset(done)
        if seen.get(key, math.inf) <= cur:
            return
        seen[key] = cur
        if max(cur, _min_degree_bound(nb)) >= best[0]:
            return
        # a simplicial vertex of small degree can always go first
        for v in sorted(nb):
            ns = nb[v]
            if len(ns) <= cur and all(b in nb[a] for a in ns for b in ns if a < b):
                rec(eliminate(nb, v), done | {v}, cur, order + [v])
                return
        for v in sorted(nb, key=lambda u: (len(nb[u]), u)):
            d = len(nb[v])
            if max(cur, d) < best[0]:
                rec(eliminate(nb, v), done | {v}, max(cur, d), order + [v])

    rec(start, frozenset(), 0, [])
    return best[0], best[1]


def treewidth_exact(g: Graph, cap: int = TW_CAP) -> AnnotatedValue:
    """Exact treewidth, cross-checked by two independent methods."""
    if g.n > cap:
        raise DomainError(f"exact treewidth capped at {cap} vertices", n=g.n)
    if g.n == 0:
        return AnnotatedValue("tw", -1, TreeDecomposition(Graph(0, ()), ()))
    w1, order = treewidth_dp(g)
    w2, _ = treewidth_bb(g)
    if w1 != w2:
        raise AssertionError(f"treewidth methods disagree: {w1} vs {w2}")
    td = _order_to_td(g, order)
    assert not validate_td(g, td) and width(td) == w1
    return AnnotatedValue("tw", w1, td)


def tw(g: Graph) -> int:
    return max(treewidth_exact(g).value, 0) if g.n else 0


# ---------------------------------------------------- annotated treewidth

def rooted_partitions(g: Graph, x: Iterable[int], limit: int = 10 ** 6):
    """Partitions of the vertices of x-meeting components into connected
    parts that each meet x.  Every x-minor is a subgraph of the contraction
    of one of these, so they suffice for monotone maxima.
    """
    xs = set(x)
    keep = sorted(v for comp in connected_components(g) if xs & set(comp) for v in comp)
    if not keep:
        yield []
        return
    parts: list = []
    count = [0]

    def rec(i):
        if i == len(keep):
            if all(xs & set(p) and is_connected_set(g, p) for p in parts):
                count[0] += 1
                if count[0] > limit:
                    raise BudgetExceeded("too many rooted partitions")
                yield [list(p) for p in parts]
            return
        v = keep[i]
        for p in parts:
            p.append(v)
            yield from rec(i + 1)
            p.pop()
        parts.append([v])
        yield from rec(i + 1)
        parts.pop()

    yield from rec(0)


def tw_annotated(g: Graph, x: Iterable[int], max_vertices: int = 12) -> AnnotatedValue:
    """Maximum treewidth over x-rooted minors; witness is the contraction partition."""
    xs = sorted(set(x))
    if not xs:
        return AnnotatedValue("tw", 0, [])
    if g.n > max_vertices:
        raise BudgetExceeded(f"annotated treewidth enumerates at most {max_vertices} vertices")
    best, witness = 0, None
    for parts in rooted_partitions(g, xs):
        h = contract_partition(g, parts)
        val = tw(h)
        if witness is None or val > best:
            best, witness = val, parts
    return AnnotatedValue("tw", best, witness)


def tw_torso(g: Graph, x: Iterable[int], cap: int = TW_CAP) -> int:
    """Treewidth of torso(g, x), written tw'(G, X) in the literature."""
    t, _ = torso_annotated(g, x)
    return max(treewidth_exact(t, cap).value, 0) if t.n else 0


def tw_annotated_apex(g: Graph, x: Iterable[int], budget=None) -> AnnotatedValue:
    """tw(g, x) for inputs where g plus one vertex joined to all of x is planar.

    Adding that vertex to any x-minor keeps it a minor of the planar graph,
    so every x-minor is outerplanar and the value is at most 2.  It is 2
    exactly when a triangle is an x-minor and 1 when an edge is.  The
    witness is the rooted model found.
    """
    from .minors import SearchBudget, find_minor
    xs = sorted(set(x))
    if not xs:
        return AnnotatedValue("tw", 0, None)
    apex = g.n
    if not is_planar(_simple(g.n + 1, list(g.edges) + [(v, apex) for v in xs])):
        raise DomainError("g plus an apex on x is not planar")
    budget = budget or SearchBudget(max_host_vertices=max(g.n, 1))
    if budget.max_host_vertices < g.n:
        raise BudgetExceeded(f"host has {g.n} vertices, budget allows "
                             f"{budget.max_host_vertices}")
    for t in (3, 2):
        model = find_minor(g, complete_graph(t), xs, budget)
        if model is not None:
            return AnnotatedValue("tw", t - 1, model)
    return AnnotatedValue("tw", 0, None)


# ------------------------------------------------ modulators and planarity

def is_planar(g: Graph) -> bool:
    import networkx as nx
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.check_planarity(h)[0]


def modulator_value(g: Graph, class_pred: Callable[[Graph], bool],
                    param: Callable[[Graph, list], int],
                    x: Iterable[int] | None = None, max_vertices: int = 12) -> tuple:
    """Smallest param(g, X) over sets X with class_pred(g - X).

    With ``x`` given only that set is evaluated.  Returns (value, X).
    """
    if x is not None:
        xs = sorted(set(x))
        rest, _ = delete_vertices(g, xs)
        if not class_pred(rest):
            raise DomainError("g - X is outside the target class", x=xs)
        return param(g, xs), xs
    if g.n > max_vertices:
        raise BudgetExceeded(f"modulator search enumerates at most {max_vertices} vertices")
    best = None
    for size in range(g.n + 1):
        for xs in combinations(range(g.n), size):
            rest, _ = delete_vertices(g, xs)
            if not class_pred(rest):
                continue
            val = param(g, list(xs))
            if best is None or val < best[0]:
                best = (val, list(xs))
    if best is None:
        raise DomainError("no modulator exists")
    return best


# ------------------------------------------------------- clique sums

def cliquesum_check(g: Graph, td: TreeDecomposition, torso_pred) -> list:
    bad = validate_td(g, td)
    if bad:
        return bad
    out = []
    for node in range(len(td.bags)):
        t, _ = torso_at(g, td, node)
        if not torso_pred(t):
            out.append(f"torso at node {node} fails the predicate")
    return out


def cliquesum_search(g: Graph, torso_pred, max_vertices: int = 8):
    """A tree-decomposition of ``g`` whose torsos all satisfy ``torso_pred``,
    or None when no such decomposition exists.

    Exhaustive: a decomposition either is a single bag or splits along a tree
    edge into two smaller instances, each side completed into a clique on
    the shared set.
    """
    if g.n > max_vertices:
        raise BudgetExceeded(f"clique-sum search handles at most {max_vertices} vertices")
    verts = frozenset(range(g.n))
    base_edges = frozenset(g.edges)

    @lru_cache(maxsize=None)
    def solve(vs: frozenset, es: frozenset):
        order = sorted(vs)
        index = {v: i for i, v in enumerate(order)}
        local = _simple(len(order), [(index[a], index[b]) for a, b in es])
        if torso_pred(local):
            return ((tuple(order),), ())
        adj = {v: set() for v in vs}
        for a, b in es:
            adj[a].add(b)
            adj[b].add(a)
        vlist = order
        # proper separations (A, B): each vertex goes to A only, B only or both
        for code in range(3 ** len(vlist)):
            a_side, b_side = set(), set()
            c = code
            for v in vlist:
                r = c % 3
                c //= 3
                if r != 1:
                    a_side.add(v)
                if r != 0:
                    b_side.add(v)
            if min(vlist) not in a_side - b_side:
                continue  # fix orientation
            if not b_side - a_side:
                continue
            if any(b in b_side - a_side for a in a_side - b_side for b in adj[a]):
                continue
            sep = a_side & b_side
            clique = {(min(p), max(p)) for p in combinations(sorted(sep), 2)}
            ea = frozenset({e for e in es if e[0] in a_side and e[1] in a_side} | clique)
            eb = frozenset({e for e in es if e[0] in b_side and e[1] in b_side} | clique)
            left = solve(frozenset(a_side), ea)
            if left is None:
                continue
            right = solve(frozenset(b_side), eb)
            if right is None:
                continue
            return _glue(left, right, sep)
        # nested bags: a bag completed into a clique next to the whole graph
        for size in range(2, len(vlist)):
            for sub in combinations(vlist, size):
                clique = {(min(p), max(p)) for p in combinations(sub, 2)}
                if clique <= es:
                    continue
                whole = solve(vs, frozenset(es | clique))
                if whole is None:
                    continue
                order_s = sorted(sub)
                idx = {v: i for i, v in enumerate(order_s)}
                kc = _simple(len(order_s), [(idx[a], idx[b]) for a, b in clique])
                if torso_pred(kc):
                    return _glue(whole, ((tuple(order_s),), ()), set(sub))
        return None

    got = solve(verts, base_edges)
    if got is None:
        return None
    bags, edges = got
    td = TreeDecomposition.make(edges, bags)
    assert not cliquesum_check(g, td, torso_pred), cliquesum_check(g, td, torso_pred)
    return td


def _glue(left, right, sep):
    lb, le = left
    rb, re_ = right
    off = len(lb)
    a = next(i for i, b in enumerate(lb) if sep <= set(b))
    b = next(i for i, bb in enumerate(rb) if sep <= set(bb))
    edges = tuple(le) + tuple((x + off, y + off) for x, y in re_) + ((a, b + off),)
    return tuple(lb) + tuple(rb), edges


def star_value(g: Graph, param: Callable[[Graph], int], max_vertices: int = 8) -> int:
    """Least k with g in the clique-sum closure of graphs having param <= k."""
    k = 0
    while True:
        if cliquesum_search(g, lambda t: param(t) <= k, max_vertices) is not None:
            return k
        k += 1


# ------------------------------------------------------------- PACE .td

def to_td_format(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {max((len(b) for b in td.bags), default=0)} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in bag]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree.edges]
    return "\n".join(lines) + "\n"


def from_td_format(text: str) -> tuple:
    """Parse a .td file; returns (decomposition, vertex count)."""
    header = None
    bags = {}
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if len(tok) != 5 or tok[1] != "td":
                raise DomainError(f"bad header: {line!r}")
            header = tuple(int(t) for t in tok[2:])
        elif tok[0] == "b":
            bags[int(tok[1]) - 1] = [int(t) - 1 for t in tok[2:]]
        else:
            edges.append((int(tok[0]) - 1, int(tok[1]) - 1))
    if header is None:
        raise DomainError("missing 's td' header")
    nb, _, n = header
    if sorted(bags) != list(range(nb)):
        raise DomainError("bag ids must be 1..#bags")
    td = TreeDecomposition.make(edges, [bags[i] for i in range(nb)])
    return td, n


# ------------------------------------------------------ grid parameters

def _bg_pattern(h, c, k):
    from .generators import dyck_grid
    return dyck_grid(h, c, k).graph


def bg_surface(g: Graph, surface, budget=None, floor: int = 0) -> int:
    """Largest k with the Dyck-grid of ``surface`` and order k as a minor.

    Orders at or below ``floor`` are not searched (callers pass a value
    already known to be achieved elsewhere).
    """
    from .minors import DEFAULT_BUDGET, find_minor
    budget = budget or DEFAULT_BUDGET
    if surface.empty:
        return math.inf
    k = 1
    while _bg_pattern(surface.h, surface.c, k + 1).n <= g.n:
        k += 1
    while k > floor:
        pat = _bg_pattern(surface.h, surface.c, k)
        if pat.n <= g.n and pat.m <= g.m:
            if pat.n == g.n and pat.edges == g.edges:
                return k
            if find_minor(g, pat, None, budget) is not None:
                return k
        k -= 1
    return floor


def sobs_bg(g: Graph, surfaces: Iterable, budget=None) -> int:
    """max over the obstructions of the closed set ``surfaces`` of bg_surface."""
    from .surfaces import sobs
    obs = sobs(list(surfaces))
    if any(s.empty for s in obs):
        return math.inf
    best = 0
    # exact copies first: they settle the answer without any search
    for s in obs:
        k = 1
        while _bg_pattern(s.h, s.c, k).n < g.n:
            k += 1
        pat = _bg_pattern(s.h, s.c, k)
        if pat.n == g.n and pat.edges == g.edges:
            best = max(best, k)
    for s in obs:
        best = max(best, bg_surface(g, s, budget, floor=best))
    return best


def g_bg(g: Graph, genus: int, budget=None) -> int:
    """The genus-``genus`` biggest grid: obstructions of Euler genus below it."""
    from .surfaces import genus_class
    return sobs_bg(g, genus_class(genus - 1), budget)


def param_eval(g: Graph, name: str, arg, budget=None):
    if name == "g_bg":
        return g_bg(g, int(arg), budget)
    if name == "sobs_bg":
        return sobs_bg(g, arg, budget)
    if name == "bg_surface":
        return bg_surface(g, arg, budget)
    raise DomainError(f"unknown parameter {name!r}")
