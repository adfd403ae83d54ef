"""Parametric grid families: cylindrical grids, mixed surface grids, Dyck-grids,
walls and the variants used by the lower-bound constructions.

Vertex numbering is fixed: base grid vertices row-major by (cycle, position),
then subdivision vertices of transaction paths in the order the paths are
added, then any extra vertices (satellites).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError
from .graph import Graph, _simple, delete_vertices, grid_graph, line_graph

HANDLE = "handle"
CROSSCAP = "crosscap"


@dataclass(frozen=True)
class TransactionRecord:
    kind: str
    position: int
    paths: tuple  # tuple of vertex tuples, endpoints on cycle 1
    base: int = 0  # cycle positions of this block are base+1 .. base+4k

    def endpoints(self):
        return [(p[0], p[-1]) for p in self.paths]

    def bundles(self):
        if self.kind == HANDLE:
            m = len(self.paths) // 2
            return [self.paths[:m], self.paths[m:]]
        return [self.paths]


@dataclass(frozen=True)
class LabeledGrid:
    graph: Graph
    coord: dict  # vertex -> (cycle, position), base vertices only
    transactions: tuple = ()
    subdivision_vertices: frozenset = frozenset()
    order: int = 0  # number of cycles
    length: int = 0  # cycle length
    extra: dict = field(default_factory=dict)

    def vertex(self, i: int, j: int) -> int:
        """Vertex at cycle ``i`` and position ``j`` (both 1-based)."""
        return (i - 1) * self.length + (j - 1)

    def cycle(self, i: int) -> list:
        return [self.vertex(i, j) for j in range(1, self.length + 1)]

    def column(self, j: int) -> list:
        return [self.vertex(i, j) for i in range(1, self.order + 1)]

    def kinds(self) -> list:
        return [t.kind for t in self.transactions]

    def to_json_obj(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": self.graph.edge_list(),
            "order": self.order,
            "length": self.length,
            "coord": {str(v): list(c) for v, c in sorted(self.coord.items())},
            "transactions": [
                {"kind": t.kind, "position": t.position, "base": t.base,
                 "paths": [list(p) for p in t.paths]}
                for t in self.transactions
            ],
            "subdivision_vertices": sorted(self.subdivision_vertices),
            "extra": {k: sorted(v) if isinstance(v, (set, frozenset)) else v
                      for k, v in sorted(self.extra.items())},
        }


def _cyl_edges(m: int, n: int) -> list:
    es = []
    for i in range(m):
        for j in range(n):
            v = i * n + j
            es.append((v, i * n + (j + 1) % n))
            if i + 1 < m:
                es.append((v, v + n))
    return es


def cylindrical_grid(m: int, n: int) -> LabeledGrid:
    """``m`` concentric cycles of length ``n`` joined position-wise."""
    if m < 1:
        raise DomainError("need at least one cycle", m=m)
    if n < 3:
        raise DomainError("cycle length must be at least 3", n=n)
    g = _simple(m * n, _cyl_edges(m, n))
    coord = {i * n + j: (i + 1, j + 1) for i in range(m) for j in range(n)}
    return LabeledGrid(g, coord, (), frozenset(), m, n)


def handle_pairs(k: int, base: int) -> list:
    """Cycle-1 position pairs of a handle block starting after ``base``."""
    first = [(base + j, base + 3 * k - j + 1) for j in range(1, k + 1)]
    second = [(base + k + j, base + 4 * k - j + 1) for j in range(1, k + 1)]
    return first + second


def crosscap_pairs(k: int, base: int) -> list:
    return [(base + j, base + 2 * k + j) for j in range(1, 2 * k + 1)]


def _subdiv_counts(subdivisions, total: int) -> list:
    if isinstance(subdivisions, int):
        if subdivisions < 0:
            raise DomainError("subdivision count must be non-negative")
        return [subdivisions] * total
    counts = list(subdivisions)
    if len(counts) != total or any(c < 0 for c in counts):
        raise DomainError(f"need {total} non-negative subdivision counts",
                          got=len(counts))
    return counts


def _build(k: int, blocks: Sequence[str], first_position: int,
           subdivisions=0, leading: int = 0) -> LabeledGrid:
    # ``leading`` blank blocks (no transaction) precede the transaction blocks
    if k < 1:
        raise DomainError("order must be at least 1", k=k)
    for kind in blocks:
        if kind not in (HANDLE, CROSSCAP):
            raise DomainError(f"unknown transaction kind {kind!r}")
    n = 4 * k * (leading + len(blocks))
    if n < 3:
        raise DomainError("cycle length must be at least 3", n=n)
    es = _cyl_edges(k, n)
    nxt = k * n
    counts = _subdiv_counts(subdivisions, 2 * k * len(blocks))
    ci = 0
    records = []
    subs = set()
    for b, kind in enumerate(blocks):
        base = 4 * k * (leading + b)
        pairs = handle_pairs(k, base) if kind == HANDLE else crosscap_pairs(k, base)
        paths = []
        for a, c in pairs:
            path = [a - 1]
            for _ in range(counts[ci]):
                path.append(nxt)
                subs.add(nxt)
                nxt += 1
            path.append(c - 1)
            ci += 1
            es.extend(zip(path, path[1:]))
            paths.append(tuple(path))
        records.append(TransactionRecord(kind, first_position + b, tuple(paths), base))
    g = _simple(nxt, es)
    coord = {i * n + j: (i + 1, j + 1) for i in range(k) for j in range(n)}
    return LabeledGrid(g, coord, tuple(records), frozenset(subs), k, n)


def mixed_surface_grid(k: int, kinds: Sequence[str], subdivisions=0) -> LabeledGrid:
    """Order-``k`` grid with ``kinds[b]`` added at position ``b + 2``.

    The base is the (k, 4(len(kinds)+1)k)-cylindrical grid; position 1 is the
    transaction-free annulus block.
    """
    kinds = list(kinds)
    if not kinds:
        raise DomainError("kinds must be non-empty")
    return _build(k, kinds, 2, subdivisions, leading=1)


def annulus_grid(k: int) -> LabeledGrid:
    """The (k, 4k)-cylindrical grid."""
    return cylindrical_grid(k, 4 * k) if k >= 1 else cylindrical_grid(k, 0)


def handle_grid(k: int) -> LabeledGrid:
    """A single handle block: (k, 4k)-cylindrical grid with a handle at position 1."""
    return _build(k, [HANDLE], 1)


def crosscap_grid(k: int) -> LabeledGrid:
    return _build(k, [CROSSCAP], 1)


def normalize_dyck(h: int, c: int) -> tuple:
    if (h, c) == (-1, 2):
        return 0, 0
    if h < 0 or c < 0:
        raise DomainError("handles and crosscaps must be non-negative", h=h, c=c)
    if c > 2:
        raise DomainError("Dyck-grids carry at most two crosscaps", h=h, c=c)
    return h, c


def dyck_grid(h: int, c: int, k: int) -> LabeledGrid:
    """h handles at positions 2..h+1, then c <= 2 crosscaps."""
    h, c = normalize_dyck(h, c)
    kinds = [HANDLE] * h + [CROSSCAP] * c
    if not kinds:
        return annulus_grid(k)
    return mixed_surface_grid(k, kinds)


# ------------------------------------------------------------------ walls

def elementary_wall(k: int) -> Graph:
    return elementary_wall_labeled(k)[0]


def elementary_wall_labeled(k: int) -> tuple:
    """Wall plus a map vertex -> (row, column) in the underlying k x 2k grid."""
    if k < 3:
        raise DomainError("walls need k >= 3", k=k)
    cols = 2 * k
    es = []
    for i in range(1, k + 1):
        for j in range(1, cols + 1):
            v = (i - 1) * cols + (j - 1)
            if j < cols:
                es.append((v, v + 1))
            # vertical edge i in column j survives iff i + j is odd
            if i < k and (i + j) % 2 == 1:
                es.append((v, v + cols))
    g = _simple(k * cols, es)
    ones = [v for v in range(g.n) if g.degree(v) == 1]
    h, index = delete_vertices(g, ones)
    labels = {index[v]: (v // cols + 1, v % cols + 1) for v in index}
    return h, labels


def wall_perimeter(k: int) -> list:
    """Vertices of the perimeter of the elementary k-wall."""
    _, labels = elementary_wall_labeled(k)
    return sorted(v for v, (i, j) in labels.items()
                  if j in (1, 2, 2 * k - 1, 2 * k) or i in (1, k))


def dyck_wall(h: int, c: int, t: int) -> Graph:
    """Subcubic thinning of the order-2t Dyck-grid keeping its first t cycles."""
    if t < 3:
        raise DomainError("Dyck-walls need t >= 3", t=t)
    if c < 0 or c > 2 or h < 0:
        raise DomainError("need h >= 0 and c in [0, 2]", h=h, c=c)
    big = dyck_grid(h, c, 2 * t)
    n = big.length
    g = big.graph
    drop = set()
    for i in range(1, t):
        for j in range(1, n + 1):
            if (i % 2 == 1 and j % 2 == 1) or (i % 2 == 0 and j % 2 == 0):
                drop.add((big.vertex(i, j), big.vertex(i + 1, j)))
    for rec in big.transactions:
        for path in rec.paths:
            lo, hi = sorted((path[0], path[-1]))
            if (lo + 1) % 2 == 0:
                drop.update(zip(path, path[1:]))
            elif (hi + 1) % 2 == 0:
                # kept edge ending at an even position: shed that vertex's spoke
                drop.add((hi, big.vertex(2, hi + 1)))
    drop = {(min(a, b), max(a, b)) for a, b in drop}
    inner = [big.vertex(i, j) for i in range(t + 1, 2 * t + 1) for j in range(1, n + 1)]
    kept = Graph(g.n, tuple(e for e in g.edges if e not in drop))
    out, _ = delete_vertices(kept, inner)
    return out


# --------------------------------------------------------------- variants

def dtilde(h: int, c: int, k: int) -> LabeledGrid:
    """Dyck-grid with the annulus block removed and each cut cycle closed up.

    Positions are renumbered so the first transaction block starts at 1.
    """
    h, c = normalize_dyck(h, c)
    if (h, c) == (0, 0):
        raise DomainError("the annulus-free variant needs (h, c) != (0, 0)")
    kinds = [HANDLE] * h + [CROSSCAP] * c
    return _build(k, kinds, 2, leading=0)


def dhat(h: int, c: int, k: int) -> LabeledGrid:
    """dtilde plus k(h+c) satellites, each joined to four consecutive
    vertices of the last cycle."""
    base = dtilde(h, c, k)
    g = base.graph
    nxt = g.n
    es = list(g.edges)
    sats = []
    for q in range(base.length // 4):
        s = nxt
        nxt += 1
        sats.append(s)
        for j in range(4 * q + 1, 4 * q + 5):
            es.append((s, base.vertex(k, j)))
    out = _simple(nxt, es)
    return LabeledGrid(out, dict(base.coord), base.transactions,
                       base.subdivision_vertices, base.order, base.length,
                       {"satellites": sats})


def crossed_grid(k: int) -> Graph:
    """Line graph of the once-subdivided inner part of the (k+2)x(k+2) grid."""
    if k < 1:
        raise DomainError("crossed grids need k >= 1", k=k)
    grid = grid_graph(k + 2, k + 2)
    kept = [e for e in grid.edges if not (grid.degree(e[0]) < 4 and grid.degree(e[1]) < 4)]
    nxt = grid.n
    es = []
    for u, v in kept:
        es += [(u, nxt), (nxt, v)]
        nxt += 1
    used = sorted({x for e in es for x in e})
    sub, _ = delete_vertices(_simple(nxt, es), set(range(nxt)) - set(used))
    return line_graph(sub)


def branch_paths(g: Graph) -> list:
    """Maximal paths whose ends have degree 3 and whose interior has degree 2."""
    hubs = {v for v in range(g.n) if g.degree(v) >= 3}
    out = []
    seen = set()
    for s in sorted(hubs):
        for w in sorted(g.neighbors(s)):
            path = [s, w]
            while path[-1] not in hubs:
                a, b = path[-2], path[-1]
                path.append(next(x for x in g.neighbors(b) if x != a))
            key = (min(path[0], path[-1]), max(path[0], path[-1]),
                   min(path[1], path[-2]))
            if key not in seen:
                seen.add(key)
                out.append(path if path[0] <= path[-1] else path[::-1])
    return out


def hairy_wall(r: int, x: int | None = None) -> tuple:
    """Annotated r-wall with one pendant hair per branch path.

    Each branch path of the elementary r-wall gets a new vertex on its first
    edge (the set S), and each of those carries a pendant edge to a fresh
    vertex; the fresh vertices form X.  Returns (graph, X, S).
    """
    w = elementary_wall(r)
    paths = branch_paths(w)
    if x is not None and x != len(paths):
        raise DomainError(f"a hairy {r}-wall has exactly {len(paths)} hairs", x=x)
    drop = set()
    es = []
    nxt = w.n
    s_set = []
    for p in paths:
        a, b = p[0], p[1]
        drop.add((min(a, b), max(a, b)))
        es += [(a, nxt), (nxt, b)]
        s_set.append(nxt)
        nxt += 1
    x_set = []
    for s in s_set:
        es.append((s, nxt))
        x_set.append(nxt)
        nxt += 1
    es += [e for e in w.edges if e not in drop]
    return _simple(nxt, es), x_set, s_set


def special_variants(kind: str, **params):
    if kind == "dtilde":
        return dtilde(params["h"], params["c"], params["k"])
    if kind == "dhat":
        return dhat(params["h"], params["c"], params["k"])
    if kind == "crossed":
        return crossed_grid(params["k"])
    if kind == "hairy_wall":
        return hairy_wall(params["r"], params.get("x"))
    raise DomainError(f"unknown variant {kind!r}")


# ------------------------------------------------------- grid witnesses

def block_grid_rows(lg: LabeledGrid, rec: TransactionRecord) -> list:
    """Rows of grid subgraphs spanned by a transaction block.

    Each transaction path, extended down the two columns at its ends,
    gives one row.  A crosscap yields one 2k x 2k grid, a handle two
    2k x k grids (one per bundle).  Returns a list of grids, each a list
    of rows (vertex lists).
    """
    k = lg.order
    grids = []
    for bundle in rec.bundles():
        rows = []
        for path in bundle:
            a, b = path[0], path[-1]
            ja, jb = lg.coord[a][1], lg.coord[b][1]
            left = [lg.vertex(i, ja) for i in range(k, 0, -1)]
            right = [lg.vertex(i, jb) for i in range(1, k + 1)]
            rows.append(left + list(path[1:-1]) + right)
        grids.append(rows)
    return grids


def check_grid_map(g: Graph, rows: Sequence[Sequence[int]]) -> list:
    """Violations preventing ``rows`` from being a subdivided-free grid subgraph."""
    problems = []
    flat = [v for r in rows for v in r]
    if len(set(flat)) != len(flat):
        problems.append("rows overlap")
    width = {len(r) for r in rows}
    if len(width) != 1:
        problems.append("rows differ in length")
        return problems
    for a, row in enumerate(rows):
        for b in range(len(row) - 1):
            if not g.has_edge(row[b], row[b + 1]):
                problems.append(f"missing row edge {row[b]}-{row[b + 1]}")
        if a + 1 < len(rows):
            for b, v in enumerate(row):
                if not g.has_edge(v, rows[a + 1][b]):
                    problems.append(f"missing column edge {v}-{rows[a + 1][b]}")
    return problems
