"""Simple undirected graphs on dense integer vertices.

Vertices are always ``0..n-1``.  Every operation returns a fresh graph; the
edge tuple is kept sorted so iteration order never depends on hashing.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple = ()
    _adj: tuple = field(default=(), repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self._adj:
            adj = [set() for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def edge_list(self) -> list:
        return [list(e) for e in self.edges]

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a graph, rejecting loops, repeated edges and out-of-range ends."""
    if n < 0:
        raise DomainError("vertex count must be non-negative", n=n)
    seen = set()
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise DomainError(f"self-loop at {u}", pair=(u, v))
        if not (0 <= u < n and 0 <= v < n):
            raise DomainError(f"endpoint out of range in ({u}, {v})", pair=(u, v))
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DomainError(f"duplicate edge ({u}, {v})", pair=(u, v))
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def _simple(n: int, pairs: Iterable[tuple]) -> Graph:
    # internal: silently drops loops and duplicates
    es = set()
    for u, v in pairs:
        if u != v:
            es.add((u, v) if u < v else (v, u))
    return Graph(n, tuple(sorted(es)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices", n=n)
    return _simple(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(rows: int, cols: int) -> Graph:
    """The rows x cols grid, vertex ``r*cols + c``."""
    es = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                es.append((v, v + 1))
            if r + 1 < rows:
                es.append((v, v + cols))
    return Graph(rows * cols, tuple(sorted(es)))


def is_connected_set(g: Graph, part: Iterable[int]) -> bool:
    part = set(part)
    if not part:
        return False
    start = min(part)
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in g.neighbors(u):
            if w in part and w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(part)


def contract_partition(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Quotient by connected, disjoint parts; vertices outside every part vanish."""
    owner = {}
    for i, part in enumerate(parts):
        part = sorted(set(part))
        if not part:
            raise DomainError(f"part {i} is empty", part=i)
        for v in part:
            if not 0 <= v < g.n:
                raise DomainError(f"vertex {v} not in graph", part=part)
            if v in owner:
                raise DomainError(f"vertex {v} lies in two parts", part=part)
            owner[v] = i
        if not is_connected_set(g, part):
            raise DomainError(f"part {part} is not connected", part=part)
    es = []
    for u, v in g.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            es.append((a, b))
    return _simple(len(parts), es)


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list:
    """Components as sorted lists, ordered by smallest member."""
    allowed = set(range(g.n)) if within is None else set(within)
    seen = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.neighbors(u):
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple:
    """Subgraph on ``keep``; returns (graph, old->new map), order preserving."""
    keep = sorted(set(keep))
    index = {v: i for i, v in enumerate(keep)}
    es = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(keep), tuple(sorted(es))), index


def delete_vertices(g: Graph, gone: Iterable[int]) -> tuple:
    gone = set(gone)
    return induced_subgraph(g, [v for v in range(g.n) if v not in gone])


def add_edges(g: Graph, pairs: Iterable[tuple]) -> Graph:
    return _simple(g.n, list(g.edges) + list(pairs))


def delete_edges(g: Graph, pairs: Iterable[tuple]) -> Graph:
    drop = {(min(u, v), max(u, v)) for u, v in pairs}
    return Graph(g.n, tuple(e for e in g.edges if e not in drop))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    return _simple(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex i is ``g.edges[i]``."""
    at = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        at[u].append(i)
        at[v].append(i)
    es = []
    for inc in at:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                es.append((inc[a], inc[b]))
    return _simple(g.m, es)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    return Graph(a.n + b.n, a.edges + tuple((u + a.n, v + a.n) for u, v in b.edges))


# ---------------------------------------------------------------- formats

def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    n = None
    pairs = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge":
                raise DomainError(f"bad header: {line!r}")
            n, m = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if n is None:
                raise DomainError("edge line before header")
            pairs.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise DomainError(f"unrecognised line: {line!r}")
    if n is None:
        raise DomainError("missing 'p edge' header")
    if len(pairs) != m:
        raise DomainError(f"header announces {m} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)


def to_dot(g: Graph, labels: dict | None = None, name: str = "") -> str:
    head = f"graph {name} {{" if name else "graph {"
    lines = [head]
    for v in range(g.n):
        if labels and v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": g.edge_list()}


def from_json_obj(obj) -> Graph:
    if isinstance(obj, dict):
        return from_edge_list(int(obj["n"]), obj["edges"])
    # bare edge list: vertex count inferred
    pairs = [tuple(p) for p in obj]
    n = 1 + max((max(p) for p in pairs), default=-1)
    return from_edge_list(n, pairs)
