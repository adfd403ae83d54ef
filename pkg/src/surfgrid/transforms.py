"""Explicit minor models between mixed surface grids.

All models map a target grid of order k into a host grid whose cycles are
numbered from the outside in.  Target cycle i is realised on host cycle
``depth + i``; the first ``depth`` host cycles are free for routing the
target transactions up to the host's outer cycle.  Every target position p
gets an anchor column on the host; the branch set of target vertex (i, p)
is the run of host cycle ``depth + i`` from that anchor up to (not
including) the next anchor, cyclically.  Transaction paths join the branch
set of their first endpoint.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import DomainError
from .generators import CROSSCAP, HANDLE, LabeledGrid, dtilde, dyck_grid, \
    mixed_surface_grid, normalize_dyck
from .minors import MinorModel, make_model, validate_model


@dataclass(frozen=True)
class RoutedModel:
    model: MinorModel
    step_log: tuple = ()

    def to_json_obj(self) -> dict:
        import json
        obj = json.loads(self.model.to_json())
        obj["step_log"] = [dict(s) for s in self.step_log]
        return obj


@dataclass(frozen=True)
class PackingCertificate:
    copies: tuple
    multiplicity: dict

    def max_multiplicity(self) -> int:
        return max(self.multiplicity.values(), default=0)


@dataclass(frozen=True)
class OrderBudget:
    g: int
    k: int
    required_order: int
    step_plan: tuple = ()

    def factor(self) -> int:
        return math.prod(f for _, f in self.step_plan)


# ------------------------------------------------------------- geometry

def _foot(part: str, base: int, width: int, s: int) -> tuple:
    """Cycle-1 positions (A, B) of strand ``s`` in a band of a block of
    order ``width``."""
    if part == "x":
        return base + s, base + 2 * width + s
    if part == "r1":
        return base + s, base + 3 * width - s + 1
    return base + width + s, base + 4 * width - s + 1


def _band_width(part: str, order: int) -> int:
    return 2 * order if part == "x" else order


def _parts(kind: str) -> tuple:
    return ("x",) if kind == CROSSCAP else ("r1", "r2")


class _Layout:
    """Anchors and transaction paths of a target grid inside a host grid."""

    def __init__(self, host: LabeledGrid, target: LabeledGrid, depth: int):
        if depth + target.order > host.order:
            raise DomainError("host has too few cycles",
                              needed=depth + target.order, host=host.order)
        self.host, self.target, self.depth = host, target, depth
        self.anchor = {}  # target position -> host column
        self.paths = {}  # target position -> host vertices owned
        self.log = []

    def cell(self, row: int, col: int) -> int:
        return self.host.vertex(row, col)

    def column(self, col: int) -> list:
        return [self.cell(r, col) for r in range(1, self.depth + 1)]

    def straight(self, tpos: int, hpos: int, tend: int, hend: int):
        """Target pair (tpos, tend) realised by the host edge (hpos, hend)
        plus the two columns above it."""
        self.anchor[tpos] = hpos
        self.anchor[tend] = hend
        self.paths[tpos] = self.column(hpos) + self.column(hend)

    def straight_block(self, trec, hrec, offsets: dict):
        """Keep a target block as is, using host strands shifted by
        ``offsets[part]``."""
        k, m = self.target.order, self.host.order
        for part in _parts(trec.kind):
            for s in range(1, _band_width(part, k) + 1):
                ta, tb = _foot(part, trec.base, k, s)
                ha, hb = _foot(part, hrec.base, m, s + offsets.get(part, 0))
                self.straight(ta, ha, tb, hb)
        self.log.append({"step": "straight", "target_block": trec.position,
                         "host_block": hrec.position,
                         "strand_offsets": dict(sorted(offsets.items()))})

    def model(self) -> MinorModel:
        t, h, d = self.target, self.host, self.depth
        cols = sorted((c, p) for p, c in self.anchor.items())
        if len(cols) != t.length or len({c for c, _ in cols}) != t.length:
            raise AssertionError("anchors must be distinct and cover the target")
        seg = {}
        for idx, (c, p) in enumerate(cols):
            nxt = cols[(idx + 1) % len(cols)][0]
            run = []
            x = c
            while True:
                run.append(x)
                x = x % h.length + 1
                if x == nxt:
                    break
            seg[p] = run
        sets = [None] * t.graph.n
        for i in range(1, t.order + 1):
            for p in range(1, t.length + 1):
                s = [h.vertex(d + i, c) for c in seg[p]]
                if i == 1:
                    s += self.paths.get(p, [])
                sets[t.vertex(i, p)] = s
        return make_model(t.graph, h.graph, sets)

    def routed(self) -> RoutedModel:
        m = self.model()
        bad = validate_model(m)
        if bad:
            raise AssertionError(f"constructed model is invalid: {bad[:3]}")
        used = Counter(self.host.coord[v][0] for bs in m.branch_sets for v in bs
                       if v in self.host.coord)
        self.log.append({"step": "spare",
                         "cycles": [i for i in range(1, self.host.order + 1) if not used[i]],
                         "consumed": {str(i): used[i] for i in sorted(used)}})
        return RoutedModel(m, tuple(self.log))


# ---------------------------------------------------------------- router

_BIG = 10 ** 9


def _key(pt) -> int:
    side, col = pt
    return col if side == "T" else _BIG - col


class _Router:
    """Vertex-disjoint L-shaped routing of non-crossing chords in rows
    1..depth of a column interval.  Top points sit on row 1, bottom points
    on row ``depth``."""

    def __init__(self, depth: int):
        self.depth = depth
        self.chords = []

    def add(self, p, q) -> int:
        if p[0] == "B" and q[0] == "T":
            p, q = q, p
        if p[0] == "B":
            raise DomainError("bottom-to-bottom chords are not supported")
        if q[0] == "T" and p[1] > q[1]:
            p, q = q, p
        self.chords.append((p, q))
        return len(self.chords) - 1

    def route(self) -> list:
        tt = [i for i, (_, q) in enumerate(self.chords) if q[0] == "T"]
        tb = [i for i, (_, q) in enumerate(self.chords) if q[0] == "B"]
        row = {}
        for i in sorted(tt, key=lambda i: self.chords[i][1][1] - self.chords[i][0][1]):
            a, b = self.chords[i][0][1], self.chords[i][1][1]
            inner = [row[j] for j in row
                     if a < self.chords[j][0][1] and self.chords[j][1][1] < b]
            row[i] = 1 + max(inner, default=0)

        def span(i):
            x, y = self.chords[i][0][1], self.chords[i][1][1]
            return min(x, y), max(x, y)

        def base(i):
            lo, hi = span(i)
            over = [row[j] for j in tt
                    if self.chords[j][0][1] <= hi and self.chords[j][1][1] >= lo]
            return 1 + max(over, default=0)

        right = [i for i in tb if self.chords[i][1][1] > self.chords[i][0][1]]
        left = [i for i in tb if self.chords[i][1][1] < self.chords[i][0][1]]
        for group, rev in ((right, True), (left, False)):
            done = []
            for i in sorted(group, key=lambda i: self.chords[i][0][1], reverse=rev):
                lo, hi = span(i)
                r = base(i)
                for j in done:
                    jl, jh = span(j)
                    if jl <= hi and jh >= lo:
                        r = max(r, row[j] + 1)
                row[i] = r
                done.append(i)
        self.rows = row
        out = []
        for i, (p, q) in enumerate(self.chords):
            x = p[1]
            if q[0] == "B" and q[1] == x:
                cells = [(r, x) for r in range(1, self.depth + 1)]
            else:
                r, y = row[i], q[1]
                if r > self.depth:
                    raise DomainError("routing needs more free cycles",
                                      needed=r, available=self.depth)
                step = 1 if y > x else -1
                cells = [(s, x) for s in range(1, r + 1)]
                cells += [(r, c) for c in range(x + step, y + step, step)]
                end = r if q[0] == "T" else self.depth
                cells += [(s, y) for s in range(r - 1, 0, -1)] if q[0] == "T" \
                    else [(s, y) for s in range(r + 1, end + 1)]
            out.append(cells)
        seen = {}
        for i, cells in enumerate(out):
            for c in cells:
                if c in seen and seen[c] != i:
                    raise AssertionError(f"chords {seen[c]} and {i} meet at {c}")
                seen[c] = i
        return out


# --------------------------------------------------------------- schemes

def _entries(text: str) -> list:
    return [(n, int(i), int(d)) for n, i, d in re.findall(r"([A-Za-z]+)(\d+)d([01])", text)]


@dataclass(frozen=True)
class _Scheme:
    host: dict  # band -> (block offset, part)
    target: dict  # bundle -> (block offset, part)
    routes: dict  # bundle -> [(band, dir)]
    bands: dict  # band -> [(bundle, idx, dir)] in strand order
    target_kinds: tuple = field(default=())


def _scheme(host, target, routes, bands, kinds) -> _Scheme:
    return _Scheme(host, target,
                   {b: [(n, int(d)) for n, d in re.findall(r"([A-Za-z0-9]+?)d([01])", r)]
                    for b, r in routes.items()},
                   {b: _entries(s) for b, s in bands.items()}, tuple(kinds))


# crosscap then handle -> handle then crosscap
_SWAP_XH = _scheme(
    {"X": (0, "x"), "R1": (1, "r1"), "R2": (1, "r2")},
    {"u": (0, "r1"), "v": (0, "r2"), "t": (1, "x")},
    {"u": "R1d0", "v": "R2d0",
     "t": "R2d1 R1d0 R2d0 R1d1 Xd0 R1d0 R2d1 R1d1 R2d0"},
    {"R1": "t5d0 t3d1 u0d0 t1d0 t7d1", "R2": "t8d0 t0d1 v0d0 t2d0 t6d1",
     "X": "t4d0"},
    (HANDLE, CROSSCAP))

# handle then crosscap -> crosscap then handle
_SWAP_HX = _scheme(
    {"R1": (0, "r1"), "R2": (0, "r2"), "X": (1, "x")},
    {"t": (0, "x"), "u": (1, "r1"), "v": (1, "r2")},
    {"u": "R1d0", "v": "R2d0",
     "t": "R1d0 R2d1 R1d1 R2d0 Xd0 R2d1 R1d0 R2d0 R1d1"},
    {"R1": "t0d0 t8d1 u0d0 t6d0 t2d1", "R2": "t3d0 t5d1 v0d0 t7d0 t1d1",
     "X": "t4d0"},
    (CROSSCAP, HANDLE))

# three crosscaps -> handle then crosscap
_C2H = _scheme(
    {"X": (0, "x"), "Y": (1, "x"), "Z": (2, "x")},
    {"u": (0, "r1"), "v": (0, "r2"), "t": (1, "x")},
    {"u": "Xd0 Yd0", "v": "Yd0 Zd0", "t": "Zd1 Yd1 Xd0 Yd0 Yd0 Zd0 Zd0"},
    {"Y": "t3d0 u1d0 t1d1 v0d0 t4d0", "Z": "t5d0 v1d0 t0d1 t6d0",
     "X": "u0d0 t2d0"},
    (HANDLE, CROSSCAP))

# handle then crosscap -> three crosscaps
_H2C = _scheme(
    {"R1": (0, "r1"), "R2": (0, "r2"), "C": (1, "x")},
    {"X": (0, "x"), "Y": (1, "x"), "Z": (2, "x")},
    {"X": "R1d0 R2d1 R1d1 R2d0 Cd0 R2d1", "Y": "R2d0 Cd1 R2d1 R1d0 R2d0",
     "Z": "R2d1 R1d1 R2d0 Cd0"},
    {"R2": "X3d0 Y2d1 Z2d0 X5d1 Y0d0 Z0d1 Y4d0 X1d1",
     "R1": "X0d0 Z1d1 Y3d0 X2d1", "C": "X4d0 Y1d1 Z3d0"},
    (CROSSCAP, CROSSCAP, CROSSCAP))


def _route_scheme(lay: _Layout, sc: _Scheme, hrecs: list, trecs: list):
    """Realise the involved target blocks ``trecs`` inside host blocks
    ``hrecs`` following scheme ``sc``.

    The strand matching only depends on the cyclic order of the chord ends,
    so ports are first kept symbolic and then placed right under the host
    foot they connect to, which makes every port chord a straight column.
    """
    k, m, d = lay.target.order, lay.host.order, lay.depth
    width = {b: _band_width(sc.target[b][1], k) for b in sc.target}
    strands = {}  # (bundle, idx) -> first strand - 1 in its band
    for band, ents in sc.bands.items():
        off = 0
        for name, idx, _ in ents:
            strands[(name, idx)] = off
            off += width[name]
        cap = _band_width(sc.host[band][1], m)
        if off > cap:
            raise AssertionError(f"band {band} overfull: {off} > {cap}")

    def hfoot(band, s, side):
        blk, part = sc.host[band]
        a, b = _foot(part, hrecs[blk].base, m, s)
        return ("T", a if side == "A" else b)

    def key(pt):
        return _BIG - pt[1] if pt[0] == "P" else _key(pt)

    chords = []
    plan = []
    for name in sorted(sc.target):
        blk, part = sc.target[name]
        w = width[name]
        ends = [_foot(part, trecs[blk].base, k, s) for s in range(1, w + 1)]
        cur = [("P", a) for a, _ in ends]
        walk = [[] for _ in range(w)]
        used = []
        for idx, (band, dr) in enumerate(sc.routes[name]):
            off = strands[(name, idx)]
            fin, fout = ("A", "B") if dr == 0 else ("B", "A")
            nxt = [(off + s, hfoot(band, off + s, fin)) for s in range(1, w + 1)]
            order_cur = sorted(range(w), key=lambda j: key(cur[j]))
            order_nxt = sorted(range(w), key=lambda j: key(nxt[j][1]))
            new_cur = [None] * w
            for a, b in zip(order_cur, reversed(order_nxt)):
                s, pt = nxt[b]
                walk[a].append(len(chords))
                chords.append((cur[a], pt))
                new_cur[a] = hfoot(band, s, fout)
            cur = new_cur
            used.append(f"{band}:{off + 1}-{off + w}:{'AB' if dr == 0 else 'BA'}")
        fin = [("P", b) for _, b in ends]
        order_cur = sorted(range(w), key=lambda j: key(cur[j]))
        order_fin = sorted(range(w), key=lambda j: key(fin[j]))
        for a, b in zip(order_cur, reversed(order_fin)):
            if a != b:
                raise AssertionError(f"bundle {name} ends on the wrong strand")
            walk[a].append(len(chords))
            chords.append((cur[a], fin[b]))
        plan.append((ends, walk))
        lay.log.append({"step": "route", "bundle": name, "width": w,
                        "bands": used, "cycles": [1, d]})
    want = {}
    for p, q in chords:
        for u, v in ((p, q), (q, p)):
            if u[0] == "P":
                if v[0] != "T":
                    raise DomainError("port-to-port chords are not supported")
                want[u[1]] = v[1]
    last = 0
    for tpos in sorted(want):
        col = max(want[tpos], last + 1)
        lay.anchor[tpos] = col
        last = col
    router = _Router(d)
    ids = [router.add(*[("B", lay.anchor[u[1]]) if u[0] == "P" else u for u in c])
           for c in chords]
    cells = router.route()
    for ends, walk in plan:
        for (a, _), steps in zip(ends, walk):
            own = set()
            for st in steps:
                own.update(lay.cell(r, c) for r, c in cells[ids[st]])
            lay.paths[a] = sorted(own)


def _replace(order: int, kinds, i: int, factor: int, width: int,
             accept, sc_for, name: str) -> RoutedModel:
    kinds = list(kinds)
    if order % factor or order < factor:
        raise DomainError(f"order must be {factor}k", order=order)
    b = i - 2
    if not 0 <= b or b + width > len(kinds):
        raise DomainError("position out of range", i=i, blocks=len(kinds))
    here = tuple(kinds[b:b + width])
    if not accept(here):
        raise DomainError(f"{name} needs a different adjacency at position {i}",
                          found=list(here))
    sc = sc_for(here)
    k = order // factor
    tkinds = kinds[:b] + list(sc.target_kinds) + kinds[b + width:]
    host = mixed_surface_grid(order, kinds)
    target = mixed_surface_grid(k, tkinds)
    lay = _Layout(host, target, order - k)
    for p in range(1, 4 * k + 1):
        lay.anchor[p] = p
    hr, tr = list(host.transactions), list(target.transactions)
    nt = len(sc.target_kinds)
    for j in range(b):
        lay.straight_block(tr[j], hr[j], {})
    for j in range(b + width, len(kinds)):
        lay.straight_block(tr[j - width + nt], hr[j], {})
    _route_scheme(lay, sc, hr[b:b + width], tr[b:b + nt])
    lay.log.insert(0, {"step": name, "host_order": order, "target_order": k,
                       "position": i, "host_kinds": kinds, "target_kinds": tkinds})
    return lay.routed()


def swap_adjacent(order: int, kinds, i: int) -> RoutedModel:
    """Order-``order/9`` grid with the blocks at positions i, i+1 exchanged,
    as a minor of the order-``order`` grid.  One of the two blocks must be a
    handle and the other a crosscap."""
    return _replace(order, kinds, i, 9, 2,
                    lambda h: set(h) == {HANDLE, CROSSCAP},
                    lambda h: _SWAP_XH if h[0] == CROSSCAP else _SWAP_HX,
                    "swap_adjacent")


def crosscaps_to_handle(order: int, kinds, i: int) -> RoutedModel:
    """Three consecutive crosscaps at i..i+2 become a handle followed by a
    crosscap; target order is ``order/18``."""
    return _replace(order, kinds, i, 18, 3,
                    lambda h: h == (CROSSCAP,) * 3, lambda h: _C2H,
                    "crosscaps_to_handle")


def handle_to_crosscaps(order: int, kinds, i: int) -> RoutedModel:
    """A handle at i followed by a crosscap becomes three crosscaps; target
    order is ``order/18``."""
    return _replace(order, kinds, i, 18, 2,
                    lambda h: h == (HANDLE, CROSSCAP), lambda h: _H2C,
                    "handle_to_crosscaps")


# ------------------------------------------------------------ order plan

def plan_to_dyck(h: int, c: int, k: int, kinds=None) -> OrderBudget:
    """Symbolic sequence of swaps and conversions turning a mixed grid with
    h handles and c crosscaps into a Dyck-grid.

    Swaps at disjoint position pairs share one routing round, so the swap
    phase is an odd-even transposition sort that moves every handle in
    front of every crosscap; each round costs a factor 9.  Without
    ``kinds`` the worst arrangement (all crosscaps first) is assumed.
    Each crosscaps-to-handle conversion then costs a factor 18.
    """
    if h < 0 or c < 0 or k < 1:
        raise DomainError("need h, c >= 0 and k >= 1", h=h, c=c, k=k)
    if kinds is None:
        kinds = [CROSSCAP] * c + [HANDLE] * h
    kinds = list(kinds)
    if kinds.count(HANDLE) != h or kinds.count(CROSSCAP) != c or len(kinds) != h + c:
        raise DomainError("kinds do not match (h, c)", h=h, c=c)
    g = 2 * h + c
    steps = []
    parity = 0
    while any(a == CROSSCAP and b == HANDLE for a, b in zip(kinds, kinds[1:])):
        moved = False
        for j in range(parity, len(kinds) - 1, 2):
            if kinds[j] == CROSSCAP and kinds[j + 1] == HANDLE:
                kinds[j], kinds[j + 1] = HANDLE, CROSSCAP
                moved = True
        if moved:
            steps.append(("swap_adjacent", 9))
        parity ^= 1
    h0 = max(0, (c - 1) // 2)
    steps += [("crosscaps_to_handle", 18)] * h0
    bound = 162 ** (2 * g)
    if math.prod(f for _, f in steps) > bound:
        raise AssertionError("plan exceeds the order budget")
    return OrderBudget(g, k, bound * k, tuple(steps))


# ----------------------------------------------------- annulus variants

def _tilde_in_dyck(h: int, c: int, k: int) -> RoutedModel:
    host = dyck_grid(h, c, k)
    target = dtilde(h, c, k)
    lay = _Layout(host, target, 0)
    shift = 4 * k
    for p in range(1, target.length + 1):
        lay.anchor[p] = p + shift
    for rec in target.transactions:
        for a, b in rec.endpoints():
            lay.paths[a + 1] = []
    lay.log.append({"step": "contract_annulus", "positions": [1, shift]})
    return lay.routed()


def _feed_plan(kind: str, k: int, m: int) -> list:
    """Feed routes for one block: (target A, target B, host A, host B,
    landing A, landing B) as 0-based columns within the blocks.

    The target block lands on host columns [2m-2k, 2m+2k).  Strands are
    taken from both ends of each host band so that only the outer k feet
    on each side have to move, by m-k (handle) or 2m-2k (crosscap).
    """
    out = []
    if kind == CROSSCAP:
        for t in range(1, 2 * k + 1):
            j = t if t <= k else 2 * m - 2 * k + t
            out.append((t - 1, 2 * k + t - 1, j - 1, 2 * m + j - 1,
                        2 * m - 2 * k + t - 1, 2 * m + t - 1))
        return out
    for t in range(1, k + 1):
        j = m - k + t
        out.append((t - 1, 3 * k - t, j - 1, 3 * m - j,
                    2 * m - 2 * k + t - 1, 2 * m + k - t))
        out.append((k + t - 1, 4 * k - t, m + j - 1, 4 * m - j,
                    2 * m - k + t - 1, 2 * m + 2 * k - t))
    return out


def _staircase(feet: list) -> dict:
    """Routing row for each moving foot (source, landing).  Feet moving the
    same way turn on successive rows, the one nearest the move first, so
    their horizontal runs never meet another foot's vertical."""
    rows = {}
    right = sorted((f for f in feet if f[1] > f[0]), reverse=True)
    left = sorted(f for f in feet if f[1] < f[0])
    for group in (right, left):
        for r, f in enumerate(group, 1):
            rows[f] = r
    return rows


def _dyck_in_tilde(h: int, c: int, k: int, factor: int) -> RoutedModel:
    host = dtilde(h, c, factor * k)
    target = dyck_grid(h, c, k)
    m = host.order
    depth = m - k
    lay = _Layout(host, target, depth)
    slack = 4 * m - 4 * k
    if slack < 4 * k:
        raise DomainError(f"the annulus needs {4 * k} free columns, the host "
                          f"leaves {slack}", h=h, c=c, k=k, factor=factor)
    for t, hh in zip(target.transactions, host.transactions):
        plan = _feed_plan(t.kind, k, m)
        feet = [(f[2], f[4]) for f in plan] + [(f[3], f[5]) for f in plan]
        rows = _staircase(feet)
        if max(rows.values(), default=0) > depth:
            raise DomainError("routing needs more free cycles",
                              needed=max(rows.values()), free=depth)

        def route(src, dst):
            r = rows.get((src, dst), depth)
            col = [lay.cell(i, hh.base + src + 1) for i in range(1, r + 1)]
            step = 1 if dst > src else -1
            run = [lay.cell(r, hh.base + x + 1) for x in range(src + step, dst + step, step)] \
                if dst != src else []
            down = [lay.cell(i, hh.base + dst + 1) for i in range(r + 1, depth + 1)]
            return col + run + down

        for ta, tb, ha, hb, la, lb in plan:
            lay.anchor[t.base + ta + 1] = hh.base + la + 1
            lay.anchor[t.base + tb + 1] = hh.base + lb + 1
            lay.paths[t.base + ta + 1] = route(ha, la) + route(hb, lb)
        lay.log.append({"step": "feed", "target_block": t.position,
                        "host_block": hh.position,
                        "landing": [hh.base + 2 * m - 2 * k + 1, hh.base + 2 * m + 2 * k],
                        "rows_used": max(rows.values(), default=0)})
    # the annulus goes into the free columns before the first landing
    first = host.transactions[0].base + 2 * m - 2 * k + 1
    gap = [(first - 4 * k - 1 + p) % host.length + 1 for p in range(4 * k)]
    for p in range(1, 4 * k + 1):
        lay.anchor[p] = gap[p - 1]
    lay.log.append({"step": "annulus_gap", "columns": [gap[0], gap[-1]],
                    "factor": factor})
    return lay.routed()


def annulus_embed(h: int, c: int, k: int, factor: int = 2) -> tuple:
    """Model A: the annulus-free grid of order k inside the Dyck-grid of
    order k.  Model B: the Dyck-grid of order k inside the annulus-free
    grid of order ``factor * k``."""
    h, c = normalize_dyck(h, c)
    if (h, c) == (0, 0):
        raise DomainError("the annulus-free variant needs (h, c) != (0, 0)")
    if k < 1 or factor < 1:
        raise DomainError("need k >= 1 and factor >= 1", k=k, factor=factor)
    return _tilde_in_dyck(h, c, k), _dyck_in_tilde(h, c, k, factor)


def half_integral_packing(h: int, c: int, x: int, y: int) -> PackingCertificate:
    """x models of the order-y annulus-free grid in the order-xy one.

    Copy l lives on host cycles (l-1)y+1 .. ly and uses its own block of
    strands, reaching the outer cycle straight through the cycles of the
    earlier copies."""
    h, c = normalize_dyck(h, c)
    if x < 1 or y < 1:
        raise DomainError("need x, y >= 1", x=x, y=y)
    host = dtilde(h, c, x * y)
    target = dtilde(h, c, y)
    copies = []
    mult = Counter()
    for ell in range(1, x + 1):
        lay = _Layout(host, target, (ell - 1) * y)
        for t, hh in zip(target.transactions, host.transactions):
            off = {"x": (ell - 1) * 2 * y} if t.kind == CROSSCAP \
                else {"r1": (ell - 1) * y, "r2": (ell - 1) * y}
            lay.straight_block(t, hh, off)
        rm = lay.routed()
        copies.append(rm)
        for s in rm.model.branch_sets:
            mult.update(s)
    return PackingCertificate(tuple(copies), dict(sorted(mult.items())))
