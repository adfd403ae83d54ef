"""Surfaces up to homeomorphism, their containment order and obstruction sets.

A surface is either the empty surface or a canonical pair (h, c) with
c in {0, 1, 2}: orientable surfaces are (h, 0), nonorientable surfaces of
Euler genus g are (g//2, 1) for odd g and (g//2 - 1, 2) for even g.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True, order=False)
class Surface:
    h: int = -1
    c: int = -1

    @property
    def empty(self) -> bool:
        return self.h < 0 and self.c < 0

    @property
    def genus(self) -> int:
        return -1 if self.empty else 2 * self.h + self.c

    @property
    def orientable(self) -> bool:
        return self.empty or self.c == 0

    def sort_key(self):
        return (self.genus, 0 if self.orientable else 1)

    def name(self) -> str:
        for alias, s in ALIASES.items():
            if s == self:
                return alias
        return f"({self.h},{self.c})"

    def __repr__(self):
        return "Surface(empty)" if self.empty else f"Surface({self.h},{self.c})"


EMPTY = Surface()
SPHERE = Surface(0, 0)
TORUS = Surface(1, 0)
PROJECTIVE_PLANE = Surface(0, 1)
KLEIN_BOTTLE = Surface(0, 2)

ALIASES = {
    "empty": EMPTY,
    "sphere": SPHERE,
    "torus": TORUS,
    "projective-plane": PROJECTIVE_PLANE,
    "klein-bottle": KLEIN_BOTTLE,
}


def normalize(h: int, c: int) -> Surface:
    if (h, c) == (-1, 2):
        return SPHERE
    if h < 0 or c < 0:
        raise DomainError("handles and crosscaps must be non-negative", h=h, c=c)
    if c == 0:
        return Surface(h, 0)
    g = 2 * h + c
    return Surface((g - 1) // 2, 1) if g % 2 else Surface(g // 2 - 1, 2)


def of_genus(g: int, orientable: bool) -> Surface | None:
    """The surface of Euler genus ``g`` with the given orientability, if any."""
    if g == -1:
        return EMPTY if orientable else None
    if orientable:
        return Surface(g // 2, 0) if g % 2 == 0 else None
    return normalize(0, g) if g >= 1 else None


def parse_surface(text: str) -> Surface:
    t = text.strip().lower()
    if t in ALIASES:
        return ALIASES[t]
    m = re.fullmatch(r"\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?", t)
    if not m:
        raise DomainError(f"cannot parse surface {text!r}")
    return normalize(int(m.group(1)), int(m.group(2)))


def parse_surface_set(text: str) -> frozenset:
    if not text.strip():
        return frozenset()
    parts = re.findall(r"\([^)]*\)|[^,\s]+", text)
    return frozenset(parse_surface(p) for p in parts)


def contained_in(a: Surface, b: Surface) -> bool:
    """True iff ``b`` arises from ``a`` by adding handles and crosscaps."""
    if a.empty:
        return True
    if b.empty:
        return False
    if a.orientable:
        if b.orientable:
            return a.h <= b.h
        return b.genus >= 2 * a.h + 1
    return (not b.orientable) and a.genus <= b.genus


def contained_in_by_search(a: Surface, b: Surface) -> bool:
    """Same relation, decided by breadth-first search over additions."""
    if a == b:
        return True
    if b.empty:
        return False
    start = [SPHERE] if a.empty else [a]
    seen = set(start)
    q = deque(start)
    while q:
        s = q.popleft()
        if s == b:
            return True
        if s.genus >= b.genus:
            continue
        for nxt in (normalize(s.h + 1, s.c), normalize(s.h, s.c + 1)):
            if nxt not in seen:
                seen.add(nxt)
                q.append(nxt)
    return False


def surfaces_up_to(g: int) -> list:
    out = [EMPTY]
    for e in range(0, g + 1):
        if e % 2 == 0:
            out.append(Surface(e // 2, 0))
        out.append(normalize(0, e)) if e >= 1 else None
    return sorted(out, key=Surface.sort_key)


def sorted_set(s: Iterable[Surface]) -> list:
    return sorted(set(s), key=Surface.sort_key)


def below(s: Surface) -> list:
    """Every surface contained in ``s`` (including ``s``)."""
    return [t for t in surfaces_up_to(max(s.genus, -1)) if contained_in(t, s)]


def closure_witness(s: Iterable[Surface]):
    """A pair (member, missing) showing ``s`` is not down-closed, or None."""
    s = set(s)
    for a in sorted_set(s):
        for b in below(a):
            if b not in s:
                return a, b
    return None


def _require_closed(s):
    bad = closure_witness(s)
    if bad:
        raise DomainError(f"set is not closed: {bad[0].name()} contains "
                          f"{bad[1].name()} which is missing",
                          member=bad[0].name(), missing=bad[1].name())


def sobs(s: Iterable[Surface]) -> list:
    """Minimal surfaces outside the closed set ``s``."""
    s = frozenset(s)
    _require_closed(s)
    top = max((x.genus for x in s), default=-1)
    out = []
    for cand in surfaces_up_to(top + 2):
        if cand in s:
            continue
        if all(t in s for t in below(cand) if t != cand):
            out.append(cand)
    return sorted_set(out)


def prevalent(s: Iterable[Surface]) -> Surface:
    """The largest surface contained in every obstruction of ``s``."""
    obs = sobs(s)
    top = min(o.genus for o in obs)
    common = [t for t in surfaces_up_to(top) if all(contained_in(t, o) for o in obs)]
    maximal = [t for t in common
               if not any(u != t and contained_in(t, u) for u in common)]
    if len(maximal) != 1:
        raise AssertionError(f"expected one maximal common surface, got {maximal}")
    return maximal[0]


def genus_class(g: int) -> list:
    """All surfaces of Euler genus at most ``g`` (the empty one included)."""
    if g < -1:
        raise DomainError("Euler genus is at least -1", g=g)
    return surfaces_up_to(g)


def downset(*tops: Surface) -> list:
    return sorted_set(t for top in tops for t in below(top))


def hasse_dot(max_genus: int) -> str:
    nodes = surfaces_up_to(max_genus)
    lines = ["digraph {", "  rankdir=BT;"]
    for s in nodes:
        lines.append(f'  "{s.name()}";')
    for a in nodes:
        for b in nodes:
            if a == b or not contained_in(a, b):
                continue
            if any(m not in (a, b) and contained_in(a, m) and contained_in(m, b)
                   for m in nodes):
                continue
            lines.append(f'  "{a.name()}" -> "{b.name()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
