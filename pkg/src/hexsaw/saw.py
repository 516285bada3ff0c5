"""
Self-avoiding walk enumeration on the honeycomb lattice.

Two kinds of walks are counted here:

* mid-edge walks ``a -> z`` inside a domain (or the whole plane), the objects
  summed by the parafermionic observable;
* vertex walks from ``ORIGIN``, counted by ``c_n``.

Enumeration is a plain depth-first search in canonical neighbour order. For
large searches the tree is split at a fixed depth and subtrees are handed to
worker processes; all reductions are sums of integer counters, so totals do
not depend on the worker count.
"""
from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .hexlattice import (
    A_MID,
    ORIGIN,
    Domain,
    MidEdge,
    Vertex,
    _raw_neighbors,
    adjacent,
    direction,
    is_valid,
    mid_edge,
    other_end,
)

DEFAULT_CAP = 10**9


class WalkCapExceeded(OverflowError):
    """Raised when an enumeration would visit more walks than allowed."""


def _edge(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Walk:
    """Self-avoiding mid-edge walk ``start -> end`` through ``vertices``."""
    start: MidEdge
    vertices: tuple
    end: MidEdge

    def __post_init__(self):
        object.__setattr__(self, "start", MidEdge(*map(Vertex._make, self.start)))
        object.__setattr__(self, "end", MidEdge(*map(Vertex._make, self.end)))
        object.__setattr__(self, "vertices", tuple(Vertex._make(v) for v in self.vertices))

    @property
    def length(self) -> int:
        """Number of visited vertices."""
        return len(self.vertices)

    def validate(self) -> None:
        vs = self.vertices
        if not vs:
            if self.start != self.end:
                raise ValueError("empty walk must start and end at the same mid-edge")
            return
        if len(set(vs)) != len(vs):
            raise ValueError("walk revisits a vertex")
        if any(not is_valid(*v) for v in vs):
            raise ValueError("walk leaves the lattice")
        for u, v in zip(vs, vs[1:]):
            if not adjacent(u, v):
                raise ValueError(f"{u} and {v} are not adjacent")
        if vs[0] not in self.start:
            raise ValueError("start mid-edge is not incident to the first vertex")
        if vs[-1] not in self.end:
            raise ValueError("end mid-edge is not incident to the last vertex")
        if len(vs) > 1 and self.start == mid_edge(vs[0], vs[1]):
            raise ValueError("start mid-edge is traversed again")
        if len(vs) > 1 and self.end == mid_edge(vs[-2], vs[-1]):
            raise ValueError("end mid-edge was already traversed")
        if len(vs) == 1 and self.start == self.end:
            raise ValueError("walk steps back through its start mid-edge")

    def directions(self) -> list[int]:
        """Direction index of every half- or full step, start to end."""
        vs = self.vertices
        if not vs:
            return []
        pts = [other_end(self.start, vs[0]), *vs, other_end(self.end, vs[-1])]
        return [direction(u, v) for u, v in zip(pts, pts[1:])]

    def turns(self) -> list[int]:
        """+1 for a left turn, -1 for a right turn, one per visited vertex."""
        ds = self.directions()
        return [(b - a + 3) % 6 - 3 for a, b in zip(ds, ds[1:])]

    def reversed(self) -> Walk:
        return Walk(self.end, self.vertices[::-1], self.start)

    def translated(self, dp: int, dq: int) -> Walk:
        if (dp + 3 * dq) % 6:
            raise ValueError("translation does not preserve the lattice")

        def mv(v):
            return Vertex(v[0] + dp, v[1] + dq)

        return Walk(
            MidEdge(mv(self.start.u), mv(self.start.v)),
            tuple(mv(v) for v in self.vertices),
            MidEdge(mv(self.end.u), mv(self.end.v)),
        )

    def to_json(self) -> dict:
        return {
            "start": [list(self.start.u), list(self.start.v)],
            "vertices": [list(v) for v in self.vertices],
            "end": [list(self.end.u), list(self.end.v)],
        }

    @classmethod
    def from_json(cls, data: dict) -> Walk:
        return cls(
            MidEdge(*(Vertex(*v) for v in data["start"])),
            tuple(Vertex(*v) for v in data["vertices"]),
            MidEdge(*(Vertex(*v) for v in data["end"])),
        )


def trivial_walk(a: MidEdge = A_MID) -> Walk:
    return Walk(a, (), a)


def _first_vertex(d: Domain | None, a: MidEdge, first) -> tuple[Vertex, Vertex]:
    """(first vertex, vertex behind the start mid-edge)."""
    if d is not None:
        if a not in d.boundary:
            raise ValueError(f"{a} is not a boundary mid-edge of the domain")
        inner = d.inner_vertex(a)
        return inner, other_end(a, inner)
    if first is None:
        first = a.v
    if first not in a:
        raise ValueError(f"{first} is not an endpoint of {a}")
    return Vertex(*first), other_end(a, first)


def enumerate_walks(d: Domain | None, a: MidEdge = A_MID, max_vertices: int | None = None,
                    visit=None, first=None, cap: int = DEFAULT_CAP) -> int:
    """Visit every self-avoiding mid-edge walk from ``a``, trivial walk included.

    ``d=None`` walks in the whole plane (``max_vertices`` is then required and
    ``first`` picks the endpoint of ``a`` entered first). ``visit`` receives
    :class:`Walk` objects serially, in depth-first canonical order.
    """
    if d is None and max_vertices is None:
        raise ValueError("plane walks need a max_vertices bound")
    limit = math.inf if max_vertices is None else max_vertices
    inside = (lambda v: True) if d is None else d.vertices.__contains__
    count = 1
    if visit is not None:
        visit(Walk(a, (), a))
    if limit < 1:
        return count
    v0, behind = _first_vertex(d, a, first)
    path = [v0]
    on_path = {v0}

    def rec(v, prev):
        nonlocal count
        for w in _raw_neighbors(*v):
            if w == prev:
                continue
            count += 1
            if count > cap:
                raise WalkCapExceeded(f"more than {cap} walks")
            if visit is not None:
                visit(Walk(a, tuple(path), _edge(v, w)))
            if w not in on_path and len(path) < limit and inside(w):
                path.append(w)
                on_path.add(w)
                rec(w, v)
                path.pop()
                on_path.discard(w)

    rec(v0, behind)
    return count


# Fast statistics: (end mid-edge, winding turns, length) -> number of walks.

_TURN = {}
for _a in range(6):
    for _b in range(6):
        _TURN[_a, _b] = (_b - _a + 3) % 6 - 3


def _stats_subtree(vertices, path, prev_dir, wind, limit, cap):
    """Count walks extending ``path`` (whose last step had direction ``prev_dir``)."""
    inside = vertices.__contains__
    stats = Counter()
    on_path = set(path)
    total = 0

    def rec(v, pd, t, ell):
        nonlocal total
        p, q = v
        right = (p + 3 * q) % 6 == 1
        nbrs = ((p - 2, q, 3), (p + 1, q - 1, 5), (p + 1, q + 1, 1)) if right else \
               ((p + 2, q, 0), (p - 1, q + 1, 2), (p - 1, q - 1, 4))
        back = (pd + 3) % 6
        for wp, wq, k in nbrs:
            if k == back:
                continue
            w = (wp, wq)
            nt = t + _TURN[pd, k]
            stats[(_edge(v, w), nt, ell)] += 1
            total += 1
            if total > cap:
                raise WalkCapExceeded(f"more than {cap} walks")
            if w not in on_path and ell < limit and inside(w):
                on_path.add(w)
                rec(w, k, nt, ell + 1)
                on_path.discard(w)

    rec(path[-1], prev_dir, wind, len(path))
    return stats


def _stats_job(args):
    return _stats_subtree(*args)


def walk_statistics(d: Domain, a: MidEdge, max_vertices: int | None = None,
                    workers: int = 1, cap: int = DEFAULT_CAP) -> Counter:
    """Multiset of (end mid-edge, winding in units of pi/3, vertex count) over all walks from ``a``.

    The trivial walk is included as ``(a, 0, 0)``.
    """
    limit = math.inf if max_vertices is None else max_vertices
    stats = Counter({(a, 0, 0): 1})
    if limit < 1:
        return stats
    v0, behind = _first_vertex(d, a, None)
    d0 = direction(behind, v0)
    verts = frozenset(map(tuple, d.vertices))
    if workers <= 1:
        stats.update(_stats_subtree(verts, [tuple(v0)], d0, 0, limit, cap))
        return _typed(stats)
    # expand the first few levels here; each frontier path becomes one job
    frontier = [([tuple(v0)], d0, 0)]
    for _ in range(3):
        nxt = []
        for path, pd, t in frontier:
            v = path[-1]
            for w in _raw_neighbors(*v):
                k = direction(v, w)
                if k == (pd + 3) % 6:
                    continue
                nt = t + _TURN[pd, k]
                stats[(_edge(v, w), nt, len(path))] += 1
                if w not in path and len(path) < limit and w in verts:
                    nxt.append((path + [w], k, nt))
        frontier = nxt
    args = [(verts, path, pd, t, limit, cap) for path, pd, t in frontier]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_stats_job, args):
            stats.update(part)
    if sum(stats.values()) > cap:
        raise WalkCapExceeded(f"more than {cap} walks")
    return _typed(stats)


def _typed(stats: Counter) -> Counter:
    return Counter({
        (MidEdge(Vertex._make(z[0]), Vertex._make(z[1])), t, ell): n
        for (z, t, ell), n in stats.items()
    })


# c_n: vertex walks from the origin.

def _cn_subtree(n_max, path):
    """Counts of n-step walks (n = len(path)-1 .. n_max) extending ``path``."""
    width = 4 * n_max + 16
    off = 2 * n_max + 8

    def idx(p, q):
        return (q + off) * width + p + off

    seen = bytearray(width * width)
    for p, q in path:
        seen[idx(p, q)] = 1
    counts = [0] * (n_max + 1)

    def rec(p, q, depth):
        counts[depth] += 1
        if depth == n_max:
            return
        if (p + 3 * q) % 6 == 1:
            nb = ((p - 2, q), (p + 1, q + 1), (p + 1, q - 1))
        else:
            nb = ((p + 2, q), (p - 1, q + 1), (p - 1, q - 1))
        for a, b in nb:
            i = idx(a, b)
            if not seen[i]:
                seen[i] = 1
                rec(a, b, depth + 1)
                seen[i] = 0

    last = path[-1]
    rec(last[0], last[1], len(path) - 1)
    return counts


def _cn_job(args):
    return _cn_subtree(*args)


def count_cn(n_max: int, workers: int = 1) -> list[int]:
    """[c_1, ..., c_{n_max}]: directed n-step self-avoiding walks from ORIGIN."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    start = tuple(ORIGIN)
    if workers <= 1 or n_max < 3:
        return _cn_subtree(n_max, [start])[1:]
    prefixes = [[start]]
    for _ in range(3):
        prefixes = [pre + [w] for pre in prefixes for w in _raw_neighbors(*pre[-1]) if w not in pre]
    totals = [0] * (n_max + 1)
    # walks shorter than the prefix depth
    for k, c in enumerate(_cn_subtree(2, [start])):
        totals[k] += c
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_cn_job, [(n_max, pre) for pre in prefixes]):
            for k in range(3, n_max + 1):
                totals[k] += part[k]
    return totals[1:]


def estimate_mu(c: list[int], method: str = "ratio") -> list[float]:
    """Connective-constant estimates from [c_1, c_2, ...].

    ``root`` gives c_n^(1/n) for every n; ``ratio`` gives c_n / c_(n-1) for
    n >= 2, with c_0 = 1 used for the first entry.
    """
    if not c:
        raise ValueError("need at least one count")
    if any(x <= 0 for x in c):
        raise ValueError("counts must be positive")
    if method == "root":
        return [x ** (1.0 / n) for n, x in enumerate(c, start=1)]
    if method == "ratio":
        return [b / a for a, b in zip([1, *c], c)]
    raise ValueError(f"unknown method {method!r}")


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))
