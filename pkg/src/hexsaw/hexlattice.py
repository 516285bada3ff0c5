"""
Honeycomb lattice geometry in exact integer coordinates.

A vertex is a pair ``(p, q)`` embedded at ``p/2 + i*q*sqrt(3)/2``. The lattice
has unit edges and hexagons with horizontal top and bottom edges; the
horizontal edge from (-1, 0) to (1, 0) carries the distinguished mid-edge
``A_MID`` at the origin of the plane.

Valid vertices satisfy ``(p + 3q) % 6`` in {1, 5}:

* ``1``: "right" type, horizontal neighbour on the left, diagonals to the right;
* ``5``: "left" type, horizontal neighbour on the right, diagonals to the left.

Hexagon columns: vertices with ``p // 3 == c`` form column ``c``, a vertical
zigzag; horizontal edges join column ``c`` to ``c + 1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .cyclotomic import CycloNum, zeta_pow

SQRT3 = 3 ** 0.5


class InvalidVertexError(ValueError):
    pass


class UnsupportedDomainError(ValueError):
    pass


class Vertex(NamedTuple):
    p: int
    q: int


class MidEdge(NamedTuple):
    """Edge midpoint, identified by its endpoints in lexicographic order."""
    u: Vertex
    v: Vertex


class Point(NamedTuple):
    """Exact planar point ``re + i * im_sqrt3 * sqrt(3)``."""
    re: Fraction
    im_sqrt3: Fraction

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im_sqrt3) * SQRT3)


# direction index k means the unit vector exp(i*k*pi/3)
_STEP_DIR = {(2, 0): 0, (1, 1): 1, (-1, 1): 2, (-2, 0): 3, (-1, -1): 4, (1, -1): 5}
_DIR_STEP = {k: d for d, k in _STEP_DIR.items()}


def is_valid(p: int, q: int) -> bool:
    return (p + 3 * q) % 6 in (1, 5)


def is_right_type(v) -> bool:
    """True when the horizontal neighbour sits to the left."""
    return (v[0] + 3 * v[1]) % 6 == 1


def check_vertex(v) -> Vertex:
    p, q = v
    if not (isinstance(p, int) and isinstance(q, int)) or not is_valid(p, q):
        raise InvalidVertexError(f"({p}, {q}) is not a honeycomb vertex")
    return Vertex(p, q)


def column(v) -> int:
    return v[0] // 3


def _raw_neighbors(p: int, q: int):
    if (p + 3 * q) % 6 == 1:
        return ((p - 2, q), (p + 1, q + 1), (p + 1, q - 1))
    return ((p + 2, q), (p - 1, q + 1), (p - 1, q - 1))


def neighbors(v) -> list[Vertex]:
    """The three lattice neighbours, horizontal one first, then counter-clockwise."""
    p, q = check_vertex(v)
    if is_right_type((p, q)):
        # directions 3, 5, 1
        return [Vertex(p - 2, q), Vertex(p + 1, q - 1), Vertex(p + 1, q + 1)]
    # directions 0, 2, 4
    return [Vertex(p + 2, q), Vertex(p - 1, q + 1), Vertex(p - 1, q - 1)]


def direction(u, v) -> int:
    """Direction index k of the step u -> v, i.e. v - u = exp(i*k*pi/3)."""
    try:
        return _STEP_DIR[(v[0] - u[0], v[1] - u[1])]
    except KeyError:
        raise InvalidVertexError(f"{u} and {v} are not adjacent") from None


def step(v, k: int) -> Vertex:
    dp, dq = _DIR_STEP[k % 6]
    return Vertex(v[0] + dp, v[1] + dq)


def adjacent(u, v) -> bool:
    return (v[0] - u[0], v[1] - u[1]) in _STEP_DIR and is_valid(*u) and is_valid(*v)


def mid_edge(u, v) -> MidEdge:
    u, v = check_vertex(u), check_vertex(v)
    if not adjacent(u, v):
        raise InvalidVertexError(f"{u} and {v} are not adjacent")
    return MidEdge(u, v) if u <= v else MidEdge(v, u)


def other_end(m: MidEdge, v) -> Vertex:
    if m.u == v:
        return m.v
    if m.v == v:
        return m.u
    raise InvalidVertexError(f"{v} is not an endpoint of {m}")


def is_horizontal(m: MidEdge) -> bool:
    return m.u[1] == m.v[1]


ORIGIN = Vertex(1, 0)
A_OUTER = Vertex(-1, 0)
A_MID = MidEdge(A_OUTER, ORIGIN)


def incident_mid_edges(v) -> tuple[MidEdge, MidEdge, MidEdge]:
    """Mid-edges around ``v`` counter-clockwise, starting with the horizontal one."""
    v = check_vertex(v)
    return tuple(mid_edge(v, w) for w in neighbors(v))


def offset(v, m: MidEdge) -> CycloNum:
    """Exact value of ``m - v`` in Q(zeta_48): half a unit vector."""
    k = direction(v, other_end(m, v))
    return zeta_pow(8 * k) * Fraction(1, 2)


def embed(x) -> Point:
    """Exact position of a vertex or a mid-edge."""
    if isinstance(x, MidEdge):
        return Point(Fraction(x.u[0] + x.v[0], 4), Fraction(x.u[1] + x.v[1], 4))
    p, q = check_vertex(x)
    return Point(Fraction(p, 2), Fraction(q, 2))


def embed_complex(x) -> complex:
    return embed(x).to_complex()


def hexagon_vertices(center) -> list[Vertex]:
    """Vertices of the hexagon with centre ``center`` (a pair with (p + 3q) % 6 == 3)."""
    cp, cq = center
    if (cp + 3 * cq) % 6 != 3:
        raise InvalidVertexError(f"{center} is not a hexagon centre")
    return [Vertex(cp + dp, cq + dq) for dp, dq in ((2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1))]


def _faces_of(v):
    p, q = v
    if is_right_type(v):
        return ((p + 2, q), (p - 1, q + 1), (p - 1, q - 1))
    return ((p - 2, q), (p + 1, q + 1), (p + 1, q - 1))


LABELS = ("a", "alpha", "beta", "eps", "epsbar")


@dataclass(frozen=True, eq=False)
class Domain:
    vertices: frozenset
    mid_edges: frozenset = field(repr=False)
    boundary: frozenset = field(repr=False)
    T: int | None = None
    L: int | None = None
    labels: dict | None = field(default=None, repr=False)

    @classmethod
    def from_vertices(cls, vertices, T=None, L=None) -> Domain:
        vs = frozenset(check_vertex(v) for v in vertices)
        mids = set()
        boundary = set()
        for v in vs:
            for w in _raw_neighbors(*v):
                m = mid_edge(v, w)
                mids.add(m)
                if w not in vs:
                    boundary.add(m)
        d = cls(vs, frozenset(mids), frozenset(boundary), T, L)
        if T is not None:
            object.__setattr__(d, "labels", classify_boundary(d))
        return d

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def inner_vertex(self, m: MidEdge) -> Vertex:
        """The endpoint inside the domain of a boundary mid-edge."""
        if m not in self.boundary:
            raise ValueError(f"{m} is not a boundary mid-edge")
        return m.u if m.u in self.vertices else m.v

    def label_sets(self) -> dict[str, list[MidEdge]]:
        if self.labels is None:
            raise UnsupportedDomainError("domain has no boundary classification")
        out = {k: [] for k in LABELS}
        for m, lab in self.labels.items():
            out[lab].append(m)
        for k in out:
            out[k].sort()
        return out

    def to_json(self) -> dict:
        out = {"vertices": [list(v) for v in sorted(self.vertices)]}
        if self.T is not None:
            out["T"] = self.T
            out["L"] = self.L
        return out

    @classmethod
    def from_json(cls, data: dict) -> Domain:
        if "T" in data:
            d = build_strip(data["T"], data["L"])
            if d.vertices != frozenset(Vertex(*v) for v in data["vertices"]):
                raise ValueError("vertex list does not match the strip parameters")
            return d
        return cls.from_vertices([tuple(v) for v in data["vertices"]])


def in_strip(p: int, q: int, T: int, L: int) -> bool:
    """Membership in the truncated strip, integer form.

    Left edge Re >= 0, right edge Re <= (3T + 2)/2 (T + 1 columns, so the
    right boundary edges are horizontal), and top/bottom cuts
    sqrt(3)|Im| - Re <= 3L + 1/2 whose boundary edges point at +-2pi/3.
    """
    return 0 <= p <= 3 * T + 2 and 3 * abs(q) - p <= 6 * L + 1


def build_strip(T: int, L: int) -> Domain:
    if not (isinstance(T, int) and isinstance(L, int)) or T < 1 or L < 1:
        raise ValueError(f"strip needs integers T >= 1 and L >= 1, got T={T!r}, L={L!r}")
    qmax = (6 * L + 3 * T + 3) // 3 + 1
    verts = [
        (p, q)
        for p in range(0, 3 * T + 3)
        for q in range(-qmax, qmax + 1)
        if is_valid(p, q) and in_strip(p, q, T, L)
    ]
    return Domain.from_vertices(verts, T=T, L=L)


def classify_boundary(d: Domain) -> dict[MidEdge, str]:
    if d.T is None:
        raise UnsupportedDomainError("boundary classification needs a strip domain")
    pts = {m: embed(m) for m in d.boundary}
    re_max = max(pt.re for pt in pts.values())
    labels = {}
    for m, pt in pts.items():
        if pt.re == 0:
            labels[m] = "a" if m == A_MID else "alpha"
        elif pt.re == re_max:
            labels[m] = "beta"
        elif pt.im_sqrt3 > 0:
            labels[m] = "eps"
        elif pt.im_sqrt3 < 0:
            labels[m] = "epsbar"
        else:
            raise UnsupportedDomainError(f"cannot classify boundary mid-edge {m}")
    return labels


def is_simply_connected(d: Domain) -> bool:
    """Connectedness of the complement: outside vertices and non-full hexagons.

    A hexagon whose six vertices all lie in the domain is treated as part of
    it; every other face is complement and links the outside vertices on it.
    """
    if not d.vertices:
        return True
    ps = [v[0] for v in d.vertices]
    qs = [v[1] for v in d.vertices]
    pmin, pmax, qmin, qmax = min(ps) - 4, max(ps) + 4, min(qs) - 2, max(qs) + 2

    def in_box(x):
        return pmin <= x[0] <= pmax and qmin <= x[1] <= qmax

    outside = {
        (p, q)
        for p in range(pmin, pmax + 1)
        for q in range(qmin, qmax + 1)
        if is_valid(p, q) and (p, q) not in d.vertices
    }
    if not outside:
        return True
    # node "inf" stands for the unbounded face
    adj: dict = {v: set() for v in outside}
    adj["inf"] = set()

    def link(x, y):
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)

    for v in outside:
        for w in _raw_neighbors(*v):
            if w in outside:
                link(v, w)
            elif not in_box(w):
                link(v, "inf")
        for f in _faces_of(v):
            link(v, ("face", f))
        if v[0] in (pmin, pmin + 1, pmax, pmax - 1) or v[1] in (qmin, qmax):
            link(v, "inf")
    seen = {"inf"}
    todo = deque(["inf"])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return outside <= seen
