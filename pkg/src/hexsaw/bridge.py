"""
Bridges, walk width and the canonical bridge decomposition of a walk.

Work is done in hexagon columns (``p // 3``). A rightward bridge of width T
enters a right-type vertex of column c horizontally, keeps every vertex in
columns c..c+T and leaves a left-type vertex of column c+T horizontally to
the right. Leftward bridges are the mirror image.

Half-plane walks (every vertex on one side of the starting column) are split
greedily: the first bridge runs up to the last visit of the far column's exit
vertices; the next vertex is then forced, and what follows is a half-plane
walk in the opposite direction, strictly narrower. General walks are cut at
the first left-type vertex of maximal ``p``; the part before it, reversed, and
the part after it are both leftward half-plane walks.

A few walk endings do not fit into a bridge and are recorded separately:

* a *dangler*: a last vertex entered horizontally and ending on a diagonal,
  sitting behind the current start column or alone in its column;
* the tail after the last bridge (``exit``, ``diag``, ``forced_back``,
  ``forced_diag``, ``empty``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .hexlattice import A_MID, MidEdge, Vertex, column, is_horizontal, is_right_type, mid_edge
from .saw import DEFAULT_CAP, Walk, enumerate_walks

TAILS = ("exit", "diag", "forced_back", "forced_diag", "empty", "stop")


class InvalidDecompositionError(ValueError):
    pass


def width(w: Walk) -> int:
    """Column span of the visited vertices."""
    if not w.vertices:
        raise ValueError("the empty walk has no width")
    cols = [column(v) for v in w.vertices]
    return max(cols) - min(cols)


def _exit_type(v, d: int) -> bool:
    # exit vertices have their horizontal neighbour on the d side
    return is_right_type(v) == (d < 0)


def _horizontal(v) -> Vertex:
    return Vertex(v[0] - 2, v[1]) if is_right_type(v) else Vertex(v[0] + 2, v[1])


def _diagonals(v) -> tuple[Vertex, Vertex]:
    dp = 1 if is_right_type(v) else -1
    return Vertex(v[0] + dp, v[1] + 1), Vertex(v[0] + dp, v[1] - 1)


def _other_diagonal(v, used) -> Vertex:
    up, down = _diagonals(v)
    return down if used == up else up


def is_bridge(w: Walk) -> bool:
    """Horizontal start into the near column, horizontal exit out of the far one."""
    vs = w.vertices
    if not vs or not is_horizontal(w.start) or not is_horizontal(w.end) or w.start == w.end:
        return False
    d = 1 if is_right_type(vs[0]) else -1
    c0 = column(vs[0])
    far = c0 + d * width(w)
    if any((column(v) - c0) * d < 0 for v in vs):
        return False
    last = vs[-1]
    return column(last) == far and _exit_type(last, d) and w.end == mid_edge(last, _horizontal(last))


def _normalize(w: Walk) -> Walk:
    """Translate a walk with horizontal start so that it starts at ``a``."""
    u = w.start.u
    return w.translated(-1 - u.p, -u.q)


def _place(piece: Walk, start: MidEdge) -> Walk:
    u = start.u
    return piece.translated(u.p + 1, u.q)


@dataclass(frozen=True)
class HalfDecomposition:
    pieces: tuple
    tail: str
    dangler: int | None = None  # +1 / -1: final diagonal step up or down

    @property
    def widths(self) -> list[int]:
        return [width(p) for p in self.pieces]


def _is_dangler(start, vs, end, d) -> bool:
    last = vs[-1]
    if is_horizontal(end):
        return False
    entered_h = is_horizontal(start) if len(vs) == 1 else vs[-2][1] == last[1]
    if not entered_h:
        return False
    c0 = column(vs[0])
    if (column(last) - c0) * d < 0:
        return True
    return sum(1 for v in vs if column(v) == column(last)) == 1


def decompose_half(w: Walk, d: int | None = None) -> HalfDecomposition:
    """Greedy bridge decomposition of a half-plane walk with horizontal start."""
    start, vs, end = w.start, list(w.vertices), w.end
    if not is_horizontal(start):
        raise ValueError("half-plane walks start on a horizontal mid-edge")
    if not vs:
        raise ValueError("the empty walk has no bridge decomposition")
    if d is None:
        d = 1 if is_right_type(vs[0]) else -1
    pieces = []
    dangler = None
    while True:
        if dangler is None and vs and _is_dangler(start, vs, end, d):
            last = vs.pop()
            dangler = 1 if end.u[1] + end.v[1] > 2 * last[1] else -1
            end = mid_edge(vs[-1], last) if vs else start
        if not vs:
            return HalfDecomposition(tuple(pieces), "empty", dangler)
        far = max(column(v) * d for v in vs) * d
        k = max(i for i, v in enumerate(vs) if column(v) == far and _exit_type(v, d))
        u = vs[k]
        exit_mid = mid_edge(u, _horizontal(u))
        pieces.append(_normalize(Walk(start, tuple(vs[: k + 1]), exit_mid)))
        rest = vs[k + 1:]
        if not rest:
            tail = "exit" if end == exit_mid else "diag"
            return HalfDecomposition(tuple(pieces), tail, dangler)
        if len(rest) == 1:
            tail = "forced_back" if is_horizontal(end) else "forced_diag"
            return HalfDecomposition(tuple(pieces), tail, dangler)
        f = rest[0]
        start, vs, d = mid_edge(f, rest[1]), rest[1:], -d


def reconstruct_half(start: MidEdge, h: HalfDecomposition, d: int) -> Walk:
    """Inverse of :func:`decompose_half` for a walk leaving ``start`` in direction ``d``."""
    if h.tail not in TAILS[:5]:
        raise InvalidDecompositionError(f"unknown tail {h.tail!r}")
    widths = h.widths
    if any(b >= a for a, b in zip(widths, widths[1:])):
        raise InvalidDecompositionError(f"widths {widths} are not strictly decreasing")
    vs: list[Vertex] = []
    s = start
    for i, piece in enumerate(h.pieces):
        if not is_bridge(piece):
            raise InvalidDecompositionError("piece is not a bridge")
        placed = _place(piece, s)
        if vs and placed.vertices[0] != _horizontal(vs[-1]):
            raise InvalidDecompositionError("pieces do not chain")
        vs.extend(placed.vertices)
        last = vs[-1]
        if i < len(h.pieces) - 1 or h.tail in ("forced_back", "forced_diag", "empty") and h.pieces:
            f = _other_diagonal(last, vs[-2])
            vs.append(f)
            s = mid_edge(f, _horizontal(f))
    if not h.pieces:
        if h.tail != "empty" or h.dangler is None:
            raise InvalidDecompositionError("no pieces and no dangler")
        end = s
    elif h.tail == "exit":
        end = mid_edge(vs[-1], _horizontal(vs[-1]))
    elif h.tail == "diag":
        end = mid_edge(vs[-1], _other_diagonal(vs[-1], vs[-2]))
    elif h.tail == "forced_diag":
        end = mid_edge(vs[-1], _other_diagonal(vs[-1], vs[-2]))
    else:
        end = s
    if h.dangler is not None:
        if not is_horizontal(end):
            raise InvalidDecompositionError("dangler needs a horizontal end")
        if vs:
            x = end.u if end.v == vs[-1] else end.v
        else:
            x = start.v if d > 0 else start.u
        up, down = _diagonals(x)
        vs.append(x)
        end = mid_edge(x, up if h.dangler > 0 else down)
    w = Walk(start, tuple(vs), end)
    try:
        w.validate()
    except ValueError as exc:
        raise InvalidDecompositionError(str(exc)) from None
    return w


@dataclass(frozen=True)
class BridgeDecomposition:
    """Bridge pieces of a walk from ``anchor[0]`` whose first vertex is ``anchor[1]``.

    ``pieces`` lists the negative part (increasing widths) followed by the
    nonnegative part (decreasing widths). Pieces of the negative part are
    bridges of the reversed initial segment, stored in that orientation.
    """
    anchor: tuple
    negative_widths: tuple
    nonnegative_widths: tuple
    pieces: tuple
    negative_tail: str | None = None
    tail: str = "stop"
    dangler: int | None = None
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def widths(self) -> list[int]:
        return [*self.negative_widths, *self.nonnegative_widths]

    def to_json(self) -> dict:
        s, v = self.anchor
        return {
            "anchor": {"start": [list(s.u), list(s.v)], "first": list(v) if v else None},
            "widths_neg": list(self.negative_widths),
            "widths_nonneg": list(self.nonnegative_widths),
            "pieces": [p.to_json() for p in self.pieces],
            "negative_tail": self.negative_tail,
            "tail": self.tail,
            "dangler": self.dangler,
        }

    @classmethod
    def from_json(cls, data: dict) -> BridgeDecomposition:
        s = MidEdge(*(Vertex(*x) for x in data["anchor"]["start"]))
        first = data["anchor"]["first"]
        return cls(
            (s, Vertex(*first) if first else None),
            tuple(data["widths_neg"]),
            tuple(data["widths_nonneg"]),
            tuple(Walk.from_json(p) for p in data["pieces"]),
            data["negative_tail"],
            data["tail"],
            data["dangler"],
        )


def _split_index(vs) -> int:
    best = None
    for i, v in enumerate(vs):
        if not is_right_type(v) and (best is None or v[0] > vs[best][0]):
            best = i
    return best


def _half_plane(w: Walk, d: int) -> bool:
    vs = w.vertices
    c0 = column(vs[0])
    inside = [(column(v) - c0) * d >= 0 for v in vs]
    if all(inside):
        return True
    return all(inside[:-1]) and _is_dangler(w.start, vs, w.end, d)


def decompose(w: Walk) -> BridgeDecomposition:
    """Canonical bridge decomposition of a walk with a horizontal start mid-edge."""
    if not is_horizontal(w.start):
        raise ValueError("decomposition needs a horizontal start mid-edge")
    if not w.vertices:
        return BridgeDecomposition((w.start, None), (), (), (), None, "empty")
    vs = w.vertices
    anchor = (w.start, vs[0])
    d0 = 1 if is_right_type(vs[0]) else -1
    if _half_plane(w, d0):
        h = decompose_half(w, d0)
        return BridgeDecomposition(anchor, (), tuple(h.widths), h.pieces, None, h.tail, h.dangler)
    m = _split_index(vs)
    apex = vs[m]
    V = mid_edge(apex, _horizontal(apex))
    back = decompose_half(Walk(V, vs[m::-1], w.start), -1)
    if m == len(vs) - 1 and w.end == V:
        fwd = HalfDecomposition((), "stop")
    elif m == len(vs) - 2 and vs[-1] == V.v:
        # last step leaves the apex to the right and stops there
        fwd = HalfDecomposition((), "stop", 1 if w.end.u[1] + w.end.v[1] > 2 * vs[-1][1] else -1)
    else:
        fwd = decompose_half(Walk(V, vs[m:], w.end), -1)
    if back.dangler is not None:
        raise AssertionError("reversed initial segment cannot end in a dangler")
    return BridgeDecomposition(
        anchor,
        tuple(back.widths[::-1]),
        tuple(fwd.widths),
        tuple(back.pieces[::-1]) + fwd.pieces,
        back.tail,
        fwd.tail,
        fwd.dangler,
    )


def reconstruct(dec: BridgeDecomposition) -> Walk:
    """Rebuild the walk from its anchor and decomposition."""
    start, first = dec.anchor
    neg, nonneg = list(dec.negative_widths), list(dec.nonnegative_widths)
    if any(b <= a for a, b in zip(neg, neg[1:])) or any(b >= a for a, b in zip(nonneg, nonneg[1:])):
        raise InvalidDecompositionError(f"width pattern {neg} / {nonneg} is not valid")
    if len(dec.pieces) != len(neg) + len(nonneg):
        raise InvalidDecompositionError("piece count does not match the widths")
    if [width(p) for p in dec.pieces] != neg + nonneg:
        raise InvalidDecompositionError("piece widths do not match the recorded widths")
    if first is None:
        if dec.pieces:
            raise InvalidDecompositionError("trivial walk with pieces")
        return Walk(start, (), start)
    if first not in start:
        raise InvalidDecompositionError("anchor vertex is not on the start mid-edge")
    d0 = 1 if is_right_type(first) else -1
    if not neg:
        w = reconstruct_half(start, HalfDecomposition(dec.pieces, dec.tail, dec.dangler), d0)
        if w.vertices[0] != first:
            raise InvalidDecompositionError("decomposition does not start at the anchor vertex")
        return w
    back_pieces = tuple(dec.pieces[: len(neg)][::-1])
    fwd_pieces = tuple(dec.pieces[len(neg):])
    # build the reversed initial segment anywhere, then move its end onto the start
    back = reconstruct_half(A_MID, HalfDecomposition(back_pieces, dec.negative_tail), -1)
    if not is_horizontal(back.end):
        raise InvalidDecompositionError("initial segment must end on a horizontal mid-edge")
    shift_p = start.u.p - back.end.u.p
    shift_q = start.u.q - back.end.u.q
    back = back.translated(shift_p, shift_q)
    if back.end != start or back.vertices[-1] != first:
        raise InvalidDecompositionError("initial segment does not reach the anchor")
    apex = back.vertices[0]
    V = back.start
    if dec.tail == "stop":
        vs = back.vertices[::-1]
        end = V
        if dec.dangler is not None:
            up, down = _diagonals(V.v)
            vs = vs + (V.v,)
            end = mid_edge(V.v, up if dec.dangler > 0 else down)
    else:
        fwd = reconstruct_half(V, HalfDecomposition(fwd_pieces, dec.tail, dec.dangler), -1)
        if fwd.vertices[0] != apex:
            raise InvalidDecompositionError("final segment does not start at the apex")
        vs = back.vertices[::-1] + fwd.vertices[1:]
        end = fwd.end
    w = Walk(start, vs, end)
    try:
        w.validate()
    except ValueError as exc:
        raise InvalidDecompositionError(str(exc)) from None
    return w


def bridge_partition(T: int, L: int, x=None, mode: str = "float", workers: int = 1,
                     cap: int = DEFAULT_CAP):
    """Weighted count of bridges of width T from ``a`` inside ``S_{T,L}``."""
    from .observable import Weights
    from .hexlattice import build_strip
    from .saw import walk_statistics
    from .strip_identity import critical_x

    if x is None:
        x = critical_x(mode)
    d = build_strip(T, L)
    terms = [
        (0, ell, n)
        for (z, _t, ell), n in walk_statistics(d, A_MID, workers=workers, cap=cap).items()
        if d.labels.get(z) == "beta"
    ]
    return Weights(x, 0, mode).value(terms)


def walk_corpus(max_vertices: int, cap: int = DEFAULT_CAP) -> list[Walk]:
    """All walks from ``a`` with 1..max_vertices vertices, both first vertices."""
    out: list[Walk] = []
    for first in A_MID:
        enumerate_walks(None, A_MID, max_vertices, visit=out.append, first=first, cap=cap)
    return [w for w in out if w.vertices]
