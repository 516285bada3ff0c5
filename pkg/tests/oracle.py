"""
Brute-force reference enumerators, independent of the package internals.

Geometry here works with floating-point positions in the complex plane and
discovers neighbours from the unit-length edge directions; nothing is shared
with the integer coordinate scheme of the package. Run as a script to
regenerate ``golden.json``.
"""
from __future__ import annotations

import cmath
import json
import math
from collections import Counter
from pathlib import Path

GOLDEN = Path(__file__).with_name("golden.json")
SQ3 = math.sqrt(3)

# the vertex at 1/2 has its horizontal edge pointing left
ORIGIN = (0.5, 0.0)
A_OUTER = (-0.5, 0.0)


def key(z: complex) -> tuple[float, float]:
    return (round(z.real * 2) / 2, round(z.imag / (SQ3 / 2)))


def pos(k) -> complex:
    return complex(k[0], k[1] * SQ3 / 2)


def kind(k) -> int:
    """+1 when the horizontal neighbour is on the left, -1 otherwise."""
    # column pattern repeats every 3 units of Re; rows shift by 3/2
    x = (k[0] - 0.5 - 1.5 * (k[1] % 2)) % 3
    if x == 0:
        return 1
    if x == 2:
        return -1
    raise ValueError(f"{k} is not a lattice site")


def nbrs(k):
    s = kind(k)
    z = pos(k)
    angles = (math.pi, math.pi / 3, -math.pi / 3) if s == 1 else (0.0, 2 * math.pi / 3, -2 * math.pi / 3)
    return [key(z + cmath.exp(1j * a)) for a in angles]


def in_strip(k, T, L) -> bool:
    z = pos(k)
    eps = 1e-9
    return -eps <= z.real <= (3 * T + 2) / 2 + eps and SQ3 * abs(z.imag) - z.real <= 3 * L + 0.5 + eps


def strip_vertices(T, L):
    out = set()
    for q in range(-(2 * L + T + 3), 2 * L + T + 4):
        for twice_re in range(-2, 3 * T + 5):
            k = (twice_re / 2, q)
            try:
                kind(k)
            except ValueError:
                continue
            if in_strip(k, T, L):
                out.add(k)
    return out


def mid_key(u, v):
    z = (pos(u) + pos(v)) / 2
    return (round(z.real, 6), round(z.imag, 6))


def turn(d1: complex, d2: complex) -> int:
    ang = cmath.phase(d2 / d1)
    return round(ang / (math.pi / 3))


def strip_walks(T, L) -> Counter:
    """Counter over (end mid-edge position, turns, vertex count), trivial walk included."""
    verts = strip_vertices(T, L)
    stats = Counter()
    a = mid_key(A_OUTER, ORIGIN)
    stats[(a, 0, 0)] += 1

    def rec(path, t):
        v = path[-1]
        prev = path[-2] if len(path) > 1 else A_OUTER
        din = pos(v) - pos(prev)
        for w in nbrs(v):
            if w == prev:
                continue
            nt = t + turn(din, pos(w) - pos(v))
            stats[(mid_key(v, w), nt, len(path))] += 1
            if w in verts and w not in path:
                rec(path + [w], nt)

    rec([ORIGIN], 0)
    return stats


def vertex_walk_counts(n_max):
    counts = [0] * (n_max + 1)

    def rec(path):
        counts[len(path) - 1] += 1
        if len(path) > n_max:
            return
        for w in nbrs(path[-1]):
            if w not in path:
                rec(path + [w])

    rec([ORIGIN])
    return counts[1:]


def labelled_lengths(T, L):
    """{label: {length: count}} for walks from a ending on the strip boundary."""
    verts = strip_vertices(T, L)
    re_max = (3 * T + 2) / 2 + 0.5
    out = {"alpha": Counter(), "beta": Counter(), "eps": Counter(), "epsbar": Counter()}
    a = mid_key(A_OUTER, ORIGIN)

    def rec(path):
        v = path[-1]
        prev = path[-2] if len(path) > 1 else A_OUTER
        for w in nbrs(v):
            if w == prev:
                continue
            if w not in verts:
                m = mid_key(v, w)
                if abs(m[0]) < 1e-9:
                    if m != a:
                        out["alpha"][len(path)] += 1
                elif abs(m[0] - re_max) < 1e-9 and w[1] == v[1]:
                    out["beta"][len(path)] += 1
                elif m[1] > 0:
                    out["eps"][len(path)] += 1
                else:
                    out["epsbar"][len(path)] += 1
            elif w not in path:
                rec(path + [w])

    rec([ORIGIN])
    return {k: dict(sorted(v.items())) for k, v in out.items()}


def build_golden() -> dict:
    grid = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]
    return {
        "strip_vertex_counts": {f"{T},{L}": len(strip_vertices(T, L)) for T, L in grid},
        "strip_walk_counts": {f"{T},{L}": sum(strip_walks(T, L).values()) for T, L in grid},
        "cn": vertex_walk_counts(16),
        "lengths_1_1": labelled_lengths(1, 1),
    }


if __name__ == "__main__":
    GOLDEN.write_text(json.dumps(build_golden(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {GOLDEN}")
