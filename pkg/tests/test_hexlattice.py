import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hexsaw.hexlattice import (
    A_MID,
    A_OUTER,
    ORIGIN,
    Domain,
    InvalidVertexError,
    MidEdge,
    Point,
    UnsupportedDomainError,
    Vertex,
    build_strip,
    classify_boundary,
    embed,
    embed_complex,
    hexagon_vertices,
    in_strip,
    incident_mid_edges,
    is_simply_connected,
    is_valid,
    mid_edge,
    neighbors,
    offset,
)

GOLDEN = json.loads(Path(__file__).with_name("golden.json").read_text())
GRID = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]


@st.composite
def vertices(draw):
    p = draw(st.integers(-60, 60))
    q = draw(st.integers(-60, 60))
    # snap to the nearest valid site in the same row
    while not is_valid(p, q):
        p += 1
    return Vertex(p, q)


@given(vertices())
def test_neighbors_symmetric_unit_distance(v):
    ns = neighbors(v)
    assert len(set(ns)) == 3
    for w in ns:
        assert v in neighbors(w)
        assert abs(abs(embed_complex(w) - embed_complex(v)) - 1) < 1e-12
    assert sum(1 for w in ns if w.q == v.q) == 1
    assert v.p % 3 in (1, 2)


@given(vertices())
def test_incident_mid_edges_ccw(v):
    mids = incident_mid_edges(v)
    offs = [offset(v, m).to_complex() for m in mids]
    for z in offs:
        assert abs(abs(z) - 0.5) < 1e-12
    for z0, z1 in zip(offs, offs[1:] + offs[:1]):
        ratio = z1 / z0
        assert abs(ratio - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12
    for m in mids:
        assert embed_complex(m) == pytest.approx((embed_complex(m.u) + embed_complex(m.v)) / 2)


@pytest.mark.parametrize("bad", [(0, 0), (3, 0), (2, 0), (1, 1), (1.0, 0)])
def test_invalid_vertex(bad):
    with pytest.raises(InvalidVertexError):
        neighbors(bad)


def test_a_geometry():
    assert embed(A_MID) == Point(Fraction(0), Fraction(0))
    assert embed(ORIGIN).re == Fraction(1, 2)
    assert embed(A_OUTER).re == Fraction(-1, 2)
    assert A_OUTER in neighbors(ORIGIN)
    assert A_MID in incident_mid_edges(ORIGIN)
    assert mid_edge(ORIGIN, A_OUTER) == mid_edge(A_OUTER, ORIGIN) == A_MID


def test_mid_edge_rejects_non_adjacent():
    with pytest.raises(InvalidVertexError):
        mid_edge(ORIGIN, Vertex(7, 0))


@pytest.mark.parametrize("T, L", GRID)
def test_strip_vertex_counts(T, L):
    assert len(build_strip(T, L).vertices) == GOLDEN["strip_vertex_counts"][f"{T},{L}"]


@pytest.mark.parametrize("T, L", GRID)
def test_strip_matches_real_inequalities(T, L):
    d = build_strip(T, L)
    s3 = 3 ** 0.5
    for p in range(-6, 3 * T + 9):
        for q in range(-3 * (L + T) - 4, 3 * (L + T) + 5):
            if not is_valid(p, q):
                continue
            z = embed_complex(Vertex(p, q))
            real_form = -1e-9 <= z.real <= (3 * T + 2) / 2 + 1e-9 and s3 * abs(z.imag) - z.real <= 3 * L + 0.5 + 1e-9
            assert (Vertex(p, q) in d) == real_form == in_strip(p, q, T, L)


@pytest.mark.parametrize("T, L", GRID)
def test_strip_structure(T, L):
    d = build_strip(T, L)
    assert A_MID in d.boundary
    assert is_simply_connected(d)
    assert d.vertices < build_strip(T, L + 1).vertices
    for m in d.mid_edges:
        inside = (m.u in d) + (m.v in d)
        assert inside == (1 if m in d.boundary else 2)
    assert d.mid_edges == {m for v in d.vertices for m in incident_mid_edges(v)}


@pytest.mark.parametrize("T, L", GRID)
def test_boundary_classification(T, L):
    d = build_strip(T, L)
    sets = d.label_sets()
    assert sets["a"] == [A_MID]
    assert sum(len(v) for v in sets.values()) == len(d.boundary)
    for m in sets["alpha"]:
        assert m.u.q == m.v.q and embed(m).re == 0
    for m in sets["beta"]:
        assert m.u.q == m.v.q
    mirror = {MidEdge(*sorted((Vertex(m.u.p, -m.u.q), Vertex(m.v.p, -m.v.q)))) for m in sets["eps"]}
    assert mirror == set(sets["epsbar"])
    assert mirror  # the cuts are not empty


@pytest.mark.parametrize("T, L", [(0, 1), (1, 0), (-1, 2)])
def test_build_strip_rejects(T, L):
    with pytest.raises(ValueError):
        build_strip(T, L)


def test_classify_needs_strip():
    d = Domain.from_vertices(hexagon_vertices((3, 0)))
    with pytest.raises(UnsupportedDomainError):
        classify_boundary(d)


def _disk(centres):
    out = set()
    for c in centres:
        out |= set(hexagon_vertices(c))
    return out


STEPS = [(0, 2), (3, 1), (3, -1), (0, -2), (-3, -1), (-3, 1)]
RING = [(3 + dp, dq) for dp, dq in STEPS]


def test_simple_connectivity():
    assert is_simply_connected(Domain.from_vertices(hexagon_vertices((3, 0))))
    assert is_simply_connected(Domain.from_vertices(_disk([(3, 0), *RING])))
    # the ring with the central hexagon's vertices removed encloses a hole
    ring = _disk(RING) | _disk([(c[0] + dp, c[1] + dq) for c in RING for dp, dq in STEPS])
    holed = ring - set(hexagon_vertices((3, 0)))
    assert not is_simply_connected(Domain.from_vertices(holed))


def test_domain_json_round_trip():
    d = build_strip(2, 1)
    again = Domain.from_json(json.loads(json.dumps(d.to_json())))
    assert again.vertices == d.vertices and again.labels == d.labels
    h = Domain.from_vertices(hexagon_vertices((3, 0)))
    assert Domain.from_json(h.to_json()).vertices == h.vertices
