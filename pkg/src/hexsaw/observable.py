"""
Winding, the parafermionic observable F and its vanishing contour sums.

``F(z)`` sums ``exp(-i*sigma*W) * x**length`` over walks ``a -> z`` in a domain,
where the winding ``W = t*pi/3`` and ``t`` counts left minus right turns. With
``8*sigma`` integral the winding factor is the power ``zeta_48**(-8*sigma*t)``,
so for ``x`` in the cyclotomic field everything is computed exactly.
"""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .cyclotomic import DEGREE, ZERO, CycloNum, _reduce, constants, zeta_pow
from .hexlattice import A_MID, Domain, MidEdge, Vertex, incident_mid_edges, offset
from .saw import DEFAULT_CAP, Walk, enumerate_walks, walk_statistics

CRITICAL_SIGMA = Fraction(5, 8)
FLOAT_TOL = 1e-12


class ModeError(ValueError):
    """Exact arithmetic was requested for parameters outside Q(zeta_48)."""


def winding(w: Walk) -> int:
    """Winding in units of pi/3: left turns minus right turns."""
    return sum(w.turns())


@dataclass(frozen=True)
class ObservableValue:
    exact: CycloNum | None
    approx: complex

    def is_zero(self, tol: float = FLOAT_TOL) -> bool:
        if self.exact is not None:
            return self.exact.is_zero()
        return abs(self.approx) < tol

    def __add__(self, other: ObservableValue) -> ObservableValue:
        ex = None if self.exact is None or other.exact is None else self.exact + other.exact
        return ObservableValue(ex, self.approx + other.approx)

    def scaled(self, c: CycloNum) -> ObservableValue:
        ex = None if self.exact is None else self.exact * c
        return ObservableValue(ex, self.approx * c.to_complex())

    def to_json(self) -> dict:
        out = {"re": self.approx.real, "im": self.approx.imag}
        if self.exact is not None:
            out["exact"] = self.exact.to_json()
        return out


def _as_complex(x) -> complex:
    return x.to_complex() if isinstance(x, CycloNum) else complex(x)


class Weights:
    """Winding factors and length powers for one ``(x, sigma, mode)`` choice."""

    def __init__(self, x, sigma=CRITICAL_SIGMA, mode: str = "exact"):
        if mode not in ("exact", "float"):
            raise ModeError(f"unknown mode {mode!r}")
        self.mode = mode
        self.sigma = Fraction(sigma) if isinstance(sigma, (int, Rational, str)) else sigma
        self.x_float = _as_complex(x)
        if mode == "exact":
            if not isinstance(self.sigma, Rational) or (8 * self.sigma).denominator != 1:
                raise ModeError(f"sigma={sigma} gives winding weights outside Q(zeta_48)")
            if isinstance(x, (int, Rational)):
                x = CycloNum.from_rational(x)
            if not isinstance(x, CycloNum):
                raise ModeError("exact mode needs x as a CycloNum or a rational")
            self.x = x
            self.shift = -int(8 * self.sigma)  # zeta exponent per unit of t
        else:
            self.x = None
        self._xpow = {}

    def phase_float(self, t: int) -> complex:
        return cmath.exp(-1j * float(self.sigma) * t * math.pi / 3)

    def xpow(self, ell: int) -> CycloNum:
        if ell not in self._xpow:
            self._xpow[ell] = self.x ** ell
        return self._xpow[ell]

    def exact_sum(self, terms) -> CycloNum:
        """Exact value of sum(n * phase(t) * x**ell) over ``(t, ell, n)`` triples."""
        by_len = defaultdict(lambda: [0] * 48)
        for t, ell, n in terms:
            by_len[ell][(self.shift * t) % 48] += n
        total = ZERO
        for ell in sorted(by_len):
            poly = by_len[ell]
            # zeta^k for k >= 24 is -zeta^(k-24)
            folded = [poly[k] - poly[k + 24] for k in range(24)]
            total = total + CycloNum._make(_reduce(folded), 1) * self.xpow(ell)
        return total

    def float_sum(self, terms) -> complex:
        return sum(n * self.phase_float(t) * self.x_float ** ell for t, ell, n in terms)

    def value(self, terms) -> ObservableValue:
        # fixed summation order keeps float results independent of worker count
        terms = sorted(terms)
        exact = self.exact_sum(terms) if self.mode == "exact" else None
        return ObservableValue(exact, self.float_sum(terms))


def observable_all(d: Domain, a: MidEdge, x, sigma=CRITICAL_SIGMA, mode: str = "exact",
                   workers: int = 1, cap: int = DEFAULT_CAP) -> dict[MidEdge, ObservableValue]:
    """F at every mid-edge of ``d`` from one enumeration pass."""
    weights = Weights(x, sigma, mode)
    grouped = defaultdict(list)
    for (z, t, ell), n in walk_statistics(d, a, workers=workers, cap=cap).items():
        grouped[z].append((t, ell, n))
    zero = ObservableValue(ZERO if mode == "exact" else None, 0j)
    out = {}
    for z in sorted(d.mid_edges):
        out[z] = weights.value(grouped[z]) if z in grouped else zero
    return out


def observable_F(d: Domain, a: MidEdge, z: MidEdge, x, sigma=CRITICAL_SIGMA,
                 mode: str = "exact", workers: int = 1, cap: int = DEFAULT_CAP) -> ObservableValue:
    if z not in d.mid_edges:
        raise ValueError(f"{z} is not a mid-edge of the domain")
    return observable_all(d, a, x, sigma, mode, workers, cap)[z]


def vertex_residual(d: Domain, a: MidEdge, v: Vertex, x, sigma=CRITICAL_SIGMA,
                    mode: str = "exact", F: dict | None = None, workers: int = 1,
                    cap: int = DEFAULT_CAP) -> ObservableValue:
    """(p - v) F(p) + (q - v) F(q) + (r - v) F(r)."""
    if v not in d.vertices:
        raise ValueError(f"{v} is not a vertex of the domain")
    if F is None:
        F = observable_all(d, a, x, sigma, mode, workers, cap)
    total = None
    for m in incident_mid_edges(v):
        term = F[m].scaled(offset(v, m))
        total = term if total is None else total + term
    return total


def all_vertex_residuals(d: Domain, a: MidEdge, x, sigma=CRITICAL_SIGMA, mode: str = "exact",
                         workers: int = 1, cap: int = DEFAULT_CAP) -> dict[Vertex, ObservableValue]:
    F = observable_all(d, a, x, sigma, mode, workers, cap)
    return {v: vertex_residual(d, a, v, x, sigma, mode, F=F) for v in sorted(d.vertices)}


@dataclass(frozen=True)
class ContourReport:
    alpha: ObservableValue
    beta: ObservableValue
    eps: ObservableValue
    epsbar: ObservableValue
    residual: ObservableValue

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "eps": self.eps.to_json(),
            "epsbar": self.epsbar.to_json(),
            "residual": self.residual.to_json(),
        }


def contour_sum(d: Domain, a: MidEdge = A_MID, x=None, sigma=CRITICAL_SIGMA, mode: str = "exact",
                F: dict | None = None, workers: int = 1, cap: int = DEFAULT_CAP) -> ContourReport:
    """Boundary sums of F and ``-S_alpha + S_beta + j S_eps + conj(j) S_epsbar``.

    The alpha sum includes ``a`` itself.
    """
    if d.labels is None:
        raise ValueError("contour sums need a classified strip domain")
    if x is None:
        x = constants().x_c if mode == "exact" else constants().x_c.to_complex()
    if F is None:
        F = observable_all(d, a, x, sigma, mode, workers, cap)
    sets = d.label_sets()
    zero = ObservableValue(ZERO if mode == "exact" else None, 0j)

    def total(ms):
        out = zero
        for m in ms:
            out = out + F[m]
        return out

    s_alpha = total(sets["a"] + sets["alpha"])
    s_beta = total(sets["beta"])
    s_eps = total(sets["eps"])
    s_epsbar = total(sets["epsbar"])
    j = constants().j
    residual = (
        s_alpha.scaled(CycloNum.from_rational(-1))
        + s_beta
        + s_eps.scaled(j)
        + s_epsbar.scaled(j.conjugate())
    )
    return ContourReport(s_alpha, s_beta, s_eps, s_epsbar, residual)


def _contribution(w: Walk, v: Vertex, weights: Weights) -> CycloNum:
    t = winding(w)
    return offset(v, w.end) * zeta_pow(weights.shift * t) * weights.xpow(w.length)


def vertex_groups(d: Domain, a: MidEdge, v: Vertex, x, sigma=CRITICAL_SIGMA,
                  max_vertices: int | None = None) -> dict:
    """Exact contributions ``(m - v) * weight`` of walks ending next to ``v``, grouped.

    Walks that pass through ``v`` and come back to it form pairs (the loop
    after ``v`` traversed both ways). All other walks form triplets: a walk
    stopping just before ``v`` plus its two one-step extensions through ``v``.
    """
    weights = Weights(x, sigma, "exact")
    mids = set(incident_mid_edges(v))
    groups = defaultdict(list)

    def visit(w: Walk):
        if w.end not in mids:
            return
        vs = w.vertices
        if v not in vs:
            key = ("triplet", vs, w.end)
        elif vs[-1] == v:
            entry = w.start if len(vs) == 1 else MidEdge(*sorted((vs[-2], v)))
            key = ("triplet", vs[:-1], entry)
        else:
            i = vs.index(v)
            loop = vs[i + 1:]
            key = ("pair", vs[:i], frozenset((loop, loop[::-1])))
        groups[key].append(_contribution(w, v, weights))

    enumerate_walks(d, a, max_vertices=max_vertices, visit=visit)
    return dict(groups)
