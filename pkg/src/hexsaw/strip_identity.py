"""
Partition functions A, B, E on truncated strips and the identity tying them.

For walks from ``a`` in ``S_{T,L}``:

* A sums ``x**length`` over walks ending on the left side (``a`` excluded),
* B over walks ending on the right side,
* E over walks ending on the top or bottom cuts,

and at the critical weight ``1 = c_alpha*A + B + c_eps*E`` holds exactly.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .cyclotomic import ONE, CycloNum, constants
from .hexlattice import A_MID, Vertex, build_strip, embed, is_horizontal
from .observable import ObservableValue, Weights
from .saw import DEFAULT_CAP, Walk, walk_statistics

GROUPS = {"alpha": "A", "beta": "B", "eps": "E", "epsbar": "E"}


def critical_x(mode: str = "exact"):
    xc = constants().x_c
    return xc if mode == "exact" else xc.to_complex().real


@dataclass(frozen=True)
class PartitionReport:
    T: int
    L: int
    x: object
    A: ObservableValue
    B: ObservableValue
    E: ObservableValue
    identity_residual: ObservableValue
    walk_count: int
    mode: str = "exact"

    def identity_holds(self, tol: float = 1e-10) -> bool:
        return self.identity_residual.is_zero(tol)

    def csv_row(self) -> str:
        return (f"{self.T},{self.L},{self.A.approx.real!r},{self.B.approx.real!r},"
                f"{self.E.approx.real!r},{abs(self.identity_residual.approx)!r}")

    def to_json(self) -> dict:
        x = self.x.to_json() if isinstance(self.x, CycloNum) else repr(self.x)
        return {
            "T": self.T,
            "L": self.L,
            "mode": self.mode,
            "x": x,
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "E": self.E.to_json(),
            "identity_residual": self.identity_residual.to_json(),
            "walk_count": self.walk_count,
        }


def partition_ABE(T: int, L: int, x=None, mode: str = "exact", workers: int = 1,
                  cap: int = DEFAULT_CAP) -> PartitionReport:
    if x is None:
        x = critical_x(mode)
    d = build_strip(T, L)
    weights = Weights(x, 0, mode)
    stats = walk_statistics(d, A_MID, workers=workers, cap=cap)
    terms = defaultdict(list)
    for (z, _t, ell), n in stats.items():
        group = GROUPS.get(d.labels.get(z))
        if group:
            terms[group].append((0, ell, n))
    A, B, E = (weights.value(terms[g]) for g in "ABE")
    c = constants()
    one = ObservableValue(ONE if mode == "exact" else None, 1 + 0j)
    combo = A.scaled(c.c_alpha) + B + E.scaled(c.c_eps)
    residual = ObservableValue(
        None if mode == "float" else one.exact - combo.exact,
        one.approx - combo.approx,
    )
    return PartitionReport(T, L, x, A, B, E, residual, sum(stats.values()), mode)


@dataclass
class ScanTable:
    T: int
    rows: list[PartitionReport] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def csv(self) -> str:
        return "\n".join(["T,L,A,B,E,residual", *(r.csv_row() for r in self.rows)]) + "\n"


def scan_monotonicity(T: int, L_max: int, x=None, mode: str = "float", workers: int = 1,
                      cap: int = DEFAULT_CAP, tol: float = 1e-12) -> ScanTable:
    """A, B nondecreasing in L (x <= x_c); E nonincreasing and B <= 1 at x = x_c."""
    if x is None:
        x = critical_x(mode)
    xf = x.to_complex().real if isinstance(x, CycloNum) else float(x)
    xc = critical_x("float")
    critical = abs(xf - xc) < 1e-12
    table = ScanTable(T)
    for L in range(1, L_max + 1):
        table.rows.append(partition_ABE(T, L, x, mode, workers, cap))
    vals = [(r.A.approx.real, r.B.approx.real, r.E.approx.real) for r in table.rows]
    for L, ((a0, b0, e0), (a1, b1, e1)) in enumerate(zip(vals, vals[1:]), start=1):
        if xf <= xc + 1e-12:
            if a1 < a0 - tol:
                table.violations.append(f"A decreases from L={L} to L={L + 1}")
            if b1 < b0 - tol:
                table.violations.append(f"B decreases from L={L} to L={L + 1}")
        if critical and e1 > e0 + tol:
            table.violations.append(f"E increases from L={L} to L={L + 1}")
    if critical:
        for L, (_, b, _) in enumerate(vals, start=1):
            if b > 1 + tol:
                table.violations.append(f"B > 1 at L={L}")
    return table


def _is_left_side(m) -> bool:
    return is_horizontal(m) and embed(m).re == 0


def _right_exit(u: Vertex):
    return tuple(sorted((u, Vertex(u.p + 2, u.q))))


def cut_map(walk: Walk, T: int) -> tuple[Walk, Walk] | None:
    """Cut a walk from ``a`` back to the left side of ``S_{T+1}`` into two bridges.

    Returns None when the walk stays inside ``S_T``. Otherwise the walk is cut
    at its first vertex next to the right side of ``S_{T+1}``; both halves end
    on the horizontal mid-edge leaving that vertex to the right. The second
    half runs backwards from the original end.
    """
    vs = walk.vertices
    if walk.start != A_MID or not vs or not _is_left_side(walk.end) or walk.end == A_MID:
        raise ValueError("cut_map needs a walk from a to the left side")
    right = 3 * (T + 1) + 2
    if any(not 0 <= v.p <= right for v in vs):
        raise ValueError(f"walk leaves the strip of width {T + 1}")
    if max(v.p for v in vs) <= 3 * T + 2:
        return None
    k = next(i for i, v in enumerate(vs) if v.p == right)
    u = vs[k]
    exit_mid = _right_exit(u)
    first = Walk(walk.start, vs[: k + 1], exit_mid)
    second = Walk(walk.end, vs[k:][::-1], exit_mid)
    return first, second


def normalize_bridge(w: Walk) -> Walk:
    """Translate a walk starting on the left side vertically so that it starts at ``a``."""
    if not _is_left_side(w.start):
        raise ValueError("walk does not start on the left side")
    return w.translated(0, -w.start.u.q)
