"""Command-line front end: ``hexsaw {count,verify,observable,scan,bridges}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from .bridge import decompose, reconstruct, walk_corpus
from .cyclotomic import CycloNum, constants
from .hexlattice import A_MID, build_strip
from .observable import FLOAT_TOL, all_vertex_residuals, contour_sum, observable_all
from .saw import DEFAULT_CAP, WalkCapExceeded, count_cn, estimate_mu
from .strip_identity import partition_ABE, scan_monotonicity

EXIT_OK, EXIT_VIOLATION, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64
MU = (2 + 2 ** 0.5) ** 0.5
IDENTITY_TOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    T: int | None
    L: int | None
    n_max: int | None
    mode: str
    x_frac: str
    sigma_frac: str
    workers: int
    cap: int
    out: str | None
    fmt: str


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _config(args) -> RunConfig:
    cap = args.cap
    if cap is None:
        env = os.environ.get("HEXSAW_CAP")
        try:
            cap = int(env) if env else DEFAULT_CAP
        except ValueError:
            raise UsageError(f"HEXSAW_CAP must be an integer, got {env!r}") from None
    for name in ("T", "L", "n_max"):
        val = getattr(args, name)
        if val is not None and val < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be at least 1")
    if args.workers < 1 or cap < 1:
        raise UsageError("--workers and --cap must be positive")
    mode = args.mode or ("exact" if args.command in ("verify", "observable") else "float")
    _fraction(args.x_frac)
    _fraction(args.sigma_frac)
    return RunConfig(args.command, args.T, args.L, args.n_max, mode, args.x_frac,
                     args.sigma_frac, args.workers, cap, args.out, args.format)


def _weight(cfg: RunConfig):
    frac = _fraction(cfg.x_frac)
    xc = constants().x_c
    return xc * frac if cfg.mode == "exact" else xc.to_complex().real * float(frac)


def _envelope(cfg: RunConfig, result: dict, timestamp: bool) -> dict:
    out = {"config": asdict(cfg), "result": result}
    if timestamp:
        out["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return out


def cmd_count(cfg: RunConfig):
    n_max = cfg.n_max or 12
    c = count_cn(n_max, workers=cfg.workers)
    if sum(c) > cfg.cap:
        raise WalkCapExceeded(f"more than {cfg.cap} walks")
    csv = "n,count\n" + "".join(f"{n},{v}\n" for n, v in enumerate(c, start=1))
    result = {
        "counts": c,
        "mu_root": estimate_mu(c, "root"),
        "mu_ratio": estimate_mu(c, "ratio"),
        "mu_target": MU,
    }
    return EXIT_OK, result, csv


def _observable_report(cfg: RunConfig, d):
    x = _weight(cfg)
    sigma = _fraction(cfg.sigma_frac)
    F = observable_all(d, A_MID, x, sigma, cfg.mode, cfg.workers, cfg.cap)
    res = all_vertex_residuals(d, A_MID, x, sigma, cfg.mode, cfg.workers, cfg.cap)
    cs = contour_sum(d, A_MID, x, sigma, cfg.mode, F=F)
    per_vertex = [{"v": list(v), **r.to_json()} for v, r in res.items()]
    ok = all(r.is_zero(FLOAT_TOL) for r in res.values()) and cs.residual.is_zero(FLOAT_TOL)
    report = {
        "domain": {"T": d.T, "L": d.L},
        "x": "exact" if cfg.mode == "exact" else "float",
        "x_frac": cfg.x_frac,
        "sigma": cfg.sigma_frac,
        "residuals": {"max_abs": max(abs(r.approx) for r in res.values()), "per_vertex": per_vertex},
        "boundary_sums": {
            "alpha": cs.alpha.to_json(),
            "beta": cs.beta.to_json(),
            "eps": cs.eps.to_json(),
            "epsbar": cs.epsbar.to_json(),
        },
        "contour_residual": cs.residual.to_json(),
        "all_zero": ok,
    }
    return ok, report


def cmd_observable(cfg: RunConfig):
    d = build_strip(cfg.T or 1, cfg.L or 1)
    ok, report = _observable_report(cfg, d)
    return (EXIT_OK if ok else EXIT_VIOLATION), report, None


def cmd_verify(cfg: RunConfig):
    T, L = cfg.T or 1, cfg.L or 1
    d = build_strip(T, L)
    ok, report = _observable_report(cfg, d)
    rep = partition_ABE(T, L, _weight(cfg), cfg.mode, cfg.workers, cfg.cap)
    identity_ok = rep.identity_residual.is_zero(IDENTITY_TOL)
    report["identity"] = rep.to_json()
    report["identity_ok"] = identity_ok
    return (EXIT_OK if ok and identity_ok else EXIT_VIOLATION), report, None


def cmd_scan(cfg: RunConfig):
    T_max, L_max = cfg.T or 1, cfg.L or 3
    x = _weight(cfg)
    tables = [scan_monotonicity(T, L_max, x, cfg.mode, cfg.workers, cfg.cap) for T in range(1, T_max + 1)]
    rows = [r for t in tables for r in t.rows]
    violations = [f"T={t.T}: {v}" for t in tables for v in t.violations]
    csv = "T,L,A,B,E,residual\n" + "".join(r.csv_row() + "\n" for r in rows)
    result = {"rows": [r.to_json() for r in rows], "violations": violations}
    return (EXIT_VIOLATION if violations else EXIT_OK), result, csv


def cmd_bridges(cfg: RunConfig):
    n_max = cfg.n_max or 12
    walks = walk_corpus(n_max, cap=cfg.cap)
    failures = []
    for w in walks:
        dec = decompose(w)
        if reconstruct(dec) != w:
            failures.append(w.to_json())
    result = {
        "max_vertices": n_max,
        "walks": len(walks),
        "round_trip_ok": len(walks) - len(failures),
        "failures": failures[:10],
    }
    return (EXIT_VIOLATION if failures else EXIT_OK), result, None


COMMANDS = {
    "count": cmd_count,
    "verify": cmd_verify,
    "observable": cmd_observable,
    "scan": cmd_scan,
    "bridges": cmd_bridges,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--T", type=int)
    common.add_argument("--L", type=int)
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--mode", choices=("exact", "float"))
    common.add_argument("--x-frac", default="1", help="step weight as a multiple of x_c, e.g. 9/10")
    common.add_argument("--sigma-frac", default="5/8")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cap", type=int, help="walk cap (default: $HEXSAW_CAP or 10^9)")
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-timestamp", action="store_true")
    parser = _Parser(prog="hexsaw", description="Honeycomb self-avoiding walk checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
    except UsageError as exc:
        print(f"hexsaw: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, result, csv = COMMANDS[cfg.command](cfg)
    except WalkCapExceeded as exc:
        print(f"hexsaw: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if cfg.fmt == "csv" and csv is not None:
        _emit(csv, cfg.out)
    else:
        doc = _envelope(cfg, result, not args.no_timestamp)
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
