"""Command-line front end: ``pw <command> [options]``.

Exit status: 0 when every check passes, 1 when a verification fails (the
report names the first counterexample), 2 on usage or resource errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

import numpy as np

from . import filtration_tables as ft
from . import hodge_polynomials as hp
from . import lefschetz as lf
from . import nah_geometry as nah
from . import torsion_topology as tt
from .errors import DomainError, LatticeError, ResourceLimitError, UsageError
from .graded_core import max_word_bits
from .reports import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    cells: list[tuple[int, int]]
    fmt: str = "text"
    seed: int = 0
    samples: int = 500
    tolerance: float | None = None
    word_bits: int = 24
    inject_fault: bool = False
    jobs: int = 1

    def __post_init__(self):
        for g, r in self.cells:
            if g < 1 or r < 1:
                raise UsageError(f"need g, r >= 1, got ({g}, {r})")
            if 2 * g * r > self.word_bits:
                raise ResourceLimitError(f"2gr = {2 * g * r} at (g={g}, r={r}) exceeds the bound {self.word_bits}")


def _parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        re, im = x
        return complex(re, im)
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    return complex(x)


def _parse_multiset(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--sd must be JSON, e.g. '[[2],[3]]': {exc}") from None
    arr = np.array([[_parse_complex(c) for c in vec] for vec in data], dtype=complex)
    if arr.ndim != 2 or arr.size == 0:
        raise UsageError("--sd must be a nonempty list of equal-length vectors")
    return arr


def _fmt_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real + 0.0:g}"
    return f"{c.real:g}{c.imag:+g}j"


def _complex_json(c: complex):
    c = complex(c)
    return c.real + 0.0 if c.imag == 0 else [c.real, c.imag]


# --------------------------------------------------------------------------
# argument parsing


def _cells(args) -> list[tuple[int, int]]:
    if args.g_max is not None or args.r_max is not None:
        if args.g is not None or args.r is not None:
            raise UsageError("give either --g/--r or --g-max/--r-max")
        g_max = 1 if args.g_max is None else args.g_max
        r_max = 1 if args.r_max is None else args.r_max
        if g_max < 1 or r_max < 1:
            raise UsageError(f"grid bounds must be >= 1, got g-max={g_max}, r-max={r_max}")
        return [(g, r) for g in range(1, g_max + 1) for r in range(1, r_max + 1)]
    return [(1 if args.g is None else args.g, 1 if args.r is None else args.r)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, help="dimension of the abelian variety")
    common.add_argument("--r", type=int, help="rank")
    common.add_argument("--g-max", type=int, help="sweep g = 1..G")
    common.add_argument("--r-max", type=int, help="sweep r = 1..R")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=500)
    common.add_argument("--tolerance", type=float)
    common.add_argument("--max-word-bits", type=int, help="bound on 2gr (default: $PW_MAX_WORD_BITS or 24)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for grid sweeps")
    common.add_argument("--inject-fault", action="store_true", help="debug: perturb the data to exercise failure reporting")

    parser = argparse.ArgumentParser(prog="pw", description="Cohomological checks for Higgs moduli on abelian varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", parents=[common], help="bigraded filtration table")
    table.add_argument("--side", choices=("dolbeault", "betti", "closed-form"), default="betti")
    sub.add_parser("hodge-poly", parents=[common], help="mixed Hodge polynomial H(q, t)")

    verify = sub.add_parser("verify", help="run a verification")
    vsub = verify.add_subparsers(dest="check", required=True)
    for name in ("p-equals-w", "curious-duality", "hodge-tate", "manifold", "rational-sphere"):
        vsub.add_parser(name, parents=[common])
    hl = vsub.add_parser("hard-lefschetz", parents=[common])
    hl.add_argument("--weights", type=str, help="comma-separated positive integers c_i for sum c_i e_i^e_{g+i}")
    hl.add_argument("--random-weights", action="store_true", help="draw c_i in 1..9 from --seed")

    nah_p = sub.add_parser("nah", help="non-abelian Hodge correspondence")
    nsub = nah_p.add_subparsers(dest="check", required=True)
    for name in ("roundtrip", "diagram"):
        p = nsub.add_parser(name, parents=[common])
        p.add_argument("--lattice", help="lattice JSON file; default is the square lattice")
        if name == "diagram":
            p.add_argument("--radius", type=float, nargs="*", default=[0.0], help="radii of the deleted ball to sample outside of")

    sd = sub.add_parser("sd", help="spectral data utilities")
    ssub = sd.add_subparsers(dest="check", required=True)
    for name in ("embed", "retract"):
        p = ssub.add_parser(name, parents=[common])
        p.add_argument("--sd", required=True, help="JSON list of r vectors in C^g, entries as numbers, strings '1+2j' or [re, im]")
    return parser


# --------------------------------------------------------------------------
# commands


def _emit(text: str, out) -> None:
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _run_grid(fn: Callable[[int, int], Report], cfg: RunConfig) -> list[Report]:
    if cfg.jobs > 1 and len(cfg.cells) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, *zip(*cfg.cells)))
    return [fn(g, r) for g, r in cfg.cells]


def _emit_reports(command: str, reports: list[Report], cfg: RunConfig, out) -> int:
    passed = all(r.passed for r in reports)
    if cfg.fmt == "json":
        _emit(json.dumps({"command": command, "pass": passed, "reports": [r.to_json() for r in reports]}, indent=2, sort_keys=True), out)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["command", "g", "r", "claim", "pass"])
        for rep in reports:
            writer.writerow([command, rep.params.get("g"), rep.params.get("r"), rep.claim, rep.passed])
        _emit(buf.getvalue(), out)
    else:
        lines = []
        for rep in reports:
            lines.append(rep.summary())
            lines.extend(_text_details(command, rep))
        lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
        _emit("\n".join(lines), out)
    return EXIT_OK if passed else EXIT_FAIL


def _text_details(command: str, rep: Report) -> list[str]:
    d = rep.details
    if command == "verify manifold" and not d.get("vacuous"):
        table = tt.PairHomologyTable({e["i"]: tt.FGAbGroup(e["rank"], tuple(e["torsion"])) for e in d["local_homology"]}, d["N"] + 2)
        return [f"  N={d['N']}, k={d['k']}: {d['verdict']}", *("  " + line for line in str(table).splitlines())]
    if command == "verify manifold":
        return [f"  {d['note']}"]
    if command == "verify hard-lefschetz":
        return [f"  k={x['k']}: rank {x['rank']} (dims {x['source_dim']} -> {x['target_dim']}) {'ok' if x['pass'] else 'FAIL'}" for x in d["ranks"]]
    if command == "verify curious-duality":
        return [f"  H = {d['polynomial']}"]
    if command == "verify rational-sphere":
        return ["  " + ", ".join(f"H_{i} = Q^{n}" for i, n in d["rational_betti"].items())]
    if command.startswith("nah"):
        keys = [k for k in ("max_residual", "max_betti_roundtrip", "max_dolbeault_roundtrip") if k in d]
        return ["  " + ", ".join(f"{k}={d[k]:.3e}" for k in keys)]
    return []


def _cmd_table(args, cfg: RunConfig, out) -> int:
    side = args.side
    build = {"dolbeault": ft.perverse_table, "betti": ft.weight_table, "closed-form": lambda g, r, **_: ft.closed_form_table(g, r)}[side]
    tables = [build(g, r, bound=cfg.word_bits) for g, r in cfg.cells]
    if cfg.inject_fault:
        t = tables[0]
        k, j = next(iter(t.dims))
        tables[0] = t.with_entry(k, j, t[(k, j)] + 1)
    if cfg.fmt == "json":
        payload = tables[0].to_json() if len(tables) == 1 else [t.to_json() for t in tables]
        _emit(json.dumps(payload, indent=2), out)
    elif cfg.fmt == "csv":
        _emit("".join(t.to_csv(header=(i == 0)) for i, t in enumerate(tables)), out)
    else:
        _emit("\n\n".join(t.to_text() for t in tables), out)
    return EXIT_OK


def _cmd_hodge_poly(args, cfg: RunConfig, out) -> int:
    polys = [(g, r, hp.mixed_hodge_polynomial(g, r)) for g, r in cfg.cells]
    if cfg.fmt == "json":
        payload = [{"g": g, "r": r, "terms": p.to_json()} for g, r, p in polys]
        _emit(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2), out)
    elif cfg.fmt == "csv":
        rows = ["g,r,q,t,c"] + [f"{g},{r},{a},{b},{c}" for g, r, p in polys for a, b, c in p.terms()]
        _emit("\n".join(rows), out)
    else:
        _emit("\n".join(f"H(g={g}, r={r}; q, t) = {p}" for g, r, p in polys), out)
    return EXIT_OK


def _lattice(args, g: int) -> nah.Lattice:
    if args.lattice:
        lat = nah.Lattice.load(args.lattice)
        if lat.g != g:
            raise UsageError(f"lattice file has g={lat.g}, command asked for g={g}")
        return lat
    return nah.Lattice.square(g)


def _hl_weights(args, g: int, seed: int):
    if args.weights and args.random_weights:
        raise UsageError("give --weights or --random-weights, not both")
    if args.weights:
        ws = [int(x) for x in args.weights.split(",")]
        if len(ws) != g or any(w <= 0 for w in ws):
            raise UsageError(f"--weights needs {g} positive integers")
        return ws
    if args.random_weights:
        return lf.random_positive_weights(g, seed)
    return None


def _verify_fn(args, cfg: RunConfig) -> Callable[[int, int], Report]:
    fault = cfg.inject_fault
    name = args.check
    if name == "p-equals-w":
        return partial(_p_equals_w, inject_fault=fault, bound=cfg.word_bits)
    if name == "curious-duality":
        return partial(_curious, inject_fault=fault)
    if name == "hodge-tate":
        return partial(_hodge_tate, inject_fault=fault)
    if name == "hard-lefschetz":
        return partial(_hard_lefschetz, weights_arg=args.weights, random_weights=args.random_weights, seed=cfg.seed, inject_fault=fault, bound=cfg.word_bits)
    if name == "manifold":
        return partial(_manifold, inject_fault=fault)
    if name == "rational-sphere":
        return partial(_rational_sphere, inject_fault=fault)
    raise UsageError(f"unknown check {name}")


# module-level wrappers so the grid can be pickled for worker processes
def _p_equals_w(g, r, **kw):
    return ft.verify_p_equals_w(g, r, **kw)


def _curious(g, r, **kw):
    return hp.verify_curious_duality(g, r, **kw)


def _hodge_tate(g, r, **kw):
    return hp.hodge_tate_check(g, r, **kw)


def _hard_lefschetz(g, r, weights_arg=None, random_weights=False, seed=0, **kw):
    ns = argparse.Namespace(weights=weights_arg, random_weights=random_weights)
    return lf.verify_hard_lefschetz(g, r, _hl_weights(ns, g, seed), **kw)


def _manifold(g, r, **kw):
    return tt.manifold_obstruction(g, r, **kw)


def _rational_sphere(g, r, **kw):
    return tt.rational_sphere_check(g, r, **kw)


def _cmd_nah(args, cfg: RunConfig, out) -> int:
    reports = []
    for g, r in cfg.cells:
        lat = _lattice(args, g)
        if args.check == "roundtrip":
            tol = cfg.tolerance or nah.ROUNDTRIP_TOL
            reports.append(nah.verify_roundtrip(lat, r, cfg.samples, cfg.seed, tolerance=tol, inject_fault=cfg.inject_fault))
        else:
            tol = cfg.tolerance or nah.DIAGRAM_TOL
            for radius in args.radius or [0.0]:
                reports.append(nah.verify_nah_diagram(lat, r, cfg.samples, cfg.seed, radius=radius, tolerance=tol, inject_fault=cfg.inject_fault))
    return _emit_reports(f"nah {args.check}", reports, cfg, out)


def _cmd_sd(args, cfg: RunConfig, out) -> int:
    sd = _parse_multiset(args.sd)
    if args.check == "embed":
        sigmas = nah.hitchin_embedding(sd)
        payload = {
            "r": sd.shape[0],
            "g": sd.shape[1],
            "sigma": {str(i): [{"exponents": list(e), "value": _complex_json(c)} for e, c in poly.items()] for i, poly in sigmas.items()},
        }
        if cfg.fmt == "json":
            _emit(json.dumps(payload, indent=2), out)
        else:
            lines = []
            for i, poly in sigmas.items():
                terms = " + ".join(f"({_fmt_complex(c)}) y^{list(e)}" for e, c in poly.items())
                lines.append(f"sigma_{i} = {terms}")
            _emit("\n".join(lines), out)
    else:
        ret = nah.retract_to_sphere_quotient(sd)
        if cfg.fmt == "json":
            _emit(json.dumps({"retraction": [[_complex_json(c) for c in row] for row in ret]}, indent=2), out)
        else:
            _emit("\n".join(" ".join(_fmt_complex(c) for c in row) for row in ret), out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        bits = args.max_word_bits if args.max_word_bits is not None else max_word_bits()
        command = args.command + (f" {args.check}" if getattr(args, "check", None) else "")
        cells = [(1, 1)] if args.command == "sd" else _cells(args)
        cfg = RunConfig(
            command=command,
            cells=cells,
            fmt=args.format,
            seed=args.seed,
            samples=args.samples,
            tolerance=args.tolerance,
            word_bits=bits,
            inject_fault=args.inject_fault,
            jobs=args.jobs,
        )
        if args.command == "table":
            return _cmd_table(args, cfg, out)
        if args.command == "hodge-poly":
            return _cmd_hodge_poly(args, cfg, out)
        if args.command == "verify":
            return _emit_reports(command, _run_grid(_verify_fn(args, cfg), cfg), cfg, out)
        if args.command == "nah":
            return _cmd_nah(args, cfg, out)
        return _cmd_sd(args, cfg, out)
    except (UsageError, ResourceLimitError, DomainError, LatticeError, OSError, ValueError) as exc:
        print(f"pw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
