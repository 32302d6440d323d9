"""Command-line entry point.

    helmmg solve [--config FILE] [--k 40 --n 64 --variant HYB ...]
    helmmg analyze symbols|smoothing [...]
    helmmg reproduce 1|2|6 [--long]

Outputs go to ``--output`` (``--out`` for analyze and reproduce) or, failing
that, ``$HELMMG_OUTPUT_DIR`` (default ``results``). Exit codes: 0 success, 2 configuration error, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from helmmg import analysis
from helmmg.config import REFERENCE_TABLES, ConfigError, RunConfig, dump_config, load_config, preset_configs
from helmmg.experiments import RunResult, run

EXIT_OK, EXIT_CONFIG, EXIT_NOCONV = 0, 2, 3
OUTPUT_ENV = "HELMMG_OUTPUT_DIR"
COUNT_FACTOR = 1.5  # measured count must be within this factor of the reference

log = logging.getLogger("helmmg")


def output_dir(arg: str | None) -> Path:
    path = Path(arg or os.environ.get(OUTPUT_ENV, "results"))
    path.mkdir(parents=True, exist_ok=True)
    return path


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def config_from_args(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    changes = {}
    for name in ("problem", "k", "n", "variant", "beta", "tol_factor", "max_iter", "output"):
        val = getattr(args, name)
        if val is not None:
            changes[name] = val
    if args.source is not None:
        changes["source"] = _floats(args.source)
    if args.dump_solution:
        changes["dump_solution"] = True
    bands = {}
    if args.normal_band is not None:
        bands["normal_band"] = _floats(args.normal_band)
    if args.hybrid_band is not None:
        bands["hybrid_band"] = _floats(args.hybrid_band)
    if args.coarsest_kh is not None:
        bands["coarsest_kh"] = args.coarsest_kh
    if bands:
        changes["bands"] = cfg.bands.__class__(**{**cfg.to_dict()["bands"], **bands})
    return cfg.replace(**changes)


def write_report(result: RunResult, out: Path, stem: str) -> Path:
    path = out / f"{stem}.json"
    path.write_text(json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")
    if result.config.dump_solution:
        np.save(out / f"{stem}_solution.npy", result.solution.values)
    return path


def _stem(cfg: RunConfig) -> str:
    return f"{cfg.problem}_k{cfg.k:g}_n{cfg.n}_{cfg.variant}"


def cmd_solve(args) -> int:
    cfg = config_from_args(args)
    out = output_dir(cfg.output)
    result = run(cfg)
    path = write_report(result, out, _stem(cfg))
    rep = result.report
    print(
        f"{cfg.variant}-V k={cfg.k:g} n={cfg.n}: {rep.iterations:g} iterations, "
        f"converged={rep.converged}, report={path}"
    )
    return EXIT_OK if rep.converged else EXIT_NOCONV


def _write_csv(path: Path, rows: list[dict]) -> None:
    with path.open("w", newline="") as fh:
        if not rows:
            return
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def cmd_analyze(args) -> int:
    out = output_dir(args.out)
    if args.kind == "symbols":
        depths = [int(d) for d in args.depths.split(",") if d.strip()]
        written = []
        for variant in ("HLM", "SL"):
            rows = analysis.figure_sweep(args.k, args.h, depths, variant, args.beta, args.samples)
            for d in depths:
                block = [r for r in rows if r["depth"] == d]
                path = out / f"symbols_{variant}_depth{d}.csv"
                _write_csv(path, block)
                written.append(path)
        print(f"wrote {len(written)} CSV blocks to {out}")
    else:
        rows = analysis.factor_table(_floats(args.kh), _floats(args.betas), args.points)
        _write_csv(out / "smoothing_factors.csv", rows)
        print(f"{'kH':>8} {'beta':>5} {'smoothing':>10} {'overall':>10}")
        for r in rows:
            print(f"{r['kH']:8.4g} {r['beta']:5.2g} {r['smoothing']:10.4f} {r['overall']:10.4f}")
    return EXIT_OK


def _run_quiet(cfg: RunConfig) -> RunResult:
    return run(cfg)


def cmd_reproduce(args) -> int:
    table = args.table
    if table == 7:
        print("table 7 uses the ray (wave-ray) coarse-grid correction, which is out of scope")
        return EXIT_CONFIG
    if table not in REFERENCE_TABLES:
        print(f"no preset for table {table}; choose from {sorted(REFERENCE_TABLES)}", file=sys.stderr)
        return EXIT_CONFIG
    ref = REFERENCE_TABLES[table]
    cfgs = preset_configs(table, long=args.long, base=RunConfig(max_iter=args.max_iter))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_quiet, cfgs))
    else:
        results = [run(c) for c in cfgs]
    out = output_dir(args.out)
    by_key = {(r.config.k, r.config.n, r.config.variant): r for r in results}

    ok = True
    header = f"{'k':>6} {'n':>5} | " + " | ".join(
        f"{v + '-V':>6} {'ref':>6} {f'<={COUNT_FACTOR:g}x':>6}" for v in ("SL", "HYB")
    )
    if "OSL" in ref:
        header += f" | {'OSL (external)':>14}"
    print(f"Table {table}")
    print(header)
    rows = []
    for i, (k, n) in enumerate(ref["rows"]):
        if (float(k), n, "SL") not in by_key:
            continue
        cells, measured = [], {}
        for v in ("SL", "HYB"):
            rep = by_key[(float(k), n, v)].report
            expected = ref[v][i]
            m = rep.iterations if rep.converged else float("inf")
            measured[v] = m
            passed = rep.converged and m <= COUNT_FACTOR * expected
            ok &= rep.converged
            cells.append(f"{m:6g} {expected:6g} {'ok' if passed else 'no':>6}")
        line = f"{k:>6g} {n:>5} | " + " | ".join(cells)
        if "OSL" in ref:
            line += f" | {ref['OSL'][i]:>14g}"
        order = "HYB<=SL" if measured["HYB"] <= measured["SL"] else "HYB>SL"
        print(f"{line}   {order}")
        rows.append({"k": k, "n": n, "SL": measured["SL"], "HYB": measured["HYB"],
                     "ref_SL": ref["SL"][i], "ref_HYB": ref["HYB"][i]})
    (out / f"table{table}.json").write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if ok else EXIT_NOCONV


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="helmmg", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run one preconditioned Bi-CGSTAB solve")
    s.add_argument("--config", help="YAML run configuration")
    s.add_argument("--problem", choices=("constant_k", "wedge"))
    s.add_argument("--k", type=float, help="wave number (k_ref for the wedge)")
    s.add_argument("--n", type=int, help="cells per side")
    s.add_argument("--variant", choices=("HLM", "SL", "HYB"))
    s.add_argument("--beta", type=float)
    s.add_argument("--tol-factor", dest="tol_factor", type=float)
    s.add_argument("--max-iter", dest="max_iter", type=int)
    s.add_argument("--source", help="x,y of the point source")
    s.add_argument("--normal-band", help="lo,hi kH band for normal-equation smoothing")
    s.add_argument("--hybrid-band", help="lo,hi kH band where HYB relaxes with M")
    s.add_argument("--coarsest-kh", type=float)
    s.add_argument("--output", help="output directory (overrides the config)")
    s.add_argument("--dump-solution", action="store_true")
    s.add_argument("--print-config", action="store_true", help="print the resolved config and exit")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("analyze", help="Fourier symbol / smoothing tables as CSV")
    a.add_argument("kind", choices=("symbols", "smoothing"))
    a.add_argument("--k", type=float, default=40.0)
    a.add_argument("--h", type=float, default=0.3125 / 40)
    a.add_argument("--depths", default="1,2,3,4")
    a.add_argument("--beta", type=float, default=0.5)
    a.add_argument("--samples", type=int, default=65)
    a.add_argument("--kh", default="0.3125,0.625,1.25,2.5,5")
    a.add_argument("--betas", default="0,0.5")
    a.add_argument("--points", type=int, default=257)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reproduce", help="rerun a reference table")
    r.add_argument("table", type=int)
    r.add_argument("--long", action="store_true", help="include the long-running rows")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--max-iter", type=int, default=500)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "solve" and args.print_config:
            print(dump_config(config_from_args(args)), end="")
            return EXIT_OK
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
