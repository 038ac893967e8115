"""Command-line front end: generate, parameterize, simulate, learn, evaluate.

Subcommands
-----------
gen-dag    sample a random DAG (er, sfi, sfo, sf-both) and write a graph file
gen-model  parameterize a graph (dao, zarx, tetrad; optional standardization)
simulate   draw finite samples from a model into a CSV plus metadata sidecar
eval       score an estimated graph and/or data against a true graph
bench      run a replication grid and write a results table
replay     re-run a recorded command and verify its outputs byte for byte

Every command takes an integer --seed where randomness is involved, embeds
the seed and tool version in its outputs, and writes files atomically.
Relative --out paths are resolved against $DAGONION_OUT_DIR when that is
set. Exit codes: 0 success, 2 usage, 3 numerical failure, 4 I/O or file
format problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import DEFAULT_THRESHOLD, r2_sort_regress, var_sort_regress
from .errors import NumericalError, SchemaError
from .fileio import (
    atomic_write_text,
    dumps_json,
    graph_from_dict,
    graph_to_dict,
    meta_path,
    model_from_dict,
    model_to_dict,
    pdag_from_dict,
    read_dataset,
    read_json,
    sha256_file,
    write_dataset,
    write_json,
)
from .graph import Dag, er_dag, sfi_rewire, sfo_rewire, shuffle_labels, source_first_order
from .metrics import (
    compare_graphs,
    population_r2,
    precision_recall,
    sample_r2,
    sortability_rank_corr,
    varsortability_scores,
)
from .onion import dao_sample
from .sem import cov_to_corr, implied_covariance, standardize, tetrad_params, zarx_params
from .simdata import simulate, standardize_data

SHAPES = ("er", "sfi", "sfo", "sf-both")
METHODS = ("dao", "zarx", "tetrad")
BENCH_METHODS = ("dao", "zarx", "tetrad", "zarx-std", "tetrad-std")


def _resolve_out(path: str) -> Path:
    p = Path(path)
    if not p.is_absolute():
        base = os.environ.get("DAGONION_OUT_DIR")
        if base:
            p = Path(base) / p
    return p


def _rng(seed: int, spawn_key: tuple[int, ...] = ()) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=spawn_key))


def _load_graph(path: str):
    return graph_from_dict(read_json(path), where=str(path))


def _apply_shape(g: Dag, shape: str, rng: np.random.Generator) -> tuple[Dag, list[str]]:
    applied = ["er"]
    if shape in ("sfi", "sf-both"):
        g = sfi_rewire(g, rng)
        applied.append("sfi")
    if shape in ("sfo", "sf-both"):
        g = sfo_rewire(g, rng)
        applied.append("sfo")
    return g, applied


def cmd_gen_dag(args) -> list[Path]:
    rng = _rng(args.seed)
    g = er_dag(args.p, args.avg_degree, rng)
    g, applied = _apply_shape(g, args.shape, rng)
    order = tuple(range(1, args.p + 1))
    if args.shuffle:
        g, order = shuffle_labels(g, rng)
    out = _resolve_out(args.out)
    write_json(
        out,
        graph_to_dict(
            g,
            order,
            seed=args.seed,
            shape=args.shape,
            avg_degree=args.avg_degree,
            shuffled=bool(args.shuffle),
            applied=applied,
            version=__version__,
        ),
    )
    return [out]


def cmd_gen_model(args) -> list[Path]:
    g, order = _load_graph(args.graph)
    rng = _rng(args.seed)
    if args.method == "dao":
        R, params = dao_sample(g, rng)
        label = "dao"
    else:
        params = zarx_params(g, rng) if args.method == "zarx" else tetrad_params(g, rng)
        label = args.method
        if args.standardize:
            params = standardize(params)
            label += "-std"
        R = cov_to_corr(implied_covariance(params))
    out = _resolve_out(args.out)
    write_json(
        out,
        model_to_dict(
            params,
            R,
            label,
            args.seed,
            order,
            graph_sha256=sha256_file(args.graph),
            version=__version__,
        ),
    )
    return [out]


def cmd_simulate(args) -> list[Path]:
    rec = model_from_dict(read_json(args.model), where=str(args.model))
    rng = _rng(args.seed)
    d = simulate(rec.params, args.error, args.n, rng)
    if args.standardize_data:
        d = standardize_data(d)
    d.meta.update(
        seed=args.seed,
        method=rec.method,
        model_sha256=sha256_file(args.model),
        order=list(rec.order) if rec.order else list(range(1, rec.params.g.p + 1)),
        version=__version__,
    )
    out = _resolve_out(args.out)
    write_dataset(out, d)
    return [out, meta_path(out)]


def _causal_index(order: tuple[int, ...]) -> np.ndarray:
    """Per-vertex position (1-based) given the order's vertex sequence."""
    idx = np.empty(len(order), dtype=np.intp)
    for pos, v in enumerate(order, start=1):
        idx[v - 1] = pos
    return idx


def cmd_eval(args) -> list[Path]:
    truth, file_order = _load_graph(args.true_graph)
    if not args.est_graph and not args.data:
        raise ValueError("nothing to evaluate: pass --est-graph and/or --data")
    report: dict = {"version": __version__, "true_graph": str(args.true_graph)}
    if args.est_graph:
        est = pdag_from_dict(read_json(args.est_graph), where=str(args.est_graph))
        counts = compare_graphs(truth, est)
        pr = precision_recall(counts)
        report["adjacency"] = {
            "tp": counts.adjacency.tp,
            "fp": counts.adjacency.fp,
            "fn": counts.adjacency.fn,
            "tn": counts.adjacency.tn,
            "precision": pr.adjacency_precision,
            "recall": pr.adjacency_recall,
        }
        report["orientation"] = {
            "tp": counts.orientation.tp,
            "fp": counts.orientation.fp,
            "fn": counts.orientation.fn,
            "tn": counts.orientation.tn,
            "precision": pr.orientation_precision,
            "recall": pr.orientation_recall,
        }
    report["r2_rank_corr"] = None
    report["var_rank_corr"] = None
    if args.data:
        data = read_dataset(args.data)
        if data.p != truth.p:
            raise ValueError(
                f"data has {data.p} columns but the true graph has {truth.p} vertices"
            )
        if args.order_from == "file":
            if file_order is None:
                raise SchemaError(
                    f'{args.true_graph}: no "order" field; use --order-from graph'
                )
            order = file_order
        else:
            order = source_first_order(truth)
        idx = _causal_index(order)
        report["r2_rank_corr"] = sortability_rank_corr(
            sample_r2(data), idx, largest_first=True
        )
        report["var_rank_corr"] = sortability_rank_corr(
            varsortability_scores(data), idx, largest_first=True
        )
    if args.out:
        out = _resolve_out(args.out)
        write_json(out, report)
        return [out]
    sys.stdout.write(dumps_json(report))
    return []


_BENCH_STATS = ("r2_pop", "r2_sample", "var_sample")
_BENCH_LEARNERS = ("varsr", "r2sr")
_BENCH_PR = (
    "adj_precision",
    "adj_recall",
    "ori_precision",
    "ori_recall",
)


def _bench_columns() -> list[str]:
    cols = ["p", "shape", "method", "n", "reps", "failures"]
    for stat in _BENCH_STATS:
        cols += [f"{stat}_mean", f"{stat}_sd"]
    for learner in _BENCH_LEARNERS:
        for m in _BENCH_PR:
            cols += [f"{learner}_{m}_mean", f"{learner}_{m}_sd"]
    cols += ["master_seed", "version"]
    return cols


def _bench_cell(
    p: int,
    shape: str,
    method: str,
    n: int,
    reps: int,
    avg_degree: float,
    threshold: float,
    error_kind: str,
    seed: int,
    cell_idx: int,
) -> dict:
    """One grid cell: per-rep pipeline with failures counted, not fatal."""
    samples: dict[str, list[float]] = {}
    failures = 0
    for rep in range(reps):
        rng = _rng(seed, spawn_key=(cell_idx, rep))
        try:
            g = er_dag(p, avg_degree, rng)
            g, _ = _apply_shape(g, shape, rng)
            if method == "dao":
                R, params = dao_sample(g, rng)
            else:
                params = (
                    zarx_params(g, rng)
                    if method.startswith("zarx")
                    else tetrad_params(g, rng)
                )
                if method.endswith("-std"):
                    params = standardize(params)
                R = cov_to_corr(implied_covariance(params))
            idx = _causal_index(source_first_order(g))
            rep_vals = {
                "r2_pop": sortability_rank_corr(
                    population_r2(R), idx, largest_first=True
                )
            }
            data = simulate(params, error_kind, n, rng)
            rep_vals["r2_sample"] = sortability_rank_corr(
                sample_r2(data), idx, largest_first=True
            )
            rep_vals["var_sample"] = sortability_rank_corr(
                varsortability_scores(data), idx, largest_first=True
            )
            for learner, fit in (
                ("varsr", var_sort_regress),
                ("r2sr", r2_sort_regress),
            ):
                pr = precision_recall(compare_graphs(g, fit(data, threshold)))
                rep_vals[f"{learner}_adj_precision"] = pr.adjacency_precision
                rep_vals[f"{learner}_adj_recall"] = pr.adjacency_recall
                rep_vals[f"{learner}_ori_precision"] = pr.orientation_precision
                rep_vals[f"{learner}_ori_recall"] = pr.orientation_recall
        except (NumericalError, ValueError):
            failures += 1
            continue
        for key, val in rep_vals.items():
            samples.setdefault(key, []).append(float(val))
    row = {
        "p": p,
        "shape": shape,
        "method": method,
        "n": n,
        "reps": reps,
        "failures": failures,
    }
    for stat in _BENCH_STATS:
        vals = samples.get(stat, [])
        row[f"{stat}_mean"] = float(np.mean(vals)) if vals else float("nan")
        row[f"{stat}_sd"] = float(np.std(vals, ddof=1)) if len(vals) > 1 else float("nan")
    for learner in _BENCH_LEARNERS:
        for m in _BENCH_PR:
            key = f"{learner}_{m}"
            vals = samples.get(key, [])
            row[f"{key}_mean"] = float(np.mean(vals)) if vals else float("nan")
            row[f"{key}_sd"] = (
                float(np.std(vals, ddof=1)) if len(vals) > 1 else float("nan")
            )
    return row


def _parse_list(text: str, kind, what: str) -> list:
    try:
        items = [kind(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ValueError(f"bad {what} list {text!r}: {exc}") from None
    if not items:
        raise ValueError(f"empty {what} list")
    return items


def cmd_bench(args) -> list[Path]:
    p_list = _parse_list(args.p_list, int, "vertex-count")
    n_list = _parse_list(args.sample_sizes, int, "sample-size")
    shapes = _parse_list(args.shapes, str, "shape")
    methods = _parse_list(args.methods, str, "method")
    for s in shapes:
        if s not in SHAPES:
            raise ValueError(f"unknown shape {s!r}; choose from {SHAPES}")
    for m in methods:
        if m not in BENCH_METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {BENCH_METHODS}")
    cols = _bench_columns()
    rows = []
    cell_idx = 0
    for p in p_list:
        for shape in shapes:
            for method in methods:
                for n in n_list:
                    row = _bench_cell(
                        p,
                        shape,
                        method,
                        n,
                        args.reps,
                        args.avg_degree,
                        args.threshold,
                        args.error,
                        args.seed,
                        cell_idx,
                    )
                    row["master_seed"] = args.seed
                    row["version"] = __version__
                    rows.append(row)
                    cell_idx += 1
    lines = [",".join(cols)]
    for row in rows:
        lines.append(
            ",".join(
                repr(v) if isinstance(v, float) else str(v) for v in (row[c] for c in cols)
            )
        )
    out = _resolve_out(args.out)
    atomic_write_text(out, "\n".join(lines) + "\n")
    return [out]


def cmd_replay(args) -> list[Path]:
    manifest = read_json(args.manifest)
    if not isinstance(manifest, dict) or "argv" not in manifest:
        raise SchemaError(f'{args.manifest}: missing "argv"')
    argv = [str(tok) for tok in manifest["argv"]]
    rc = main(argv)
    if rc != 0:
        raise SchemaError(f"replayed command failed with exit code {rc}")
    recorded = manifest.get("outputs", {})
    for path, digest in recorded.items():
        actual = sha256_file(path)
        if actual != digest:
            raise SchemaError(
                f"replay mismatch for {path}: recorded {digest[:12]}, got {actual[:12]}"
            )
    sys.stdout.write(f"replay ok: {len(recorded)} output(s) verified\n")
    return []


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagonion",
        description="Random DAGs, uniform Markov correlation matrices, SEM data, and graph metrics.",
    )
    parser.add_argument("--version", action="version", version=f"dagonion {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--manifest",
        metavar="PATH",
        help="record the command and output hashes to this JSON file",
    )

    gd = sub.add_parser("gen-dag", parents=[common], help="sample a random DAG")
    gd.add_argument("--p", type=int, required=True, help="vertex count")
    gd.add_argument("--avg-degree", type=float, required=True, help="average total degree")
    gd.add_argument("--shape", choices=SHAPES, default="er")
    gd.add_argument("--shuffle", action="store_true", help="relabel vertices uniformly at random")
    gd.add_argument("--seed", type=int, required=True)
    gd.add_argument("--out", required=True, help="graph JSON path")
    gd.set_defaults(func=cmd_gen_dag)

    gm = sub.add_parser("gen-model", parents=[common], help="parameterize a graph")
    gm.add_argument("--graph", required=True, help="graph JSON path")
    gm.add_argument("--method", choices=METHODS, required=True)
    gm.add_argument(
        "--standardize",
        action="store_true",
        help="rescale zarx/tetrad to unit implied variances (dao already is)",
    )
    gm.add_argument("--seed", type=int, required=True)
    gm.add_argument("--out", required=True, help="model JSON path")
    gm.set_defaults(func=cmd_gen_model)

    sim = sub.add_parser("simulate", parents=[common], help="draw samples from a model")
    sim.add_argument("--model", required=True, help="model JSON path")
    sim.add_argument("--n", type=int, required=True, help="sample size")
    sim.add_argument("--error", choices=("gaussian", "exponential"), default="gaussian")
    sim.add_argument("--standardize-data", action="store_true")
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--out", required=True, help="dataset CSV path")
    sim.set_defaults(func=cmd_simulate)

    ev = sub.add_parser("eval", parents=[common], help="score an estimate against the truth")
    ev.add_argument("--true-graph", required=True)
    ev.add_argument("--est-graph", help="estimated graph JSON (directed + undirected)")
    ev.add_argument("--data", help="dataset CSV for sortability diagnostics")
    ev.add_argument(
        "--order-from",
        choices=("graph", "file"),
        default="graph",
        help='causal order: recompute from the graph, or read the file\'s "order"',
    )
    ev.add_argument("--out", help="report JSON path (default: stdout)")
    ev.set_defaults(func=cmd_eval)

    bench = sub.add_parser("bench", parents=[common], help="run a replication grid")
    bench.add_argument("--reps", type=int, required=True)
    bench.add_argument("--p-list", required=True, help="comma-separated vertex counts")
    bench.add_argument("--avg-degree", type=float, required=True)
    bench.add_argument("--shapes", default="er,sfi,sfo")
    bench.add_argument("--methods", default="dao,zarx,tetrad")
    bench.add_argument("--sample-sizes", default="1000")
    bench.add_argument("--error", choices=("gaussian", "exponential"), default="gaussian")
    bench.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    bench.add_argument("--seed", type=int, required=True)
    bench.add_argument("--out", required=True, help="results CSV path")
    bench.set_defaults(func=cmd_bench)

    rp = sub.add_parser("replay", help="re-run a recorded command and verify outputs")
    rp.add_argument("--manifest", required=True)
    rp.set_defaults(func=cmd_replay)

    return parser


def _strip_manifest(argv: list[str]) -> list[str]:
    out = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--manifest":
            skip = True
            continue
        if tok.startswith("--manifest="):
            continue
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outputs = args.func(args)
    except NumericalError as exc:
        return _fail("numerical", exc, 3)
    except (SchemaError, OSError) as exc:
        return _fail("io", exc, 4)
    except ValueError as exc:
        return _fail("usage", exc, 2)
    manifest_path = getattr(args, "manifest", None)
    if manifest_path and args.command != "replay":
        record = {
            "version": __version__,
            "command": args.command,
            "seed": getattr(args, "seed", None),
            "argv": _strip_manifest(list(argv)),
            "outputs": {str(p): sha256_file(p) for p in outputs},
        }
        write_json(_resolve_out(manifest_path), record)
    return 0


def _fail(kind: str, exc: BaseException, code: int) -> int:
    msg = str(exc).replace("\n", " ")
    sys.stderr.write(f"error[{kind}]: {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
