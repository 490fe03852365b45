"""Command-line interface.

Subcommands: count, count-directed, census, best, orientations, reduce,
oracle, spectra.  Reports are JSON by default (schema ``eulercount/1``);
``--format table`` gives aligned text and ``--format csv`` comma-separated
rows.  Exit codes: 0 ok, 1 usage, 2 parse, 3 precondition, 4 budget,
5 numerical residual.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from . import census as census_mod
from . import eulerian as eulerian_mod
from . import oracle as oracle_mod
from . import reductions as reductions_mod
from . import twists as twists_mod
from ._backend import backend_name
from .census import CountReport
from .errors import EulerCountError, GraphParseError, PreconditionError
from .graphs import (
    MultiGraph,
    SpanningTree,
    default_spanning_tree,
    load_graph,
    spanning_tree_from_edges,
)
from .homology import Chain, coefficient_sum, twist_space

SCHEMA = "eulercount/1"


@dataclass
class RunConfig:
    """Validated invocation parameters for one subcommand run."""

    command: str
    path: str
    method: str = "edge"
    t: int = 2
    length: int | None = None
    tree: tuple[int, ...] | None = None
    orientation: str | None = None
    alpha: tuple[int, ...] | None = None
    subset: tuple[int, ...] | None = None
    gamma: tuple[int, ...] | None = None
    mode: str = "aut"
    generators_path: str | None = None
    find_generators: bool = False
    kind: str = "circuits"
    root: int | None = None
    tolerance: float = census_mod.DEFAULT_COUNT_TOL
    imag_tol: float = twists_mod.DEFAULT_IMAG_TOL
    budget: int = census_mod.DEFAULT_TERM_BUDGET
    force: bool = False
    jobs: int | None = None  # auto: serial for small sums, cores for large
    exact: bool | None = None
    fmt: str = "json"
    dump_rows: bool = False
    orbits: bool = False
    dump_matrix: bool = False
    trace_lengths: tuple[int, ...] = ()
    check_tree: bool = False
    max_nodes: int = oracle_mod.DEFAULT_BUDGET.max_nodes
    max_length: int = oracle_mod.DEFAULT_BUDGET.max_length


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; parse/precondition/budget/residual use 2..5
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an index list: {text!r}")


def _residue_list(text: str) -> tuple[int, ...]:
    try:
        values = json.loads(text)
        return tuple(int(v) for v in values)
    except (json.JSONDecodeError, TypeError, ValueError):
        raise argparse.ArgumentTypeError(
            f"expected a JSON array of residues: {text!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eulercount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="graph file")
    common.add_argument("--format", dest="fmt", default="json",
                        choices=("json", "table", "csv"))
    common.add_argument("--tree", type=_int_list, default=None,
                        help="spanning tree edge indices, e.g. 0,1,3")
    common.add_argument("--method", default="edge",
                        choices=("edge", "vertex"))
    common.add_argument("--tolerance", type=float,
                        default=census_mod.DEFAULT_COUNT_TOL)
    common.add_argument("--imag-tol", type=float,
                        default=twists_mod.DEFAULT_IMAG_TOL)
    common.add_argument("--budget", type=int,
                        default=census_mod.DEFAULT_TERM_BUDGET,
                        help="maximum number of twist summands")
    common.add_argument("--force", action="store_true",
                        help="ignore the twist budget")
    common.add_argument("--no-exact", dest="exact", action="store_const",
                        const=False, default=None,
                        help="force the floating path even at t=2")
    common.add_argument("--jobs", type=int, default=None,
                        help="parallel workers for the twist sum "
                             "(default: serial for small sums, cores for large)")
    common.add_argument("--serial", dest="jobs", action="store_const", const=1,
                        help="single-threaded deterministic accumulation")

    p = sub.add_parser("count", parents=[common],
                       help="Eulerian cycles by the undirected trace formula")
    p.add_argument("--check-tree", action="store_true",
                   help="recompute with a second tree and compare")

    p = sub.add_parser("count-directed", parents=[common],
                       help="Eulerian cycles of a chosen Eulerian orientation")
    p.add_argument("--orientation", required=True,
                   help="one '+'/'-' per edge index")
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("census", parents=[common],
                       help="circuits or closed walks in one twist class")
    p.add_argument("--alpha", type=_residue_list, required=True,
                   help="JSON array of m residues")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--subset", type=_int_list, default=None,
                   help="edge indices of F; default: cotree (homology census)")

    p = sub.add_parser("best", parents=[common],
                       help="BEST-theorem count for one orientation")
    p.add_argument("--orientation", required=True)
    p.add_argument("--root", type=int, default=None)

    sub.add_parser("orientations", parents=[common],
                   help="all Eulerian orientations with their BEST counts")

    p = sub.add_parser("reduce", parents=[common],
                       help="reduced Eulerian count via symmetries")
    p.add_argument("--mode", default="aut",
                   choices=("aut", "antisym", "combined"))
    p.add_argument("--generators", dest="generators_path", default=None,
                   help="JSON list of {vertex_perm, edge_perm}")
    p.add_argument("--find-generators", action="store_true",
                   help="brute-force the full automorphism group")
    p.add_argument("--dump-rows", action="store_true",
                   help="emit per-twist sign/trace rows")
    p.add_argument("--orbits", action="store_true",
                   help="emit the orbit partition table")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--orientation", default=None)

    p = sub.add_parser("oracle", parents=[common],
                       help="brute-force enumeration ground truth")
    p.add_argument("--kind", default="circuits",
                   choices=("circuits", "walks", "eulerian"))
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--alpha", type=_residue_list, default=None)
    p.add_argument("--subset", type=_int_list, default=None)
    p.add_argument("--max-nodes", type=int,
                   default=oracle_mod.DEFAULT_BUDGET.max_nodes)
    p.add_argument("--max-length", type=int,
                   default=oracle_mod.DEFAULT_BUDGET.max_length)

    p = sub.add_parser("spectra", parents=[common],
                       help="eigenvalues and trace tables of twisted matrices")
    p.add_argument("--gamma", type=_residue_list, default=None,
                   help="JSON array of m residues (default: zero twist)")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--kind", default="both",
                   choices=("vertex", "edge", "both"))
    p.add_argument("--dump-matrix", action="store_true")
    p.add_argument("--trace-table", dest="trace_lengths", type=_int_list,
                   default=())

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f for f in RunConfig.__dataclass_fields__}
    values = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    cfg = RunConfig(**values)
    if cfg.command in ("count", "count-directed", "census", "reduce") and (
        cfg.t < 2
    ):
        raise PreconditionError(f"modulus must be >= 2, got {cfg.t}")
    return cfg


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        for key, value in payload.items():
            writer.writerow([key, value])
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def report_table(rows: list[dict], headers: list[str], fmt: str = "table") -> str:
    """Render dict rows as an aligned text table or CSV, headers always shown."""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([row.get(h, "") for h in headers])
        return out.getvalue().rstrip("\n")
    table = [headers] + [[str(row.get(h, "")) for h in headers] for row in rows]
    widths = [max(len(line[c]) for line in table) for c in range(len(headers))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip()
        for line in table
    )


def _count_payload(report: CountReport) -> dict:
    payload = {"schema": SCHEMA, "backend": backend_name()}
    payload.update(report.to_json_dict())
    return payload


def _load(cfg: RunConfig) -> tuple[MultiGraph, SpanningTree | None]:
    graph, file_tree = load_graph(cfg.path)
    if cfg.tree is not None:
        return graph, spanning_tree_from_edges(graph, cfg.tree)
    return graph, file_tree


def _orientation(cfg: RunConfig, g: MultiGraph) -> eulerian_mod.Orientation:
    if cfg.orientation is None:
        raise PreconditionError("an --orientation string is required")
    orient = eulerian_mod.Orientation.from_string(cfg.orientation)
    if len(orient.flips) != g.m:
        raise PreconditionError(
            f"orientation has {len(orient.flips)} signs for {g.m} edges"
        )
    return orient


def _cmd_count(cfg: RunConfig) -> dict:
    g, tree = _load(cfg)
    report = eulerian_mod.count_eulerian_cycles(
        g, tree, cfg.method, exact=cfg.exact, tolerance=cfg.tolerance,
        imag_tol=cfg.imag_tol, term_budget=cfg.budget, force=cfg.force,
        jobs=cfg.jobs, check_tree=cfg.check_tree,
    )
    return _count_payload(report)


def _cmd_count_directed(cfg: RunConfig) -> dict:
    g, tree = _load(cfg)
    report = eulerian_mod.count_eulerian_cycles_directed(
        g, _orientation(cfg, g), tree, cfg.t, cfg.method,
        tolerance=cfg.tolerance, imag_tol=cfg.imag_tol,
        term_budget=cfg.budget, force=cfg.force, jobs=cfg.jobs,
    )
    return _count_payload(report)


def _cmd_census(cfg: RunConfig) -> dict:
    g, tree = _load(cfg)
    if cfg.alpha is None or cfg.length is None:
        raise PreconditionError("census needs --alpha and --length")
    if len(cfg.alpha) != g.m:
        raise PreconditionError(
            f"alpha has {len(cfg.alpha)} residues for {g.m} edges"
        )
    alpha = Chain(cfg.t, cfg.alpha)
    if cfg.subset is not None:
        report = census_mod.count_circuits_in_class(
            g, cfg.subset, alpha.restrict(cfg.subset), cfg.length, cfg.t,
            cfg.method, exact=cfg.exact, tolerance=cfg.tolerance,
            imag_tol=cfg.imag_tol, term_budget=cfg.budget,
            force=cfg.force, jobs=cfg.jobs,
        )
    else:
        report = census_mod.count_circuits_in_homology(
            g, tree, alpha, cfg.length, cfg.t, cfg.method,
            exact=cfg.exact, tolerance=cfg.tolerance, imag_tol=cfg.imag_tol,
            term_budget=cfg.budget, force=cfg.force, jobs=cfg.jobs,
        )
    return _count_payload(report)


def _cmd_best(cfg: RunConfig) -> dict:
    g, _ = _load(cfg)
    report = eulerian_mod.best_count(g, _orientation(cfg, g), cfg.root)
    payload = {"schema": SCHEMA}
    payload.update(report.to_json_dict())
    payload["laplacian"] = [list(row) for row in report.laplacian]
    return payload


def _cmd_orientations(cfg: RunConfig) -> dict | str:
    g, _ = _load(cfg)
    started = time.perf_counter()
    total, reports = eulerian_mod.count_via_best(g)
    rows = [
        {
            "orientation": r.orientation.to_string(),
            "arborescences": r.arborescences,
            "count": r.cycle_count,
        }
        for r in reports
    ]
    if cfg.fmt in ("table", "csv"):
        return report_table(rows, ["orientation", "arborescences", "count"],
                            cfg.fmt)
    return {
        "schema": SCHEMA,
        "orientations": rows,
        "total": total,
        "count": total,
        "seconds": time.perf_counter() - started,
    }


def _generators(cfg: RunConfig, g: MultiGraph):
    if cfg.generators_path:
        with open(cfg.generators_path, encoding="utf-8") as fh:
            return reductions_mod.load_generators(g, fh.read())
    if cfg.find_generators:
        return reductions_mod.find_automorphisms(g)
    return []


def _digits(chain: Chain, subset) -> str:
    return "".join(str(chain.coeffs[i]) for i in subset)


def _cmd_reduce(cfg: RunConfig) -> dict | str:
    g, tree = _load(cfg)
    if tree is None:
        tree = default_spanning_tree(g)
    generators = _generators(cfg, g)
    orient = None
    if cfg.orientation is not None:
        orient = _orientation(cfg, g)
    report = reductions_mod.count_eulerian_reduced(
        g, tree, generators, cfg.mode, cfg.method, t=cfg.t, orient=orient,
        exact=cfg.exact, tolerance=cfg.tolerance, imag_tol=cfg.imag_tol,
        term_budget=cfg.budget,
    )
    payload = _count_payload(report)

    if cfg.dump_rows:
        rows = _sign_trace_rows(g, tree, cfg)
        text = report_table(
            rows, ["gamma", "sign", "trace_W", "trace_A"],
            "csv" if cfg.fmt == "csv" else "table",
        )
        if cfg.fmt == "json":
            payload["rows"] = rows
        else:
            return text
    if cfg.orbits:
        partition = reductions_mod.orbit_partition(
            g, twist_space(g.m, cfg.t, tree.cotree_edges), generators,
            include_canonical=(cfg.mode == "combined"), tree=tree,
        )
        rows = [
            {
                "representative": _digits(o.representative, tree.cotree_edges),
                "size": o.size,
                "members": " ".join(
                    _digits(mb, tree.cotree_edges) for mb in o.members
                ),
            }
            for o in partition.orbits
        ]
        if cfg.fmt == "json":
            payload["orbit_rows"] = rows
        else:
            return report_table(rows, ["representative", "size", "members"],
                                "csv" if cfg.fmt == "csv" else "table")
    return payload


def _sign_trace_rows(g: MultiGraph, tree, cfg: RunConfig) -> list[dict]:
    """Sign and trace columns for each twist in the antisym first half
    (antisym mode) or the full cotree twist space."""
    if cfg.mode == "antisym":
        part = reductions_mod.antisym_partition(g, tree)
        chains = part.s1
    else:
        chains = tuple(twist_space(g.m, cfg.t, tree.cotree_edges))
    rows = []
    for gamma in chains:
        sign = 1 if coefficient_sum(gamma) % 2 == 0 else -1
        w = twists_mod.trace_power(
            twists_mod.edge_matrix(g, gamma), g.m, cfg.imag_tol
        )
        a = twists_mod.trace_power(
            twists_mod.vertex_matrix(g, gamma), g.m, cfg.imag_tol
        )
        rows.append(
            {
                "gamma": _digits(gamma, tree.cotree_edges),
                "sign": sign,
                "trace_W": w,
                "trace_A": a,
            }
        )
    return rows


def _cmd_oracle(cfg: RunConfig) -> dict:
    g, _ = _load(cfg)
    budget = oracle_mod.OracleBudget(
        max_length=cfg.max_length, max_nodes=cfg.max_nodes
    )
    started = time.perf_counter()
    if cfg.kind == "eulerian":
        count = oracle_mod.count_eulerian_oracle(g, budget)
        extra = {}
    else:
        if cfg.length is None:
            raise PreconditionError("oracle circuits/walks need --length")
        if cfg.alpha is not None:
            subset = cfg.subset
            if subset is None:
                subset = tuple(range(g.m))
            count = oracle_mod.census_oracle(
                g, subset, Chain(cfg.t, cfg.alpha), cfg.length, cfg.t,
                cfg.kind, budget,
            )
            extra = {"subset": list(subset), "t": cfg.t}
        elif cfg.kind == "circuits":
            count = oracle_mod.enumerate_circuits(g, cfg.length, budget)
            extra = {}
        else:
            count = oracle_mod.enumerate_closed_walks(g, cfg.length, budget)
            extra = {}
    payload = {
        "schema": SCHEMA,
        "count": count,
        "kind": cfg.kind,
        "length": cfg.length if cfg.kind != "eulerian" else g.m,
        "seconds": time.perf_counter() - started,
    }
    payload.update(extra)
    return payload


def _cmd_spectra(cfg: RunConfig) -> dict:
    g, _ = _load(cfg)
    gamma_coeffs = cfg.gamma if cfg.gamma is not None else (0,) * g.m
    if len(gamma_coeffs) != g.m:
        raise PreconditionError(
            f"gamma has {len(gamma_coeffs)} residues for {g.m} edges"
        )
    gamma = Chain(cfg.t, tuple(gamma_coeffs))
    payload: dict = {"schema": SCHEMA, "t": cfg.t, "gamma": list(gamma.coeffs)}
    kinds = ("vertex", "edge") if cfg.kind == "both" else (cfg.kind,)
    for kind in kinds:
        build = (
            twists_mod.vertex_matrix if kind == "vertex"
            else twists_mod.edge_matrix
        )
        matrix = build(g, gamma)
        values = twists_mod.spectrum(matrix)
        payload[f"{kind}_spectrum"] = [[v.real, v.imag] for v in values]
        if cfg.trace_lengths:
            payload[f"{kind}_traces"] = {
                str(l): twists_mod.trace_power(matrix, l, cfg.imag_tol)
                for l in cfg.trace_lengths
            }
        if cfg.dump_matrix:
            data = matrix.as_complex()
            payload[f"{kind}_matrix"] = [
                [[z.real, z.imag] for z in row] for row in data
            ]
    return payload


_DISPATCH = {
    "count": _cmd_count,
    "count-directed": _cmd_count_directed,
    "census": _cmd_census,
    "best": _cmd_best,
    "orientations": _cmd_orientations,
    "reduce": _cmd_reduce,
    "oracle": _cmd_oracle,
    "spectra": _cmd_spectra,
}


def run(cfg: RunConfig) -> int:
    """Execute one configured subcommand, printing its report."""
    try:
        result = _DISPATCH[cfg.command](cfg)
    except EulerCountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GraphParseError.exit_code
    if isinstance(result, str):
        print(result)
    else:
        _emit(result, cfg.fmt)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except EulerCountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
