"""
Command-line surface: info | nbc | matching | homology | chromatic | csf | verify | bench

Run with `python -m src.cli <command> --graph <file or name> ...`.
"""

import argparse
import logging
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

from src.algebra import GradedAlgebra, parse_algebra_spec, qrank
from src.broken_circuits import bc_sets, build_matching, linear_extension, nbc_sets
from src.complex import build_complex, dump_complex, graded_euler_characteristic
from src.config import FORMATS, MODELS, VERIFY_LEVELS, get_defaults, setup_logging
from src.corpus import (
    NAMED_FILES,
    complete_graph,
    corpus_graphs,
    cycle_graph,
    edgeless_graph,
    named_graph,
    path_graph,
    star_graph,
)
from src.errors import ChromhomError, ConfigError
from src.graph import Graph, is_connected, load_graph
from src.homology import diff_summaries, homology, poincare_polynomial, support, torsion_table
from src.report import format_polynomial, format_verify_summary, homology_rows, render, to_json
from src.symfun import (
    chromatic_delcon,
    chromatic_nbc,
    chromatic_statesum,
    coefficients,
    csf_nbc,
    csf_statesum,
)
from src.verify import run_suite

logger = logging.getLogger(__name__)

COMMANDS = ("info", "nbc", "matching", "homology", "chromatic", "csf", "verify", "bench")

_FAMILY = re.compile(r"^([KCPSE])(\d+)$")
_FAMILIES = {
    "K": complete_graph,
    "C": cycle_graph,
    "P": path_graph,
    "S": star_graph,
    "E": edgeless_graph,
}


@dataclass
class RunConfig:
    command: str
    graph: Optional[str] = None
    algebra: str = "am:2"
    model: str = "both"
    format: str = "json"
    verify: str = "fast"
    timing: bool = True
    corpus: bool = False
    threads: int = 1
    dump: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.model not in MODELS:
            raise ConfigError(f"--model must be one of {MODELS}")
        if self.format not in FORMATS:
            raise ConfigError(f"--format must be one of {FORMATS}")
        if self.verify not in VERIFY_LEVELS:
            raise ConfigError(f"--verify must be one of {VERIFY_LEVELS}")
        if self.graph is None and not (self.corpus and self.command in ("verify", "bench")):
            raise ConfigError("--graph is required (or --corpus for verify/bench)")


def resolve_graph(spec: str) -> Graph:
    """A file path, a shipped corpus name, or a family name like K4, C6, P3, S3, E2."""
    if Path(spec).is_file():
        return load_graph(spec)
    if spec in NAMED_FILES:
        return named_graph(spec)
    match = _FAMILY.match(spec)
    if match:
        return _FAMILIES[match.group(1)](int(match.group(2)))
    raise ConfigError(f"graph {spec!r} is neither a file nor a known name")


def _graphs(cfg: RunConfig) -> List[Tuple[str, Graph]]:
    if cfg.corpus:
        return corpus_graphs()
    return [(cfg.graph, resolve_graph(cfg.graph))]


def _models(cfg: RunConfig):
    return ("full", "nbc") if cfg.model == "both" else (cfg.model,)


def _graph_info(g: Graph):
    return {"vertices": g.n_vertices, "edges": g.n_edges}


def cmd_info(cfg: RunConfig) -> dict:
    g = resolve_graph(cfg.graph)
    nbc_count = sum(1 for _ in nbc_sets(g))
    return {
        "graph": _graph_info(g),
        "edge_order": [f"{u}-{v}" for u, v in g.edges],
        "connected": is_connected(g),
        "states": 2 ** g.n_edges,
        "nbc_states": nbc_count,
        "bc_states": 2 ** g.n_edges - nbc_count,
        "chromatic": coefficients(chromatic_nbc(g)),
    }


def cmd_nbc(cfg: RunConfig) -> dict:
    g = resolve_graph(cfg.graph)
    states = [
        {"state": n, "edges": list(s.indices()), "size": len(s)}
        for n, s in enumerate(nbc_sets(g))
    ]
    return {
        "graph": _graph_info(g),
        "nbc_count": len(states),
        "full_count": 2 ** g.n_edges,
        "nbc": states,
    }


def cmd_matching(cfg: RunConfig) -> dict:
    g = resolve_graph(cfg.graph)
    m = build_matching(g)
    order = linear_extension(g, m)
    return {
        "graph": _graph_info(g),
        "bc_count": sum(1 for _ in bc_sets(g)),
        "pairs": [
            {"lower": list(s.indices()), "upper": list(t.indices()), "edge": (t ^ s).indices()[0]}
            for s, t in m.pairs
        ],
        "linear_extension": [{"position": n, "edges": list(s.indices())} for n, s in enumerate(order)],
    }


def _run_model(g, a, model, threads):
    start = time.perf_counter()
    c = build_complex(g, a, model)
    built = time.perf_counter()
    h = homology(c, threads=threads)
    done = time.perf_counter()
    return c, h, built - start, done - built


def cmd_homology(cfg: RunConfig) -> dict:
    """
    Homology per requested model; with --model both, a structural diff that must be empty

    Returns:
        report dict with 'ok' set to False when the models disagree
    """
    g = resolve_graph(cfg.graph)
    a = parse_algebra_spec(cfg.algebra)
    report = {"graph": _graph_info(g), "algebra": a.name, "models": {}}
    summaries = {}
    dumps = {}
    for model in _models(cfg):
        c, h, build_time, snf_time = _run_model(g, a, model, cfg.threads)
        summaries[model] = h
        span = support(h)
        entry = {
            "states": len(c.states),
            "groups": homology_rows(h),
            "euler": format_polynomial(graded_euler_characteristic(c)),
            "poincare": format_polynomial(poincare_polynomial(h)),
            "torsion": [
                {"i": i, "j": j, "torsion": list(factors)}
                for (i, j), factors in sorted(torsion_table(h).items())
            ],
            "support": None if span is None else [span.i_min, span.i_max, span.j_min, span.j_max],
        }
        if cfg.timing:
            entry["build_seconds"] = round(build_time, 6)
            entry["homology_seconds"] = round(snf_time, 6)
        report["models"][model] = entry
        if cfg.dump:
            dumps[model] = dump_complex(c)

    report["ok"] = True
    if len(summaries) == 2:
        diff = diff_summaries(summaries["full"], summaries["nbc"])
        report["diff"] = diff
        report["ok"] = not diff

    if cfg.dump:
        Path(cfg.dump).write_text(to_json(dumps), encoding="utf-8")
    return report


def cmd_chromatic(cfg: RunConfig) -> dict:
    g = resolve_graph(cfg.graph)
    routes = {
        "statesum": chromatic_statesum(g),
        "nbc": chromatic_nbc(g),
        "delcon": chromatic_delcon(g),
    }
    a = parse_algebra_spec(cfg.algebra)
    return {
        "graph": _graph_info(g),
        "coefficients": {name: coefficients(p) for name, p in routes.items()},
        "polynomial": format_polynomial(routes["nbc"]),
        "qrank": format_polynomial(qrank(a)),
        "ok": len({tuple(coefficients(p)) for p in routes.values()}) == 1,
    }


def cmd_csf(cfg: RunConfig) -> dict:
    g = resolve_graph(cfg.graph)
    full = csf_statesum(g)
    nbc = csf_nbc(g)
    return {
        "graph": _graph_info(g),
        "statesum": full.to_json(),
        "nbc": nbc.to_json(),
        "ok": full == nbc,
    }


def _map(cfg, fn, items):
    if cfg.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def cmd_verify(cfg: RunConfig) -> dict:
    a = parse_algebra_spec(cfg.algebra)

    def one(item):
        name, g = item
        return [dict(r.to_dict(), graph=name) for r in run_suite(g, a, cfg.verify)]

    checks = [entry for part in _map(cfg, one, _graphs(cfg)) for entry in part]
    return {
        "algebra": a.name,
        "level": cfg.verify,
        "checks": checks,
        "ok": all(entry["status"] != "FAIL" for entry in checks),
    }


def _bench_model(g: Graph, a: GradedAlgebra, model, threads):
    c, h, build_time, snf_time = _run_model(g, a, model, threads)
    shapes = [c.differential(i, j).shape for (i, j) in c.bigrades()]
    return {
        "model": model,
        "states": len(c.states),
        "total_rank": sum(c.dim(i, j) for (i, j) in c.bigrades()),
        "largest_matrix": list(max(shapes, key=lambda s: s[0] * s[1])) if shapes else [0, 0],
        "build_seconds": build_time,
        "homology_seconds": snf_time,
    }


def cmd_bench(cfg: RunConfig) -> dict:
    """Full versus NBC pipeline: states, matrix sizes, build and SNF time, speedup."""
    a = parse_algebra_spec(cfg.algebra)
    rows = []
    for name, g in _graphs(cfg):
        full = _bench_model(g, a, "full", cfg.threads)
        nbc = _bench_model(g, a, "nbc", cfg.threads)
        full_time = full["build_seconds"] + full["homology_seconds"]
        nbc_time = nbc["build_seconds"] + nbc["homology_seconds"]
        row = {
            "graph": name,
            "full_states": full["states"],
            "nbc_states": nbc["states"],
            "full_rank": full["total_rank"],
            "nbc_rank": nbc["total_rank"],
            "full_largest": full["largest_matrix"],
            "nbc_largest": nbc["largest_matrix"],
        }
        if cfg.timing:
            row.update(
                full_build=round(full["build_seconds"], 6),
                full_snf=round(full["homology_seconds"], 6),
                nbc_build=round(nbc["build_seconds"], 6),
                nbc_snf=round(nbc["homology_seconds"], 6),
                speedup=round(full_time / nbc_time, 3) if nbc_time > 0 else None,
            )
        rows.append(row)
    return {"algebra": a.name, "bench": rows}


HANDLERS = {
    "info": cmd_info,
    "nbc": cmd_nbc,
    "matching": cmd_matching,
    "homology": cmd_homology,
    "chromatic": cmd_chromatic,
    "csf": cmd_csf,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def build_parser(defaults=None):
    if defaults is None:
        defaults = get_defaults()
    parser = argparse.ArgumentParser(
        prog="chromhom",
        description="Chromatic homology over A_m from the full and broken-circuit complexes",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--graph", help="edge-list file, corpus name (K5, C6, ...) or family (K4, C5, P3, S3, E2)")
    parser.add_argument("--algebra", default=defaults["algebra"], help="am:<m> or a JSON algebra file")
    parser.add_argument("--model", default=defaults["model"], choices=MODELS)
    parser.add_argument("--format", default=defaults["format"], choices=FORMATS)
    parser.add_argument("--verify", default=defaults["verify"], choices=VERIFY_LEVELS)
    parser.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    parser.add_argument("--corpus", action="store_true", help="run verify/bench over the shipped corpus")
    parser.add_argument("--threads", type=int, default=defaults["threads"])
    parser.add_argument("--dump", help="write the complex dump (JSON) here")
    parser.add_argument("--log-level", default=defaults["log_level"])
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level)
        cfg = RunConfig(
            command=args.command,
            graph=args.graph,
            algebra=args.algebra,
            model=args.model,
            format=args.format,
            verify=args.verify,
            timing=not args.no_timing,
            corpus=args.corpus,
            threads=max(1, args.threads),
            dump=args.dump,
        )
        report = HANDLERS[cfg.command](cfg)
    except ChromhomError as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return 2

    if cfg.command == "verify" and cfg.format == "tsv":
        sys.stdout.write(format_verify_summary(report))
    else:
        sys.stdout.write(render(report, cfg.format))
    return 0 if report.get("ok", True) else 1


if __name__ == "__main__":
    sys.exit(main())
