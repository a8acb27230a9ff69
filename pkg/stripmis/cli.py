"""``stripmis`` command line: solve, validate-esd, detect, oracle, gen, bench."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

from stripmis.display import RunReport, render, renderers
from stripmis.esd.io import ESDFormatError, read_esd
from stripmis.esd.rungs import DEFAULT_RUNG_BUDGET, check_semi_tame, check_tame
from stripmis.esd.validate import validate_esd
from stripmis.graph import Graph, GraphError, GraphFormatError, dump_graph, parse_graph
from stripmis.pattern import find_induced_subdivided_claw, is_sttt_free
from stripmis.solver import ConfigError, ProviderSpec, SolverConfig, solve_mwis, trace_from_env
from stripmis.solver.config import DEFAULT_PROVIDERS
from stripmis.testkit import (
    brute_force_mwis,
    gen_random_bounded_degree,
    gen_subdivided_claw,
    line_graph,
    named_graph,
    poljak_subdivide,
)
from stripmis.utils import compute_digest, file_digest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_ESD = 3
EXIT_CONFIG = 4


class CommandError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _load_graph(path: str, inputs: Dict[str, str], name: str = "graph") -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise CommandError(EXIT_PARSE, f"cannot read {path}: {err.strerror}") from err
    inputs[name] = compute_digest(text)
    try:
        return parse_graph(text)
    except GraphFormatError as err:
        raise CommandError(EXIT_PARSE, f"{path}: {err}") from err


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    specs = [ProviderSpec.parse(p) for p in args.provider] if args.provider else list(DEFAULT_PROVIDERS)
    if args.esd:
        specs.insert(0, ProviderSpec("file", {"path": args.esd}))
    return SolverConfig(
        t=args.t,
        delta=args.delta,
        c=args.c,
        d_max=args.d_max,
        z_max=args.z_max,
        base_case_n=args.base_case_n,
        providers=tuple(specs),
        seed=args.seed,
        memoize=args.memoize,
        threads=args.threads,
        trace=args.trace or trace_from_env(),
    )


def cmd_solve(args: argparse.Namespace, report: RunReport) -> int:
    graph = _load_graph(args.graph, report.inputs)
    try:
        config = _solver_config(args).resolve(graph)
    except ConfigError as err:
        raise CommandError(EXIT_CONFIG, str(err)) from err
    if args.esd:
        _check_esd_file(args.esd, graph, report.inputs)
    if args.check_free:
        report.result["sttt_free"] = is_sttt_free(graph, config.t)
    start = time.perf_counter()
    try:
        solution = solve_mwis(graph, config)
    except ConfigError as err:
        raise CommandError(EXIT_CONFIG, str(err)) from err
    report.timing["solve"] = time.perf_counter() - start
    report.result.update(
        weight=solution.weight,
        vertices=list(solution.vertices),
        nodes=solution.stats.get("nodes", 0),
        fallbacks=solution.stats.get("fallback", 0),
        config=config.describe(),
    )
    if solution.trace is not None:
        report.trace = solution.trace.to_dict()
        report.trace_text = solution.trace.render()
    return EXIT_OK


def _check_esd_file(path: str, graph: Graph, inputs: Dict[str, str]) -> None:
    try:
        inputs["esd"] = file_digest(path)
        document = read_esd(path)
        _, esd, _ = document.bind(graph)
    except OSError as err:
        raise CommandError(EXIT_ESD, f"cannot read {path}: {err.strerror}") from err
    except ESDFormatError as err:
        raise CommandError(EXIT_ESD, f"{path}: {err}") from err
    found = esd.validate(relaxed=True)
    if not found.ok:
        raise CommandError(EXIT_ESD, f"{path}: {found.violations[0].rule}: {found.violations[0].message}")


def cmd_validate_esd(args: argparse.Namespace, report: RunReport) -> int:
    graph = _load_graph(args.graph, report.inputs)
    try:
        report.inputs["esd"] = file_digest(args.esd)
        document = read_esd(args.esd)
        deleted, esd, _ = document.bind(graph)
    except OSError as err:
        raise CommandError(EXIT_ESD, f"cannot read {args.esd}: {err.strerror}") from err
    except ESDFormatError as err:
        raise CommandError(EXIT_ESD, f"{args.esd}: {err}") from err
    found = validate_esd(esd.host, esd.pattern, esd.eta, esd.terminals, relaxed=args.relaxed)
    report.result["valid"] = found.ok
    report.result["deleted"] = list(deleted)
    report.result["violations"] = [
        {"rule": v.rule, "message": v.message} for v in found.violations
    ]
    if found.ok and args.tame:
        check = check_tame if args.tame == "tame" else check_semi_tame
        tameness = check(esd, budget=args.budget)
        report.result[args.tame] = "indeterminate" if tameness.indeterminate else tameness.ok
        report.result["tameness_violations"] = [
            {"rule": v.rule, "message": v.message} for v in tameness.violations
        ]
    return EXIT_OK if found.ok else EXIT_NEGATIVE


def cmd_detect(args: argparse.Namespace, report: RunReport) -> int:
    graph = _load_graph(args.graph, report.inputs)
    try:
        claw = find_induced_subdivided_claw(graph, args.a, args.b, args.c)
    except ValueError as err:
        raise CommandError(EXIT_CONFIG, str(err)) from err
    if claw is None:
        report.result["found"] = False
        return EXIT_NEGATIVE
    report.result.update(found=True, root=claw.root, legs=[list(leg) for leg in claw.legs])
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, report: RunReport) -> int:
    graph = _load_graph(args.graph, report.inputs)
    start = time.perf_counter()
    try:
        solution = brute_force_mwis(graph, cap=args.cap)
    except ValueError as err:
        raise CommandError(EXIT_CONFIG, str(err)) from err
    report.timing["oracle"] = time.perf_counter() - start
    report.result.update(weight=solution.weight, vertices=list(solution.vertices))
    return EXIT_OK


def _generate(args: argparse.Namespace, report: RunReport) -> Graph:
    kind = args.kind
    if kind == "random":
        weights = tuple(args.weights) if args.weights else None
        return gen_random_bounded_degree(args.n, args.delta, args.edge_prob, args.seed, weights)
    if kind == "claw":
        return gen_subdivided_claw(*args.legs)
    if kind == "named":
        return named_graph(args.name, *args.size)
    base = _load_graph(args.base, report.inputs, "base")
    if kind == "poljak":
        return poljak_subdivide(base, args.p).graph
    return line_graph(base)[0]


def cmd_gen(args: argparse.Namespace, report: RunReport) -> int:
    try:
        graph = _generate(args, report)
    except (GraphError, ValueError) as err:
        raise CommandError(EXIT_CONFIG, str(err)) from err
    text = dump_graph(graph)
    if args.out:
        Path(args.out).write_text(text)
        report.result["out"] = args.out
    else:
        report.result["graph"] = text
    report.result.update(n=graph.n, m=graph.m, digest=compute_digest(text))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, report: RunReport) -> int:
    from stripmis.bench import fit_exponent, run_bench

    config = SolverConfig(c=args.c, memoize=args.memoize)
    start = time.perf_counter()
    table = run_bench(args.max_p, config)
    report.timing["bench"] = time.perf_counter() - start
    report.result["table"] = table.drop(columns=["seconds"]).to_dict(orient="records")
    report.result["exponent"] = round(fit_exponent(table), 3)
    report.trace_text = table.to_string(index=False)
    return EXIT_OK


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=int, default=3)
    parser.add_argument("--delta", type=int, default=None)
    parser.add_argument("--c", type=_fraction, default=None, help="balance parameter, e.g. 1/2")
    parser.add_argument("--d-max", type=int, default=3)
    parser.add_argument("--z-max", type=int, default=4)
    parser.add_argument("--base-case-n", type=int, default=10)
    parser.add_argument(
        "--provider",
        action="append",
        default=[],
        metavar="NAME[:KEY=VALUE,...]",
        help="decomposition provider, repeatable, tried in order",
    )
    parser.add_argument("--esd", help="decomposition file, tried before the other providers")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--memoize", action="store_true")
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--check-free", action="store_true", help="report whether the input is S_{t,t,t}-free")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stripmis", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--no-timing", action="store_true", help="leave timings out of the report")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="maximum-weight independent set")
    solve.add_argument("graph")
    _add_solver_flags(solve)
    solve.set_defaults(func=cmd_solve)

    validate = sub.add_parser("validate-esd", help="check a decomposition file against a graph")
    validate.add_argument("graph")
    validate.add_argument("esd")
    validate.add_argument("--relaxed", action="store_true", help="allow fewer than two pattern edges")
    validate.add_argument("--tame", choices=["tame", "semi-tame"], default=None)
    validate.add_argument("--budget", type=int, default=DEFAULT_RUNG_BUDGET)
    validate.set_defaults(func=cmd_validate_esd)

    detect = sub.add_parser("detect", help="find an induced S_{a,b,c}")
    detect.add_argument("graph")
    detect.add_argument("a", type=int)
    detect.add_argument("b", type=int)
    detect.add_argument("c", type=int)
    detect.set_defaults(func=cmd_detect)

    oracle = sub.add_parser("oracle", help="brute-force maximum-weight independent set")
    oracle.add_argument("graph")
    oracle.add_argument("--cap", type=int, default=30)
    oracle.set_defaults(func=cmd_oracle)

    gen = sub.add_parser("gen", help="write a generated graph")
    gen.add_argument("kind", choices=["random", "claw", "named", "poljak", "line"])
    gen.add_argument("--n", type=int, default=10)
    gen.add_argument("--delta", type=int, default=3)
    gen.add_argument("--edge-prob", type=float, default=0.3)
    gen.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"))
    gen.add_argument("--legs", type=int, nargs=3, default=[1, 1, 1], metavar=("A", "B", "C"))
    gen.add_argument("--name", default="petersen")
    gen.add_argument("--size", type=int, nargs="*", default=[])
    gen.add_argument("--base", help="base graph file for poljak and line")
    gen.add_argument("-p", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="node counts on subdivided triangles")
    bench.add_argument("--max-p", type=int, default=6)
    bench.add_argument("--c", type=_fraction, default=Fraction(1, 2))
    bench.add_argument("--memoize", action="store_true")
    bench.set_defaults(func=cmd_bench)
    return parser


def _echo(args: argparse.Namespace) -> Dict[str, Any]:
    echo = {}
    for key, value in vars(args).items():
        if key in ("func", "command"):
            continue
        echo[key] = str(value) if isinstance(value, Fraction) else value
    return echo


def main(argv: Optional[Sequence[str]] = None, out: Callable[[str], Any] = print) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "gen" and args.kind in ("poljak", "line") and not args.base:
        parser.error(f"gen {args.kind} needs --base")

    from stripmis import __version__

    report = RunReport(command=args.command, arguments=_echo(args), version=__version__)
    try:
        report.status = args.func(args, report)
    except CommandError as err:
        report.status = err.status
        report.result["error"] = str(err)
        logger.error("%s", err)
    if args.no_timing:
        report.timing = {}
    with renderers.enable("json" if args.json else "text"):
        out(render(report))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
