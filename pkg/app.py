# app.py
# Command-line entry point: graph operations, invariants, classification reports
# and matrix-factorization tooling for (±1)-skew quadrics.

import argparse
import sys
from typing import Any, Dict, List, Optional

from src.algebra.hilbert import hilbert_checks
from src.algebra.mf import (
    coker_dims_oracle,
    coker_hilbert,
    cone,
    identity_morphism,
    knorrer_extend,
    reduce,
    verify,
)
from src.data.codec import decode_mf, decode_morphism, encode_mf
from src.data.graph_format import graph_to_json, load_graph
from src.graphs.pointscheme import components
from src.graphs.quadgraph import mutate, reduce_to_base, relative_mutate
from src.invariants.clifford import center_dim_oracle, presentation, structure
from src.invariants.rank import high_rank, is_smooth, rank_bounds
from src.reports import classification
from src.reports.classification import analyze_graph
from src.reports.harness import run_property_harness
from src.reports.scans import relative_mutation_survey, sign_system_scan
from src.ui import tables
from src.utils.config import get_settings
from src.utils.errors import MalformedInput, SkewQuadricError
from src.utils.helpers import configure_logging, dump_json, read_json_file, safe_json_parse

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# ==============================================================================
# INPUT / OUTPUT
# ==============================================================================

def read_json_arg(source: str) -> Any:
    """A file path, or '-' for stdin."""
    if source == "-":
        return safe_json_parse(sys.stdin.read())
    return read_json_file(source)


def emit(args: argparse.Namespace, payload: Dict[str, Any], text: Optional[str] = None) -> None:
    if args.json or text is None:
        print(dump_json(payload))
    else:
        print(text)


def parse_signs(text: str) -> List[int]:
    signs = []
    for token in text.split(","):
        token = token.strip()
        if token in ("+", "+1", "1"):
            signs.append(1)
        elif token in ("-", "-1"):
            signs.append(-1)
        else:
            raise MalformedInput(f"invalid sign {token!r}; use +,- lists such as +,-,+")
    return signs


# ==============================================================================
# GRAPH COMMANDS
# ==============================================================================

def cmd_classify(args) -> int:
    report = classification.cmd_classify(args.n, with_traces=not args.no_traces, threads=args.threads)
    emit(args, report.to_dict(), tables.render_classification(report))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    row = analyze_graph(g, trace_budget=args.budget)
    text = "\n".join([
        str(g),
        f"clifford: {row.clifford.components} x M_{row.clifford.block}(k), N = {row.descriptor}",
        tables.render_point_scheme(row.point_scheme),
        f"rank: [{row.rank.lo}, {row.rank.hi}], high rank: {row.high_rank}, smooth: {tables.fmt_value(row.smooth)}",
        tables.render_trace(row.trace),
    ])
    emit(args, row.to_dict(), text)
    return EXIT_OK if row.consistent else EXIT_FAILED


def cmd_reduce(args) -> int:
    trace = reduce_to_base(load_graph(args.graph), args.budget)
    emit(args, trace.to_dict(), tables.render_trace(trace))
    return EXIT_FAILED if trace.stuck else EXIT_OK


def cmd_mutate(args) -> int:
    g = mutate(load_graph(args.graph), args.at)
    emit(args, graph_to_json(g), str(g))
    return EXIT_OK


def cmd_relmutate(args) -> int:
    g = relative_mutate(load_graph(args.graph), args.target, args.by, force=args.force)
    emit(args, graph_to_json(g), str(g))
    return EXIT_OK


def cmd_clifford(args) -> int:
    eps = load_graph(args.graph).to_sign_system()
    result = structure(eps, args.base)
    payload = result.to_dict()
    status = EXIT_OK
    if args.oracle:
        oracle = center_dim_oracle(presentation(eps, args.base))
        payload["oracle"] = {"center_dim": oracle.center_dim, "radical_zero": oracle.radical_zero}
        if oracle.center_dim != result.components or not oracle.radical_zero:
            status = EXIT_FAILED
    text = "\n".join(f"{key}: {value}" for key, value in sorted(payload.items()))
    emit(args, payload, text)
    return status


def cmd_pointscheme(args) -> int:
    g = load_graph(args.graph)
    scheme = components(g.to_sign_system())
    emit(args, scheme.to_dict(), tables.render_point_scheme(scheme))
    return EXIT_OK


def cmd_rank(args) -> int:
    eps = load_graph(args.graph).to_sign_system()
    payload = rank_bounds(eps).to_dict()
    payload.update({"high_rank": high_rank(eps), "smooth": is_smooth(eps)})
    text = "\n".join(f"{key}: {tables.fmt_value(value)}" for key, value in payload.items())
    emit(args, payload, text)
    return EXIT_OK


# ==============================================================================
# SCANS
# ==============================================================================

def cmd_conjecture_scan(args) -> int:
    if args.exhaustive:
        scan = sign_system_scan(args.n, args.threads, progress=not args.json)
        emit(args, scan.to_dict(), tables.render_sign_system_scan(scan))
        return EXIT_OK if scan.ok else EXIT_FAILED
    report = classification.cmd_conjecture_scan(args.n)
    emit(args, report.to_dict(), tables.render_conjecture_scan(report))
    return EXIT_FAILED if report.violations else EXIT_OK


def cmd_relmutation_survey(args) -> int:
    survey = relative_mutation_survey(args.n)
    emit(args, survey.to_dict())
    return EXIT_OK


def cmd_hilbert_check(args) -> int:
    report = hilbert_checks(args.n, args.max_degree)
    text = "\n".join(
        [tables.render_series(name, values) for name, values in report.series.items()]
        + report.failures
    )
    emit(args, report.to_dict(), text)
    return EXIT_OK if report.ok else EXIT_FAILED


# ==============================================================================
# MATRIX FACTORIZATIONS
# ==============================================================================

def cmd_mf_verify(args) -> int:
    report = verify(decode_mf(read_json_arg(args.file)))
    text = "valid" if report.ok else "invalid\n" + "\n".join(report.lines())
    emit(args, report.to_dict(), text)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_mf_reduce(args) -> int:
    reduction = reduce(decode_mf(read_json_arg(args.file)))
    payload = encode_mf(reduction.mf)
    payload["split_count"] = reduction.split_count
    payload["free_shifts"] = list(reduction.free_shifts)
    print(dump_json(payload))
    return EXIT_OK


def cmd_mf_knorrer(args) -> int:
    mf = decode_mf(read_json_arg(args.file))
    print(dump_json(encode_mf(knorrer_extend(mf, parse_signs(args.signs)))))
    return EXIT_OK


def cmd_mf_cone(args) -> int:
    obj = read_json_arg(args.file)
    mu = decode_morphism(obj) if isinstance(obj, dict) and "source" in obj else identity_morphism(decode_mf(obj))
    print(dump_json(encode_mf(cone(mu))))
    return EXIT_OK


def cmd_mf_hilbert(args) -> int:
    mf = decode_mf(read_json_arg(args.file))
    degree = args.max_degree if args.max_degree is not None else get_settings().default_max_degree
    series = coker_hilbert(mf, degree)
    payload: Dict[str, Any] = {"max_degree": degree, "coker": series}
    lines = [tables.render_series("coker", series)]
    status = EXIT_OK
    if args.oracle:
        oracle = coker_dims_oracle(mf, degree)
        payload["oracle"] = oracle
        lines.append(tables.render_series("oracle", oracle))
        if oracle != series:
            status = EXIT_FAILED
    emit(args, payload, "\n".join(lines))
    return status


def cmd_mf_harness(args) -> int:
    report = run_property_harness(args.seed, args.cases)
    text = f"seed {report.seed}: {report.cases} cases, {report.checks} checks, {len(report.failures)} failures"
    emit(args, report.to_dict(), "\n".join([text] + report.failures))
    return EXIT_OK if report.ok else EXIT_FAILED


# ==============================================================================
# PARSER
# ==============================================================================

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="emit JSON")
    output.add_argument("--table", action="store_true", help="emit text tables (default)")
    common.add_argument("--threads", type=int, default=settings.threads)
    common.add_argument("--seed", type=int, default=settings.seed)
    common.add_argument("--budget", type=int, default=settings.search_budget, help="reduction search budget")
    common.add_argument("--log-level", default=settings.log_level)

    parser = argparse.ArgumentParser(prog="skewq", description="Skew quadric classification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="mutation classes with invariants")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-traces", action="store_true")
    p.set_defaults(handler=cmd_classify)

    for name, handler, helptext in (
        ("analyze", cmd_analyze, "all invariants of one graph"),
        ("reduce", cmd_reduce, "reduce a graph to a single vertex or edge"),
        ("pointscheme", cmd_pointscheme, "point scheme components"),
        ("rank", cmd_rank, "rank bounds of f"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--graph", required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("mutate", parents=[common], help="mutation at a vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--at", type=int, required=True)
    p.set_defaults(handler=cmd_mutate)

    p = sub.add_parser("relmutate", parents=[common], help="relative mutation of j by k")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--by", type=int, required=True)
    p.add_argument("--force", action="store_true", help="apply without an isolated third vertex")
    p.set_defaults(handler=cmd_relmutate)

    p = sub.add_parser("clifford", parents=[common], help="structure of C(A)")
    p.add_argument("--graph", required=True)
    p.add_argument("--base", type=int)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force center")
    p.set_defaults(handler=cmd_clifford)

    p = sub.add_parser("conjecture-scan", parents=[common], help="(ell, N) against the threshold bands")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="scan every sign system, not only class representatives")
    p.set_defaults(handler=cmd_conjecture_scan)

    p = sub.add_parser("relmutation-survey", parents=[common], help="relative mutation with and without isolated vertices")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_relmutation_survey)

    p = sub.add_parser("hilbert-check", parents=[common], help="closed-form Hilbert series checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=settings.default_max_degree)
    p.set_defaults(handler=cmd_hilbert_check)

    mf = sub.add_parser("mf", help="matrix factorization tools")
    mf_sub = mf.add_subparsers(dest="mf_command", required=True)
    for name, handler, helptext in (
        ("verify", cmd_mf_verify, "check homogeneity and Phi0 Phi1 = Phi1 Phi0 = fE"),
        ("reduce", cmd_mf_reduce, "split off trivial summands"),
        ("cone", cmd_mf_cone, "mapping cone of a morphism (or of the identity of an MF)"),
    ):
        p = mf_sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="JSON file, or - for stdin")
        p.set_defaults(handler=handler)

    p = mf_sub.add_parser("knorrer", parents=[common], help="Knörrer doubling")
    p.add_argument("file")
    p.add_argument("--signs", required=True, help="comma list such as +,-,+")
    p.set_defaults(handler=cmd_mf_knorrer)

    p = mf_sub.add_parser("hilbert", parents=[common], help="cokernel Hilbert series")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(handler=cmd_mf_hilbert)

    p = mf_sub.add_parser("harness", parents=[common], help="randomised property checks")
    p.add_argument("--cases", type=int, default=20)
    p.set_defaults(handler=cmd_mf_harness)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except MalformedInput as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SkewQuadricError, ValueError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
