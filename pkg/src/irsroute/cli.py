"""Command-line interface: ``irsroute {solve,sweep,export-graph,benchmarks}``."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .beamforming import optimal_phases
from .benchmarks import SCHEMES, ComparisonRow, compare
from .errors import (
    InvalidParameterError,
    NoRouteError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .geometry import Scenario, route_distance
from .graph import build_graph, to_dot
from .paths import optimal_route, select_solver
from .scenario_io import example_scenario_path, load_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_NO_ROUTE = 5
EXIT_IO = 6

CSV_COLUMNS = ("m", "scheme", "route", "hops", "power_linear", "power_db")


def _element_pair(text: str) -> tuple[int, int]:
    try:
        m1, m2 = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M1xM2 (e.g. 30x30), got {text!r}") from None
    if m1 < 1 or m2 < 1:
        raise argparse.ArgumentTypeError(f"element counts must be positive, got {text!r}")
    return m1, m2


def _open_scenario(args) -> Scenario:
    path = Path(args.scenario)
    if args.scenario == "example" and not path.exists():
        path = example_scenario_path()
    scenario = load_scenario(path)
    if getattr(args, "m1", None) is not None or getattr(args, "m2", None) is not None:
        p = scenario.params
        scenario = scenario.with_elements(args.m1 or p.irs_rows, args.m2 or p.irs_cols)
    if args.threshold is not None:
        scenario = scenario.with_los_threshold(args.threshold)
    return scenario


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def format_route(route) -> str:
    return "-".join(str(v) for v in route)


def cmd_solve(args) -> int:
    scenario = _open_scenario(args)
    route, ev = optimal_route(scenario)
    p = scenario.params
    seq = (0,) + route + (scenario.user_id,)
    lines = [
        f"route: {' -> '.join(str(v) for v in seq)}",
        f"irs_count: {len(route)}",
        f"elements: {p.n_elements} ({p.irs_rows}x{p.irs_cols})",
        f"solver: {select_solver(build_graph(scenario))}",
        f"power_linear: {ev.power!r}",
        f"power_db: {ev.power_db:.6f}",
        f"distance_m: {route_distance(scenario, route):.6f}",
    ]
    if args.phases:
        for irs, theta in zip(route, optimal_phases(scenario, route)):
            lines.append(f"phases[{irs}]: " + " ".join(f"{t:.6f}" for t in theta))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def sweep_csv(rows: list[ComparisonRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        for scheme in SCHEMES:
            res = row[scheme]
            if res is None:
                writer.writerow([row.m_value, scheme, "", "", "", ""])
                continue
            writer.writerow(
                [
                    row.m_value,
                    scheme,
                    format_route(res.route),
                    res.hop_count,
                    repr(res.power),
                    f"{res.power_db:.9f}",
                ]
            )
    return buf.getvalue()


def cmd_sweep(args) -> int:
    scenario = _open_scenario(args)
    pairs = list(args.m) if args.m else [(scenario.params.irs_rows, scenario.params.irs_cols)]
    _emit(sweep_csv(compare(scenario, pairs)), args.output)
    return EXIT_OK


def cmd_export_graph(args) -> int:
    scenario = _open_scenario(args)
    _emit(to_dot(build_graph(scenario), scenario), args.output)
    return EXIT_OK


def cmd_benchmarks(args) -> int:
    scenario = _open_scenario(args)
    pairs = list(args.m) if args.m else [(scenario.params.irs_rows, scenario.params.irs_cols)]
    lines = [f"{'M':>6}  {'scheme':<13} {'K':>3}  {'power_db':>12}  route"]
    for row in compare(scenario, pairs):
        for scheme in SCHEMES:
            res = row[scheme]
            if res is None:
                lines.append(f"{row.m_value:>6}  {scheme:<13} {'-':>3}  {'-':>12}  (no route)")
            else:
                lines.append(
                    f"{row.m_value:>6}  {scheme:<13} {res.hop_count:>3}  {res.power_db:>12.4f}  "
                    f"{format_route(res.route)}"
                )
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsroute", description="Optimal multi-IRS beam routing and benchmark comparison."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, elements="pair"):
        p.add_argument("scenario", help="scenario file, or 'example' for the bundled layout")
        p.add_argument("--threshold", type=float, help="override the LoS distance threshold (m)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        if elements == "pair":
            p.add_argument("--m1", type=int, help="override IRS rows (M1)")
            p.add_argument("--m2", type=int, help="override IRS columns (M2)")
        else:
            p.add_argument(
                "--m",
                type=_element_pair,
                action="append",
                metavar="M1xM2",
                help="element grid to evaluate; repeat for a sweep",
            )

    p = sub.add_parser("solve", help="optimal route and its channel power")
    common(p)
    p.add_argument("--phases", action="store_true", help="print the IRS phase-shift vectors")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="CSV comparison of all schemes over element counts")
    common(p, elements="list")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-graph", help="routing graph as Graphviz DOT")
    common(p)
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("benchmarks", help="table comparing the proposed route with the baselines")
    common(p, elements="list")
    p.set_defaults(func=cmd_benchmarks)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ScenarioValidationError, InvalidParameterError) as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NoRouteError as exc:
        print(f"no route: {exc}", file=sys.stderr)
        return EXIT_NO_ROUTE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
