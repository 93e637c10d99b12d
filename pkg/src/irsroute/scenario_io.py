"""Reading and writing the line-oriented scenario text format.

Example document::

    irsroute-scenario 1
    [params]
    frequency_hz = 5e9        # or wavelength_m
    bs_antennas = 2
    irs_rows = 30
    irs_cols = 30
    # optional: antenna_spacing_m, element_spacing_m, ref_path_gain
    [nodes]
    # id kind x y z
    0 BS 0 0 2
    1 IRS 4 6 2
    2 USER 9 12 1
    [los]
    threshold_m = 12

Instead of ``threshold_m`` the ``[los]`` section may hold the word ``matrix``
followed by one row of 0/1 entries per node.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import InvalidParameterError, ScenarioParseError, ScenarioValidationError
from .geometry import Node, NodeKind, Scenario, SystemParams

FORMAT_TAG = "irsroute-scenario"
FORMAT_VERSION = 1

_INT_KEYS = ("bs_antennas", "irs_rows", "irs_cols")
_FLOAT_KEYS = (
    "frequency_hz",
    "wavelength_m",
    "antenna_spacing_m",
    "element_spacing_m",
    "ref_path_gain",
)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _number(text: str, lineno: int, what: str, kind=float):
    try:
        value = kind(text)
    except ValueError:
        raise ScenarioParseError(f"{what}: cannot parse {text!r} as {kind.__name__}", lineno) from None
    if kind is float and not math.isfinite(value):
        raise ScenarioParseError(f"{what}: value must be finite, got {text!r}", lineno)
    return value


def parse_scenario(document: str) -> Scenario:
    """Parse and fully validate a scenario document."""
    lines = [(n, _strip(raw)) for n, raw in enumerate(document.splitlines(), start=1)]
    lines = [(n, text) for n, text in lines if text]
    if not lines:
        raise ScenarioParseError("empty document")

    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != FORMAT_TAG:
        raise ScenarioParseError(f"first line must be '{FORMAT_TAG} {FORMAT_VERSION}'", lineno)
    if parts[1] != str(FORMAT_VERSION):
        raise ScenarioParseError(f"unsupported format version {parts[1]!r}", lineno)

    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, text in lines[1:]:
        if text.startswith("["):
            if not text.endswith("]"):
                raise ScenarioParseError(f"malformed section header {text!r}", lineno)
            current = text[1:-1].strip().lower()
            if current not in ("params", "nodes", "los"):
                raise ScenarioParseError(f"unknown section [{current}]", lineno)
            if current in sections:
                raise ScenarioParseError(f"duplicate section [{current}]", lineno)
            sections[current] = []
        elif current is None:
            raise ScenarioParseError("content before the first section", lineno)
        else:
            sections[current].append((lineno, text))
    for name in ("params", "nodes", "los"):
        if name not in sections:
            raise ScenarioParseError(f"missing section [{name}]")

    params = _parse_params(sections["params"])
    nodes = _parse_nodes(sections["nodes"])
    threshold, matrix = _parse_los(sections["los"])
    try:
        return Scenario(params, nodes, los_threshold_m=threshold, los_matrix=matrix)
    except ScenarioValidationError:
        raise
    except InvalidParameterError as exc:
        raise ScenarioValidationError(str(exc)) from exc


def _parse_params(entries) -> SystemParams:
    values: dict[str, float | int] = {}
    for lineno, text in entries:
        if "=" not in text:
            raise ScenarioParseError(f"expected 'key = value', got {text!r}", lineno)
        key, raw = (s.strip() for s in text.split("=", 1))
        if key in values:
            raise ScenarioParseError(f"duplicate parameter {key!r}", lineno)
        if key in _INT_KEYS:
            values[key] = _number(raw, lineno, key, int)
        elif key in _FLOAT_KEYS:
            values[key] = _number(raw, lineno, key)
        else:
            raise ScenarioParseError(f"unknown parameter {key!r}", lineno)

    if ("frequency_hz" in values) == ("wavelength_m" in values):
        raise ScenarioParseError("give exactly one of frequency_hz or wavelength_m")
    missing = [k for k in _INT_KEYS if k not in values]
    if missing:
        raise ScenarioParseError(f"missing parameter(s): {', '.join(missing)}")
    kwargs = {k: values[k] for k in values if k not in ("frequency_hz", "wavelength_m")}
    try:
        if "frequency_hz" in values:
            return SystemParams.from_frequency(values["frequency_hz"], **kwargs)
        return SystemParams(wavelength_m=values["wavelength_m"], **kwargs)
    except InvalidParameterError as exc:
        raise ScenarioValidationError(str(exc)) from exc


def _parse_nodes(entries) -> list[Node]:
    nodes = []
    seen = set()
    for lineno, text in entries:
        fields = text.split()
        if len(fields) != 5:
            raise ScenarioParseError(f"node rows need 'id kind x y z', got {text!r}", lineno)
        node_id = _number(fields[0], lineno, "node id", int)
        if node_id in seen:
            raise ScenarioParseError(f"duplicate node id {node_id}", lineno)
        seen.add(node_id)
        try:
            kind = NodeKind(fields[1].upper())
        except ValueError:
            raise ScenarioParseError(f"node kind must be BS, IRS or USER, got {fields[1]!r}", lineno) from None
        xyz = tuple(_number(v, lineno, f"node {node_id} coordinate") for v in fields[2:])
        nodes.append(Node(node_id, kind, xyz))
    return nodes


def _parse_los(entries):
    if not entries:
        raise ScenarioParseError("[los] section is empty")
    lineno, first = entries[0]
    if first == "matrix":
        rows = []
        for lineno, text in entries[1:]:
            rows.append(tuple(_number(v, lineno, "LoS entry", int) for v in text.split()))
        if not rows:
            raise ScenarioParseError("LoS matrix has no rows", lineno)
        return None, tuple(rows)
    if "=" not in first:
        raise ScenarioParseError(f"expected 'threshold_m = value' or 'matrix', got {first!r}", lineno)
    key, raw = (s.strip() for s in first.split("=", 1))
    if key != "threshold_m":
        raise ScenarioParseError(f"unknown LoS setting {key!r}", lineno)
    if len(entries) > 1:
        raise ScenarioParseError("unexpected content after threshold_m", entries[1][0])
    return _number(raw, lineno, "threshold_m"), None


def serialize_scenario(scenario: Scenario) -> str:
    """Write ``scenario`` back out with every parameter explicit."""
    p = scenario.params
    out = [
        f"{FORMAT_TAG} {FORMAT_VERSION}",
        "[params]",
        f"wavelength_m = {p.wavelength_m!r}",
        f"bs_antennas = {p.bs_antennas}",
        f"irs_rows = {p.irs_rows}",
        f"irs_cols = {p.irs_cols}",
        f"antenna_spacing_m = {p.antenna_spacing_m!r}",
        f"element_spacing_m = {p.element_spacing_m!r}",
        f"ref_path_gain = {p.ref_path_gain!r}",
        "[nodes]",
    ]
    for node in scenario.nodes:
        x, y, z = node.position
        out.append(f"{node.id} {node.kind.value} {x!r} {y!r} {z!r}")
    out.append("[los]")
    if scenario.los_threshold_m is not None:
        out.append(f"threshold_m = {scenario.los_threshold_m!r}")
    else:
        out.append("matrix")
        out.extend(" ".join(str(v) for v in row) for row in scenario.los_matrix)
    return "\n".join(out) + "\n"


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def example_scenario_path() -> Path:
    """Path of the bundled 10-IRS example scenario."""
    return Path(__file__).with_name("data") / "example_scenario.txt"


def load_example_scenario() -> Scenario:
    return load_scenario(example_scenario_path())
