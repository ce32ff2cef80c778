"""YAML run configuration.

A document either names a preset scenario (optionally overriding grid,
CFL number, look-ahead list, and output times) or describes a scenario
inline.  Unknown keys are rejected.  The full schema is documented in
the README.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
import yaml

from .errors import ConfigError
from .grid import Grid
from .lanechange import constant_rate, indicator_rate
from .scenarios import (
    DEFAULT_CFL,
    DEFAULT_DOMAIN,
    DEFAULT_N_CELLS,
    PRESETS,
    Scenario,
    Segment,
    cell_averages,
    scenario,
)
from .velocity import greenshields

_PRESET_KEYS = {"scenario", "domain", "n_cells", "cfl", "eta", "eta_list", "out_times"}
_INLINE_KEYS = _PRESET_KEYS - {"scenario"} | {
    "rho_max",
    "velocity",
    "lane_change",
    "initial",
}


@dataclass(frozen=True)
class RunConfig:
    """A parsed configuration: the scenario plus the requested etas."""

    scenario: Scenario
    eta_list: Tuple[float, ...]
    source: Optional[str] = None


def _fail(message):
    raise ConfigError(message)


def _number(value, key, minimum=None, finite=True):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{key}: expected a number, got {value!r}")
    value = float(value)
    if finite and not math.isfinite(value):
        _fail(f"{key}: must be finite")
    if minimum is not None and value < minimum:
        _fail(f"{key}: must be >= {minimum}")
    return value


def _int(value, key, minimum=1):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(f"{key}: expected an integer, got {value!r}")
    if value < minimum:
        _fail(f"{key}: must be >= {minimum}")
    return value


def _mapping(value, key):
    if not isinstance(value, dict):
        _fail(f"{key}: expected a mapping, got {type(value).__name__}")
    return value


def _sequence(value, key):
    if not isinstance(value, (list, tuple)):
        _fail(f"{key}: expected a list, got {type(value).__name__}")
    return value


def _check_keys(mapping, allowed, context):
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        _fail(f"{context}: unknown key(s) {', '.join(map(repr, unknown))}")


def _parse_domain(value):
    pair = _sequence(value, "domain")
    if len(pair) != 2:
        _fail("domain: expected [x_min, x_max]")
    lo = _number(pair[0], "domain[0]")
    hi = _number(pair[1], "domain[1]")
    if hi <= lo:
        _fail("domain: x_max must exceed x_min")
    return (lo, hi)


def _parse_etas(doc):
    if "eta" in doc and "eta_list" in doc:
        _fail("give either eta or eta_list, not both")
    if "eta" in doc:
        return (_number(doc["eta"], "eta", minimum=0.0),)
    if "eta_list" in doc:
        values = [_number(e, "eta_list entry", minimum=0.0) for e in _sequence(doc["eta_list"], "eta_list")]
        if not values:
            _fail("eta_list: must be nonempty")
        if len(set(values)) != len(values):
            _fail("eta_list: values must be distinct")
        return tuple(values)
    return None


def _parse_out_times(value):
    times = [_number(t, "out_times entry", minimum=0.0) for t in _sequence(value, "out_times")]
    if not times:
        _fail("out_times: must be nonempty")
    if times != sorted(times):
        _fail("out_times: must be ascending")
    return tuple(times)


def _parse_velocity(value):
    block = _mapping(value, "velocity")
    _check_keys(block, ("lane1", "lane2"), "velocity")
    laws = []
    for lane in ("lane1", "lane2"):
        params = _mapping(block.get(lane, {}), f"velocity.{lane}")
        _check_keys(params, ("v_free", "rho_ref"), f"velocity.{lane}")
        laws.append(
            greenshields(
                _number(params.get("v_free", 1.0), f"velocity.{lane}.v_free"),
                _number(params.get("rho_ref", 1.0), f"velocity.{lane}.rho_ref"),
            )
        )
    return tuple(laws)


def _parse_lane_change(value):
    block = _mapping(value, "lane_change")
    kind = block.get("kind")
    if kind == "indicator":
        _check_keys(block, ("kind", "a", "b", "scale"), "lane_change")
        a = _number(block.get("a", -2.0), "lane_change.a")
        b = _number(block.get("b", 2.0), "lane_change.b")
        if b < a:
            _fail("lane_change: needs a <= b")
        return indicator_rate(a, b, _number(block.get("scale", 1.0), "lane_change.scale", minimum=0.0))
    if kind == "constant":
        _check_keys(block, ("kind", "value"), "lane_change")
        return constant_rate(_number(block.get("value", 1.0), "lane_change.value", minimum=0.0))
    _fail("lane_change.kind: expected 'indicator' or 'constant'")


def _parse_segments(value, key, grid):
    rows = _sequence(value, key)
    segments = []
    for i, row in enumerate(rows):
        block = _mapping(row, f"{key}[{i}]")
        _check_keys(block, ("value", "from", "to"), f"{key}[{i}]")
        if "value" not in block:
            _fail(f"{key}[{i}]: missing 'value'")
        lo = block.get("from", -math.inf)
        hi = block.get("to", math.inf)
        lo = -math.inf if lo is None else _number(lo, f"{key}[{i}].from", finite=False)
        hi = math.inf if hi is None else _number(hi, f"{key}[{i}].to", finite=False)
        if math.isnan(lo) or math.isnan(hi):
            _fail(f"{key}[{i}]: endpoints cannot be NaN")
        if hi < lo:
            _fail(f"{key}[{i}]: needs from <= to")
        segments.append(Segment(_number(block["value"], f"{key}[{i}].value", minimum=0.0), lo, hi))
    return cell_averages(segments, grid)


def parse_config(text):
    """Parse a YAML document into a RunConfig; raise ConfigError on any
    syntax, schema, or consistency problem."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"config is not valid YAML{where}: {exc}") from exc
    if doc is None:
        _fail("config is empty")
    doc = _mapping(doc, "config")

    if "scenario" in doc:
        return _preset_config(doc)
    return _inline_config(doc)


def _preset_config(doc):
    _check_keys(doc, _PRESET_KEYS, "config")
    name = doc["scenario"]
    if name not in PRESETS:
        _fail(f"scenario: unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    domain = _parse_domain(doc["domain"]) if "domain" in doc else DEFAULT_DOMAIN
    n_cells = _int(doc.get("n_cells", DEFAULT_N_CELLS), "n_cells")
    cfl = _number(doc.get("cfl", DEFAULT_CFL), "cfl")
    if not 0.0 < cfl <= 1.0:
        _fail("cfl: must be in (0, 1]")
    scn = scenario(name, n_cells=n_cells, domain=domain, cfl=cfl)
    if "out_times" in doc:
        scn = replace(scn, out_times=_parse_out_times(doc["out_times"]))
    etas = _parse_etas(doc)
    if etas is not None:
        scn = scn.with_eta_list(etas)
    return RunConfig(scn, scn.eta_list)


def _inline_config(doc):
    _check_keys(doc, _INLINE_KEYS, "config")
    domain = _parse_domain(doc["domain"]) if "domain" in doc else DEFAULT_DOMAIN
    n_cells = _int(doc.get("n_cells", DEFAULT_N_CELLS), "n_cells")
    cfl = _number(doc.get("cfl", DEFAULT_CFL), "cfl")
    if not 0.0 < cfl <= 1.0:
        _fail("cfl: must be in (0, 1]")
    grid = Grid(domain[0], domain[1], n_cells)

    rho_max = (1.0, 1.0)
    if "rho_max" in doc:
        pair = _sequence(doc["rho_max"], "rho_max")
        if len(pair) != 2:
            _fail("rho_max: expected two capacities")
        rho_max = (
            _number(pair[0], "rho_max[0]", minimum=0.0),
            _number(pair[1], "rho_max[1]", minimum=0.0),
        )
        if min(rho_max) <= 0:
            _fail("rho_max: capacities must be positive")

    v1, v2 = _parse_velocity(doc.get("velocity", {}))
    lane_change = _parse_lane_change(doc.get("lane_change", {"kind": "constant", "value": 0.0}))

    initial = _mapping(doc.get("initial"), "initial") if "initial" in doc else _fail("missing 'initial'")
    _check_keys(initial, ("lane1", "lane2"), "initial")
    if "lane1" not in initial or "lane2" not in initial:
        _fail("initial: both lane1 and lane2 are required")
    rho1 = _parse_segments(initial["lane1"], "initial.lane1", grid)
    rho2 = _parse_segments(initial["lane2"], "initial.lane2", grid)
    if np.any(rho1 > rho_max[0]) or np.any(rho2 > rho_max[1]):
        _fail("initial: data exceeds rho_max")

    etas = _parse_etas(doc)
    if etas is None:
        _fail("missing 'eta' (or 'eta_list')")
    out_times = _parse_out_times(doc["out_times"]) if "out_times" in doc else (1.0,)

    scn = Scenario(
        name="inline",
        grid=grid,
        rho1_0=rho1,
        rho2_0=rho2,
        v1=v1,
        v2=v2,
        rho_max=rho_max,
        lane_change=lane_change,
        eta_list=etas,
        out_times=out_times,
        cfl=cfl,
    )
    return RunConfig(scn, etas)
