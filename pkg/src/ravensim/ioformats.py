"""File formats: hardware JSON, network JSON, stimulus text, trace output.

Hardware and network files are JSON with a "format": 1 version key. All
numeric settings are integers; floats are rejected. Unknown keys are
rejected so that typos fail loudly instead of silently deprogramming a
neuron. The stimulus format is line oriented:

    # comment
    AS <cycle> <neuron>            apply an input spike
    AI <cycle> <neuron> <value>    inject a signed charge value

Traces render either as an aligned table (one row per cycle) or as JSON
lines, one object per cycle, suitable for machine comparison.
"""

from __future__ import annotations

import json
from typing import Any

from .engine.events import INJECTION, INPUT_SPIKE, CycleReport, Stimulus, StimulusEvent
from .netmodel import (
    HardwareConstants,
    Network,
    NeuronSettings,
    SynapseSettings,
    ValidationError,
    signed_range,
    validate_network,
)

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed input: bad syntax, wrong type, or an unknown name/key."""


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _require_int(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise FormatError(f"{where}: missing key \"{key}\"")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: key \"{key}\" must be an integer, got {value!r}")
    return value


def _optional_int(obj: dict, key: str, where: str, default: int) -> int:
    if key not in obj:
        return default
    return _require_int(obj, key, where)


def _optional_bool(obj: dict, key: str, where: str, default: bool) -> bool:
    if key not in obj:
        return default
    value = obj[key]
    if not isinstance(value, bool):
        raise FormatError(f"{where}: key \"{key}\" must be a boolean, got {value!r}")
    return value


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise FormatError(f"{where}: unknown key \"{key}\"")


def _check_version(obj: dict, where: str) -> None:
    version = _require_int(obj, "format", where)
    if version != FORMAT_VERSION:
        raise FormatError(f"{where}: unsupported format version {version}")


_HW_KEYS = (
    "accumulator_width",
    "threshold_width",
    "weight_width",
    "max_delay",
    "max_leak",
    "max_abs_refractory",
    "max_rel_refractory",
    "ports",
    "injection_ports",
)


def load_hardware(text: str) -> HardwareConstants:
    """Parse a hardware-constants JSON document."""
    obj = _parse_json(text)
    if not isinstance(obj, dict):
        raise FormatError("hardware file: top level must be a JSON object")
    where = "hardware file"
    _check_version(obj, where)
    _reject_unknown(obj, set(_HW_KEYS) | {"format", "stdp_table"}, where)
    kwargs = {key: _require_int(obj, key, where) for key in _HW_KEYS}
    if "stdp_table" not in obj:
        raise FormatError(f"{where}: missing key \"stdp_table\"")
    raw_table = obj["stdp_table"]
    if not isinstance(raw_table, list):
        raise FormatError(f"{where}: stdp_table must be an array of integers")
    table = []
    for i, v in enumerate(raw_table):
        if isinstance(v, bool) or not isinstance(v, int):
            raise FormatError(f"{where}: stdp_table[{i}] must be an integer, got {v!r}")
        table.append(v)
    try:
        return HardwareConstants(stdp_table=tuple(table), **kwargs)
    except ValueError as e:
        raise FormatError(f"{where}: {e}") from None


def save_hardware(hw: HardwareConstants) -> str:
    obj = {"format": FORMAT_VERSION}
    for key in _HW_KEYS:
        obj[key] = getattr(hw, key)
    obj["stdp_table"] = list(hw.stdp_table)
    return json.dumps(obj, indent=2) + "\n"


_NEURON_KEYS = {"name", "threshold", "standard_resting", "refractory_resting",
                "abs_refractory", "rel_refractory", "leak", "injection"}
_SYNAPSE_KEYS = {"from", "to", "weight", "delay"}
_SETTINGS_KEYS = {"stdp", "input_spike_amount"}


def parse_network(text: str) -> Network:
    """Parse a network JSON document without hardware validation."""
    obj = _parse_json(text)
    if not isinstance(obj, dict):
        raise FormatError("network file: top level must be a JSON object")
    _check_version(obj, "network file")
    _reject_unknown(obj, {"format", "neurons", "synapses", "settings"}, "network file")
    for key in ("neurons", "synapses"):
        if key not in obj or not isinstance(obj[key], list):
            raise FormatError(f"network file: \"{key}\" must be an array")

    neurons = []
    for i, raw in enumerate(obj["neurons"]):
        if not isinstance(raw, dict):
            raise FormatError(f"neuron #{i}: must be an object")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise FormatError(f"neuron #{i}: missing or empty \"name\"")
        where = f"neuron \"{name}\""
        _reject_unknown(raw, _NEURON_KEYS, where)
        neurons.append(NeuronSettings(
            name=name,
            threshold=_require_int(raw, "threshold", where),
            standard_resting=_optional_int(raw, "standard_resting", where, 0),
            refractory_resting=_optional_int(raw, "refractory_resting", where, 0),
            abs_refractory=_optional_int(raw, "abs_refractory", where, 0),
            rel_refractory=_optional_int(raw, "rel_refractory", where, 0),
            leak=_optional_int(raw, "leak", where, 0),
            injection=_optional_bool(raw, "injection", where, False),
        ))

    synapses = []
    for i, raw in enumerate(obj["synapses"]):
        if not isinstance(raw, dict):
            raise FormatError(f"synapse #{i}: must be an object")
        where = f"synapse #{i}"
        _reject_unknown(raw, _SYNAPSE_KEYS, where)
        pre = raw.get("from")
        post = raw.get("to")
        if not isinstance(pre, str) or not isinstance(post, str):
            raise FormatError(f"{where}: \"from\" and \"to\" must be neuron names")
        synapses.append(SynapseSettings(
            pre=pre,
            post=post,
            weight=_require_int(raw, "weight", where),
            delay=_optional_int(raw, "delay", where, 0),
        ))

    settings = obj.get("settings", {})
    if not isinstance(settings, dict):
        raise FormatError("network file: \"settings\" must be an object")
    _reject_unknown(settings, _SETTINGS_KEYS, "settings")
    stdp = _optional_bool(settings, "stdp", "settings", False)
    amount = _optional_int(settings, "input_spike_amount", "settings", 16)

    return Network(neurons=tuple(neurons), synapses=tuple(synapses),
                   stdp_enabled=stdp, input_spike_amount=amount)


def load_network(text: str, hw: HardwareConstants) -> Network:
    """Parse a network document and validate it against the hardware."""
    net = parse_network(text)
    report = validate_network(net, hw)
    if not report.ok:
        raise ValidationError(report)
    return net


def save_network(net: Network) -> str:
    obj = {
        "format": FORMAT_VERSION,
        "neurons": [
            {
                "name": m.name,
                "threshold": m.threshold,
                "standard_resting": m.standard_resting,
                "refractory_resting": m.refractory_resting,
                "abs_refractory": m.abs_refractory,
                "rel_refractory": m.rel_refractory,
                "leak": m.leak,
                "injection": m.injection,
            }
            for m in net.neurons
        ],
        "synapses": [
            {"from": s.pre, "to": s.post, "weight": s.weight, "delay": s.delay}
            for s in net.synapses
        ],
        "settings": {"stdp": net.stdp_enabled, "input_spike_amount": net.input_spike_amount},
    }
    return json.dumps(obj, indent=2) + "\n"


def load_stimulus(text: str, net: Network, hw: HardwareConstants | None = None) -> Stimulus:
    """Parse stimulus lines against a network (and hardware, when given).

    Events are sorted stably by cycle; line order breaks ties.
    """
    names = set(net.neuron_names())
    injection_enabled = {m.name for m in net.neurons if m.injection}
    events: list[StimulusEvent] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"stimulus line {lineno}"
        if parts[0] == "AS" and len(parts) == 3:
            kind, value_str = INPUT_SPIKE, None
        elif parts[0] == "AI" and len(parts) == 4:
            kind, value_str = INJECTION, parts[3]
        else:
            raise FormatError(f"{where}: expected \"AS <cycle> <neuron>\" or "
                              f"\"AI <cycle> <neuron> <value>\", got {line!r}")
        try:
            cycle = int(parts[1], 10)
        except ValueError:
            raise FormatError(f"{where}: cycle must be an integer") from None
        if cycle < 0:
            raise FormatError(f"{where}: cycle must be >= 0")
        neuron = parts[2]
        if neuron not in names:
            raise FormatError(f"{where}: unknown neuron \"{neuron}\"")
        value = 0
        if kind == INJECTION:
            try:
                value = int(value_str, 10)
            except ValueError:
                raise FormatError(f"{where}: injection value must be an integer") from None
            if neuron not in injection_enabled:
                raise FormatError(f"{where}: neuron \"{neuron}\" does not have injection enabled")
            if hw is not None:
                if hw.injection_ports == 0:
                    raise FormatError(f"{where}: hardware has no injection ports")
                lo, hi = signed_range(hw.injection_ports)
                if not lo <= value <= hi:
                    raise FormatError(f"{where}: injection value {value} outside [{lo}, {hi}]")
        events.append(StimulusEvent(cycle=cycle, neuron=neuron, kind=kind, value=value))
    events.sort(key=lambda ev: ev.cycle)
    return Stimulus(tuple(events))


def save_stimulus(stim: Stimulus) -> str:
    lines = []
    for ev in stim.events:
        if ev.kind == INJECTION:
            lines.append(f"AI {ev.cycle} {ev.neuron} {ev.value}")
        else:
            lines.append(f"AS {ev.cycle} {ev.neuron}")
    return "\n".join(lines) + ("\n" if lines else "")


def _table_trace(trace: list[CycleReport]) -> str:
    if not trace:
        return ""
    names = list(trace[0].charges.keys())
    header = ["cycle", "fired"] + names
    rows = []
    for rep in trace:
        fired = ", ".join(rep.fired) if rep.fired else "-"
        rows.append([str(rep.cycle), fired] + [str(rep.charges[n]) for n in names])
    widths = [max(len(header[c]), max(len(r[c]) for r in rows)) for c in range(len(header))]
    out = []
    out.append(" | ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    out.append("-+-".join("-" * w for w in widths))
    for r in rows:
        cells = [r[0].rjust(widths[0]), r[1].ljust(widths[1])]
        cells += [v.rjust(w) for v, w in zip(r[2:], widths[2:])]
        out.append(" | ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def _jsonl_trace(trace: list[CycleReport]) -> str:
    lines = []
    for rep in trace:
        lines.append(json.dumps({
            "cycle": rep.cycle,
            "fired": list(rep.fired),
            "charges": dict(rep.charges),
        }))
    return "\n".join(lines) + ("\n" if lines else "")


def format_trace(trace: list[CycleReport], mode: str = "table") -> str:
    """Render cycle reports as an aligned table or as JSON lines."""
    if mode == "table":
        return _table_trace(list(trace))
    if mode == "jsonl":
        return _jsonl_trace(list(trace))
    raise ValueError(f"unknown trace mode: {mode}")


def parse_trace_jsonl(text: str) -> list[CycleReport]:
    """Parse JSON-lines trace output back into cycle reports."""
    reports = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise FormatError(f"trace line {lineno}: {e.msg}") from None
        where = f"trace line {lineno}"
        if not isinstance(obj, dict):
            raise FormatError(f"{where}: must be an object")
        cycle = _require_int(obj, "cycle", where)
        fired = obj.get("fired")
        charges = obj.get("charges")
        if not isinstance(fired, list) or not all(isinstance(x, str) for x in fired):
            raise FormatError(f"{where}: \"fired\" must be an array of names")
        if not isinstance(charges, dict):
            raise FormatError(f"{where}: \"charges\" must be an object")
        clean = {}
        for name, value in charges.items():
            if isinstance(value, bool) or not isinstance(value, int):
                raise FormatError(f"{where}: charge for \"{name}\" must be an integer")
            clean[name] = value
        reports.append(CycleReport(cycle=cycle, fired=tuple(fired), charges=clean))
    return reports
