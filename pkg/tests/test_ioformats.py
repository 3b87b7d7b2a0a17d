"""Hardware/network JSON, stimulus text and trace rendering."""

from __future__ import annotations

import json

import pytest

from ravensim import HardwareConstants, Network, NeuronSettings, SynapseSettings
from ravensim.engine import INJECTION, INPUT_SPIKE, CycleReport, Stimulus, StimulusEvent
from ravensim.ioformats import (
    FormatError,
    format_trace,
    load_hardware,
    load_network,
    load_stimulus,
    parse_network,
    parse_trace_jsonl,
    save_hardware,
    save_network,
    save_stimulus,
)
from ravensim.netmodel import ValidationError

HW_DOC = {
    "format": 1,
    "accumulator_width": 7,
    "threshold_width": 4,
    "weight_width": 4,
    "max_delay": 8,
    "max_leak": 7,
    "max_abs_refractory": 7,
    "max_rel_refractory": 7,
    "ports": 8,
    "injection_ports": 4,
    "stdp_table": [1, 2, -1],
}

NET_DOC = {
    "format": 1,
    "neurons": [
        {"name": "A", "threshold": 1},
        {"name": "B", "threshold": 2, "leak": 1, "standard_resting": -1,
         "injection": True},
    ],
    "synapses": [
        {"from": "A", "to": "B", "weight": 2, "delay": 1},
        {"from": "B", "to": "A", "weight": -1},
    ],
    "settings": {"stdp": False, "input_spike_amount": 4},
}


def hw_text(**overrides) -> str:
    doc = dict(HW_DOC)
    doc.update(overrides)
    return json.dumps(doc)


def net_text(**overrides) -> str:
    doc = dict(NET_DOC)
    doc.update(overrides)
    return json.dumps(doc)


def test_load_hardware_round_trip():
    hw = load_hardware(hw_text())
    assert hw.accumulator_width == 7
    assert hw.stdp_table == (1, 2, -1)
    assert load_hardware(save_hardware(hw)) == hw


def test_load_hardware_rejects_bad_documents():
    with pytest.raises(FormatError, match="missing key"):
        load_hardware(json.dumps({k: v for k, v in HW_DOC.items() if k != "ports"}))
    with pytest.raises(FormatError, match="unknown key"):
        load_hardware(hw_text(portz=8))
    with pytest.raises(FormatError, match="must be an integer"):
        load_hardware(hw_text(max_leak=7.0))
    with pytest.raises(FormatError, match="must be an integer"):
        load_hardware(hw_text(ports=True))
    with pytest.raises(FormatError, match="unsupported format version"):
        load_hardware(hw_text(format=2))
    with pytest.raises(FormatError, match="stdp_table"):
        load_hardware(hw_text(stdp_table=[1, "x"]))
    with pytest.raises(FormatError, match="top level"):
        load_hardware("[]")
    with pytest.raises(FormatError, match="parse error"):
        load_hardware("{nope")


def test_load_hardware_wraps_constructor_errors():
    with pytest.raises(FormatError, match="injection_ports"):
        load_hardware(hw_text(injection_ports=99))


def test_parse_network_defaults():
    net = parse_network(net_text())
    assert net.neurons[0] == NeuronSettings("A", threshold=1)
    assert net.neurons[1].leak == 1
    assert net.neurons[1].injection is True
    assert net.synapses[1] == SynapseSettings("B", "A", -1, 0)
    assert net.stdp_enabled is False
    assert net.input_spike_amount == 4


def test_parse_network_settings_optional():
    doc = {k: v for k, v in NET_DOC.items() if k != "settings"}
    net = parse_network(json.dumps(doc))
    assert net.stdp_enabled is False
    assert net.input_spike_amount == 16


def test_parse_network_errors_name_the_entity():
    doc = dict(NET_DOC, neurons=[{"name": "Out"}])
    with pytest.raises(FormatError, match='neuron "Out": missing key "threshold"'):
        parse_network(json.dumps(doc))
    doc = dict(NET_DOC, neurons=[{"name": "Out", "threshold": 1, "lek": 2}])
    with pytest.raises(FormatError, match='neuron "Out": unknown key "lek"'):
        parse_network(json.dumps(doc))
    doc = dict(NET_DOC, synapses=[{"from": "A", "to": "B"}])
    with pytest.raises(FormatError, match='synapse #0: missing key "weight"'):
        parse_network(json.dumps(doc))
    doc = dict(NET_DOC, synapses=[{"from": "A", "weight": 1}])
    with pytest.raises(FormatError, match="synapse #0"):
        parse_network(json.dumps(doc))


def test_parse_network_rejects_bool_and_float_settings():
    doc = dict(NET_DOC, neurons=[{"name": "A", "threshold": True}])
    with pytest.raises(FormatError, match="must be an integer"):
        parse_network(json.dumps(doc))
    doc = dict(NET_DOC, neurons=[{"name": "A", "threshold": 1, "leak": 0.5}])
    with pytest.raises(FormatError, match="must be an integer"):
        parse_network(json.dumps(doc))
    doc = dict(NET_DOC, neurons=[{"name": "A", "threshold": 1, "injection": 1}])
    with pytest.raises(FormatError, match="must be a boolean"):
        parse_network(json.dumps(doc))


def test_load_network_validates_against_hardware():
    hw = load_hardware(hw_text())
    bad = dict(NET_DOC, synapses=[{"from": "A", "to": "B", "weight": 2, "delay": 99}])
    with pytest.raises(ValidationError) as err:
        load_network(json.dumps(bad), hw)
    assert {v.rule for v in err.value.report.violations} == {"delay out of range"}


def test_network_round_trip():
    net = parse_network(net_text())
    assert parse_network(save_network(net)) == net


def make_net() -> Network:
    return Network(
        neurons=(NeuronSettings("A", threshold=1),
                 NeuronSettings("In", threshold=1, injection=True)),
        synapses=(),
    )


def test_load_stimulus_basic():
    text = "\n".join([
        "# warm-up",
        "AS 0 A   # spike on the first cycle",
        "AI 3 In -4",
        "",
        "AS 1 A",
    ])
    stim = load_stimulus(text, make_net(), load_hardware(hw_text()))
    assert stim.events == (
        StimulusEvent(0, "A", INPUT_SPIKE, 0),
        StimulusEvent(1, "A", INPUT_SPIKE, 0),
        StimulusEvent(3, "In", INJECTION, -4),
    )


def test_load_stimulus_sorts_stably_by_cycle():
    text = "AS 5 A\nAI 5 In 1\nAS 0 A\n"
    stim = load_stimulus(text, make_net(), load_hardware(hw_text()))
    assert [(ev.cycle, ev.neuron) for ev in stim.events] == [
        (0, "A"), (5, "A"), (5, "In")]


def test_load_stimulus_errors():
    net = make_net()
    hw = load_hardware(hw_text())
    with pytest.raises(FormatError, match="line 1"):
        load_stimulus("AS zero A", net, hw)
    with pytest.raises(FormatError, match='unknown neuron "Z"'):
        load_stimulus("AS 0 Z", net, hw)
    with pytest.raises(FormatError, match="expected"):
        load_stimulus("XX 0 A", net, hw)
    with pytest.raises(FormatError, match="must be >= 0"):
        load_stimulus("AS -1 A", net, hw)
    with pytest.raises(FormatError, match="does not have injection enabled"):
        load_stimulus("AI 0 A 1", net, hw)
    with pytest.raises(FormatError, match="outside"):
        load_stimulus("AI 0 In 8", net, hw)  # 4 injection ports: [-8, 7]
    with pytest.raises(FormatError, match="no injection ports"):
        load_stimulus("AI 0 In 1", net, load_hardware(hw_text(injection_ports=0)))


def test_save_stimulus_round_trip():
    stim = Stimulus((
        StimulusEvent(0, "A", INPUT_SPIKE),
        StimulusEvent(2, "In", INJECTION, -4),
    ))
    text = save_stimulus(stim)
    assert text == "AS 0 A\nAI 2 In -4\n"
    assert load_stimulus(text, make_net(), load_hardware(hw_text())) == stim


TRACE = [
    CycleReport(0, (), {"A": 0, "Out": -1}),
    CycleReport(1, ("A",), {"A": 2, "Out": 16}),
    CycleReport(2, ("A", "Out"), {"A": 0, "Out": 0}),
]


def test_format_trace_table():
    lines = format_trace(TRACE).splitlines()
    assert lines[0] == "cycle | fired  | A | Out"
    assert lines[1] == "------+--------+---+----"
    assert lines[2] == "    0 | -      | 0 |  -1"
    assert lines[3] == "    1 | A      | 2 |  16"
    assert lines[4] == "    2 | A, Out | 0 |   0"


def test_format_trace_jsonl_round_trip():
    text = format_trace(TRACE, mode="jsonl")
    assert parse_trace_jsonl(text) == TRACE
    first = json.loads(text.splitlines()[0])
    assert first == {"cycle": 0, "fired": [], "charges": {"A": 0, "Out": -1}}


def test_format_trace_empty():
    assert format_trace([]) == ""
    assert format_trace([], mode="jsonl") == ""
    with pytest.raises(ValueError, match="unknown trace mode"):
        format_trace(TRACE, mode="csv")


def test_parse_trace_jsonl_rejects_malformed_lines():
    with pytest.raises(FormatError, match="trace line 1"):
        parse_trace_jsonl("{broken")
    with pytest.raises(FormatError, match="must be an object"):
        parse_trace_jsonl("[1, 2]")
    with pytest.raises(FormatError, match='"fired" must be an array'):
        parse_trace_jsonl('{"cycle": 0, "fired": "A", "charges": {}}')
    with pytest.raises(FormatError, match="must be an integer"):
        parse_trace_jsonl('{"cycle": 0, "fired": [], "charges": {"A": 0.5}}')
