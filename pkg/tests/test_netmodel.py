"""Width arithmetic and network validation rules."""

from __future__ import annotations

import pytest

from ravensim import (
    HardwareConstants,
    Network,
    NeuronSettings,
    SynapseSettings,
    min_accumulator_width,
    resource_report,
    validate_network,
)
from ravensim.netmodel import ceil_log2, signed_range


def small_hw(**overrides) -> HardwareConstants:
    base = dict(
        accumulator_width=7,
        threshold_width=4,
        weight_width=4,
        max_delay=8,
        max_leak=7,
        max_abs_refractory=7,
        max_rel_refractory=7,
        ports=8,
        injection_ports=0,
        stdp_table=(),
    )
    base.update(overrides)
    return HardwareConstants(**base)


def two_neuron_net(**overrides) -> Network:
    base = dict(
        neurons=(NeuronSettings("A", threshold=1), NeuronSettings("B", threshold=1)),
        synapses=(SynapseSettings("A", "B", 2, 0),),
    )
    base.update(overrides)
    return Network(**base)


def test_signed_range():
    assert signed_range(1) == (-1, 0)
    assert signed_range(4) == (-8, 7)
    assert signed_range(8) == (-128, 127)
    with pytest.raises(ValueError):
        signed_range(0)


def test_ceil_log2_small_values():
    assert [ceil_log2(x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ValueError):
        ceil_log2(0)


def test_min_accumulator_width_known_points():
    # 4-bit weights on 8 ports, 4 reserved for injection: the synapses-only
    # configuration dominates, 15 * 8 = 120 needs 7 bits.
    assert min_accumulator_width(4, 8, 4) == 7
    assert min_accumulator_width(1, 2, 0) == 1
    assert min_accumulator_width(8, 4, 2) == 10


def oracle_min_width(weight_width: int, ports: int, injection_ports: int) -> int:
    """Brute-force width: grow until one cycle's worst total fits."""
    wmax = (1 << weight_width) - 1
    worst = max(
        wmax * (ports - injection_ports) + (1 << injection_ports) - 1,
        wmax * ports,
    )
    bits = 0
    while (1 << bits) < worst:
        bits += 1
    return bits


def test_min_accumulator_width_matches_oracle():
    for weight_width in range(1, 9):
        for ports in range(1, 17):
            for injection_ports in range(0, ports + 1):
                got = min_accumulator_width(weight_width, ports, injection_ports)
                want = oracle_min_width(weight_width, ports, injection_ports)
                assert got == want, (weight_width, ports, injection_ports)


def test_hardware_constants_reject_bad_values():
    with pytest.raises(ValueError):
        small_hw(accumulator_width=0)
    with pytest.raises(ValueError):
        small_hw(max_delay=-1)
    with pytest.raises(ValueError):
        small_hw(injection_ports=9)  # exceeds ports=8


def rules_of(report) -> set[str]:
    return {v.rule for v in report.violations}


def test_valid_network_passes():
    report = validate_network(two_neuron_net(), small_hw())
    assert report.ok
    assert report.violations == ()
    assert report.min_accumulator_width == 7


def test_threshold_bounds():
    hw = small_hw()  # 4-bit threshold: [-8, 7]
    net = two_neuron_net(neurons=(NeuronSettings("A", threshold=8),
                                  NeuronSettings("B", threshold=-8)))
    report = validate_network(net, hw)
    assert rules_of(report) == {"threshold out of range"}
    assert len(report.violations) == 1  # -8 is in range


def test_resting_potential_bounds():
    hw = small_hw()  # 7-bit accumulator: [-64, 63]
    net = two_neuron_net(neurons=(
        NeuronSettings("A", threshold=1, standard_resting=-65),
        NeuronSettings("B", threshold=1, refractory_resting=64),
    ))
    assert rules_of(validate_network(net, hw)) == {"resting potential out of range"}


def test_leak_and_refractory_bounds():
    hw = small_hw(max_leak=3, max_abs_refractory=2, max_rel_refractory=2)
    net = two_neuron_net(neurons=(
        NeuronSettings("A", threshold=1, leak=4),
        NeuronSettings("B", threshold=1, abs_refractory=3, rel_refractory=3),
    ))
    report = validate_network(net, hw)
    assert rules_of(report) == {"leak out of range", "refractory out of range"}
    assert len(report.violations) == 3


def test_duplicate_neuron_name():
    net = two_neuron_net(neurons=(NeuronSettings("A", threshold=1),
                                  NeuronSettings("A", threshold=1)),
                         synapses=())
    assert rules_of(validate_network(net, small_hw())) == {"duplicate neuron id"}


def test_unknown_synapse_endpoint():
    net = two_neuron_net(synapses=(SynapseSettings("A", "Z", 1, 0),))
    assert rules_of(validate_network(net, small_hw())) == {"unknown neuron"}


def test_weight_bounds():
    # 4-bit weights: [-8, 7]; both endpoints legal, one past each end not.
    ok = two_neuron_net(synapses=(SynapseSettings("A", "B", -8, 0),
                                  SynapseSettings("A", "B", 7, 0)))
    assert validate_network(ok, small_hw()).ok
    bad = two_neuron_net(synapses=(SynapseSettings("A", "B", 8, 0),
                                   SynapseSettings("A", "B", -9, 0)))
    report = validate_network(bad, small_hw())
    assert rules_of(report) == {"weight out of range"}
    assert len(report.violations) == 2


def test_delay_bounds():
    ok = two_neuron_net(synapses=(SynapseSettings("A", "B", 1, 8),))
    assert validate_network(ok, small_hw()).ok
    bad = two_neuron_net(synapses=(SynapseSettings("A", "B", 1, 9),))
    assert rules_of(validate_network(bad, small_hw())) == {"delay out of range"}


def test_port_budget():
    hw = small_hw(ports=4, injection_ports=2, accumulator_width=8)
    fan_in = tuple(SynapseSettings("A", "B", 1, 0) for _ in range(4))
    net = two_neuron_net(synapses=fan_in)
    assert validate_network(net, hw).ok

    # Enabling injection reserves 2 of B's 4 ports; 3 synapses no longer fit.
    injected = two_neuron_net(
        neurons=(NeuronSettings("A", threshold=1),
                 NeuronSettings("B", threshold=1, injection=True)),
        synapses=fan_in[:3],
    )
    report = validate_network(injected, hw)
    assert rules_of(report) == {"port budget exceeded"}
    assert "3 incoming synapses" in report.violations[0].message


def test_accumulator_width_too_small():
    hw = small_hw(accumulator_width=6)  # needs 7 for 15 * 8
    report = validate_network(two_neuron_net(), hw)
    assert "accumulator width too small" in rules_of(report)


def test_stdp_requires_table():
    net = two_neuron_net(stdp_enabled=True)
    assert rules_of(validate_network(net, small_hw())) == {"stdp unavailable"}
    assert validate_network(net, small_hw(stdp_table=(1,))).ok


def test_input_spike_amount_bounds():
    net = two_neuron_net(input_spike_amount=64)  # 7-bit accumulator: [-64, 63]
    assert rules_of(validate_network(net, small_hw())) == {"input spike amount out of range"}


def test_multiple_violations_all_reported():
    net = Network(
        neurons=(NeuronSettings("A", threshold=99, leak=8),),
        synapses=(SynapseSettings("A", "Z", 40, 20),),
        stdp_enabled=True,
    )
    report = validate_network(net, small_hw())
    assert rules_of(report) == {
        "threshold out of range",
        "leak out of range",
        "unknown neuron",
        "weight out of range",
        "delay out of range",
        "stdp unavailable",
    }


def test_resource_report_contents():
    text = resource_report(two_neuron_net(), small_hw())
    lines = text.splitlines()
    assert "neurons: 2" in lines
    assert "synapses: 1" in lines
    assert "min accumulator width: 7" in lines
    assert "accumulator width: 7" in lines
    assert "delivery buffer slots: 1" in lines  # only a zero-delay synapse
    assert "  B: 1/8" in lines


def test_resource_report_empty_network():
    text = resource_report(Network((), ()), small_hw())
    assert "neurons: 0" in text
    assert "port usage:" not in text
