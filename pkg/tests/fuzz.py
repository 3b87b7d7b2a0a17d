"""Seeded random network/stimulus generator shared by the differential tests.

Every draw stays inside the hardware limits by construction, so generated
setups always validate. Widths are kept small enough that the compiled
kernel is eligible too.
"""

from __future__ import annotations

import random

from ravensim import HardwareConstants, Network, NeuronSettings, SynapseSettings
from ravensim.engine import INJECTION, INPUT_SPIKE, Stimulus, StimulusEvent

FUZZ_CYCLES = 64

_BASE_HW = dict(
    accumulator_width=16,
    threshold_width=8,
    weight_width=4,
    max_delay=8,
    max_leak=4,
    max_abs_refractory=4,
    max_rel_refractory=4,
    ports=24,
    injection_ports=4,
)


def random_setup(rng: random.Random) -> tuple[Network, HardwareConstants, Stimulus]:
    table_size = rng.randint(0, 8)
    table = tuple(rng.randint(-4, 4) for _ in range(table_size))
    hw = HardwareConstants(stdp_table=table, **_BASE_HW)

    n_neurons = rng.randint(1, 8)
    neurons = []
    for i in range(n_neurons):
        neurons.append(NeuronSettings(
            name=f"n{i}",
            threshold=rng.randint(0, 12),
            standard_resting=rng.randint(-8, 0),
            refractory_resting=rng.randint(-8, 0),
            abs_refractory=rng.randint(0, 4),
            rel_refractory=rng.randint(0, 4),
            leak=rng.randint(0, 4),
            injection=rng.random() < 0.25,
        ))

    n_synapses = rng.randint(0, 16)
    synapses = []
    for _ in range(n_synapses):
        synapses.append(SynapseSettings(
            pre=f"n{rng.randrange(n_neurons)}",
            post=f"n{rng.randrange(n_neurons)}",
            weight=rng.randint(-8, 7),
            delay=rng.randint(0, 8),
        ))

    net = Network(
        neurons=tuple(neurons),
        synapses=tuple(synapses),
        stdp_enabled=table_size > 0 and rng.random() < 0.5,
        input_spike_amount=rng.randint(1, 16),
    )

    injectable = [m.name for m in neurons if m.injection]
    events = []
    for _ in range(rng.randint(0, 24)):
        cycle = rng.randrange(FUZZ_CYCLES)
        if injectable and rng.random() < 0.3:
            events.append(StimulusEvent(cycle, rng.choice(injectable),
                                        INJECTION, rng.randint(-8, 7)))
        else:
            events.append(StimulusEvent(cycle, f"n{rng.randrange(n_neurons)}",
                                        INPUT_SPIKE))
    events.sort(key=lambda ev: ev.cycle)
    return net, hw, Stimulus(tuple(events))
