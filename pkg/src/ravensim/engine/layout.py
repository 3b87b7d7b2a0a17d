"""Flattening of a validated network into dense arrays.

Both the pure-Python engine and the compiled kernel run from the same
flattened layout, so their cycle-by-cycle behaviour matches by
construction of their inputs. Only the inner loops differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..netmodel import HardwareConstants, Network, signed_range
from .events import INJECTION, Stimulus


@dataclass
class Layout:
    names: list[str]
    index: dict[str, int]

    # Per-neuron settings, indexed by neuron.
    threshold: list[int]
    standard_resting: list[int]
    refractory_resting: list[int]
    abs_refractory: list[int]
    rel_refractory: list[int]
    leak: list[int]

    # Per-synapse settings, indexed by synapse declaration order.
    syn_pre: list[int]
    syn_post: list[int]
    syn_weight: list[int]
    syn_delay: list[int]

    # Adjacency, in declaration order.
    out_synapses: list[list[int]]
    pre_synapses: list[list[int]]

    # Stimulus events grouped by cycle: (neuron, is_injection, value).
    events_by_cycle: dict[int, list[tuple[int, bool, int]]]

    ring_slots: int
    input_spike_amount: int
    stdp_enabled: bool
    stdp_table: tuple[int, ...]
    weight_width: int


def check_stimulus(stim: Stimulus, net: Network, hw: HardwareConstants) -> None:
    """Reject stimulus events that the network or hardware cannot accept."""
    index = net.neuron_index()
    lo, hi = signed_range(hw.injection_ports) if hw.injection_ports > 0 else (0, 0)
    for ev in stim.events:
        if ev.neuron not in index:
            raise ValueError(f"stimulus targets unknown neuron {ev.neuron}")
        if ev.kind == INJECTION:
            if hw.injection_ports == 0:
                raise ValueError("charge injection requires hardware injection ports")
            if not net.neurons[index[ev.neuron]].injection:
                raise ValueError(f"neuron {ev.neuron} does not have injection enabled")
            if not lo <= ev.value <= hi:
                raise ValueError(f"injection value {ev.value} outside [{lo}, {hi}]")


def build_layout(net: Network, hw: HardwareConstants, stim: Stimulus) -> Layout:
    index = net.neuron_index()
    n = len(net.neurons)
    out_synapses: list[list[int]] = [[] for _ in range(n)]
    pre_synapses: list[list[int]] = [[] for _ in range(n)]
    syn_pre, syn_post, syn_weight, syn_delay = [], [], [], []
    for j, s in enumerate(net.synapses):
        p, q = index[s.pre], index[s.post]
        syn_pre.append(p)
        syn_post.append(q)
        syn_weight.append(s.weight)
        syn_delay.append(s.delay)
        out_synapses[p].append(j)
        pre_synapses[q].append(j)

    events_by_cycle: dict[int, list[tuple[int, bool, int]]] = {}
    for ev in stim.events:
        entry = (index[ev.neuron], ev.kind == INJECTION, ev.value)
        events_by_cycle.setdefault(ev.cycle, []).append(entry)

    return Layout(
        names=net.neuron_names(),
        index=index,
        threshold=[m.threshold for m in net.neurons],
        standard_resting=[m.standard_resting for m in net.neurons],
        refractory_resting=[m.refractory_resting for m in net.neurons],
        abs_refractory=[m.abs_refractory for m in net.neurons],
        rel_refractory=[m.rel_refractory for m in net.neurons],
        leak=[m.leak for m in net.neurons],
        syn_pre=syn_pre,
        syn_post=syn_post,
        syn_weight=syn_weight,
        syn_delay=syn_delay,
        out_synapses=out_synapses,
        pre_synapses=pre_synapses,
        events_by_cycle=events_by_cycle,
        ring_slots=hw.max_delay + 1,
        input_spike_amount=net.input_spike_amount,
        stdp_enabled=net.stdp_enabled,
        stdp_table=tuple(hw.stdp_table),
        weight_width=hw.weight_width,
    )
