"""Naive oracle engine for differential testing.

Deliberately written without the production engine's machinery: no delivery
ring, no adjacency lists, no shared helper imports. Every cycle it rescans
the full synapse list and the full fire history, so a delivery happens at
cycle t exactly when the pre-neuron fired at cycle t - delay. Slow and
simple on purpose.
"""

from __future__ import annotations

from ..netmodel import HardwareConstants, Network
from .events import INJECTION, CycleReport, Stimulus

_STD = "standard"
_ABS = "absolute"
_REL = "relative"


class ReferenceEngine:
    backend = "reference"

    def __init__(self, net: Network, hw: HardwareConstants, stim: Stimulus):
        self.net = net
        self.hw = hw
        self.events = list(stim.events)
        self.names = [m.name for m in net.neurons]
        self.settings = {m.name: m for m in net.neurons}
        self.acc = {m.name: m.standard_resting for m in net.neurons}
        self.mode = {m.name: _STD for m in net.neurons}
        self.mode_left = {m.name: 0 for m in net.neurons}
        self.pending = {m.name: False for m in net.neurons}
        self.anchor: dict[str, int | None] = {m.name: None for m in net.neurons}
        self.weight = {j: s.weight for j, s in enumerate(net.synapses)}
        self.last_delivery: dict[int, int | None] = {j: None for j in range(len(net.synapses))}
        self.history: list[set[str]] = []
        self.cycle = 0
        lo = -(1 << (hw.weight_width - 1))
        self.bounds = (lo, -lo - 1)

    def _clamped(self, value: int) -> int:
        lo, hi = self.bounds
        return min(max(value, lo), hi)

    def step(self) -> CycleReport:
        t = self.cycle
        fired = [name for name in self.names if self.pending[name]]
        self.history.append(set(fired))
        for name in fired:
            m = self.settings[name]
            self.acc[name] = m.refractory_resting if m.rel_refractory > 0 else m.standard_resting
            if m.abs_refractory > 0:
                self.mode[name] = _ABS
                self.mode_left[name] = m.abs_refractory
            elif m.rel_refractory > 0:
                self.mode[name] = _REL
                self.mode_left[name] = m.rel_refractory
            else:
                self.mode[name] = _STD
                self.mode_left[name] = 0
            self.pending[name] = False

        for name in self.names:
            m = self.settings[name]
            if m.leak <= 0 or self.mode[name] == _ABS:
                continue
            floor = m.refractory_resting if self.mode[name] == _REL else m.standard_resting
            if self.acc[name] > floor:
                self.acc[name] = max(self.acc[name] - m.leak, floor)

        delivered: set[int] = set()
        for j, s in enumerate(self.net.synapses):
            born = t - s.delay
            if born < 0 or s.pre not in self.history[born]:
                continue
            delivered.add(j)
            self.last_delivery[j] = t
            if self.mode[s.post] != _ABS:
                self.acc[s.post] += self.weight[j]
        for ev in self.events:
            if ev.cycle != t or self.mode[ev.neuron] == _ABS:
                continue
            if ev.kind == INJECTION:
                self.acc[ev.neuron] += ev.value
            else:
                self.acc[ev.neuron] += self.net.input_spike_amount

        table = self.hw.stdp_table
        tsize = len(table)
        plastic = self.net.stdp_enabled and tsize > 0
        for name in self.names:
            if self.acc[name] > self.settings[name].threshold:
                self.pending[name] = True
                if plastic:
                    for j, s in enumerate(self.net.synapses):
                        if s.post != name or self.last_delivery[j] is None:
                            continue
                        k = tsize // 2 - (t - self.last_delivery[j])
                        if k >= 0:
                            self.weight[j] = self._clamped(self.weight[j] + table[k])
                self.anchor[name] = t
            elif plastic and self.anchor[name] is not None:
                k = tsize // 2 + (t - self.anchor[name])
                if k < tsize:
                    for j, s in enumerate(self.net.synapses):
                        if s.post == name and j in delivered:
                            self.weight[j] = self._clamped(self.weight[j] + table[k])

        charges = {name: self.acc[name] for name in self.names}

        for name in self.names:
            m = self.settings[name]
            mode = self.mode[name]
            if mode == _STD:
                self.acc[name] = max(self.acc[name], m.standard_resting)
            elif mode == _REL:
                self.acc[name] = max(self.acc[name], m.refractory_resting)
                self.mode_left[name] -= 1
                if self.mode_left[name] == 0:
                    self.mode[name] = _STD
                    self.acc[name] = max(self.acc[name], m.standard_resting)
            else:
                self.mode_left[name] -= 1
                if self.mode_left[name] == 0:
                    if m.rel_refractory > 0:
                        self.mode[name] = _REL
                        self.mode_left[name] = m.rel_refractory
                    else:
                        self.mode[name] = _STD

        self.cycle = t + 1
        return CycleReport(t, tuple(fired), charges)

    def run(self, n_cycles: int) -> list[CycleReport]:
        if n_cycles < 0:
            raise ValueError("cycle count must be >= 0")
        return [self.step() for _ in range(n_cycles)]

    def weights(self) -> list[int]:
        return [self.weight[j] for j in range(len(self.net.synapses))]
