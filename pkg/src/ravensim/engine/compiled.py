"""Wrapper presenting the compiled kernel with the PyEngine interface."""

from __future__ import annotations

from .events import CycleReport
from .layout import Layout

try:
    from . import _kernel
except ImportError:
    _kernel = None


def available() -> bool:
    return _kernel is not None


class CompiledEngine:
    backend = "compiled"

    def __init__(self, layout: Layout):
        if _kernel is None:
            raise RuntimeError("compiled kernel is not built")
        events: list[tuple[int, int, bool, int]] = []
        for cyc in sorted(layout.events_by_cycle):
            for (neuron, is_inj, value) in layout.events_by_cycle[cyc]:
                events.append((cyc, neuron, is_inj, value))
        wlo = -(1 << (layout.weight_width - 1))
        self.names = list(layout.names)
        self._k = _kernel.Kernel(
            layout.names,
            layout.threshold,
            layout.standard_resting,
            layout.refractory_resting,
            layout.abs_refractory,
            layout.rel_refractory,
            layout.leak,
            layout.syn_pre,
            layout.syn_post,
            layout.syn_weight,
            layout.syn_delay,
            layout.out_synapses,
            layout.pre_synapses,
            events,
            layout.ring_slots,
            layout.input_spike_amount,
            layout.stdp_enabled,
            list(layout.stdp_table),
            wlo,
            -wlo - 1,
        )

    @property
    def cycle(self) -> int:
        return self._k.current_cycle

    def step(self) -> CycleReport:
        return self._k.step()

    def run(self, n_cycles: int) -> list[CycleReport]:
        if n_cycles < 0:
            raise ValueError("cycle count must be >= 0")
        return [self._k.step() for _ in range(n_cycles)]

    def advance(self, n_cycles: int) -> None:
        if n_cycles < 0:
            raise ValueError("cycle count must be >= 0")
        self._k.advance(n_cycles)

    def charges(self) -> dict[str, int]:
        return self._k.charges()

    def weights(self) -> list[int]:
        return self._k.weights()

    def phases(self) -> list[tuple[int, int]]:
        return self._k.phases()
