"""Benchmark the pure-Python engine against the compiled kernel.

Builds a self-sustaining random network (every neuron has a zero-delay
self-synapse strong enough to keep it firing once kicked), runs both
backends for the same cycle count, checks they end in identical state,
and reports throughput.

    python -m ravensim.bench --neurons 128 --fanout 8 --cycles 5000
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .engine import Stimulus, StimulusEvent, new_engine
from .engine.compiled import available as kernel_available
from .netmodel import (
    HardwareConstants,
    Network,
    NeuronSettings,
    SynapseSettings,
    min_accumulator_width,
)


def build_setup(n_neurons: int, fan_out: int, max_delay: int, stdp: bool,
                seed: int) -> tuple[Network, HardwareConstants, Stimulus]:
    rng = random.Random(seed)
    neurons = []
    for i in range(n_neurons):
        kw = dict(name=f"n{i}", threshold=1, leak=1)
        roll = rng.random()
        if roll < 0.1:
            kw.update(abs_refractory=rng.randint(1, 2))
        elif roll < 0.2:
            kw.update(rel_refractory=rng.randint(1, 2), refractory_resting=-2)
        neurons.append(NeuronSettings(**kw))

    synapses = [SynapseSettings(f"n{i}", f"n{i}", 2, 0) for i in range(n_neurons)]
    for i in range(n_neurons):
        for _ in range(max(fan_out - 1, 0)):
            target = rng.randrange(n_neurons)
            weight = rng.choice((-2, -1, 1, 2, 3))
            delay = rng.randrange(max_delay + 1)
            synapses.append(SynapseSettings(f"n{i}", f"n{target}", weight, delay))

    fan_in: dict[str, int] = {m.name: 0 for m in neurons}
    for s in synapses:
        fan_in[s.post] += 1
    ports = max(fan_in.values())
    hw = HardwareConstants(
        accumulator_width=min_accumulator_width(4, ports, 0) + 8,
        threshold_width=4,
        weight_width=4,
        max_delay=max_delay,
        max_leak=4,
        max_abs_refractory=4,
        max_rel_refractory=4,
        ports=ports,
        injection_ports=0,
        stdp_table=(1, 1, -1) if stdp else (),
    )
    net = Network(tuple(neurons), tuple(synapses), stdp_enabled=stdp)
    stim = Stimulus(tuple(StimulusEvent(0, f"n{i}") for i in range(n_neurons)))
    return net, hw, stim


def time_backend(backend: str, net, hw, stim, cycles: int) -> tuple[float, object]:
    engine = new_engine(net, hw, stim, backend=backend)
    started = time.perf_counter()
    engine.advance(cycles)
    return time.perf_counter() - started, engine


def run_scenario(label: str, net, hw, stim, cycles: int) -> None:
    print(f"{label}: {len(net.neurons)} neurons, {len(net.synapses)} synapses, "
          f"{cycles} cycles")
    py_time, py_engine = time_backend("python", net, hw, stim, cycles)
    print(f"  python   : {py_time:8.3f}s  ({cycles / py_time:10.0f} cycles/s)")
    if not kernel_available():
        print("  compiled : not built, skipping")
        return
    c_time, c_engine = time_backend("compiled", net, hw, stim, cycles)
    print(f"  compiled : {c_time:8.3f}s  ({cycles / c_time:10.0f} cycles/s)"
          f"  {py_time / c_time:6.1f}x speedup")
    same_charges = py_engine.charges() == c_engine.charges()
    same_weights = py_engine.weights() == c_engine.weights()
    if same_charges and same_weights:
        print("  state check: final charges and weights identical across backends")
    else:
        print("  state check: MISMATCH between backends", file=sys.stderr)
        raise SystemExit(1)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--neurons", type=int, default=128)
    parser.add_argument("--fanout", type=int, default=8)
    parser.add_argument("--max-delay", type=int, default=4)
    parser.add_argument("--cycles", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    for stdp in (False, True):
        net, hw, stim = build_setup(args.neurons, args.fanout, args.max_delay,
                                    stdp, args.seed)
        run_scenario(f"plasticity {'on' if stdp else 'off'}", net, hw, stim, args.cycles)
    return 0


if __name__ == "__main__":
    sys.exit(main())
