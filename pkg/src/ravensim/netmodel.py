"""Hardware constants, network settings and validation.

A simulated RAVENS processor is described in two layers. HardwareConstants
capture the structural choices baked in when the processor is built: the
bit widths of weights, thresholds and accumulators, the maximum programmable
delay, leak and refractory durations, the number of input ports per neuron,
and the hardware STDP adjustment table. A Network programs per-neuron and
per-synapse settings onto that hardware. Validation checks every programmed
value against the hardware limits and reports each violation with the entity
and rule that failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def signed_range(bits: int) -> tuple[int, int]:
    """Inclusive (lo, hi) range of a two's-complement value of `bits` bits."""
    if bits < 1:
        raise ValueError("bit width must be >= 1")
    return -(1 << (bits - 1)), (1 << (bits - 1)) - 1


def ceil_log2(x: int) -> int:
    """Smallest a such that 2**a >= x, for x >= 1. Integer arithmetic only."""
    if x < 1:
        raise ValueError("ceil_log2 requires x >= 1")
    return (x - 1).bit_length()


def min_accumulator_width(weight_width: int, ports: int, injection_ports: int) -> int:
    """Minimum accumulator width, in bits, that a single cycle cannot overflow.

    Both port configurations are considered: all ports carrying synapses at
    the maximum weight magnitude, or `injection_ports` ports reserved for
    charge injection while the rest carry synapses. The worse case decides.
    """
    if weight_width < 1:
        raise ValueError("weight width must be >= 1")
    if ports < 1:
        raise ValueError("port count must be >= 1")
    if not 0 <= injection_ports <= ports:
        raise ValueError("injection ports must lie in [0, ports]")
    wmax = (1 << weight_width) - 1
    with_injection = wmax * (ports - injection_ports) + (1 << injection_ports) - 1
    synapses_only = wmax * ports
    return ceil_log2(max(with_injection, synapses_only))


@dataclass(frozen=True)
class HardwareConstants:
    """Structural limits of a built processor. Immutable."""

    accumulator_width: int
    threshold_width: int
    weight_width: int
    max_delay: int
    max_leak: int
    max_abs_refractory: int
    max_rel_refractory: int
    ports: int
    injection_ports: int
    stdp_table: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "stdp_table", tuple(self.stdp_table))
        for name in ("accumulator_width", "threshold_width", "weight_width"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        for name in ("max_delay", "max_leak", "max_abs_refractory", "max_rel_refractory"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.ports < 1:
            raise ValueError("ports must be >= 1")
        if not 0 <= self.injection_ports <= self.ports:
            raise ValueError("injection_ports must lie in [0, ports]")
        for v in self.stdp_table:
            if not isinstance(v, int):
                raise ValueError("stdp_table entries must be integers")


@dataclass(frozen=True)
class NeuronSettings:
    """Per-neuron programmable settings."""

    name: str
    threshold: int
    standard_resting: int = 0
    refractory_resting: int = 0
    abs_refractory: int = 0
    rel_refractory: int = 0
    leak: int = 0
    injection: bool = False


@dataclass(frozen=True)
class SynapseSettings:
    """Per-synapse programmable settings."""

    pre: str
    post: str
    weight: int
    delay: int = 0


@dataclass(frozen=True)
class Network:
    """A programmed network: neurons, synapses and overall settings.

    Immutable. Engines copy the synapse weights into their own mutable
    state, so a Network can be shared between concurrent simulations.
    """

    neurons: tuple[NeuronSettings, ...]
    synapses: tuple[SynapseSettings, ...]
    stdp_enabled: bool = False
    input_spike_amount: int = 16

    def __post_init__(self) -> None:
        object.__setattr__(self, "neurons", tuple(self.neurons))
        object.__setattr__(self, "synapses", tuple(self.synapses))

    def neuron_names(self) -> list[str]:
        return [n.name for n in self.neurons]

    def neuron_index(self) -> dict[str, int]:
        return {n.name: i for i, n in enumerate(self.neurons)}


@dataclass(frozen=True)
class Violation:
    """One validation failure: which entity broke which rule."""

    entity: str
    rule: str
    message: str


class ValidationError(ValueError):
    """Raised when a network cannot be programmed onto the hardware."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = [v.message for v in report.violations]
        super().__init__("network validation failed:\n" + "\n".join(lines))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]
    min_accumulator_width: int


def _check_neuron(n: NeuronSettings, hw: HardwareConstants, out: list[Violation]) -> None:
    tlo, thi = signed_range(hw.threshold_width)
    alo, ahi = signed_range(hw.accumulator_width)
    if not tlo <= n.threshold <= thi:
        out.append(Violation(n.name, "threshold out of range",
                             f"neuron {n.name}: threshold {n.threshold} outside "
                             f"[{tlo}, {thi}] for a {hw.threshold_width}-bit threshold"))
    for label, value in (("standard resting", n.standard_resting),
                         ("refractory resting", n.refractory_resting)):
        if not alo <= value <= ahi:
            out.append(Violation(n.name, "resting potential out of range",
                                 f"neuron {n.name}: {label} potential {value} outside "
                                 f"[{alo}, {ahi}] for a {hw.accumulator_width}-bit accumulator"))
    if not 0 <= n.leak <= hw.max_leak:
        out.append(Violation(n.name, "leak out of range",
                             f"neuron {n.name}: leak {n.leak} outside [0, {hw.max_leak}]"))
    if not 0 <= n.abs_refractory <= hw.max_abs_refractory:
        out.append(Violation(n.name, "refractory out of range",
                             f"neuron {n.name}: absolute refractory {n.abs_refractory} "
                             f"outside [0, {hw.max_abs_refractory}]"))
    if not 0 <= n.rel_refractory <= hw.max_rel_refractory:
        out.append(Violation(n.name, "refractory out of range",
                             f"neuron {n.name}: relative refractory {n.rel_refractory} "
                             f"outside [0, {hw.max_rel_refractory}]"))


def validate_network(net: Network, hw: HardwareConstants) -> ValidationReport:
    """Check every programmed setting against the hardware limits.

    Returns a report listing all violations; ok is true when there are none.
    """
    violations: list[Violation] = []
    needed = min_accumulator_width(hw.weight_width, hw.ports, hw.injection_ports)
    if hw.accumulator_width < needed:
        violations.append(Violation("hardware", "accumulator width too small",
                                    f"accumulator width {hw.accumulator_width} is below the "
                                    f"minimum {needed} for weight width {hw.weight_width}, "
                                    f"{hw.ports} ports, {hw.injection_ports} injection ports"))

    seen: set[str] = set()
    for n in net.neurons:
        if n.name in seen:
            violations.append(Violation(n.name, "duplicate neuron id",
                                        f"neuron name {n.name} declared more than once"))
        seen.add(n.name)
        _check_neuron(n, hw, violations)

    wlo, whi = signed_range(hw.weight_width)
    fan_in: dict[str, int] = {n.name: 0 for n in net.neurons}
    for s in net.synapses:
        label = f"{s.pre}->{s.post}"
        for end in (s.pre, s.post):
            if end not in seen:
                violations.append(Violation(label, "unknown neuron",
                                            f"synapse {label}: no neuron named {end}"))
        if not wlo <= s.weight <= whi:
            violations.append(Violation(label, "weight out of range",
                                        f"synapse {label}: weight {s.weight} outside "
                                        f"[{wlo}, {whi}] for a {hw.weight_width}-bit weight"))
        if not 0 <= s.delay <= hw.max_delay:
            violations.append(Violation(label, "delay out of range",
                                        f"synapse {label}: delay {s.delay} outside "
                                        f"[0, {hw.max_delay}]"))
        if s.post in fan_in:
            fan_in[s.post] += 1

    # Each neuron has hw.ports input ports; enabling injection reserves
    # hw.injection_ports of them, leaving fewer for incoming synapses.
    for n in net.neurons:
        budget = hw.ports - (hw.injection_ports if n.injection else 0)
        if fan_in[n.name] > budget:
            violations.append(Violation(n.name, "port budget exceeded",
                                        f"neuron {n.name}: {fan_in[n.name]} incoming synapses "
                                        f"exceed the {budget} available ports"))

    if net.stdp_enabled and len(hw.stdp_table) == 0:
        violations.append(Violation("network", "stdp unavailable",
                                    "stdp is enabled but the hardware adjustment table is empty"))

    alo, ahi = signed_range(hw.accumulator_width)
    if not alo <= net.input_spike_amount <= ahi:
        violations.append(Violation("network", "input spike amount out of range",
                                    f"input spike amount {net.input_spike_amount} outside "
                                    f"[{alo}, {ahi}]"))

    return ValidationReport(ok=not violations, violations=tuple(violations),
                            min_accumulator_width=needed)


def resource_report(net: Network, hw: HardwareConstants) -> str:
    """Human-readable resource summary for a network on given hardware."""
    fan_in: dict[str, int] = {n.name: 0 for n in net.neurons}
    max_delay_used = 0
    for s in net.synapses:
        if s.post in fan_in:
            fan_in[s.post] += 1
        max_delay_used = max(max_delay_used, s.delay)
    needed = min_accumulator_width(hw.weight_width, hw.ports, hw.injection_ports)
    lines = [
        f"neurons: {len(net.neurons)}",
        f"synapses: {len(net.synapses)}",
        f"stdp table size: {len(hw.stdp_table)}",
        f"min accumulator width: {needed}",
        f"accumulator width: {hw.accumulator_width}",
        f"delivery buffer slots: {max_delay_used + 1}",
    ]
    if net.neurons:
        lines.append("port usage:")
        for n in net.neurons:
            budget = hw.ports - (hw.injection_ports if n.injection else 0)
            lines.append(f"  {n.name}: {fan_in[n.name]}/{budget}")
    return "\n".join(lines)
