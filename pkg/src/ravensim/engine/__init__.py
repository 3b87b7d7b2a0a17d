"""Engine construction and backend selection.

new_engine picks the compiled kernel when it was built and the configured
bit widths fit its 64-bit arithmetic, otherwise the pure-Python backend.
Set RAVENSIM_BACKEND=python or pass backend= to pin one explicitly. Both
backends implement identical cycle semantics; the test suite holds them
equal on every fixture and on randomized networks.
"""

from __future__ import annotations

import os

from ..netmodel import HardwareConstants, Network, ValidationError, validate_network
from . import compiled
from .events import (
    INJECTION,
    INPUT_SPIKE,
    PHASE_ABSOLUTE,
    PHASE_RELATIVE,
    PHASE_STANDARD,
    CycleReport,
    Stimulus,
    StimulusEvent,
)
from .layout import build_layout, check_stimulus
from .pycore import PyEngine
from .reference import ReferenceEngine

__all__ = [
    "INJECTION",
    "INPUT_SPIKE",
    "PHASE_ABSOLUTE",
    "PHASE_RELATIVE",
    "PHASE_STANDARD",
    "CycleReport",
    "PyEngine",
    "ReferenceEngine",
    "Stimulus",
    "StimulusEvent",
    "available_backends",
    "new_engine",
    "new_reference_engine",
    "reference_step",
    "run",
    "step",
]

# The kernel computes in 64-bit integers; leave headroom for one cycle of
# accumulation on top of a full-width value.
_KERNEL_WIDTH_LIMIT = 62


def available_backends() -> list[str]:
    names = ["python"]
    if compiled.available():
        names.append("compiled")
    return names


def _kernel_fits(hw: HardwareConstants) -> bool:
    widest = max(hw.accumulator_width, hw.threshold_width, hw.weight_width)
    return widest <= _KERNEL_WIDTH_LIMIT


def new_engine(net: Network, hw: HardwareConstants, stim: Stimulus | None = None,
               backend: str = "auto", record_deliveries: bool = False):
    """Validate and build a simulator over net/hw driven by stim."""
    stim = stim if stim is not None else Stimulus.empty()
    report = validate_network(net, hw)
    if not report.ok:
        raise ValidationError(report)
    check_stimulus(stim, net, hw)

    if backend == "auto":
        env = os.environ.get("RAVENSIM_BACKEND", "auto")
        backend = env if env in ("python", "compiled") else "auto"
    if backend == "auto":
        backend = "compiled" if compiled.available() and _kernel_fits(hw) else "python"

    layout = build_layout(net, hw, stim)
    if backend == "python":
        return PyEngine(layout, record_deliveries=record_deliveries)
    if backend == "compiled":
        if not compiled.available():
            raise ValueError("compiled backend requested but the kernel is not built")
        if not _kernel_fits(hw):
            raise ValueError("compiled backend cannot hold the configured bit widths")
        if record_deliveries:
            raise ValueError("delivery recording is only available on the python backend")
        return compiled.CompiledEngine(layout)
    raise ValueError(f"unknown backend: {backend}")


def new_reference_engine(net: Network, hw: HardwareConstants,
                         stim: Stimulus | None = None) -> ReferenceEngine:
    """Build the naive differential-testing oracle over the same inputs."""
    stim = stim if stim is not None else Stimulus.empty()
    report = validate_network(net, hw)
    if not report.ok:
        raise ValidationError(report)
    check_stimulus(stim, net, hw)
    return ReferenceEngine(net, hw, stim)


def step(engine) -> CycleReport:
    """Advance one integration cycle and report it."""
    return engine.step()


def reference_step(engine: ReferenceEngine) -> CycleReport:
    """step() on the naive oracle; kept separate for differential tests."""
    return engine.step()


def run(engine, n_cycles: int) -> list[CycleReport]:
    """Step n_cycles times, collecting one report per cycle."""
    if n_cycles < 0:
        raise ValueError("cycle count must be >= 0")
    return [engine.step() for _ in range(n_cycles)]
