"""STDP index arithmetic and saturating weight updates.

The hardware holds one signed adjustment table of size T. The first half of
the table (plus the middle entry when T is odd) serves potentiation and the
upper half serves depression. Indices are computed from the distance between
the cycle y at which a neuron's threshold was exceeded and the cycle x that
anchors the pre-synaptic event.
"""

from __future__ import annotations


def potentiation_index(table_size: int, y: int, x: int) -> int:
    """Table index for a causal (pre before post) adjustment.

    x is the cycle the synapse last delivered, y the cycle the post-neuron
    exceeded its threshold. The entry applies only when the index is >= 0.
    """
    if table_size < 1:
        raise ValueError("table size must be >= 1")
    if y < x:
        raise ValueError("exceed cycle must not precede delivery cycle")
    return table_size // 2 - (y - x)


def depression_index(table_size: int, y: int, x: int) -> int:
    """Table index for an anti-causal (post before pre) adjustment.

    x is the cycle the post-neuron last exceeded its threshold, y the cycle
    the synapse delivered. The entry applies only when the index is < T.
    """
    if table_size < 1:
        raise ValueError("table size must be >= 1")
    if y <= x:
        raise ValueError("delivery cycle must follow the exceed cycle")
    return table_size // 2 + (y - x)


def apply_weight_delta(weight: int, delta: int, weight_width: int) -> int:
    """Add delta to weight, saturating at the signed weight-width bounds."""
    if weight_width < 1:
        raise ValueError("weight width must be >= 1")
    lo = -(1 << (weight_width - 1))
    hi = (1 << (weight_width - 1)) - 1
    value = weight + delta
    if value < lo:
        return lo
    if value > hi:
        return hi
    return value
