"""Multi-level amplitude damping channels: actions, degradability, capacities."""

from ._madcap import (
    apply,
    capacity,
    classify,
    coherent_info,
    complement,
    compose,
    entropy,
    kraus,
    mutual_info,
    q_single_decay,
    qubit_adc_capacity,
    validate,
)

__all__ = [
    "apply",
    "capacity",
    "classify",
    "coherent_info",
    "complement",
    "compose",
    "entropy",
    "kraus",
    "mutual_info",
    "q_single_decay",
    "qubit_adc_capacity",
    "validate",
]
