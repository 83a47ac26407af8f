"""Stationary lumped-element model of a current-biased series detector array.

Each detector is a nanowire (normal resistance ``r_n`` once switched) in
parallel with a shunt ``r``.  The array is biased by ``i_b`` through a
loading admittance and read out through a two-impedance divider.  Only
equilibrium values are modelled; inductance is carried along as metadata.

Infinite ``r_n`` and ``z_o2`` are represented with ``math.inf`` and every
formula takes the corresponding limit explicitly, so no ``inf/inf`` ever
reaches the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch


@dataclass(frozen=True)
class CircuitParams:
    i_b: float
    delta_v: float
    y_b: float = 0.0
    z_o1: float = 0.0
    z_o2: float = math.inf

    def __post_init__(self):
        if not (self.i_b > 0 and math.isfinite(self.i_b)):
            raise ValueError(f"bias current must be positive and finite, got {self.i_b}")
        if not (self.delta_v > 0 and math.isfinite(self.delta_v)):
            raise ValueError(f"voltage resolution must be positive and finite, got {self.delta_v}")
        if not (self.y_b >= 0 and math.isfinite(self.y_b)):
            raise ValueError(f"bias admittance must be >= 0 and finite, got {self.y_b}")
        if not (self.z_o1 >= 0 and math.isfinite(self.z_o1)):
            raise ValueError(f"z_o1 must be >= 0 and finite, got {self.z_o1}")
        if not self.z_o2 > 0:
            raise ValueError(f"z_o2 must be > 0, got {self.z_o2}")

    @property
    def y(self) -> float:
        return effective_admittance(self)

    @property
    def delta_r(self) -> float:
        return resistance_resolution(self)

    @property
    def divider_ratio(self) -> float:
        if math.isinf(self.z_o2):
            return 1.0
        return self.z_o2 / (self.z_o1 + self.z_o2)

    @classmethod
    def from_design(cls, delta_r, y, i_b=1.0):
        """Ideal-divider parameters reproducing a given ``(delta_r, y)`` pair."""
        return cls(i_b=i_b, delta_v=delta_r * i_b, y_b=y)


@dataclass(frozen=True)
class DetectorElement:
    r: float
    r_n: float = math.inf
    l: float = 0.0

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"shunt resistance must be positive and finite, got {self.r}")
        # r_n > r is not required: loaded designs push shunts above r_n
        # while their parallel stays below it.
        if not self.r_n > 0:
            raise ValueError(f"normal resistance must be positive, got {self.r_n}")
        if not self.l >= 0:
            raise ValueError(f"inductance must be >= 0, got {self.l}")


@dataclass(frozen=True)
class ArraySpec:
    elements: tuple[DetectorElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError("an array needs at least one detector")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def shunts(self) -> list[float]:
        return [e.r for e in self.elements]

    @classmethod
    def from_shunts(cls, shunts: Sequence[float], r_n=math.inf, inductances=None):
        if inductances is None:
            inductances = [0.0] * len(shunts)
        if len(inductances) != len(shunts):
            raise LengthMismatch("one inductance per shunt is required")
        return cls(tuple(DetectorElement(r, r_n, l) for r, l in zip(shunts, inductances)))

    def switched_resistances(self) -> list[float]:
        return [detector_resistance(e, 1) for e in self.elements]


@dataclass(frozen=True)
class SwitchingState:
    """Per-detector switch flags; ``bits[k-1]`` is the flag of detector ``k``.

    The case index is the integer whose binary digit ``k-1`` is the flag of
    detector ``k``; ``str()`` and ``from_string`` write it as a binary number,
    most significant digit (detector ``n``) first.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"switch flags must be 0 or 1, got {self.bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return sum(b << k for k, b in enumerate(self.bits))

    @property
    def switched(self) -> tuple[int, ...]:
        """1-based indices of switched detectors, ascending."""
        return tuple(k + 1 for k, b in enumerate(self.bits) if b)

    @classmethod
    def from_index(cls, index: int, n: int) -> "SwitchingState":
        if not 0 <= index < (1 << n):
            raise ValueError(f"case index {index} out of range for n={n}")
        return cls(tuple((index >> k) & 1 for k in range(n)))

    @classmethod
    def from_string(cls, text: str) -> "SwitchingState":
        return cls(tuple(int(c) for c in reversed(text.strip())))

    def __str__(self):
        return "".join(str(b) for b in reversed(self.bits))


def effective_admittance(params: CircuitParams) -> float:
    if math.isinf(params.z_o2):
        return params.y_b
    return params.y_b + 1.0 / (params.z_o1 + params.z_o2)


def resistance_resolution(params: CircuitParams) -> float:
    return params.delta_v / (params.i_b * params.divider_ratio)


def parallel(r: float, r_n: float) -> float:
    """Shunt in parallel with the normal resistance (``r`` itself if ``r_n`` is infinite)."""
    if math.isinf(r_n):
        return r
    return r * r_n / (r + r_n)


def unparallel(r_p: float, r_n: float) -> float:
    """Shunt whose parallel with ``r_n`` equals ``r_p``; requires ``r_p < r_n``."""
    if math.isinf(r_n):
        return r_p
    if not r_p < r_n:
        raise ValueError(f"parallel value {r_p} is not below the normal resistance {r_n}")
    return r_p * r_n / (r_n - r_p)


def detector_resistance(elem: DetectorElement, switched: int) -> float:
    if not switched:
        return 0.0
    return parallel(elem.r, elem.r_n)


def series_resistance(array: ArraySpec, state: SwitchingState) -> float:
    if state.n != array.n:
        raise LengthMismatch(f"state has {state.n} flags but the array has {array.n} detectors")
    total = 0.0
    for elem, bit in zip(array.elements, state.bits):
        total += detector_resistance(elem, bit)
    return total


def compressed(r, y):
    """Loaded resistance ``R / (1 + Y R)``; works elementwise on arrays."""
    return r / (1.0 + y * r)


def total_voltage(params: CircuitParams, r):
    if isinstance(r, (int, float)) and r < 0:
        raise ValueError(f"series resistance must be >= 0, got {r}")
    return params.i_b * compressed(r, params.y)


def measured_output(params: CircuitParams, v):
    if math.isinf(params.z_o2):
        return v
    return v * params.divider_ratio


def output_voltage(params: CircuitParams, r):
    """Voltage seen by the readout for a total series resistance ``r``."""
    return measured_output(params, total_voltage(params, r))
