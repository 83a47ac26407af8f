"""Exhaustive certification that a shunt array separates the required classes.

``verify`` enumerates every in-scope switching state, computes the readout
voltage of each through the circuit model, and collects the voltages of
each class into a band ``[v_min, v_max]``.  The array passes when every pair
of bands is at least one voltage resolution apart.  Nothing is sampled and
nothing from the designer is reused, so a pass is independent evidence that
a design works.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .circuit import ArraySpec, CircuitParams, SwitchingState, output_voltage, series_resistance
from .classes import (
    ApplicationMode,
    ClassLabel,
    class_keys,
    in_scope_codes,
    label_from_key,
)
from .errors import AmbiguousDesign, LengthMismatch, OutOfRange

GAP_RTOL = 1e-9


@dataclass(frozen=True)
class Band:
    label: ClassLabel
    v_min: float
    v_max: float
    size: int

    @property
    def spread(self) -> float:
        return self.v_max - self.v_min

    def distance(self, v: float) -> float:
        return max(self.v_min - v, v - self.v_max, 0.0)


@dataclass(frozen=True)
class DecodeResult:
    label: ClassLabel
    margin: float


@dataclass(frozen=True)
class VerificationReport:
    mode: ApplicationMode
    n: int
    delta_v: float
    bands: tuple[Band, ...]
    min_inter_class_gap: float
    worst_pair: tuple[ClassLabel, ClassLabel] | None
    max_intra_class_spread: float
    passed: bool
    states_enumerated: int

    def decode(self, v_measured: float) -> DecodeResult:
        """Nearest-band assignment of a measured voltage."""
        if not self.passed:
            raise AmbiguousDesign(
                f"array does not separate its classes (min gap {self.min_inter_class_gap:.6g} V "
                f"< dV = {self.delta_v:.6g} V); refusing to decode"
            )
        bands = self.bands
        if v_measured > bands[-1].v_max + self.delta_v or v_measured < bands[0].v_min - self.delta_v:
            raise OutOfRange(
                f"{v_measured:.6g} V lies more than dV outside "
                f"[{bands[0].v_min:.6g}, {bands[-1].v_max:.6g}] V"
            )
        mins = [b.v_min for b in bands]
        i = max(bisect.bisect_right(mins, v_measured) - 1, 0)
        candidates = [j for j in (i, i + 1) if j < len(bands)]
        best = min(candidates, key=lambda j: (bands[j].distance(v_measured), j))
        others = [bands[j].distance(v_measured) for j in (best - 1, best + 1) if 0 <= j < len(bands)]
        margin = min(others) if others else math.inf
        return DecodeResult(bands[best].label, margin)

    def summary_lines(self) -> list[str]:
        lines = [
            f"mode: {self.mode}",
            f"detectors: {self.n}",
            f"states enumerated: {self.states_enumerated}",
            f"classes: {len(self.bands)}",
            f"voltage resolution: {self.delta_v:.6g} V",
            f"min inter-class gap: {self.min_inter_class_gap:.6f} V",
        ]
        if self.worst_pair is not None:
            lines.append(f"worst pair: {self.worst_pair[0]} / {self.worst_pair[1]}")
        lines.append(f"max intra-class spread: {self.max_intra_class_spread:.6f} V")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return lines

    def to_dict(self) -> dict:
        return {
            "mode": str(self.mode),
            "n": self.n,
            "delta_v_volt": self.delta_v,
            "states_enumerated": self.states_enumerated,
            "min_inter_class_gap_volt": self.min_inter_class_gap,
            "worst_pair": None if self.worst_pair is None else [str(x) for x in self.worst_pair],
            "max_intra_class_spread_volt": self.max_intra_class_spread,
            "pass": self.passed,
            "bands": [
                {"label": str(b.label), "v_min": b.v_min, "v_max": b.v_max, "states": b.size}
                for b in self.bands
            ],
        }


def state_voltages(array: ArraySpec, params: CircuitParams, codes: np.ndarray) -> np.ndarray:
    """Readout voltage for each integer case code, summing in detector order."""
    rdet = array.switched_resistances()
    total = np.zeros(codes.shape, dtype=np.float64)
    for k, r in enumerate(rdet):
        total += np.where((codes >> k) & 1, r, 0.0)
    return output_voltage(params, total)


def verify(array: ArraySpec, params: CircuitParams, mode: ApplicationMode) -> VerificationReport:
    n = array.n
    codes = in_scope_codes(mode, n)
    volts = state_voltages(array, params, codes)
    keys = class_keys(mode, codes)

    order = np.argsort(keys, kind="stable")
    keys, volts = keys[order], volts[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    v_min = np.minimum.reduceat(volts, starts)
    v_max = np.maximum.reduceat(volts, starts)
    sizes = np.diff(np.r_[starts, len(keys)])

    bands = [
        Band(label_from_key(mode, int(keys[s]), n), float(lo), float(hi), int(c))
        for s, lo, hi, c in zip(starts, v_min, v_max, sizes)
    ]
    bands.sort(key=lambda b: (b.v_min, b.v_max))

    min_gap = math.inf
    worst = None
    reach = 0  # index of the band with the highest v_max so far
    for j in range(1, len(bands)):
        gap = bands[j].v_min - bands[reach].v_max
        if gap < min_gap:
            min_gap, worst = gap, (bands[reach].label, bands[j].label)
        if bands[j].v_max > bands[reach].v_max:
            reach = j

    spread = max(b.spread for b in bands)
    passed = min_gap >= params.delta_v * (1.0 - GAP_RTOL)
    return VerificationReport(
        mode=mode,
        n=n,
        delta_v=params.delta_v,
        bands=tuple(bands),
        min_inter_class_gap=float(min_gap),
        worst_pair=worst,
        max_intra_class_spread=float(spread),
        passed=bool(passed),
        states_enumerated=int(len(codes)),
    )


def decode(array: ArraySpec, params: CircuitParams, mode: ApplicationMode, v_measured: float) -> DecodeResult:
    return verify(array, params, mode).decode(v_measured)


def simulate(array: ArraySpec, params: CircuitParams, state: SwitchingState, perturbation: float = 0.0, seed=None) -> float:
    """Readout voltage of ``state`` plus a test perturbation.

    Without a seed the perturbation is added as given.  With a seed, a value
    is drawn uniformly from ``[-|perturbation|, +|perturbation|]``.
    """
    if state.n != array.n:
        raise LengthMismatch(f"state has {state.n} flags but the array has {array.n} detectors")
    v = output_voltage(params, series_resistance(array, state))
    if seed is None:
        return v + perturbation
    rng = np.random.default_rng(seed)
    return v + float(rng.uniform(-abs(perturbation), abs(perturbation)))
