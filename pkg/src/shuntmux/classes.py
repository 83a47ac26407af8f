"""Equivalence classes of switching states for each detection task.

A state's class is what the application needs to learn from one voltage
reading: a photon count, the single switched pixel, the set of switched
detectors up to a coincidence budget, or the whole state.  States the task
makes no promise about classify to :data:`OUT_OF_SCOPE`.

Detectors are numbered 1..n on the public surface; detector ``k`` sits at
bit position ``k-1`` of the integer case code.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .circuit import SwitchingState
from .errors import EnumerationBoundError, LengthMismatch

ENUMERATION_LIMIT = 1 << 30
MAX_ENUM_N = 30
MAX_FULL_N = 62


class ModeKind(enum.Enum):
    PNR = "pnr"
    PIXEL = "pixel"
    COINCIDENCE = "coincidence"
    FULL = "full"


@dataclass(frozen=True)
class ApplicationMode:
    kind: ModeKind
    n_c: int | None = None

    def __post_init__(self):
        if self.kind is ModeKind.COINCIDENCE:
            if self.n_c is None or self.n_c < 1:
                raise ValueError("coincidence mode needs a positive budget n_c")
        elif self.n_c is not None:
            raise ValueError(f"n_c only applies to coincidence mode, not {self.kind.value}")

    @classmethod
    def pnr(cls):
        return cls(ModeKind.PNR)

    @classmethod
    def pixel(cls):
        return cls(ModeKind.PIXEL)

    @classmethod
    def coincidence(cls, n_c: int):
        return cls(ModeKind.COINCIDENCE, n_c)

    @classmethod
    def full(cls):
        return cls(ModeKind.FULL)

    @classmethod
    def parse(cls, name: str, n_c: int | None = None):
        """Mode from its CLI/file name; ``n_c`` defaults to 2 and is ignored outside coincidence."""
        kind = ModeKind(name.lower())
        if kind is ModeKind.COINCIDENCE:
            return cls(kind, 2 if n_c is None else n_c)
        return cls(kind)

    def check_n(self, n: int):
        if n < 1:
            raise ValueError(f"detector count must be >= 1, got {n}")
        if self.kind is ModeKind.COINCIDENCE and self.n_c > n:
            raise ValueError(f"coincidence budget {self.n_c} exceeds detector count {n}")

    def budget(self, n: int) -> int:
        """Largest number of simultaneously switched detectors still in scope."""
        if self.kind is ModeKind.PIXEL:
            return 1
        if self.kind is ModeKind.COINCIDENCE:
            return min(self.n_c, n)
        return n

    def __str__(self):
        if self.kind is ModeKind.COINCIDENCE:
            return f"coincidence({self.n_c})"
        return self.kind.value


@dataclass(frozen=True)
class ClassLabel:
    """Canonical class identity.

    ``value`` is the count for PNR, the detector index (0 for none) for pixel
    mode, the sorted tuple of switched detectors for coincidence mode and the
    flag tuple for full detection.
    """

    kind: ModeKind
    value: int | tuple[int, ...]

    def __str__(self):
        if self.kind is ModeKind.PNR:
            return f"{self.value} photon" + ("" if self.value == 1 else "s")
        if self.kind is ModeKind.PIXEL:
            return "no detection" if self.value == 0 else f"detector {self.value}"
        if self.kind is ModeKind.COINCIDENCE:
            if not self.value:
                return "no detection"
            return "detectors {" + ",".join(map(str, self.value)) + "}"
        return "state " + "".join(str(b) for b in reversed(self.value))


class _OutOfScope:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OUT_OF_SCOPE"

    def __bool__(self):
        return False


OUT_OF_SCOPE = _OutOfScope()


def classify(mode: ApplicationMode, state: SwitchingState, n: int | None = None):
    if n is not None and state.n != n:
        raise LengthMismatch(f"state has {state.n} flags, expected {n}")
    switched = state.switched
    if mode.kind is ModeKind.PNR:
        return ClassLabel(mode.kind, len(switched))
    if mode.kind is ModeKind.PIXEL:
        if len(switched) > 1:
            return OUT_OF_SCOPE
        return ClassLabel(mode.kind, switched[0] if switched else 0)
    if mode.kind is ModeKind.COINCIDENCE:
        if len(switched) > mode.n_c:
            return OUT_OF_SCOPE
        return ClassLabel(mode.kind, switched)
    return ClassLabel(mode.kind, state.bits)


def class_count(mode: ApplicationMode, n: int) -> int:
    mode.check_n(n)
    if mode.kind in (ModeKind.PNR, ModeKind.PIXEL):
        return n + 1
    if mode.kind is ModeKind.COINCIDENCE:
        return sum(comb(n, i) for i in range(mode.n_c + 1))
    if n > MAX_FULL_N:
        raise OverflowError(f"full detection class count overflows for n={n} > {MAX_FULL_N}")
    return 1 << n


def in_scope_count(mode: ApplicationMode, n: int) -> int:
    if mode.kind is ModeKind.PNR:
        return 1 << n
    return class_count(mode, n)


def check_enumerable(mode: ApplicationMode, n: int):
    mode.check_n(n)
    if n > MAX_ENUM_N:
        raise EnumerationBoundError(f"n={n} exceeds the enumeration bound of {MAX_ENUM_N} detectors")
    count = in_scope_count(mode, n)
    if count > ENUMERATION_LIMIT:
        raise EnumerationBoundError(f"{count} in-scope states exceed the 2^30 enumeration limit")


def in_scope_codes(mode: ApplicationMode, n: int) -> np.ndarray:
    """Integer case codes of every in-scope state, ascending."""
    check_enumerable(mode, n)
    budget = mode.budget(n)
    if budget >= n:
        return np.arange(1 << n, dtype=np.int64)
    if n <= 22:
        codes = np.arange(1 << n, dtype=np.int64)
        return codes[np.bitwise_count(codes) <= budget]
    found = [0]
    for size in range(1, budget + 1):
        for combo in combinations(range(n), size):
            found.append(sum(1 << k for k in combo))
    return np.sort(np.array(found, dtype=np.int64))


def in_scope_states(mode: ApplicationMode, n: int) -> Iterator[SwitchingState]:
    for code in in_scope_codes(mode, n):
        yield SwitchingState.from_index(int(code), n)


def class_keys(mode: ApplicationMode, codes: np.ndarray) -> np.ndarray:
    """Integer key per code such that equal keys mean equal class labels."""
    if mode.kind is ModeKind.PNR:
        return np.bitwise_count(codes).astype(np.int64)
    if mode.kind is ModeKind.PIXEL:
        # single set bit at position p -> detector p+1; empty state -> 0
        keys = np.zeros(codes.shape, dtype=np.int64)
        nz = codes != 0
        keys[nz] = np.log2(codes[nz]).astype(np.int64) + 1
        return keys
    return codes.astype(np.int64)


def label_from_key(mode: ApplicationMode, key: int, n: int) -> ClassLabel:
    if mode.kind in (ModeKind.PNR, ModeKind.PIXEL):
        return ClassLabel(mode.kind, int(key))
    state = SwitchingState.from_index(int(key), n)
    if mode.kind is ModeKind.COINCIDENCE:
        return ClassLabel(mode.kind, state.switched)
    return ClassLabel(mode.kind, state.bits)
