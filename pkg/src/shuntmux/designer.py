"""Minimal shunt-resistance sets for each detection task.

Every construction solves its separation condition with equality, so each
class sits exactly one resistance resolution (after loading compression)
above the worst competing class below it.  Loading by the readout admittance
``y`` compresses the voltage scale as ``R / (1 + y R)``; a finite normal
resistance ``r_n`` means a switched detector contributes ``r || r_n``
rather than ``r``.  Designs work on those parallel values and convert back
to shunts at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circuit import ArraySpec, parallel, unparallel
from .classes import ApplicationMode, ModeKind
from .errors import Infeasible, InfeasibleLevel, NotSupported


@dataclass(frozen=True)
class DesignRequest:
    mode: ApplicationMode
    n: int
    delta_r: float
    y: float = 0.0
    r_n: float = math.inf

    def __post_init__(self):
        self.mode.check_n(self.n)
        if not (self.delta_r > 0 and math.isfinite(self.delta_r)):
            raise ValueError(f"resistance resolution must be positive, got {self.delta_r}")
        if not (self.y >= 0 and math.isfinite(self.y)):
            raise ValueError(f"admittance must be >= 0 and finite, got {self.y}")
        if not self.r_n > 0:
            raise ValueError(f"normal resistance must be positive, got {self.r_n}")

    @property
    def ideal(self) -> bool:
        return self.y == 0 and math.isinf(self.r_n)


@dataclass(frozen=True)
class DesignResult:
    """Designed array.

    ``levels[b]`` is the total resistance of the class the next element must
    clear: ``b`` switched detectors for PNR, otherwise the sum of the
    ``n_c`` largest parallels up to element ``b`` (``levels[0] == 0``).
    """

    mode: ApplicationMode
    shunts: tuple[float, ...]
    parallels: tuple[float, ...]
    levels: tuple[float, ...]
    feasible_limit: float
    r_n: float = math.inf
    notes: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.shunts)

    def to_array(self, inductances=None) -> ArraySpec:
        return ArraySpec.from_shunts(self.shunts, self.r_n, inductances)


def feasibility_limit(y: float, delta_r: float) -> float:
    if delta_r <= 0:
        raise ValueError(f"resistance resolution must be positive, got {delta_r}")
    if y == 0:
        return math.inf
    return 1.0 / (y * delta_r)


def level_sequence(beta: int, y: float, delta_r: float) -> float:
    """Resistance whose loaded value is exactly ``beta * delta_r``."""
    if beta < 0:
        raise ValueError(f"level index must be >= 0, got {beta}")
    denominator = 1.0 - beta * y * delta_r
    if denominator <= 0:
        raise InfeasibleLevel(
            f"level {beta} is not below the loading limit m_L = {feasibility_limit(y, delta_r):g}",
            max_n=_max_level(y, delta_r),
            cause="m_L",
        )
    return beta * delta_r / denominator


def _max_level(y, delta_r):
    if y == 0:
        return math.inf
    beta = math.ceil(feasibility_limit(y, delta_r)) - 1
    while beta > 0 and 1.0 - beta * y * delta_r <= 0:
        beta -= 1
    return beta


def next_parallel(worst: float, y: float, delta_r: float) -> float:
    """Smallest resistance whose loaded value clears ``worst`` by ``delta_r``.

    Raises :class:`Infeasible` (cause ``denominator``) once the loaded scale
    has no room left above ``worst``.
    """
    denominator = 1.0 - y * delta_r - y * y * delta_r * worst
    if denominator <= 0:
        raise Infeasible("recurrence denominator is no longer positive", cause="denominator")
    return worst + delta_r * (1.0 + y * worst) ** 2 / denominator


def design(req: DesignRequest) -> DesignResult:
    kind = req.mode.kind
    if kind is ModeKind.PNR:
        return design_pnr(req)
    if kind is ModeKind.PIXEL:
        return design_pixel(req)
    if kind is ModeKind.COINCIDENCE:
        return design_coincidence(req)
    return design_full(req)


def design_pnr(req: DesignRequest) -> DesignResult:
    """Common shunt for photon counting: ``dR / (1 - n/m_L - dR/R_N)``."""
    n, dr, y, r_n = req.n, req.delta_r, req.y, req.r_n
    limit = feasibility_limit(y, dr)

    def denominator(count):
        return 1.0 - count * y * dr - (0.0 if math.isinf(r_n) else dr / r_n)

    if denominator(n) <= 0:
        max_n = 0
        while denominator(max_n + 1) > 0:
            max_n += 1
        cause = "m_L" if n * y * dr >= 1 else "R_N"
        raise Infeasible(
            f"PNR with n={n} is infeasible ({_cause_text(cause, limit, r_n)}); "
            f"at most {max_n} detectors are supported",
            max_n=max_n,
            cause=cause,
        )
    r = dr / denominator(n)
    r_p = dr / (1.0 - n * y * dr)
    notes = ()
    if not req.ideal:
        notes = (
            "closed-form common shunt evaluated as written; under loading the "
            "consecutive count gaps can fall below dV, check the array with `verify`",
        )
    return DesignResult(
        mode=req.mode,
        shunts=(r,) * n,
        parallels=(r_p,) * n,
        levels=tuple(b * r_p for b in range(n + 1)),
        feasible_limit=limit,
        r_n=r_n,
        notes=notes,
    )


def design_pixel(req: DesignRequest) -> DesignResult:
    """Single-pixel identification: ``r_k = k dR / (1 - k/m_L - k dR/R_N)``."""
    shunts, reason = pixel_ladder(req.n, req.delta_r, req.y, req.r_n)
    if reason is not None:
        raise _ladder_failure(req, len(shunts), reason)
    parallels = tuple(parallel(r, req.r_n) for r in shunts)
    return DesignResult(
        mode=req.mode,
        shunts=tuple(shunts),
        parallels=parallels,
        levels=(0.0,) + parallels,
        feasible_limit=feasibility_limit(req.y, req.delta_r),
        r_n=req.r_n,
    )


def design_coincidence(req: DesignRequest) -> DesignResult:
    """Identify up to ``n_c`` simultaneous switchings.

    Element ``k+1`` must clear the worst earlier case, all of the ``n_c``
    previous elements switched together.
    """
    n_c = req.mode.n_c
    parallels, reason = coincidence_parallels(req.n, n_c, req.delta_r, req.y, req.r_n)
    if reason is not None:
        raise _ladder_failure(req, len(parallels), reason)
    levels = [0.0]
    for k in range(1, req.n + 1):
        levels.append(sum(parallels[max(0, k - n_c):k]))
    return DesignResult(
        mode=req.mode,
        shunts=tuple(unparallel(p, req.r_n) for p in parallels),
        parallels=tuple(parallels),
        levels=tuple(levels),
        feasible_limit=feasibility_limit(req.y, req.delta_r),
        r_n=req.r_n,
    )


def design_full(req: DesignRequest) -> DesignResult:
    """Binary-weighted ladder ``r_k = dR 2^(k-1)``; ideal bias and readout only."""
    if not req.ideal:
        raise NotSupported(
            "full detection is only designed for ideal bias/readout (y = 0, r_n = inf)"
        )
    shunts = tuple(req.delta_r * 2.0 ** (k - 1) for k in range(1, req.n + 1))
    levels = [0.0]
    for r in shunts:
        levels.append(levels[-1] + r)
    return DesignResult(
        mode=req.mode,
        shunts=shunts,
        parallels=shunts,
        levels=tuple(levels),
        feasible_limit=math.inf,
        r_n=req.r_n,
    )


def pixel_ladder(k_max, delta_r, y=0.0, r_n=math.inf):
    """Pixel shunts for ``k = 1..k_max`` up to the first infeasible element.

    Returns ``(shunts, reason)`` with ``reason`` None when all ``k_max``
    elements exist, otherwise ``"m_L"`` or ``"R_N"``.
    """
    shunts = []
    for k in range(1, k_max + 1):
        loading = 1.0 - k * y * delta_r
        if loading <= 0:
            return shunts, "m_L"
        denominator = loading - (0.0 if math.isinf(r_n) else k * delta_r / r_n)
        if denominator <= 0:
            return shunts, "R_N"
        shunts.append(k * delta_r / denominator)
    return shunts, None


def coincidence_parallels(k_max, n_c, delta_r, y=0.0, r_n=math.inf):
    """Parallel values of the coincidence recurrence up to the first infeasible element."""
    parallels = []
    for _ in range(k_max):
        worst = sum(parallels[-n_c:]) if parallels else 0.0
        try:
            p = next_parallel(worst, y, delta_r)
        except Infeasible:
            return parallels, "denominator"
        if not p < r_n:
            return parallels, "R_N"
        parallels.append(p)
    return parallels, None


def coincidence_ladder(k_max, n_c, delta_r, y=0.0, r_n=math.inf):
    parallels, reason = coincidence_parallels(k_max, n_c, delta_r, y, r_n)
    return [unparallel(p, r_n) for p in parallels], reason


def full_ladder(k_max, delta_r):
    return [delta_r * 2.0 ** (k - 1) for k in range(1, k_max + 1)], None


def _cause_text(cause, limit, r_n):
    if cause == "m_L":
        return f"loading limit m_L = {limit:g} reached"
    if cause == "R_N":
        return f"parallel resistance reaches the normal resistance R_N = {r_n:g} ohm"
    return "recurrence denominator is no longer positive"


def _ladder_failure(req, max_n, reason):
    limit = feasibility_limit(req.y, req.delta_r)
    return Infeasible(
        f"{req.mode} with n={req.n} is infeasible at element {max_n + 1} "
        f"({_cause_text(reason, limit, req.r_n)}); at most {max_n} detectors are supported",
        max_n=max_n,
        cause=reason,
    )


def fibonacci_lucas(k: int) -> tuple[int, int]:
    """Exact ``(F_k, L_k)`` for ``k >= 0``."""
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    f_prev, f = 1, 0  # F_-1, F_0
    for _ in range(k):
        f_prev, f = f, f + f_prev
    return f, f + 2 * f_prev


def two_photon_units(k: int) -> int:
    """Two-photon shunt ``r_k`` in units of the resolution: ``(3 F_k + L_k)/2 - 1``."""
    if k < 1:
        raise ValueError(f"detector index must be >= 1, got {k}")
    f, lucas = fibonacci_lucas(k)
    twice = 3 * f + lucas
    assert twice % 2 == 0
    return twice // 2 - 1


def two_photon_closed_form(k: int, delta_r: float) -> float:
    return two_photon_units(k) * delta_r
