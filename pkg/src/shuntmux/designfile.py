"""JSON design files and the parameter forms they (and the CLI) accept.

Resolution is given either directly as ``delta_r_ohm`` or physically as
``delta_v_volt`` + ``i_b_ampere`` (+ divider impedances).  Loading is given
either as ``y_siemens`` or as ``y_b_siemens`` (+ divider impedances).
Infinite values are written as the string ``"inf"``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

from .circuit import ArraySpec, CircuitParams
from .classes import ApplicationMode, ModeKind

DEFAULT_IB = 1.0


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class ParamSpec:
    delta_r_ohm: float | None = None
    delta_v_volt: float | None = None
    i_b_ampere: float | None = None
    z_o1_ohm: float | None = None
    z_o2_ohm: float | None = None
    y_siemens: float | None = None
    y_b_siemens: float | None = None

    def __post_init__(self):
        if self.delta_r_ohm is not None and self.delta_v_volt is not None:
            raise InputError("give the resolution either as delta_r or as delta_v, not both")
        if self.delta_r_ohm is None and self.delta_v_volt is None:
            raise InputError("a resolution (delta_r or delta_v) is required")
        if self.y_siemens is not None and self.y_b_siemens is not None:
            raise InputError("give the loading either as y or as y_b, not both")

    @property
    def _z_o1(self):
        return 0.0 if self.z_o1_ohm is None else self.z_o1_ohm

    @property
    def _z_o2(self):
        return math.inf if self.z_o2_ohm is None else self.z_o2_ohm

    def _divider_admittance(self):
        z2 = self._z_o2
        return 0.0 if math.isinf(z2) else 1.0 / (self._z_o1 + z2)

    def circuit(self, i_b: float | None = None) -> CircuitParams:
        """Circuit parameters; ``i_b`` overrides the stored bias current."""
        if i_b is None:
            i_b = DEFAULT_IB if self.i_b_ampere is None else self.i_b_ampere
        z1, z2 = self._z_o1, self._z_o2
        ratio = 1.0 if math.isinf(z2) else z2 / (z1 + z2)
        if self.delta_v_volt is not None:
            delta_v = self.delta_v_volt
        else:
            delta_v = self.delta_r_ohm * i_b * ratio
        if self.y_siemens is not None:
            y_b = self.y_siemens - self._divider_admittance()
            if y_b < -1e-15 * max(self.y_siemens, 1.0):
                raise InputError(
                    f"y = {self.y_siemens} S is below the divider's own admittance "
                    f"{self._divider_admittance()} S"
                )
            y_b = max(y_b, 0.0)
        else:
            y_b = 0.0 if self.y_b_siemens is None else self.y_b_siemens
        try:
            return CircuitParams(i_b=i_b, delta_v=delta_v, y_b=y_b, z_o1=z1, z_o2=z2)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    def design_inputs(self) -> tuple[float, float]:
        """``(delta_r, y)`` as the designer needs them."""
        if self.delta_r_ohm is not None:
            delta_r = self.delta_r_ohm
        else:
            delta_r = self.circuit().delta_r
        if self.y_siemens is not None:
            y = self.y_siemens
        else:
            y = (0.0 if self.y_b_siemens is None else self.y_b_siemens) + self._divider_admittance()
        return delta_r, y


@dataclass(frozen=True)
class DesignFile:
    mode: str
    n: int
    params: ParamSpec
    r_n_ohm: float = math.inf
    n_c: int | None = None
    shunts_ohm: tuple[float, ...] | None = None
    inductances_h: tuple[float, ...] | None = None

    def application_mode(self) -> ApplicationMode:
        return ApplicationMode.parse(self.mode, self.n_c)

    def array(self) -> ArraySpec:
        if self.shunts_ohm is None:
            raise InputError("design file carries no shunts_ohm")
        return ArraySpec.from_shunts(self.shunts_ohm, self.r_n_ohm, self.inductances_h)


_PARAM_KEYS = [f.name for f in fields(ParamSpec)]
_TOP_KEYS = ["mode", "n", "n_c", "r_n_ohm", "shunts_ohm", "inductances_h"]


def _encode(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _number(key, value, allow_inf=False):
    if isinstance(value, str) and value == "inf" and allow_inf:
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{key} must be a number, got {value!r}")
    return float(value)


def render(doc: DesignFile) -> str:
    out = {"mode": doc.mode, "n": doc.n}
    if doc.n_c is not None:
        out["n_c"] = doc.n_c
    for key in _PARAM_KEYS:
        value = getattr(doc.params, key)
        if value is not None:
            out[key] = _encode(value)
    out["r_n_ohm"] = _encode(doc.r_n_ohm)
    if doc.shunts_ohm is not None:
        out["shunts_ohm"] = list(doc.shunts_ohm)
    if doc.inductances_h is not None:
        out["inductances_h"] = list(doc.inductances_h)
    return json.dumps(out, indent=2) + "\n"


def parse(text: str) -> DesignFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"design file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("design file must be a JSON object")
    unknown = sorted(set(raw) - set(_TOP_KEYS) - set(_PARAM_KEYS))
    if unknown:
        raise InputError(f"unknown keys in design file: {', '.join(unknown)}")
    for key in ("mode", "n"):
        if key not in raw:
            raise InputError(f"design file is missing '{key}'")
    mode = raw["mode"]
    if mode not in {m.value for m in ModeKind}:
        raise InputError(f"unknown mode {mode!r}")
    n = raw["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    n_c = raw.get("n_c")
    if n_c is not None and (isinstance(n_c, bool) or not isinstance(n_c, int)):
        raise InputError(f"n_c must be an integer, got {n_c!r}")
    params = ParamSpec(**{
        key: _number(key, raw[key], allow_inf=key == "z_o2_ohm")
        for key in _PARAM_KEYS if key in raw
    })
    shunts = raw.get("shunts_ohm")
    if shunts is not None:
        shunts = tuple(_number("shunts_ohm", v) for v in shunts)
        if len(shunts) != n:
            raise InputError(f"design file lists {len(shunts)} shunts but n = {n}")
    inductances = raw.get("inductances_h")
    if inductances is not None:
        inductances = tuple(_number("inductances_h", v) for v in inductances)
        if len(inductances) != n:
            raise InputError(f"design file lists {len(inductances)} inductances but n = {n}")
    return DesignFile(
        mode=mode,
        n=n,
        params=params,
        r_n_ohm=_number("r_n_ohm", raw.get("r_n_ohm", "inf"), allow_inf=True),
        n_c=n_c,
        shunts_ohm=shunts,
        inductances_h=inductances,
    )
