"""Parsing of dimensioned numbers such as ``1.6k``, ``20uV`` or ``inf``."""

import math
import re

_PREFIX = {
    "": 1.0,
    "p": 1e-12,
    "n": 1e-9,
    "u": 1e-6,
    "µ": 1e-6,
    "μ": 1e-6,
    "m": 1e-3,
    "k": 1e3,
    "K": 1e3,
    "M": 1e6,
    "G": 1e9,
}

_SYMBOLS = {
    "ohm": ("Ω", "Ohm", "ohm", "ohms", "R"),
    "volt": ("V", "v"),
    "ampere": ("A", "a"),
    "siemens": ("S", "s"),
}

_NUMBER = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text, unit, allow_inf=False):
    """Parse ``text`` as a value in SI base units of ``unit``.

    ``unit`` is one of ``ohm``, ``volt``, ``ampere``, ``siemens``.  A bare
    number is taken as already being in base units.  The literal ``inf`` is
    accepted only when ``allow_inf`` is set.
    """
    if isinstance(text, (int, float)):
        value = float(text)
        if math.isinf(value) and not allow_inf:
            raise ValueError(f"infinite value not allowed here: {text!r}")
        return value
    raw = text.strip()
    if raw.lower() in ("inf", "infinity", "+inf"):
        if not allow_inf:
            raise ValueError(f"infinite value not allowed here: {text!r}")
        return math.inf
    match = _NUMBER.match(raw)
    if match is None:
        raise ValueError(f"cannot parse quantity {text!r}")
    number, suffix = float(match.group(1)), match.group(2)
    for symbol in sorted(_SYMBOLS[unit], key=len, reverse=True):
        if suffix.endswith(symbol):
            suffix = suffix[: -len(symbol)]
            break
    if suffix not in _PREFIX:
        raise ValueError(f"unknown unit suffix in {text!r} (expected {unit})")
    return number * _PREFIX[suffix]


def format_number(value):
    """Full-precision text for CSV/JSON cells; ``inf`` for infinity."""
    if math.isinf(value):
        return "inf"
    return repr(float(value))
