"""Reference design tables and growth sweeps built from the designer."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .designer import coincidence_ladder, full_ladder, pixel_ladder

REFERENCE_DELTA_R = 2.0
REFERENCE_Y = 1.0 / 50.0
REFERENCE_RN = 1000.0


@dataclass(frozen=True)
class Scenario:
    name: str
    y: float
    r_n: float


SCENARIOS = {
    "A": Scenario("A", 0.0, math.inf),
    "B": Scenario("B", REFERENCE_Y, math.inf),
    "C": Scenario("C", REFERENCE_Y, REFERENCE_RN),
}

# rows printed in the reference renderings; None marks an elided stretch
TABLE_ROWS = {
    1: [0, 1, 2, 3, 4, 5, 6, None, 22, 23, 24],
    2: list(range(11)),
}
TABLE_K_MAX = {1: 24, 2: 10}


def table_columns(which: int, scenarios=("A", "B", "C"), delta_r=REFERENCE_DELTA_R):
    """Map scenario name -> {row k: value or None} for table 1 or 2.

    Table 1 rows are detector indices with a zero row at ``k = 0``.  Table 2
    rows count from 0, so row ``k`` holds detector element ``k + 1``.
    """
    k_max = TABLE_K_MAX[which]
    columns = {}
    for name in scenarios:
        sc = SCENARIOS[name]
        if which == 1:
            shunts, _ = pixel_ladder(k_max, delta_r, sc.y, sc.r_n)
            cells = {0: 0.0}
            cells.update({k: (shunts[k - 1] if k <= len(shunts) else None) for k in range(1, k_max + 1)})
        elif which == 2:
            shunts, _ = coincidence_ladder(k_max + 1, 2, delta_r, sc.y, sc.r_n)
            cells = {k: (shunts[k] if k < len(shunts) else None) for k in range(k_max + 1)}
        else:
            raise ValueError(f"no numeric table {which}")
        columns[name] = cells
    return columns


def _cell(value):
    return "-" if value is None else f"{value:.2f}"


def render_table_text(which: int, scenarios=("A", "B", "C"), all_rows=False) -> str:
    if which == 3:
        return SUMMARY_TEXT
    columns = table_columns(which, scenarios)
    rows = list(range(TABLE_K_MAX[which] + 1)) if all_rows else TABLE_ROWS[which]
    header = ["k"] + [f"r_k^{s} (ohm)" for s in scenarios]
    lines = ["\t".join(header)]
    for k in rows:
        if k is None:
            lines.append("...")
            continue
        lines.append("\t".join([str(k)] + [_cell(columns[s][k]) for s in scenarios]))
    if which == 2:
        lines.append("# rows count from 0: row k is detector element k+1")
    return "\n".join(lines) + "\n"


def render_table_csv(which: int, scenarios=("A", "B", "C")) -> str:
    if which == 3:
        return SUMMARY_CSV
    columns = table_columns(which, scenarios)
    lines = [",".join(["k"] + list(scenarios))]
    for k in range(TABLE_K_MAX[which] + 1):
        cells = [columns[s][k] for s in scenarios]
        lines.append(",".join([str(k)] + ["" if c is None else repr(c) for c in cells]))
    return "\n".join(lines) + "\n"


def table_json(which: int, scenarios=("A", "B", "C")) -> dict:
    if which == 3:
        return {"table": 3, "rows": [dict(zip(_SUMMARY_HEADER, row)) for row in _SUMMARY_ROWS]}
    columns = table_columns(which, scenarios)
    return {
        "table": which,
        "delta_r_ohm": REFERENCE_DELTA_R,
        "scenarios": {
            s: {"y_siemens": SCENARIOS[s].y, "r_n_ohm": "inf" if math.isinf(SCENARIOS[s].r_n) else SCENARIOS[s].r_n}
            for s in scenarios
        },
        "row_offset": 0 if which == 1 else 1,
        "rows": [
            {"k": k, **{s: columns[s][k] for s in scenarios}}
            for k in range(TABLE_K_MAX[which] + 1)
        ],
    }


_SUMMARY_HEADER = ("application", "ideal", "non_ideal")
_SUMMARY_ROWS = [
    ("photon number resolving", "r_k = dR", "r_k = dR / (1 - n/m_L - dR/R_N)"),
    ("single photon pixel array", "r_k = k dR", "r_k = k dR / (1 - k/m_L - k dR/R_N)"),
    (
        "coincidences up to n_c",
        "r_(k+1) = sum_(l<n_c) r_(k-l) + dR",
        "r_p,(k+1) = S + dR (1 + Y S)^2 / (1 - Y dR - Y^2 dR S), S = sum_(l<n_c) r_p,(k-l)",
    ),
    ("full detection", "r_k = 2^(k-1) dR", "-"),
]
SUMMARY_TEXT = "\n".join("\t".join(r) for r in [_SUMMARY_HEADER] + _SUMMARY_ROWS) + "\n"
SUMMARY_CSV = "\n".join(",".join(f'"{c}"' if "," in c else c for c in r) for r in [_SUMMARY_HEADER] + _SUMMARY_ROWS) + "\n"


SWEEP_FAMILIES = ("pixel", "coincidence", "full")


def sweep_columns(k_min, k_max, delta_r=REFERENCE_DELTA_R, y=REFERENCE_Y, r_n=REFERENCE_RN,
                  n_c=2, families=SWEEP_FAMILIES, scenarios=("ideal", "nonideal")):
    """Ordered ``{column name: [value or None for k in k_min..k_max]}``."""
    columns = {}
    for family in families:
        for scenario in scenarios:
            ideal = scenario == "ideal"
            yy, rn = (0.0, math.inf) if ideal else (y, r_n)
            if family == "pixel":
                shunts, _ = pixel_ladder(k_max, delta_r, yy, rn)
                name = f"pixel_{scenario}"
            elif family == "coincidence":
                shunts, _ = coincidence_ladder(k_max, n_c, delta_r, yy, rn)
                name = f"coincidence{n_c}_{scenario}"
            else:
                if not ideal:
                    continue
                shunts, _ = full_ladder(k_max, delta_r)
                name = "full_ideal"
            columns[name] = [shunts[k - 1] if k <= len(shunts) else None for k in range(k_min, k_max + 1)]
    return columns


def render_sweep_csv(k_min, k_max, **kwargs) -> str:
    columns = sweep_columns(k_min, k_max, **kwargs)
    lines = [",".join(["k"] + list(columns))]
    for i, k in enumerate(range(k_min, k_max + 1)):
        cells = [columns[c][i] for c in columns]
        lines.append(",".join([str(k)] + ["" if v is None else repr(v) for v in cells]))
    return "\n".join(lines) + "\n"
