"""Exit criteria, one test per criterion.

Expected values are reference design tables typed in by hand or come
from the independent oracles in ``oracles.py``.  Run with ``-s`` or
look at the "acceptance criteria" summary section for per-criterion lines.
"""

import math
import time

import pytest

from oracles import loaded, two_photon_recurrence
from shuntmux.circuit import CircuitParams
from shuntmux.classes import ApplicationMode, classify, in_scope_states
from shuntmux.designer import (
    DesignRequest,
    design,
    design_coincidence,
    design_pixel,
    design_pnr,
    feasibility_limit,
    level_sequence,
    two_photon_units,
)
from shuntmux.errors import Infeasible, NotSupported
from shuntmux.verifier import simulate, verify

DR = 2.0
Y = 1 / 50
SCENARIOS = {"A": (0.0, math.inf), "B": (Y, math.inf), "C": (Y, 1000.0)}

TABLE1 = {
    1: (2.00, 2.08, 2.09),
    2: (4.00, 4.35, 4.37),
    3: (6.00, 6.82, 6.86),
    4: (8.00, 9.52, 9.62),
    5: (10.00, 12.50, 12.66),
    6: (12.00, 15.79, 16.04),
    22: (44.00, 366.67, 578.95),
    23: (46.00, 575.00, 1352.94),
    24: (48.00, 1200.00, None),
}

# row k counts from 0 and is detector element k+1
TABLE2 = {
    0: (2.00, 2.08, 2.09),
    1: (4.00, 4.35, 4.37),
    2: (8.00, 9.10, 9.18),
    3: (14.00, 16.84, 17.13),
    4: (24.00, 30.85, 31.83),
    5: (40.00, 55.97, 59.29),
    6: (66.00, 103.64, 115.62),
    7: (108.00, 201.84, 252.89),
    8: (176.00, 446.75, 807.51),
    9: (286.00, 1533.68, None),
    10: (464.00, None, None),
}


def _check_cells(table, build):
    for k, row in table.items():
        for (name, (y, rn)), expected in zip(SCENARIOS.items(), row):
            if expected is None:
                with pytest.raises(Infeasible):
                    build(k, y, rn)
            else:
                got = build(k, y, rn)
                assert abs(got - expected) <= 0.005, f"k={k} {name}: {got} vs {expected}"


def test_ac1_table1_pixel_reproduction():
    start = time.perf_counter()
    _check_cells(TABLE1, lambda k, y, rn: design_pixel(DesignRequest(ApplicationMode.pixel(), k, DR, y, rn)).shunts[-1])
    assert time.perf_counter() - start < 1.0


def test_ac2_table2_two_photon_reproduction():
    start = time.perf_counter()
    mode = ApplicationMode.coincidence(2)

    def build(k, y, rn):
        n = k + 1
        req = DesignRequest(ApplicationMode.coincidence(min(2, n)), n, DR, y, rn)
        return design_coincidence(req).shunts[-1]

    _check_cells(TABLE2, build)
    column_a = design_coincidence(DesignRequest(mode, 11, DR)).shunts
    assert column_a == (2.0, 4.0, 8.0, 14.0, 24.0, 40.0, 66.0, 108.0, 176.0, 286.0, 464.0)
    assert time.perf_counter() - start < 1.0


def test_ac3_pnr_example():
    assert feasibility_limit(Y, DR) == 25
    r = design_pnr(DesignRequest(ApplicationMode.pnr(), 24, DR, Y, 1600.0)).shunts[0]
    assert abs(r - 51.61) <= 0.01
    # the closed form does not give a value near 60 ohm for these inputs
    assert abs(r - 60.0) > 5.0


def test_ac4_closed_form_identity():
    assert [two_photon_units(k) for k in range(1, 31)] == two_photon_recurrence(30)
    ratio = two_photon_units(31) / two_photon_units(30)
    assert abs(ratio - 1.618) <= 0.01


def test_ac5_level_sequence_exactness():
    for beta in range(1, 25):
        r = level_sequence(beta, Y, DR)
        assert loaded(r, Y) == pytest.approx(beta * DR, rel=1e-12, abs=0.0)


def _ideal_modes(n):
    yield ApplicationMode.pixel()
    yield ApplicationMode.coincidence(min(2, n))
    yield ApplicationMode.coincidence(min(3, n))
    yield ApplicationMode.full()


def test_ac6_oracle_certifies_ideal_designs():
    start = time.perf_counter()
    i_b = 10e-6
    params = CircuitParams.from_design(DR, 0.0, i_b)
    dv = params.delta_v
    for n in range(1, 13):
        for mode in _ideal_modes(n):
            res = design(DesignRequest(mode, n, DR))
            report = verify(res.to_array(), params, mode)
            assert report.passed, (n, str(mode))
            assert report.min_inter_class_gap == pytest.approx(dv, rel=1e-9, abs=0.0), (n, str(mode))
            if mode == ApplicationMode.full():
                assert len(report.bands) == 2**n
                for j, band in enumerate(report.bands):
                    assert band.v_min == band.v_max
                    assert band.v_min == pytest.approx(j * dv, rel=1e-12, abs=1e-18)
    assert time.perf_counter() - start < 10.0


def test_ac7_pnr_known_tension():
    res = design_pnr(DesignRequest(ApplicationMode.pnr(), 2, 1.0, 0.1))
    assert res.parallels[0] == pytest.approx(1.25, rel=1e-12)
    params = CircuitParams(i_b=1.0, delta_v=1.0, y_b=0.1, z_o1=0.0)
    report = verify(res.to_array(), params, ApplicationMode.pnr())
    assert abs(report.min_inter_class_gap - 0.8889) <= 1e-4
    assert report.passed is False


def _decode_designs():
    for n in range(1, 11):
        modes = [
            ApplicationMode.pnr(),
            ApplicationMode.pixel(),
            ApplicationMode.coincidence(min(2, n)),
            ApplicationMode.coincidence(min(3, n)),
            ApplicationMode.full(),
        ]
        for mode in modes:
            for y, rn in SCENARIOS.values():
                try:
                    res = design(DesignRequest(mode, n, DR, y, rn))
                except (Infeasible, NotSupported):
                    continue
                yield mode, res, CircuitParams.from_design(DR, y, 1.0)


def test_ac8_decode_round_trip():
    checked = failures = designs = 0
    for mode, res, params in _decode_designs():
        array = res.to_array()
        report = verify(array, params, mode)
        if not report.passed:
            continue
        designs += 1
        for state in in_scope_states(mode, array.n):
            expected = classify(mode, state)
            for eps in (-0.49, 0.0, 0.49):
                v = simulate(array, params, state, eps * params.delta_v)
                checked += 1
                if report.decode(v).label != expected:
                    failures += 1
    # every ideal design (10 sizes x 5 modes) verifies, loaded ones only sometimes
    assert designs >= 50
    assert failures == 0, f"{failures}/{checked} decodes wrong"


def test_ac9_limit_consistency():
    for n in range(1, 11):
        cases = [
            (ApplicationMode.pnr(), ApplicationMode.pnr()),
            (ApplicationMode.pixel(), ApplicationMode.pixel()),
            (ApplicationMode.coincidence(min(2, n)),) * 2,
            (ApplicationMode.coincidence(min(3, n)),) * 2,
            # full detection has no loaded design; its loaded counterpart is coincidence(n)
            (ApplicationMode.full(), ApplicationMode.coincidence(n)),
        ]
        for ideal_mode, near_mode in cases:
            ideal = design(DesignRequest(ideal_mode, n, DR))
            near = design(DesignRequest(near_mode, n, DR, 1e-12, 1e12))
            assert len(ideal.shunts) == len(near.shunts) == n
            for a, b in zip(ideal.shunts, near.shunts):
                assert b == pytest.approx(a, rel=1e-6, abs=0.0), (n, str(ideal_mode))
