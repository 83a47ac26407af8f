import itertools

import pytest

from shuntmux.circuit import SwitchingState
from shuntmux.classes import (
    OUT_OF_SCOPE,
    ApplicationMode,
    ClassLabel,
    ModeKind,
    class_count,
    classify,
    in_scope_states,
)
from shuntmux.errors import EnumerationBoundError, LengthMismatch

PNR = ApplicationMode.pnr()
PIXEL = ApplicationMode.pixel()
FULL = ApplicationMode.full()


def modes_for(n):
    yield PNR
    yield PIXEL
    yield FULL
    for n_c in range(1, n + 1):
        yield ApplicationMode.coincidence(n_c)


def s(text):
    return SwitchingState.from_string(text)


def test_classify_examples():
    assert classify(PNR, s("0110")) == ClassLabel(ModeKind.PNR, 2)
    assert classify(PIXEL, s("0110")) is OUT_OF_SCOPE
    assert classify(ApplicationMode.coincidence(2), s("0110")).value == (2, 3)
    assert classify(PIXEL, s("0000")).value == 0
    assert classify(PIXEL, s("0100")).value == 3
    assert classify(FULL, s("0110")).value == (0, 1, 1, 0)


def test_classify_length_check():
    with pytest.raises(LengthMismatch):
        classify(PNR, s("01"), n=3)


def test_class_count_examples():
    assert class_count(PNR, 24) == 25
    assert class_count(ApplicationMode.coincidence(2), 6) == 22
    assert class_count(FULL, 3) == 8
    with pytest.raises(OverflowError):
        class_count(FULL, 63)


def test_in_scope_examples():
    assert [str(x) for x in in_scope_states(PIXEL, 3)] == ["000", "001", "010", "100"]
    got = [str(x) for x in in_scope_states(ApplicationMode.coincidence(2), 3)]
    assert got == [format(j, "03b") for j in range(7)]
    assert [str(x) for x in in_scope_states(FULL, 2)] == ["00", "01", "10", "11"]


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        list(in_scope_states(PIXEL, 31))


def test_sparse_enumeration_path_matches_filter():
    # n > 22 goes through combinations instead of a popcount filter
    codes = [x.index for x in in_scope_states(ApplicationMode.coincidence(2), 24)]
    assert len(codes) == 1 + 24 + 276
    assert codes == sorted(codes)
    assert all(bin(c).count("1") <= 2 for c in codes)


@pytest.mark.parametrize("n", range(1, 13))
def test_partition_and_counts(n):
    for mode in modes_for(n):
        states = list(in_scope_states(mode, n))
        indices = [x.index for x in states]
        assert indices == sorted(set(indices))
        everything = [SwitchingState.from_index(j, n) for j in range(2**n)]
        in_scope = {x.index for x in everything if classify(mode, x) is not OUT_OF_SCOPE}
        assert in_scope == set(indices)
        labels = {classify(mode, x) for x in states}
        assert len(labels) == class_count(mode, n)


def _partition(mode, n):
    groups = {}
    for x in in_scope_states(mode, n):
        groups.setdefault(classify(mode, x).value, set()).add(x.index)
    return sorted(sorted(g) for g in groups.values())


@pytest.mark.parametrize("n", range(1, 11))
def test_degenerate_coincidence_modes(n):
    assert _partition(ApplicationMode.coincidence(1), n) == _partition(PIXEL, n)
    assert _partition(ApplicationMode.coincidence(n), n) == _partition(FULL, n)


def test_mode_validation():
    with pytest.raises(ValueError):
        ApplicationMode.coincidence(0)
    with pytest.raises(ValueError):
        ApplicationMode(ModeKind.PNR, 2)
    with pytest.raises(ValueError):
        class_count(ApplicationMode.coincidence(4), 3)


def test_labels_render():
    assert str(ClassLabel(ModeKind.PIXEL, 3)) == "detector 3"
    assert str(ClassLabel(ModeKind.PIXEL, 0)) == "no detection"
    assert str(ClassLabel(ModeKind.PNR, 1)) == "1 photon"
    assert str(ClassLabel(ModeKind.COINCIDENCE, (2, 5))) == "detectors {2,5}"
    assert str(ClassLabel(ModeKind.FULL, (1, 0, 0))) == "state 001"


def test_coincidence_labels_cover_all_small_subsets():
    n = 5
    labels = {classify(ApplicationMode.coincidence(3), x).value for x in in_scope_states(ApplicationMode.coincidence(3), n)}
    expected = {c for size in range(4) for c in itertools.combinations(range(1, n + 1), size)}
    assert labels == expected
