import math

import pytest

from constants import EXOO_D, ISBELL_D, LOWER_D, TWO_RING_D, check_all, get_constant


def test_all_quoted_values_match():
    rows = check_all()
    assert all(row.ok for row in rows), [row.name for row in rows if not row.ok]


def test_ordering_of_the_interval_ends():
    assert LOWER_D < TWO_RING_D < EXOO_D < ISBELL_D


def test_reference_constant_has_no_closed_form():
    row = next(r for r in check_all() if r.name == "annulus_reference")
    assert row.value is None and row.delta is None and row.ok


def test_lower_end_is_the_step_four_chord():
    assert get_constant("lower_end").value == pytest.approx(2 * math.sin(4 * math.pi / 18), abs=1e-15)


def test_tight_tolerance_flags_rounding():
    rows = {row.name: row for row in check_all(tolerance=1e-12)}
    assert not rows["isbell_upper"].ok


def test_unknown_constant():
    with pytest.raises(KeyError):
        get_constant("golden")
