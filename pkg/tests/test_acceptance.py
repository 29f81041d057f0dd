"""One printed pass/fail line per acceptance criterion (run with ``-s`` or see the summary)."""
import pytest

from wallqueens import acceptance

CHECKS = {
    1: acceptance.check_tariff_arithmetic,
    2: acceptance.check_classical_maxima,
    3: acceptance.check_oracle_agreement,
    4: acceptance.check_gadget_suite,
    5: acceptance.check_marriages,
    6: acceptance.check_end_to_end,
    7: acceptance.check_kings,
    8: acceptance.check_desk_scale,
}

# wall-clock limits stated for each criterion, in seconds
LIMITS = {1: None, 2: 5, 3: 60, 4: 600 * 13, 5: 600, 6: 1800, 7: None, 8: None}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    c = CHECKS[number]()
    with capsys.disabled():
        print("\n" + c.line())
    assert c.ok, c.summary
    if LIMITS[number] is not None:
        assert c.seconds < LIMITS[number]
