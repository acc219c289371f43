"""The acceptance gate: one test per advertised criterion.

Each criterion recomputes its claim from scratch (see
fatflats.verification).  Criterion 1's stated alpha table is
mathematically unattainable — the initial degree of the six-line star in
P^3 is 3, not 2, as its own failure detail proves with an independent
oracle — so that test is expected to fail and is reported honestly
rather than weakened.
"""

import pytest

from fatflats.verification import CHECKS, run_checks


@pytest.mark.parametrize("name", [name for name, _, _ in CHECKS])
def test_criterion(name):
    ((found, ok, detail),) = run_checks(only=name)
    assert found == name
    assert ok, detail
