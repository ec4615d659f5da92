from __future__ import annotations

import pytest

from heispoly import verify


@pytest.mark.parametrize("suite", verify.SUITES)
def test_suites_pass(suite):
    report = verify.run_suite(suite, seed=3, cases=8 if suite == "oracle" else 40)
    assert report.passed, report.to_json()["failures"][:3]
    assert sum(report.checked.values()) > 0


def test_reports_are_reproducible():
    a = verify.run_suite("matrices", seed=9, cases=12).to_json()
    b = verify.run_suite("matrices", seed=9, cases=12).to_json()
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_suite("nope")
