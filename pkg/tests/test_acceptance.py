"""The acceptance gate: every criterion at its stated (exact) tolerance.

Each test prints one pass/fail line per criterion; run with -s to see
them.  The same functions back the `dicube verify` subcommand.
"""

import pytest

from dicube import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    title, fn = acceptance.CRITERIA[number]
    results = fn()
    failures = [
        f"{label}: {detail}" for label, passed, detail in results if not passed
    ]
    status = "FAIL" if failures else "PASS"
    print(f"criterion {number:2d} [{status}] {title} ({len(results)} checks)")
    assert not failures, f"criterion {number} ({title}): " + "; ".join(failures)
