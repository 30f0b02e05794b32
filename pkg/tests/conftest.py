from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from mcm.oracle import random_element

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def elements(allow_swap: bool = True, **params):
    """Elements drawn through the seeded generator so shrinking works on the seed."""
    return st.integers(0, 10**9).map(lambda s: random_element(s, allow_swap=allow_swap, **params))


def preserving(**params):
    return elements(allow_swap=False, **params)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
