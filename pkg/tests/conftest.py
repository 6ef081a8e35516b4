"""Shared suite builders and the acceptance-criterion report hook."""

from __future__ import annotations

from polytreelearn import GenConfig, normalize, random_instance

# (criterion number, passed, detail) tuples appended by tests/test_acceptance.py
CRITERION_RESULTS: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, passed, detail in sorted(CRITERION_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} - {detail}")


def small_random_suite(count: int, seed_base: int = 0):
    """Normalized random instances with n in [3, 7], <= 6 sets per node,
    parent sets of size <= 3, integer scores in [-5, 10]."""
    out = []
    for i in range(count):
        n = 3 + (seed_base + i) % 5
        mps = min(3, n - 1)
        cfg = GenConfig(
            n=n,
            max_parent_size=mps,
            sets_per_node=3 if n == 3 else 5,
            seed=seed_base + i,
        )
        out.append(normalize(random_instance(cfg)))
    return out
