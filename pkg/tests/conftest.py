"""Shared fixtures plus the acceptance-criteria report hook."""

from __future__ import annotations

import itertools

import pytest

from grouplang import FiniteCayley

_CRITERIA_REPORT: list[tuple[int, str]] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    _CRITERIA_REPORT.append((number, f"criterion {number}: {'PASS' if ok else 'FAIL'} — {detail}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA_REPORT:
        terminalreporter.section("acceptance criteria")
        for _num, line in sorted(_CRITERIA_REPORT):
            terminalreporter.write_line(line)


def symmetric_group_3() -> FiniteCayley:
    """Six-element permutation group built independently of the package.

    Generators: a transposition and a 3-cycle.  The table entry (i, j)
    is the composition "apply permutation j, then permutation i".
    """
    perms = sorted(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(3))

    table = tuple(
        tuple(index[compose(p, q)] for q in perms) for p in perms
    )
    return FiniteCayley(
        size=6,
        identity_index=index[(0, 1, 2)],
        table=table,
        generator_images=(index[(1, 0, 2)], index[(1, 2, 0)]),
    )


@pytest.fixture(scope="session")
def s3():
    return symmetric_group_3()
