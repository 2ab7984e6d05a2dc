from __future__ import annotations

import numpy as np
import pytest

from gbent import DomainSpec, GFunction

# (p, k, domain) triples small enough for naive oracles
SMALL_CASES = [
    (3, 1, "dot:2"),
    (3, 2, "dot:1,dot:1"),
    (3, 2, "field:2:poly=2,2,1"),
    (3, 1, "field:3:poly=1,2,0,1"),
    (3, 2, "field:2:poly=2,2,1,dot:1"),
    (5, 1, "dot:2"),
    (5, 2, "field:2:poly=2,4,1"),
    (5, 2, "dot:1,field:1:poly=3,1"),
    (7, 1, "dot:2"),
]

_ACCEPTANCE: list[str] = []


def random_function(p: int, k: int, domain: str, rng: np.random.Generator) -> GFunction:
    spec = DomainSpec.parse(p, domain)
    return GFunction(p, k, spec, rng.integers(0, p**k, spec.size))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, text: str, seconds: float) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {text}"
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
