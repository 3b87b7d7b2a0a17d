from __future__ import annotations

import pytest

from ravensim import goldens


@pytest.fixture(scope="session")
def golden_cases() -> list[goldens.GoldenCase]:
    return goldens.discover_cases()


@pytest.fixture(scope="session")
def cases_by_name(golden_cases) -> dict[str, goldens.GoldenCase]:
    return {case.name: case for case in golden_cases}
