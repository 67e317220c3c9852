import json
import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def pinned():
    """Seeds and residual bounds shared across the oracle-facing suites."""
    with open(FIXTURES / "oracle_seeds.json", "r", encoding="utf-8") as fh:
        return json.load(fh)
