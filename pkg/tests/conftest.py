"""
Shared fixtures for kugacert tests.
"""

from pathlib import Path

import pytest
from click.testing import CliRunner

from kugacert.cones import Cone
from kugacert.fans import Fan

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def runner():
    """Click CliRunner with stderr kept apart from stdout."""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click >= 8.2 always separates the streams
        return CliRunner()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def staircase_path():
    return FIXTURES / "staircase_fan.json"


@pytest.fixture
def staircase_fan():
    """The lifted fan for g'' = 1, n = 1 inside window 3."""
    return Fan.from_generators(
        2,
        [[(1, -2), (1, -1)], [(1, -1), (1, 0)], [(1, 0), (1, 1)], [(1, 1), (1, 2)]],
        projection=[(1, 0)],
        layout=(1, 1),
        window=3,
    )


@pytest.fixture
def a2_cone():
    """cone((1,0), (1,3)): Gorenstein, not smooth."""
    return Cone.of((1, 0), (1, 3))


@pytest.fixture
def write_document(tmp_path):
    """Write text to a file under tmp_path and return its path."""
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write
