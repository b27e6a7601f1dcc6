from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
GOLDENS = REPO_ROOT / "goldens"


@pytest.fixture(scope="session")
def demo_script_text() -> str:
    return (GOLDENS / "scripts" / "demo_boss.talakat").read_text()


@pytest.fixture(scope="session")
def demo_script(demo_script_text):
    from talakat.lang import parse_script

    return parse_script(demo_script_text)
