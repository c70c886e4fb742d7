import os
import subprocess
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent


@pytest.fixture(scope="session")
def argconc_bin():
    path = os.environ.get("ARGCONC_BIN")
    if not path or not Path(path).exists():
        pytest.skip("ARGCONC_BIN not set")
    return path


@pytest.fixture(scope="session")
def test_data():
    return Path(os.environ.get("ARGCONC_TEST_DATA_DIR", HERE.parent / "data"))


@pytest.fixture(scope="session")
def mini():
    return HERE / "data" / "mini_debates.jsonl"


@pytest.fixture
def run(argconc_bin):
    def _run(*args, env=None):
        full_env = {k: v for k, v in os.environ.items() if not k.startswith("ARGCONC_")}
        full_env.update(env or {})
        return subprocess.run([argconc_bin, *map(str, args)], capture_output=True, text=True,
                              env=full_env, timeout=120)

    return _run
