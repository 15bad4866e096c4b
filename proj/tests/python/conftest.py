import os
import pathlib

import pytest


@pytest.fixture
def fixture_text():
    root = pathlib.Path(os.environ.get("CGTK_FIXTURES", pathlib.Path(__file__).parents[2] / "fixtures"))

    def read(name):
        return (root / name).read_text()

    return read
