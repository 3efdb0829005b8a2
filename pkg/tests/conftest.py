import os

import numpy as np
import pytest


@pytest.fixture(autouse=True, scope="session")
def _private_cache(tmp_path_factory):
    # keep catalog expansions out of the user's cache directory
    old = os.environ.get("DECIMIC_CACHE")
    os.environ["DECIMIC_CACHE"] = str(tmp_path_factory.mktemp("decimic-cache"))
    yield
    if old is None:
        os.environ.pop("DECIMIC_CACHE", None)
    else:
        os.environ["DECIMIC_CACHE"] = old


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
