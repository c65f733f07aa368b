"""
Shared fixtures and hypothesis profiles.

Select a profile with HYPOTHESIS_PROFILE=fast|ci|debugger (default: fast).
"""
import os

import hypothesis
import numpy as np
import pytest

from src.config import reset_config

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=15, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("debugger", max_examples=5, report_multiple_bugs=False,
                                     deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test sees defaults unless it sets QMF_* itself."""
    for key in list(os.environ):
        if key.startswith("QMF_"):
            monkeypatch.delenv(key, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
