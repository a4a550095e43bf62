import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bidaub import _kernels  # noqa: E402
from bidaub.masks import FAMILIES, build_mask  # noqa: E402
from published import params_for  # noqa: E402

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    monkeypatch.setenv(_kernels.JIT_ENV, "1" if request.param == "numpy" else "0")
    assert _kernels.backend() == request.param
    return request.param


@pytest.fixture(scope="session")
def golden_masks():
    return {f.value: build_mask(f, params_for(f.value)) for f in FAMILIES}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
