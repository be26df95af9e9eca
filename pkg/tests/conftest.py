from pathlib import Path

import pytest

from bnskit.oracles import FreeAbelianOracle, FreeOracle, oracle_bs
from bnskit.presentation import presentation_from_texts

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def bs12():
    return presentation_from_texts(["a", "t"], ["t a t^-1 a^-2"])


@pytest.fixture
def z2():
    return presentation_from_texts(["a", "t"], ["t a t^-1 a^-1"])


@pytest.fixture
def f2():
    return presentation_from_texts(["a", "t"], [])


@pytest.fixture
def z2_oracle():
    return FreeAbelianOracle(2)


@pytest.fixture
def f2_oracle():
    return FreeOracle(2)


@pytest.fixture
def bs2_oracle():
    return oracle_bs(2)
