import pytest

from meanlab.quadrature import QuadConfig


@pytest.fixture
def cfg():
    return QuadConfig()


@pytest.fixture
def loose_cfg():
    return QuadConfig(abs_tol=1e-7)
