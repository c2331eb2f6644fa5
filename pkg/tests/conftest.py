import pytest

from src.eqmodel import EquationSpec
from src.gf import cached_field


@pytest.fixture
def f7():
    return cached_field(7)


@pytest.fixture
def f9():
    return cached_field(3, 2)


@pytest.fixture
def f16():
    return cached_field(2, 4)


@pytest.fixture
def make_spec():
    """Builds an EquationSpec over the canonical field of order p^s."""
    def _make(p, a, b, m, kj, k, s=1):
        return EquationSpec(field=cached_field(p, s), a=a, b=b, m=m, kj=kj, k=k)
    return _make
