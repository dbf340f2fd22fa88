from pathlib import Path

import pytest

from src.finset import FinSetCoproduct, FinSetProduct
from src.linvec import VecDirectSum, VecTensor

TESTS_DIR = Path(__file__).parent
GOLDEN_DIR = TESTS_DIR / "golden"
INVALID_DIR = TESTS_DIR / "invalid"
SCHEMA_DIR = TESTS_DIR.parent / "schemas"


@pytest.fixture
def coproduct():
    return FinSetCoproduct()


@pytest.fixture
def product():
    return FinSetProduct()


@pytest.fixture
def directsum():
    return VecDirectSum()


@pytest.fixture
def tensor():
    return VecTensor()


@pytest.fixture(params=["coproduct", "product", "directsum", "tensor"])
def any_instance(request):
    return {
        "coproduct": FinSetCoproduct,
        "product": FinSetProduct,
        "directsum": VecDirectSum,
        "tensor": VecTensor,
    }[request.param]()


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def invalid_dir():
    return INVALID_DIR


@pytest.fixture
def schema_dir():
    return SCHEMA_DIR
