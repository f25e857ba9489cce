import pytest

from freemonoid.finset import FinSetBackend
from freemonoid.fingrp import FinGrpBackend
from freemonoid.span import SpanBackend


@pytest.fixture
def finset():
    return FinSetBackend()


@pytest.fixture
def span_abc():
    return SpanBackend(["a", "b", "c"])


@pytest.fixture
def fingrp():
    return FinGrpBackend()
