import math

import pytest

from psiapprox.modulus import PowerModulus
from psiapprox.psi_functions import ParametricPsi, exponential_psi


@pytest.fixture
def exp_psi():
    return ParametricPsi(0.0, 1.0, 1.0)


@pytest.fixture
def half_psi():
    return exponential_psi(2.0)


@pytest.fixture
def lip():
    return PowerModulus(1.0, 1.0)


LN2 = math.log(2.0)
