from fractions import Fraction

import pytest

from sklytwist.klein import CocycleTable, GradingAssignment
from sklytwist.presentations import (
    derive_alpha,
    omega_elements,
    sklyanin_presentation,
    theta_elements,
)
from sklytwist.scalars import FieldSpec
from sklytwist.twisting import twist_presentation

BETA = Fraction(2)
GAMMA = Fraction(3)
ALPHA = derive_alpha(BETA, GAMMA)  # -5/7


@pytest.fixture(scope="session")
def gaussian_spec():
    return FieldSpec.gaussian()


@pytest.fixture(scope="session")
def radical_spec():
    return (
        FieldSpec.gaussian()
        .adjoin_sqrt(ALPHA, "sa")
        .adjoin_sqrt(BETA, "sb")
        .adjoin_sqrt(GAMMA, "sc")
    )


@pytest.fixture(scope="session")
def sklyanin(gaussian_spec):
    spec = gaussian_spec
    return sklyanin_presentation(
        spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA)
    )


@pytest.fixture(scope="session")
def twist(sklyanin, gaussian_spec):
    return twist_presentation(
        sklyanin, GradingAssignment.standard(), CocycleTable.standard(gaussian_spec)
    )


@pytest.fixture(scope="session")
def factor(sklyanin):
    return sklyanin.quotient(list(omega_elements(sklyanin)), label="factor")


@pytest.fixture(scope="session")
def twisted_factor(twist):
    return twist.quotient(list(theta_elements(twist)), label="twisted-factor")


@pytest.fixture(scope="session")
def radical_sklyanin(radical_spec):
    spec = radical_spec
    return sklyanin_presentation(
        spec.rational(ALPHA), spec.rational(BETA), spec.rational(GAMMA)
    )


@pytest.fixture(scope="session")
def radical_twist(radical_sklyanin, radical_spec):
    return twist_presentation(
        radical_sklyanin,
        GradingAssignment.standard(),
        CocycleTable.standard(radical_spec),
    )
