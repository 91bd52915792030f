import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings

from gkm.scalars import QuadraticNumber

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("pinned", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pinned")


def to_sympy(x):
    if isinstance(x, QuadraticNumber):
        return (sp.Rational(x.rational_part.numerator, x.rational_part.denominator)
                + sp.Rational(x.irrational_part.numerator, x.irrational_part.denominator)
                * sp.sqrt(x.radicand))
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def sympy_matrix(rows):
    return sp.Matrix([[to_sympy(x) for x in r] for r in rows])


@pytest.fixture
def sym():
    return sympy_matrix
