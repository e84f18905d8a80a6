import pytest
import sympy as sp

from cubechow.fixtures import Corpus


@pytest.fixture(scope="session")
def corpus():
    return Corpus()


def to_sympy(p, symbols=None):
    """Polynomial -> sympy expression, through its printed form."""
    names = p.ring.names
    symbols = symbols or sp.symbols(names)
    local = dict(zip(names, symbols))
    return sp.sympify(str(p).replace("^", "**"), locals=local)
