"""Python front end for the tensor-model toolkit.

The heavy lifting lives in the compiled ``_core`` extension. Potentials are
plain dicts in the same shape as the JSON files read by the command line tool,
``{"monomials": [{"coeff": -1, "powers": {"2": 1}}]}``.
"""

from ._core import *  # noqa: F401,F403
from ._core import Bubble, FeynmanGraph, Model, StrandedMap  # noqa: F401

__version__ = "0.1.0"

from fractions import Fraction as _Fraction


def potential(*monomials, coupling="g"):
    """Build a potential from (coeff, {variable: power}) pairs."""
    terms = []
    for coeff, powers in monomials:
        terms.append({"coeff": str(_Fraction(coeff)), "coupling": coupling,
                      "powers": {str(k): v for k, v in powers.items()}})
    return {"monomials": terms}
