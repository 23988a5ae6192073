"""Exact p-adic group laws, Mahler expansions and distribution norms.

Rationals are returned as fractions.Fraction; polynomials and coefficient
families are dicts mapping exponent tuples to rationals. Norms come back as
(exponent, exact) with the magnitude p**exponent, exponent None for zero.
"""

import json

from ._pydagger import *  # noqa: F401,F403
from ._pydagger import verify_json

__all__ = [name for name in dir() if not name.startswith("_")]


def verify(group, suites, n_range=(1, 8), sigmas=("1/4", "1/2", "3/4", "1"), cap=8, trials=100, seed=None):
    """Run verification suites and return the report as a dict."""
    if isinstance(suites, str):
        suites = [s.strip() for s in suites.split(",") if s.strip()]
    n_min, n_max = n_range
    return json.loads(verify_json(group, list(suites), n_min, n_max, list(sigmas), cap, trials, seed))
