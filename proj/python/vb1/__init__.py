"""First Betti numbers of finite covers of punctured-torus mapping tori.

Thin wrappers over the compiled ``_vb1`` module.  Reports and covers are
returned as dictionaries decoded from the library's JSON.
"""

import json

from . import _vb1
from ._vb1 import (
    CertificateError,
    ComputationError,
    InvalidArgument,
    ParseError,
    Perm,
    abelianization,
    abelianized,
    smith_normal_form,
)

__all__ = [
    "CertificateError",
    "ComputationError",
    "InvalidArgument",
    "ParseError",
    "Perm",
    "abelianization",
    "abelianized",
    "case1",
    "case2",
    "figure_two_cover",
    "grid_cover",
    "multik",
    "quotient",
    "reduce",
    "selftest",
    "smith_normal_form",
]


def grid_cover(r, sigma):
    """Descriptor of the grid cover with row permutations sigma_1..sigma_4."""
    return json.loads(_vb1.grid_cover(r, list(sigma)))


def figure_two_cover():
    return json.loads(_vb1.figure_two_cover())


def quotient(n, seed=7, cap=2000, min_order=1):
    """Certified finite quotient of the (2n, 2n, n) triangle group."""
    return json.loads(_vb1.quotient(n, seed, cap, min_order))


def case1(f, threads=1, power_bound=64):
    return json.loads(_vb1.case1(f, threads, power_bound))


def case2(n, f, seed=7, cap=2000, min_order=13, threads=1):
    return json.loads(_vb1.case2(n, f, seed, cap, min_order, threads))


def multik(k, f, threads=1):
    return json.loads(_vb1.multik(k, f, threads))


def reduce(f, cones, keep=1, feed=False):
    """Fill every puncture but ``keep`` (1-based) and compare b1."""
    return json.loads(_vb1.reduce(f, list(cones), keep, feed))


def selftest(seed=7, min_order=50, threads=1):
    return json.loads(_vb1.selftest(seed, min_order, threads))
