"""Shared fixtures and independent oracles.

The oracles recompute quantities the library produces, through routes the
library never takes: Fourier coefficients as exact-character double sums,
inner products as measure-weighted sums of point evaluations on a finer
grid, polynomial products by schoolbook convolution. Frozen expected
values in the test modules were produced by these oracles, not by the
code under test.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np
import pytest

from padic_mra import (
    TestFunction,
    evaluate,
    mask_from_roots,
    refinable_from_mask,
)
from padic_mra.padic_core import PadicRational


def oracle_fourier(f: TestFunction) -> np.ndarray:
    """Fourier grid values by exact-character double sum.

    f-hat(l/p^M) = sum_a p^(-M) chi_p(l a / p^(N+M)) f(a/p^N), with the
    character phase reduced in integer arithmetic before exponentiation.
    """
    p, N, M = f.prime, f.support_exp, f.period_exp
    n = f.n
    mod = p ** (N + M)
    out = np.zeros(n, dtype=np.complex128)
    for l in range(n):
        acc = 0j
        for a in range(n):
            phase = Fraction((l * a) % mod, mod)
            acc += cmath.exp(2j * cmath.pi * float(phase)) * f.values[a]
        out[l] = acc * p ** (-M)
    return out


def oracle_inner(f: TestFunction, g: TestFunction) -> complex:
    """<f, g> by point evaluation on a one-level-finer grid.

    The points a/p^N for a < p^(N+M+1) represent the cosets of
    p^(M+1) Z_p inside B_N, each of measure p^(-(M+1)); summing point
    values over them must reproduce the coarse integral.
    """
    assert (f.prime, f.support_exp, f.period_exp) == (
        g.prime,
        g.support_exp,
        g.period_exp,
    )
    p, N, M = f.prime, f.support_exp, f.period_exp
    fine = p ** (N + M + 1)
    acc = 0j
    for a in range(fine):
        x = PadicRational(p, a, N)
        acc += evaluate(f, x) * complex(evaluate(g, x)).conjugate()
    return acc * p ** (-(M + 1))


def oracle_poly_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Schoolbook product of two coefficient lists (ascending powers)."""
    out = np.zeros(len(a) + len(b) - 1, dtype=np.complex128)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


QUARTIC_ZEROS = [
    PadicRational(2, 1, 2),
    PadicRational(2, 3, 3),
    PadicRational(2, 7, 4),
    PadicRational(2, 15, 4),
]


@pytest.fixture(scope="session")
def quartic_mask():
    return mask_from_roots(2, 2, QUARTIC_ZEROS)


@pytest.fixture(scope="session")
def quartic_phi(quartic_mask):
    return refinable_from_mask(quartic_mask, 1)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260825)
