"""Randomized instance builders for surveys and the verification suite.

Two families matter:

  * covering masks: scaling masks guaranteed to admit a solution with
    Fourier support in B_M. The unit residues mod p^(N+M+1) are covered by
    congruence classes, each handled by one prescribed zero (a zero at
    l/p^t kills every unit u = l mod p^t in the depth product), within the
    degree budget p^(N+1)-1. Random split/place choices vary how many grid
    residues survive, so both sides of the #L <= p^N criterion occur.
  * unimodular-pattern masks: masks prescribed on the depth-(N+1) grid to
    be 0 at unit arguments and unimodular elsewhere (1 at 0). The depth
    product then has modulus one on the integer grid and vanishes on the
    first sphere, which is the classical pattern for orthonormal translate
    systems.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOL
from .masks import TrigPolynomial, mask_from_roots, support_margin
from .padic_core import PadicRational
from .test_functions import TestFunction

__all__ = [
    "random_covering_mask",
    "random_unimodular_mask",
    "random_noise_mask",
    "random_function",
]


def random_covering_mask(
    rng: np.random.Generator,
    p: int,
    scale: int,
    period_exp: int,
    split_prob: float = 0.55,
) -> TrigPolynomial:
    """A scaling mask whose refinable solution fits in D_N^M, by covering.

    Pending congruence classes start at the units mod p; each is either
    assigned a zero at its depth or split into its p refinements, subject
    to the budget (every pending class still needs at least one zero).
    """
    N, M = scale, period_exp
    max_depth = N + M + 1
    for _ in range(64):
        budget = p ** (N + 1) - 1
        pending: list[tuple[int, int]] = [(r, 1) for r in range(1, p)]
        roots: list[PadicRational] = []
        while pending:
            r, t = pending.pop()
            # Splitting turns one pending class into p; every pending class
            # still needs a zero, so the budget must cover len(pending) + p.
            can_split = t < max_depth and budget >= len(pending) + p
            if can_split and rng.random() < split_prob:
                pending.extend((r + j * p**t, t + 1) for j in range(p))
            else:
                roots.append(PadicRational(p, r, t))
                budget -= 1
        mask = mask_from_roots(p, N, roots)
        # Deep roots inflate the expanded coefficients, and the rounding
        # they carry can push the prescribed sphere zeros above the support
        # tolerance. Redraw instead of shipping a marginal instance.
        ok, _, worst = support_margin(mask, M)
        if ok and worst <= 1e-3 * DEFAULT_TOL:
            return mask
    raise RuntimeError("could not draw a numerically clean covering mask")


def random_unimodular_mask(
    rng: np.random.Generator, p: int, scale: int
) -> TrigPolynomial:
    """A mask with |m| = 1 at p-divisible depth-(N+1) grid points, 0 at units."""
    N = scale
    n = p ** (N + 1)
    values = np.zeros(n, dtype=np.complex128)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n // p)
    phases[0] = 0.0  # m(0) = 1
    values[::p] = np.exp(1j * phases)
    coeffs = np.fft.fft(values) / n
    return TrigPolynomial(p, coeffs, scale=N)


def random_noise_mask(
    rng: np.random.Generator, p: int, scale: int, terms: int | None = None
) -> TrigPolynomial:
    """A generic mask with m(0) = 1 and no support guarantee whatsoever."""
    N = scale
    n_terms = terms if terms is not None else int(rng.integers(2, p ** (N + 1) + 1))
    coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    total = coeffs.sum()
    if abs(total) < 1e-3:
        coeffs[0] += 1.0
        total = coeffs.sum()
    return TrigPolynomial(p, coeffs / total, scale=N)


def random_function(
    rng: np.random.Generator, p: int, support_exp: int, period_exp: int
) -> TestFunction:
    n = p ** (support_exp + period_exp)
    vals = rng.normal(size=n) + 1j * rng.normal(size=n)
    return TestFunction(p, support_exp, period_exp, vals)
