"""Scaling masks and the refinement equation.

A mask is a trigonometric polynomial m(xi) = sum_k c_k chi_p(k xi) in the
additive character chi_p. Because chi_p(k xi) = chi_p(xi)^k, the mask is an
ordinary polynomial P(z) evaluated at z = chi_p(xi), which is what makes
root placement, normalization and grid evaluation exact.

A scaling mask at scale N has fewer than p^(N+1) taps and m(0) = 1. The
refinable function it determines has transform

    phat(xi) = prod_{t >= 1} m(xi / p^t sub-depth ...)

realized here as the finite product over depths t = 1 .. s+N at a point of
norm p^s; factors beyond that depth equal m on Z_p-integers, which is 1.
On the uniform grid the product telescopes exactly, so the refinement
identity holds on the grid by construction and every support decision
reduces to one sphere of unit residues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOL, grid_cap
from .errors import PreconditionError, SupportViolationError
from .padic_core import PadicRational, character, character_phase
from .test_functions import TestFunction, dilate, fourier, inv_fourier, reframe

__all__ = [
    "TrigPolynomial",
    "haar_mask",
    "mask_from_roots",
    "hat_from_mask",
    "refinable_from_mask",
    "support_margin",
    "sphere_values",
    "hat_value_at",
    "apply_refinement",
    "apply_refinement_fourier",
]


@dataclass(eq=False)
class TrigPolynomial:
    """m(xi) = sum_k coeffs[k] chi_p(k xi), with an optional scale N.

    taps are the refinement coefficients h_k = p * c_k of the equation
    phi(x) = sum_k h_k phi(x/p - k/p^(N+1)).
    """

    prime: int
    coeffs: np.ndarray
    scale: int | None = None
    _grid_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.shape[0] == 0:
            raise ValueError("a trigonometric polynomial needs at least one term")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def from_taps(
        cls, p: int, taps: Sequence[complex] | np.ndarray, scale: int | None = None
    ) -> "TrigPolynomial":
        return cls(p, np.asarray(taps, dtype=np.complex128) / p, scale)

    @property
    def taps(self) -> np.ndarray:
        return self.prime * self.coeffs

    @property
    def degree(self) -> int:
        """Highest index with a nonzero coefficient; -1 for the zero mask."""
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else -1

    def value(self, xi: PadicRational) -> complex:
        if xi.prime != self.prime:
            raise PreconditionError(f"mixed primes {self.prime} and {xi.prime}")
        z = character(xi)
        return complex(np.polynomial.polynomial.polyval(z, self.coeffs))

    def values_on_depth_grid(self, t: int) -> np.ndarray:
        """m(j / p^t) for j = 0 .. p^t - 1 (cached per depth)."""
        if t not in self._grid_cache:
            n = self.prime**t
            z = np.exp(2j * np.pi * np.arange(n) / n)
            vals = np.polynomial.polynomial.polyval(z, self.coeffs)
            vals = np.asarray(vals, dtype=np.complex128)
            vals.setflags(write=False)
            self._grid_cache[t] = vals
        return self._grid_cache[t]

    def at_one(self) -> complex:
        """m(0) = P(1) = sum of coefficients."""
        return complex(np.sum(self.coeffs))

    def __repr__(self) -> str:
        return (
            f"TrigPolynomial(p={self.prime}, degree={self.degree}, "
            f"scale={self.scale})"
        )


def _require_scaling_mask(m: TrigPolynomial, tol: float) -> int:
    if m.scale is None:
        raise PreconditionError("mask has no scale N attached")
    N = m.scale
    if len(m.coeffs) > m.prime ** (N + 1):
        raise PreconditionError(
            f"mask has {len(m.coeffs)} taps, more than p^(N+1) = "
            f"{m.prime ** (N + 1)} at scale N = {N}"
        )
    if abs(m.at_one() - 1.0) > tol:
        raise PreconditionError(
            f"not a scaling mask: m(0) = {m.at_one():.6g}, expected 1"
        )
    return N


def haar_mask(p: int) -> TrigPolynomial:
    """The mask of the unit-ball indicator: p taps equal to 1 at scale 0."""
    return TrigPolynomial.from_taps(p, np.ones(p), scale=0)


def mask_from_roots(
    p: int, scale: int, zeros: Sequence[PadicRational]
) -> TrigPolynomial:
    """Minimal-degree scaling mask vanishing exactly at the given points.

    Zeros are prescribed through their characters, so two points with the
    same fractional part are the same zero; that and a zero at a p-adic
    integer (character 1, which would contradict m(0) = 1) are rejected.
    """
    if len(zeros) > p ** (scale + 1) - 1:
        raise PreconditionError(
            f"{len(zeros)} zeros exceed the degree budget p^(N+1)-1 = "
            f"{p ** (scale + 1) - 1}"
        )
    phases = []
    for z in zeros:
        if z.prime != p:
            raise PreconditionError(f"zero {z} has prime {z.prime}, expected {p}")
        ph = character_phase(z)
        if ph == 0:
            raise PreconditionError(
                f"zero at {z} is a p-adic integer; m(0) = 1 forbids it"
            )
        if ph in phases:
            raise PreconditionError(f"duplicate zero character at {z}")
        phases.append(ph)
    poly = np.array([1.0 + 0j])
    for z in zeros:
        root = character(z)
        poly = np.convolve(poly, np.array([-root, 1.0 + 0j]))
    poly = poly / np.sum(poly)  # P(1) != 0 exactly, since no zero has character 1
    return TrigPolynomial(p, poly, scale)


def hat_from_mask(m: TrigPolynomial, period_exp: int, tol: float = DEFAULT_TOL) -> TestFunction:
    """Transform of the refinable function, as an element of D_M^N.

    The value at l/p^M is the depth product prod_{t=1..M+N} m(l / p^t); the
    factors a deeper point would add are m at integers, i.e. exactly 1.
    """
    N = _require_scaling_mask(m, tol)
    M = period_exp
    if M + N < 0:
        raise PreconditionError(f"frame ({N}, {M}) has N + M < 0")
    p = m.prime
    n = p ** (M + N)
    idx = np.arange(n)
    vals = np.ones(n, dtype=np.complex128)
    for t in range(1, M + N + 1):
        vals = vals * m.values_on_depth_grid(t)[idx % p**t]
    return TestFunction(p, M, N, vals)


def sphere_values(
    m: TrigPolynomial, sphere_exp: int, tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Candidate transform on the sphere |xi| = p^s: units u, values at u/p^s.

    Returns (units, values) with u running over the residues prime to p
    modulo p^(s+N). Independent of any declared Fourier support; used to
    decide and to audit support claims.
    """
    N = _require_scaling_mask(m, tol)
    s = sphere_exp
    if s + N < 1:
        raise PreconditionError(
            f"sphere exponent {s} lies inside B_{-N}, where the product is 1"
        )
    p = m.prime
    n = p ** (s + N)
    idx = np.arange(n)
    vals = np.ones(n, dtype=np.complex128)
    for t in range(1, s + N + 1):
        vals = vals * m.values_on_depth_grid(t)[idx % p**t]
    units = idx[idx % p != 0]
    return units, vals[units]


def support_margin(
    m: TrigPolynomial, period_exp: int, tol: float = DEFAULT_TOL
) -> tuple[bool, PadicRational, float]:
    """Decide supp phat within B_M by one sphere of unit residues.

    The product over depths t <= s+N at u/p^s only sees u modulo p^t, so a
    vanishing sphere M+1 forces vanishing on every deeper sphere: deeper
    units reduce to sphere-(M+1) units with the same leading factors.
    Returns (ok, extremal point, max |value| on the sphere).
    """
    units, vals = sphere_values(m, period_exp + 1, tol)
    mags = np.abs(vals)
    worst = int(np.argmax(mags))
    witness = PadicRational(m.prime, int(units[worst]), period_exp + 1)
    return bool(mags[worst] <= tol), witness, float(mags[worst])


def hat_value_at(m: TrigPolynomial, xi: PadicRational, tol: float = DEFAULT_TOL) -> complex:
    """Single-point product formula: prod_{t=1..s+N} m(u/p^t) at xi = u/p^s."""
    N = _require_scaling_mask(m, tol)
    if xi.prime != m.prime:
        raise PreconditionError(f"mixed primes {m.prime} and {xi.prime}")
    out = 1.0 + 0j
    for t in range(1, xi.exp + N + 1):
        out *= m.value(PadicRational(m.prime, xi.num, t))
    return out


def refinable_from_mask(
    m: TrigPolynomial,
    period_exp: int,
    tol: float = DEFAULT_TOL,
    max_grid: int | None = None,
) -> TestFunction:
    """Solve the refinement equation for phi in D_N^M, or refuse.

    Raises SupportViolationError (with the extremal sphere point) when the
    product formula does not vanish on the sphere p^(M+1), i.e. when no
    solution with the requested Fourier support exists.
    """
    N = _require_scaling_mask(m, tol)
    M = period_exp
    if M + N < 0:
        raise PreconditionError(f"frame ({N}, {M}) has N + M < 0")
    cap = grid_cap() if max_grid is None else max_grid
    if m.prime ** (M + N + 1) > cap:
        raise PreconditionError(
            f"grid p^(M+1+N) = {m.prime ** (M + 1 + N)} exceeds cap {cap}"
        )
    ok, witness, worst = support_margin(m, M, tol)
    if not ok:
        raise SupportViolationError(witness, worst)
    hat = hat_from_mask(m, M, tol)
    return inv_fourier(hat)


def apply_refinement(m: TrigPolynomial, f: TestFunction, tol: float = DEFAULT_TOL) -> TestFunction:
    """One refinement step sum_k h_k f(x/p - k/p^(N+1)) on the refined frame.

    f(x/p - k/p^(N+1)) = g(x - k/p^N) with g the dilate f(x/p), so the sum
    is a tap-weighted combination of grid translates of g; the result lands
    in D_N^(M+1) and is re-framed to the refined frame (N+1, M+1).
    """
    N = _require_scaling_mask(m, tol)
    if f.prime != m.prime:
        raise PreconditionError(f"mixed primes {m.prime} and {f.prime}")
    g = reframe(dilate(f, -1), N, f.period_exp + 1)
    taps = m.taps
    acc = np.zeros(g.n, dtype=np.complex128)
    for k in range(len(taps)):
        if taps[k] != 0:
            acc += taps[k] * np.roll(g.values, k)
    out = TestFunction(f.prime, N, f.period_exp + 1, acc)
    return reframe(out, N + 1, f.period_exp + 1)


def apply_refinement_fourier(
    m: TrigPolynomial, f: TestFunction, tol: float = DEFAULT_TOL
) -> TestFunction:
    """Same step computed on the transform side: ghat(xi) = m(xi/p^N) fhat(p xi)."""
    N = _require_scaling_mask(m, tol)
    if f.prime != m.prime:
        raise PreconditionError(f"mixed primes {m.prime} and {f.prime}")
    p = f.prime
    M = f.period_exp
    fhat = fourier(f)
    n2 = p ** (N + M + 2)
    idx = np.arange(n2)
    # Point l/p^(M+1): mask argument has depth M+1+N, fhat argument l/p^M.
    mask_vals = m.values_on_depth_grid(M + 1 + N)[idx % p ** (M + 1 + N)]
    fhat_vals = fhat.values[idx % fhat.n]
    ghat = TestFunction(p, M + 1, N + 1, mask_vals * fhat_vals)
    return inv_fourier(ghat)
