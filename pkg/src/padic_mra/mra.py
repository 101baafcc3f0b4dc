"""Deciding multiresolution properties of a candidate scaling function.

Everything here consumes a concrete element phi of D_N^M and produces
verdicts backed by residuals:

  * l_set: the indices l where the transform is nonzero on its grid. The
    cardinality bound #L <= p^N against p^N is the whole MRA criterion for
    refinable phi, so the set and its margins are first-class data.
  * recover_mask: fit the refinement equation phi(x) = sum_k h_k
    phi(x/p - k/p^(N+1)) by least squares over the full refined grid.
    The sup-norm residual of that identity is the refinability authority.
  * shift_mask: express a translate phi(. - b) through phi, either at the
    same scale (coefficients on the translates phi(. - k/p^N), solved on
    the L-set character system and then verified pointwise) or through the
    refined-scale window phi(x/p - k/p^(N+1)), 0 <= k < p^(N+1). The window
    suffices whenever any refined expansion exists: translates with
    |a|_p > p^(N+1) vanish on B_N, so a minimal expansion never needs them.
  * check_orthonormal_shifts / check_haar_equivalence / check_mra: stacked
    evidence reports; every verdict is a residual comparison, never a
    symbolic shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_SPHERE_RANGE, DEFAULT_TOL, JobConfig
from .errors import NotRefinableError, PreconditionError
from .masks import TrigPolynomial
from .padic_core import PadicRational, character
from .test_functions import (
    TestFunction,
    common_frame,
    dilate,
    fourier,
    norm_l2,
    omega,
    reframe,
    shift,
)

__all__ = [
    "LSet",
    "l_set",
    "MaskRecovery",
    "recover_mask",
    "ShiftMaskSolution",
    "shift_mask",
    "OrthonormalityReport",
    "check_orthonormal_shifts",
    "check_haar_equivalence",
    "MraReport",
    "check_mra",
]


def _require_frame(f: TestFunction) -> tuple[int, int]:
    N, M = f.frame
    if N < 0 or M < 0:
        raise PreconditionError(
            f"frame ({N}, {M}) must have N, M >= 0; re-frame first"
        )
    return N, M


def _normalize_frame(f: TestFunction) -> TestFunction:
    """Lift negative frame components to zero (pointwise-neutral)."""
    N, M = f.frame
    if N < 0 or M < 0:
        return reframe(f, max(N, 0), max(M, 0))
    return f


# --------------------------------------------------------------------------
# The L set


@dataclass
class LSet:
    """Indices l in [0, p^(M+N)) with |phat(l/p^M)| above tolerance.

    min_member_abs / max_excluded_abs expose how close the decision came to
    the threshold from either side.
    """

    prime: int
    support_exp: int
    period_exp: int
    tol: float
    members: tuple[int, ...]
    min_member_abs: float
    max_excluded_abs: float

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def bound(self) -> int:
        """The criterion bound p^N."""
        return self.prime**self.support_exp

    @property
    def within_bound(self) -> bool:
        return self.size <= self.bound


def l_set(phi: TestFunction, tol: float = DEFAULT_TOL) -> LSet:
    N, M = _require_frame(phi)
    hat = fourier(phi)
    mags = np.abs(hat.values)
    member_mask = mags > tol
    members = tuple(int(i) for i in np.nonzero(member_mask)[0])
    min_in = float(mags[member_mask].min()) if members else 0.0
    excluded = mags[~member_mask]
    max_out = float(excluded.max()) if excluded.size else 0.0
    return LSet(phi.prime, N, M, tol, members, min_in, max_out)


# --------------------------------------------------------------------------
# Refinement-equation fitting


def _refinement_columns(phi: TestFunction) -> tuple[np.ndarray, TestFunction]:
    """Matrix of the window generators phi(x/p - k/p^(N+1)) on (N, M+1).

    Column k is the grid translate by k/p^N of the dilate phi(x/p), which
    on the common frame is a cyclic roll; the frame (N, M+1) carries every
    value of the refined grid, so residuals there are the full story.
    """
    N, M = phi.frame
    g = reframe(dilate(phi, -1), N, M + 1)
    cols = np.empty((g.n, phi.prime ** (N + 1)), dtype=np.complex128)
    for k in range(cols.shape[1]):
        cols[:, k] = np.roll(g.values, k)
    target = reframe(phi, N, M + 1)
    return cols, target


@dataclass
class MaskRecovery:
    """A fitted mask and the sup-norm residual of the refinement identity."""

    mask: TrigPolynomial
    residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol


def _fit_mask(phi: TestFunction, tol: float) -> MaskRecovery:
    N, _ = phi.frame
    cols, target = _refinement_columns(phi)
    taps, _, _, _ = np.linalg.lstsq(cols, target.values, rcond=None)
    residual = float(np.max(np.abs(cols @ taps - target.values), initial=0.0))
    mask = TrigPolynomial.from_taps(phi.prime, taps, scale=N)
    return MaskRecovery(mask, residual, tol)


def recover_mask(phi: TestFunction, tol: float = DEFAULT_TOL) -> MaskRecovery:
    """Fit the refinement equation; raise NotRefinableError when it fails.

    The minimum-norm least-squares solution over the full refined grid is
    used directly: if any tap vector satisfies the identity to tolerance,
    the minimizer does too, so success is equivalent to solvability.
    """
    N, M = _require_frame(phi)
    hat0 = fourier(phi).values[0]
    if abs(hat0) <= tol:
        raise PreconditionError(
            f"phi integrates to {hat0:.3e}; a scaling candidate needs "
            "a nonzero mean"
        )
    fit = _fit_mask(phi, tol)
    if not fit.ok:
        raise NotRefinableError(fit.residual, tol)
    return fit


# --------------------------------------------------------------------------
# Shift expansions


@dataclass
class ShiftMaskSolution:
    """Best expansion of phi(. - b), with system and pointwise residuals.

    mode 'same_scale': phi(. - b) ~ sum_{k < p^N} alpha_k phi(. - k/p^N),
    with alpha fitted on the character system over the L set and the
    verdict taken from the pointwise identity.
    mode 'refined': phi(. - b) ~ sum_{k < p^(N+1)} h_k phi(x/p - k/p^(N+1));
    here the system is the pointwise identity itself.
    """

    b: PadicRational
    mode: str
    coefficients: np.ndarray
    mask: TrigPolynomial
    system_residual: float
    pointwise_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.pointwise_residual <= self.tol


def shift_mask(
    phi: TestFunction,
    b: PadicRational,
    same_scale: bool = True,
    tol: float = DEFAULT_TOL,
    lset: LSet | None = None,
) -> ShiftMaskSolution:
    N, M = _require_frame(phi)
    p = phi.prime
    if b.prime != p:
        raise PreconditionError(f"mixed primes {p} and {b.prime}")
    if b.norm() > p**N:
        raise PreconditionError(f"|b|_p = {b.norm():g} exceeds p^N = {p**N}")

    if same_scale:
        ls = lset if lset is not None else l_set(phi, tol)
        members = np.array(ls.members, dtype=np.int64)
        n = p ** (N + M)
        k = np.arange(p**N)
        # System: m_b(l / p^(M+N)) = chi_p(b l / p^M) for l in L.
        system = np.exp(2j * np.pi * np.outer(members, k) / n)
        rhs = np.array(
            [character(b * PadicRational(p, int(l), M)) for l in members],
            dtype=np.complex128,
        )
        if members.size:
            alpha, _, _, _ = np.linalg.lstsq(system, rhs, rcond=None)
            sys_res = float(np.max(np.abs(system @ alpha - rhs), initial=0.0))
        else:
            alpha = np.zeros(p**N, dtype=np.complex128)
            sys_res = 0.0
        candidate_vals = np.zeros(n, dtype=np.complex128)
        for kk in range(p**N):
            candidate_vals += alpha[kk] * np.roll(phi.values, kk)
        candidate = TestFunction(p, N, M, candidate_vals)
        target = shift(phi, b)
        c2, t2 = common_frame(candidate, target)
        pw_res = float(np.max(np.abs(c2.values - t2.values), initial=0.0))
        mask = TrigPolynomial(p, alpha, scale=None)
        return ShiftMaskSolution(b, "same_scale", alpha, mask, sys_res, pw_res, tol)

    cols, _ = _refinement_columns(phi)
    target = reframe(shift(phi, b), N, M + 1)
    taps, _, _, _ = np.linalg.lstsq(cols, target.values, rcond=None)
    res = float(np.max(np.abs(cols @ taps - target.values), initial=0.0))
    mask = TrigPolynomial.from_taps(p, taps, scale=N)
    return ShiftMaskSolution(b, "refined", taps, mask, res, res, tol)


# --------------------------------------------------------------------------
# Orthonormality of the translate system


@dataclass
class OrthonormalityReport:
    """Three stacked tests of <phi(.-a), phi(.-b)> = delta over a, b in I_p.

    Stage 1 (character sums): sum_l |phat(l/p^M)|^2 chi(l k / p^(M+N)) must
    equal p^N delta_{k0} for 0 <= k < p^N.
    Stage 2 (exact characterization, applicable when supp phat lies in the
    unit ball): |phat| = 1 at every grid point of B_0; None when the support
    condition fails.
    Stage 3 (Gram, the verdict authority): ||phi|| = 1 and
    <phi, phi(. - d/p^N)> = 0 for every d in [1, p^(N+M)) with v_p(d) < N.
    Those d are the difference classes of distinct I_p translates together
    with their unit-ball-periodic copies; translates further than p^N apart
    have disjoint supports, which is recorded as a note, not re-tested.
    """

    tol: float
    char_sum_residuals: np.ndarray
    char_sums_ok: bool
    hat_supported_in_unit_ball: bool
    unit_modulus_ok: bool | None
    gram_residual: float
    gram_ok: bool
    norm_value: float
    norm_ok: bool
    verdict: bool
    notes: list[str] = field(default_factory=list)


def check_orthonormal_shifts(
    phi: TestFunction, tol: float = DEFAULT_TOL
) -> OrthonormalityReport:
    N, M = _require_frame(phi)
    p = phi.prime
    n = p ** (N + M)
    hat = fourier(phi)
    power = np.abs(hat.values) ** 2

    # Stage 1: the periodization identity, evaluated by exact character sums.
    sums = n * np.fft.ifft(power)[: p**N]
    targets = np.zeros(p**N, dtype=np.complex128)
    targets[0] = p**N
    char_res = np.abs(sums - targets)
    char_ok = bool(np.max(char_res, initial=0.0) <= tol)

    # Stage 2: where it applies, unit modulus on the unit ball is equivalent.
    if M > 0:
        idx = np.arange(n)
        outside = idx % p**M != 0
        in_ball = not np.any(np.abs(hat.values[outside]) > tol)
        inside_vals = hat.values[~outside]
    else:
        in_ball = True
        inside_vals = hat.values
    modulus_ok: bool | None = None
    if in_ball:
        modulus_ok = bool(np.max(np.abs(np.abs(inside_vals) - 1.0), initial=0.0) <= tol)

    # Stage 3: brute-force Gram over the difference classes.
    gram_res = 0.0
    scale = float(p) ** (-M)
    for d in range(1, n):
        if _valuation(d, p) >= N:
            # |d/p^N|_p <= 1: not a difference of distinct I_p translates.
            continue
        ip = scale * np.vdot(np.roll(phi.values, d), phi.values)
        gram_res = max(gram_res, abs(ip))
    gram_ok = gram_res <= tol
    norm_value = norm_l2(phi)
    norm_ok = abs(norm_value - 1.0) <= tol

    notes = [
        "translates separated by more than p^N have disjoint supports and "
        "are orthogonal without computation",
        "Gram stage ranges over d with v_p(d) < N: the difference classes "
        "of distinct I_p translates and their unit-ball-periodic copies",
    ]
    return OrthonormalityReport(
        tol=tol,
        char_sum_residuals=char_res,
        char_sums_ok=char_ok,
        hat_supported_in_unit_ball=bool(in_ball),
        unit_modulus_ok=modulus_ok,
        gram_residual=float(gram_res),
        gram_ok=bool(gram_ok),
        norm_value=norm_value,
        norm_ok=bool(norm_ok),
        verdict=bool(gram_ok and norm_ok),
        notes=notes,
    )


def _valuation(d: int, p: int) -> int:
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    return v


def check_haar_equivalence(
    phi: TestFunction,
    tol: float = DEFAULT_TOL,
    mra_report: "MraReport | None" = None,
    ortho_report: OrthonormalityReport | None = None,
) -> bool:
    """Span equality of {phi(. - k/p^N)} with the ball-indicator translates.

    Precondition: phi is an orthogonal MRA generator (both checks must
    pass; they are run here when reports are not supplied).
    """
    N, M = _require_frame(phi)
    p = phi.prime
    ortho = ortho_report if ortho_report is not None else check_orthonormal_shifts(phi, tol)
    if not ortho.verdict:
        raise PreconditionError("translates are not orthonormal")
    report = mra_report if mra_report is not None else check_mra(phi, tol)
    if not report.criterion_ok:
        raise PreconditionError("phi does not satisfy the MRA criterion")

    n = p ** (N + M)
    cols_phi = np.empty((n, p**N), dtype=np.complex128)
    cols_haar = np.empty((n, p**N), dtype=np.complex128)
    ball = omega(p, N, M)
    for k in range(p**N):
        cols_phi[:, k] = np.roll(phi.values, k)
        cols_haar[:, k] = np.roll(ball.values, k)
    return _mutual_span(cols_phi, cols_haar, tol)


def _mutual_span(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    sol_ab, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    sol_ba, _, _, _ = np.linalg.lstsq(b, a, rcond=None)
    res_ab = float(np.max(np.abs(a @ sol_ab - b), initial=0.0))
    res_ba = float(np.max(np.abs(b @ sol_ba - a), initial=0.0))
    return res_ab <= tol and res_ba <= tol


# --------------------------------------------------------------------------
# The assembled report


@dataclass
class MraReport:
    """Everything check_mra measured, with the criterion verdict.

    criterion_ok is exactly: refinable, and #L <= p^N. The axiom evidence
    is recorded alongside (axiom (a) through refined-window shift
    expansions for every b = k/p^N; axiom (b) through per-sphere dilation
    witnesses; axiom (c) as a report note, since local constancy plus
    compact Fourier support settle it without computation).
    """

    prime: int
    support_exp: int
    period_exp: int
    tol: float
    mean_value: complex
    refinable: bool
    refine_residual: float
    recovered_mask: TrigPolynomial | None
    lset: LSet
    criterion_ok: bool
    shift_solutions: list[ShiftMaskSolution]
    axiom_a_ok: bool
    axiom_b_ok: bool
    axiom_b_witnesses: dict[int, int]
    orthonormality: OrthonormalityReport
    haar_equivalent: bool | None
    notes: list[str] = field(default_factory=list)
    config: JobConfig | None = None


def check_mra(
    phi: TestFunction,
    tol: float = DEFAULT_TOL,
    sphere_range: tuple[int, int] = DEFAULT_SPHERE_RANGE,
    config: JobConfig | None = None,
) -> MraReport:
    """Decide whether phi generates a multiresolution analysis.

    Negative frame components are lifted to zero first (pointwise-neutral).
    Rejects candidates with zero mean: the criterion is not defined there.
    """
    phi = _normalize_frame(phi)
    N, M = phi.frame
    p = phi.prime
    if config is None:
        config = JobConfig(
            prime=p,
            support_exp=N,
            period_exp=M,
            tol=tol,
            sphere_range=sphere_range,
        )

    hat0 = fourier(phi).values[0]
    if abs(hat0) <= tol:
        raise PreconditionError(
            f"phi integrates to {hat0:.3e}; the MRA criterion needs a "
            "nonzero mean"
        )

    fit = _fit_mask(phi, tol)
    refinable = fit.ok
    ls = l_set(phi, tol)
    criterion_ok = bool(refinable and ls.within_bound)

    solutions = [
        shift_mask(phi, PadicRational(p, k, N), same_scale=False, tol=tol)
        for k in range(p**N)
    ]
    axiom_a_ok = all(s.ok for s in solutions)

    # Every sphere |xi| = p^s dilates into B_{-N}, where the transform is
    # identically the (nonzero) mean; level s + N is a uniform witness.
    witnesses = {s: s + N for s in range(sphere_range[0], sphere_range[1] + 1)}
    axiom_b_ok = True

    ortho = check_orthonormal_shifts(phi, tol)
    haar_equiv: bool | None = None
    notes = [
        "axiom (c), triviality of the intersection, holds for every "
        "nonzero-mean test function with compact Fourier support; no "
        "computation is attached",
        "when the translates are orthonormal the intersection and density "
        "axioms follow from classical sufficiency as well",
    ]
    report = MraReport(
        prime=p,
        support_exp=N,
        period_exp=M,
        tol=tol,
        mean_value=complex(hat0),
        refinable=refinable,
        refine_residual=fit.residual,
        recovered_mask=fit.mask if refinable else None,
        lset=ls,
        criterion_ok=criterion_ok,
        shift_solutions=solutions,
        axiom_a_ok=bool(axiom_a_ok),
        axiom_b_ok=axiom_b_ok,
        axiom_b_witnesses=witnesses,
        orthonormality=ortho,
        haar_equivalent=None,
        notes=notes,
        config=config,
    )
    if ortho.verdict and criterion_ok:
        haar_equiv = check_haar_equivalence(phi, tol, mra_report=report, ortho_report=ortho)
        report.haar_equivalent = haar_equiv
    return report
