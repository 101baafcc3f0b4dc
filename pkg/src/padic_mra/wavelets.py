"""Wavelet systems attached to a refinable function.

Given an MRA generator phi in D_N^M with scaling mask m_0, the p-1 wavelet
masks are built as polynomials in z = chi_p(xi):

    n_nu(z) = z^((nu-1) p^N) * (z - 1)^(p^N - #L) * prod_{l in L} (z - chi_p(l / p^(M+N)))

The product factor kills exactly the residues mod p^(M+N) where the
transform of phi lives, which is what makes every wavelet translate
orthogonal to V_0; the z-power spreads the p-1 masks over disjoint tap
windows [(nu-1) p^N, nu p^N].

Wavelet functions are tap combinations psi = sum_k g_k phi(x/p - k/p^(N+1))
and live in D_N^(M+1). Construction verifies, never assumes: the Fourier
factorization psi-hat(xi) = n(xi/p^N) phi-hat(p xi) and orthogonality to
V_0 are residual-checked before anything is returned.

Frame quality is read off the Gram matrix of the translate system: on the
span, sum_i |<f, g_i>|^2 sits between A and B times ||f||^2 exactly when A
and B are the extreme nonzero Gram eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import DEFAULT_TOL, JobConfig
from .errors import PreconditionError, UnsupportedConfigurationError, VerificationError
from .masks import TrigPolynomial, haar_mask
from .mra import LSet, l_set
from .padic_core import PadicRational, character
from .test_functions import (
    TestFunction,
    dilate,
    fourier,
    norm_l2,
    omega,
    reframe,
    shift,
)

__all__ = [
    "WaveletSet",
    "wavelet_masks",
    "wavelet_functions",
    "build_wavelet_set",
    "verify_wavelet_set",
    "WaveletVerification",
    "FrameReport",
    "frame_bounds",
    "resultant",
    "kozyrev_set",
    "CoefficientTree",
    "analyze",
    "synthesize",
]

# Relative spectral floor: eigenvalues below this times the largest are
# treated as numerically zero when reading off the lower frame bound.
_RANK_REL = 1e-9


# --------------------------------------------------------------------------
# Masks


def wavelet_masks(
    phi: TestFunction,
    m0: TrigPolynomial,
    tol: float = DEFAULT_TOL,
    lset: LSet | None = None,
) -> list[TrigPolynomial]:
    """The p-1 wavelet masks for phi, or a refusal.

    Refuses (UnsupportedConfigurationError) when deg m_0 > (p-1) p^N or
    #L > p^N: outside that regime the tap-window construction is not
    guaranteed to produce a wavelet set, though user-supplied masks can
    still be verified downstream.
    """
    N, M = phi.frame
    p = phi.prime
    if m0.scale != N:
        raise PreconditionError(
            f"mask scale {m0.scale} does not match the frame support {N}"
        )
    ls = lset if lset is not None else l_set(phi, tol)
    if not ls.within_bound:
        raise UnsupportedConfigurationError(
            f"#L = {ls.size} exceeds p^N = {ls.bound}; no wavelet-mask "
            "construction is attached to this configuration"
        )
    if m0.degree > (p - 1) * p**N:
        raise UnsupportedConfigurationError(
            f"deg m_0 = {m0.degree} exceeds (p-1) p^N = {(p - 1) * p**N}; "
            "the tap-window construction does not apply"
        )
    base = np.array([1.0 + 0j])
    for _ in range(p**N - ls.size):
        base = np.convolve(base, np.array([-1.0 + 0j, 1.0 + 0j]))
    for l in ls.members:
        root = character(PadicRational(p, l, M + N))
        base = np.convolve(base, np.array([-root, 1.0 + 0j]))
    masks = []
    for nu in range(1, p):
        coeffs = np.concatenate([np.zeros((nu - 1) * p**N, dtype=np.complex128), base])
        masks.append(TrigPolynomial(p, coeffs, scale=N))
    return masks


def _tap_combination(phi: TestFunction, taps: np.ndarray) -> TestFunction:
    """sum_k taps[k] phi(x/p - k/p^(N+1)) as an element of D_N^(M+1)."""
    N, M = phi.frame
    p = phi.prime
    if len(taps) > p ** (N + 1):
        raise PreconditionError(
            f"{len(taps)} taps exceed the window p^(N+1) = {p ** (N + 1)}"
        )
    g = reframe(dilate(phi, -1), N, M + 1)
    acc = np.zeros(g.n, dtype=np.complex128)
    for k, t in enumerate(taps):
        if t != 0:
            acc += t * np.roll(g.values, k)
    return TestFunction(p, N, M + 1, acc)


def _v0_orthogonality_residual(phi: TestFunction, psi: TestFunction) -> float:
    """max |<phi(.-a), psi(.-b)>| over a, b in I_p.

    Translates more than p^N apart have disjoint supports, so only the
    difference classes d/p^N with |d| < p^N need computing.
    """
    N = phi.support_exp
    p = phi.prime
    f = reframe(phi, N, psi.period_exp)
    scale = float(p) ** (-psi.period_exp)
    worst = 0.0
    for d in range(-(p**N) + 1, p**N):
        ip = scale * np.vdot(np.roll(psi.values, d), f.values)
        worst = max(worst, abs(ip))
    return worst


def wavelet_functions(
    phi: TestFunction,
    masks: list[TrigPolynomial],
    tol: float = DEFAULT_TOL,
) -> list[TestFunction]:
    """Tap combinations for each mask, verified before they are returned.

    Checks the Fourier factorization psi-hat(xi) = n(xi/p^N) phi-hat(p xi)
    on the full refined grid and orthogonality of every translate pair to
    V_0; raises VerificationError naming the failing mask otherwise.
    """
    N, M = phi.frame
    p = phi.prime
    phat = fourier(phi)
    out = []
    for i, mk in enumerate(masks):
        if mk.prime != p:
            raise PreconditionError(f"mask {i} has prime {mk.prime}, expected {p}")
        psi = _tap_combination(phi, mk.taps)
        psihat = fourier(psi)
        idx = np.arange(psi.n)
        mask_vals = mk.values_on_depth_grid(M + 1 + N)[idx % p ** (M + 1 + N)]
        expected = mask_vals * phat.values[idx % phat.n]
        fact_res = float(np.max(np.abs(psihat.values - expected), initial=0.0))
        if fact_res > tol:
            raise VerificationError(
                f"mask {i}: transform factorization residual {fact_res:.3e}"
            )
        orth_res = _v0_orthogonality_residual(phi, psi)
        if orth_res > tol:
            raise VerificationError(
                f"mask {i}: wavelet is not orthogonal to V_0 "
                f"(residual {orth_res:.3e})"
            )
        out.append(psi)
    return out


# --------------------------------------------------------------------------
# Wavelet sets


@dataclass
class WaveletSet:
    """A refinable function, its mask, and r verified wavelets with masks."""

    phi: TestFunction
    scaling_mask: TrigPolynomial
    wavelets: list[TestFunction]
    masks: list[TrigPolynomial]
    tol: float = DEFAULT_TOL

    @property
    def prime(self) -> int:
        return self.phi.prime

    @property
    def support_exp(self) -> int:
        return self.phi.support_exp

    @property
    def period_exp(self) -> int:
        return self.phi.period_exp

    @property
    def r(self) -> int:
        return len(self.wavelets)

    def normalize(self) -> "WaveletSet":
        """Rescale each wavelet (and its mask) to unit L2 norm."""
        new_psis, new_masks = [], []
        for psi, mk in zip(self.wavelets, self.masks):
            nrm = norm_l2(psi)
            if nrm <= self.tol:
                raise PreconditionError("cannot normalize a null wavelet")
            new_psis.append(
                TestFunction(psi.prime, psi.support_exp, psi.period_exp, psi.values / nrm)
            )
            new_masks.append(TrigPolynomial(mk.prime, mk.coeffs / nrm, mk.scale))
        return replace(self, wavelets=new_psis, masks=new_masks)


def build_wavelet_set(
    phi: TestFunction,
    m0: TrigPolynomial,
    tol: float = DEFAULT_TOL,
) -> WaveletSet:
    masks = wavelet_masks(phi, m0, tol)
    psis = wavelet_functions(phi, masks, tol)
    return WaveletSet(phi, m0, psis, masks, tol)


def resultant(h: np.ndarray, g: np.ndarray) -> complex:
    """Resultant of two tap vectors in ascending order.

    Exact trailing zeros are trimmed first; the determinant is taken over
    the ascending-band matrix whose first deg(g) rows carry h and last
    deg(h) rows carry g (the 2x2 case is h_0 g_1 - h_1 g_0). Zero iff the
    polynomials share a root, provided neither is the zero polynomial.
    """
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    g = np.asarray(g, dtype=np.complex128).reshape(-1)

    def trim(v: np.ndarray) -> np.ndarray:
        nz = np.nonzero(v)[0]
        return v[: nz[-1] + 1] if nz.size else v[:0]

    h, g = trim(h), trim(g)
    if h.size == 0 or g.size == 0:
        return 0j
    dh, dg = h.size - 1, g.size - 1
    size = dh + dg
    if size == 0:
        return 1 + 0j
    s = np.zeros((size, size), dtype=np.complex128)
    for i in range(dg):
        s[i, i : i + dh + 1] = h
    for j in range(dh):
        s[dg + j, j : j + dg + 1] = g
    return complex(np.linalg.det(s))


@dataclass
class WaveletVerification:
    """Residual evidence that a wavelet set is one."""

    tol: float
    v0_residual: float
    factorization_residual: float
    inclusion_residual: float
    resultant: complex

    @property
    def ok(self) -> bool:
        return (
            self.v0_residual <= self.tol
            and self.factorization_residual <= self.tol
            and self.inclusion_residual <= self.tol
        )


def verify_wavelet_set(ws: WaveletSet, tol: float | None = None) -> WaveletVerification:
    """Re-check a set from scratch: orthogonality, factorization, inclusion.

    Inclusion: every refined generator phi(x/p - a), a in I_p with
    |a|_p <= p^(N+1), must be expressible through the translates of phi and
    of the wavelets by I_p points of norm at most p^N. The resultant of the
    scaling taps and the first wavelet's taps is reported alongside.
    """
    tol = ws.tol if tol is None else tol
    p, N, M = ws.prime, ws.support_exp, ws.period_exp
    phat = fourier(ws.phi)

    v0 = 0.0
    fact = 0.0
    for mk, psi in zip(ws.masks, ws.wavelets):
        v0 = max(v0, _v0_orthogonality_residual(ws.phi, psi))
        psihat = fourier(psi)
        idx = np.arange(psi.n)
        expected = (
            mk.values_on_depth_grid(M + 1 + N)[idx % p ** (M + 1 + N)]
            * phat.values[idx % phat.n]
        )
        fact = max(fact, float(np.max(np.abs(psihat.values - expected), initial=0.0)))

    n = p ** (N + M + 1)
    f0 = reframe(ws.phi, N, M + 1)
    span_cols = [np.roll(f0.values, k) for k in range(p**N)]
    for psi in ws.wavelets:
        span_cols.extend(np.roll(psi.values, k) for k in range(p**N))
    span = np.column_stack(span_cols)
    g = reframe(dilate(ws.phi, -1), N, M + 1)
    targets = np.column_stack([np.roll(g.values, k) for k in range(p ** (N + 1))])
    sol, _, _, _ = np.linalg.lstsq(span, targets, rcond=None)
    incl = float(np.max(np.abs(span @ sol - targets), initial=0.0))

    res = resultant(ws.scaling_mask.taps, ws.masks[0].taps) if ws.masks else 0j
    return WaveletVerification(tol, v0, fact, incl, res)


# --------------------------------------------------------------------------
# Frame bounds


@dataclass
class FrameReport:
    """Spectral frame bounds of the level-0 wavelet translate system."""

    A: float
    B: float
    spectrum: np.ndarray
    resultant: complex
    inclusion_residual: float
    v0_residual: float
    factorization_residual: float
    generator_count: int
    tol: float
    config: JobConfig | None = None

    @property
    def ok(self) -> bool:
        return (
            0 < self.A <= self.B
            and self.v0_residual <= self.tol
            and self.factorization_residual <= self.tol
            and self.inclusion_residual <= self.tol
        )


def _translate_matrix(funcs: list[TestFunction], count: int) -> np.ndarray:
    cols = []
    for f in funcs:
        cols.extend(np.roll(f.values, k) for k in range(count))
    return np.column_stack(cols)


def frame_bounds(
    ws: WaveletSet,
    tol: float | None = None,
    config: JobConfig | None = None,
) -> FrameReport:
    """Extreme nonzero Gram eigenvalues of {psi_nu(. - k/p^N)}.

    On the span of the system these are exactly the best frame constants:
    with G the Gram matrix and f = sum c_i g_i, sum_i |<f, g_i>|^2 = ||G c||^2
    falls between A c* G c and B c* G c. Eigenvalues below a relative floor
    count as zero (redundant systems are frames of their span).
    """
    tol = ws.tol if tol is None else tol
    p, N, M = ws.prime, ws.support_exp, ws.period_exp
    verification = verify_wavelet_set(ws, tol)
    a = _translate_matrix(ws.wavelets, p**N)
    gram = float(p) ** (-(M + 1)) * (a.conj().T @ a)
    spectrum = np.linalg.eigvalsh(gram)
    lam_max = float(spectrum[-1])
    if lam_max <= 0:
        raise PreconditionError("degenerate wavelet set: Gram matrix is zero")
    floor = _RANK_REL * lam_max
    above = spectrum[spectrum > floor]
    if above.size == 0:
        raise PreconditionError("degenerate wavelet set: no spectral mass")
    return FrameReport(
        A=float(above[0]),
        B=lam_max,
        spectrum=np.asarray(spectrum),
        resultant=verification.resultant,
        inclusion_residual=verification.inclusion_residual,
        v0_residual=verification.v0_residual,
        factorization_residual=verification.factorization_residual,
        generator_count=a.shape[1],
        tol=tol,
        config=config,
    )


# --------------------------------------------------------------------------
# The explicit character wavelets on the unit ball


def kozyrev_set(p: int, tol: float = DEFAULT_TOL) -> WaveletSet:
    """The classical character wavelets psi_nu(x) = chi_p(nu x / p) Omega(|x|).

    Built as tap combinations over the ball indicator with taps
    g_k = exp(2 pi i nu k / p), then verified: unit norms, pairwise
    orthogonality, orthogonality to the ball translates, and span equality
    with the tap-window wavelets of the ball indicator's own mask.
    """
    phi = omega(p, 0, 0)
    masks = [
        TrigPolynomial.from_taps(
            p, np.exp(2j * np.pi * nu * np.arange(p) / p), scale=0
        )
        for nu in range(1, p)
    ]
    psis = wavelet_functions(phi, masks, tol)
    ws = WaveletSet(phi, haar_mask(p), psis, masks, tol)

    for i, psi in enumerate(psis):
        if abs(norm_l2(psi) - 1.0) > tol:
            raise VerificationError(f"character wavelet {i} is not unit norm")
        for jj in range(i + 1, len(psis)):
            ip = float(p) ** (-1) * np.vdot(psis[jj].values, psi.values)
            if abs(ip) > tol:
                raise VerificationError(
                    f"character wavelets {i} and {jj} are not orthogonal"
                )
    reference = wavelet_functions(phi, wavelet_masks(phi, haar_mask(p), tol), tol)
    a = np.column_stack([psi.values for psi in psis])
    b = np.column_stack([psi.values for psi in reference])
    sol_ab, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    sol_ba, _, _, _ = np.linalg.lstsq(b, a, rcond=None)
    span_res = max(
        float(np.max(np.abs(a @ sol_ab - b), initial=0.0)),
        float(np.max(np.abs(b @ sol_ba - a), initial=0.0)),
    )
    if span_res > tol:
        raise VerificationError(
            f"character wavelets do not span the tap-window wavelets "
            f"(residual {span_res:.3e})"
        )
    return ws


# --------------------------------------------------------------------------
# Multilevel analysis and synthesis


@dataclass
class CoefficientTree:
    """Output of analyze: top-level remainder coefficients and details.

    approx holds the coefficients on the level-j0 scaling translates;
    details[j] has shape (r, p^(N+j)) for j0 <= j < j1. input_residual is
    the distance of the input from the level-j1 truncated space (zero, to
    tolerance, for representable inputs); split_residuals track how exactly
    each level's complement landed in the wavelet span.
    """

    prime: int
    j0: int
    j1: int
    approx: np.ndarray
    details: dict[int, np.ndarray]
    input_residual: float
    split_residuals: dict[int, float]
    frame: tuple[int, int]
    tol: float


def _v_matrix(ws: WaveletSet, j: int, frame: tuple[int, int]) -> np.ndarray:
    """Columns p^(j/2) phi(p^-j x - a), a over I_p with |a| <= p^(N+j)."""
    p, N = ws.prime, ws.support_exp
    cols = []
    for k in range(p ** (N + j)):
        g = dilate(shift(ws.phi, PadicRational(p, k, N + j)), -j, normalized=True)
        cols.append(reframe(g, *frame).values)
    return np.column_stack(cols)


def _w_matrix(ws: WaveletSet, j: int, frame: tuple[int, int]) -> np.ndarray:
    p, N = ws.prime, ws.support_exp
    cols = []
    for psi in ws.wavelets:
        for k in range(p ** (N + j)):
            g = dilate(shift(psi, PadicRational(p, k, N + j)), -j, normalized=True)
            cols.append(reframe(g, *frame).values)
    return np.column_stack(cols)


def _working_frame(ws: WaveletSet, f: TestFunction, j1: int) -> tuple[int, int]:
    N = max(ws.support_exp, f.support_exp)
    M = max(ws.period_exp + 1 + j1, f.period_exp)
    return (N, M)


def analyze(
    f: TestFunction,
    ws: WaveletSet,
    j0: int = 0,
    j1: int = 1,
) -> CoefficientTree:
    """Peel f from level j1 down to j0 through orthogonal projections.

    At each level the orthogonal projection onto the truncated scaling
    space is subtracted and the complement is expanded over the wavelet
    translates; for f in the level-j1 truncated space the round trip with
    synthesize is exact to tolerance.
    """
    if f.prime != ws.prime:
        raise PreconditionError(f"mixed primes {ws.prime} and {f.prime}")
    if not 0 <= j0 <= j1:
        raise PreconditionError(f"need 0 <= j0 <= j1, got ({j0}, {j1})")
    frame = _working_frame(ws, f, j1)
    target = reframe(f, *frame).values
    tol = ws.tol

    v_top = _v_matrix(ws, j1, frame)
    c, _, _, _ = np.linalg.lstsq(v_top, target, rcond=None)
    approx = v_top @ c
    input_residual = float(np.max(np.abs(approx - target), initial=0.0))

    details: dict[int, np.ndarray] = {}
    split_residuals: dict[int, float] = {}
    for j in range(j1 - 1, j0 - 1, -1):
        vj = _v_matrix(ws, j, frame)
        cj, _, _, _ = np.linalg.lstsq(vj, approx, rcond=None)
        smooth = vj @ cj
        residue = approx - smooth
        wj = _w_matrix(ws, j, frame)
        dj, _, _, _ = np.linalg.lstsq(wj, residue, rcond=None)
        split_residuals[j] = float(np.max(np.abs(wj @ dj - residue), initial=0.0))
        details[j] = dj.reshape(ws.r, -1)
        approx = smooth
        c = cj
    return CoefficientTree(
        prime=ws.prime,
        j0=j0,
        j1=j1,
        approx=np.asarray(c),
        details=details,
        input_residual=input_residual,
        split_residuals=split_residuals,
        frame=frame,
        tol=tol,
    )


def synthesize(tree: CoefficientTree, ws: WaveletSet) -> TestFunction:
    """Rebuild the function a CoefficientTree describes."""
    if tree.prime != ws.prime:
        raise PreconditionError(f"mixed primes {ws.prime} and {tree.prime}")
    frame = tree.frame
    acc = _v_matrix(ws, tree.j0, frame) @ tree.approx
    for j, dj in tree.details.items():
        acc = acc + _w_matrix(ws, j, frame) @ dj.reshape(-1)
    return TestFunction(ws.prime, frame[0], frame[1], acc)
