"""Multiresolution verdicts: L sets, mask recovery, shift masks, orthonormality."""

from __future__ import annotations

import numpy as np
import pytest

from padic_mra import (
    TestFunction,
    check_haar_equivalence,
    check_mra,
    check_orthonormal_shifts,
    dilate,
    haar_mask,
    l_set,
    mask_from_roots,
    omega,
    recover_mask,
    refinable_from_mask,
    shift_mask,
)
from padic_mra.errors import NotRefinableError, PreconditionError
from padic_mra.generators import random_unimodular_mask
from padic_mra.padic_core import PadicRational, enumerate_Ip_ball


class TestLSet:
    def test_quartic_members(self, quartic_phi):
        ls = l_set(quartic_phi)
        assert ls.members == (0, 4, 6, 7)
        assert ls.size == 4
        assert ls.bound == 4
        assert ls.within_bound

    def test_haar_is_a_single_index(self):
        ls = l_set(refinable_from_mask(haar_mask(3), 0))
        assert ls.members == (0,)
        assert ls.within_bound

    def test_margins_are_reported(self, quartic_phi):
        ls = l_set(quartic_phi)
        assert ls.min_member_abs > 1e-3
        assert ls.max_excluded_abs < 1e-9


class TestRecoverMask:
    def test_haar(self):
        rec = recover_mask(omega(2, 0, 1))
        assert rec.ok
        assert rec.residual < 1e-12
        assert np.allclose(rec.mask.taps[:2], [1.0, 1.0], atol=1e-9)

    def test_quartic(self, quartic_mask, quartic_phi):
        rec = recover_mask(quartic_phi)
        assert rec.ok
        assert np.allclose(
            rec.mask.taps[:5], quartic_mask.taps[:5], atol=1e-8
        )

    def test_non_refinable_raises(self):
        f = TestFunction(2, 1, 1, np.array([1.0, 0, 0, 1.0], dtype=np.complex128))
        with pytest.raises(NotRefinableError):
            recover_mask(f)

    def test_zero_mean_rejected(self):
        f = TestFunction(2, 0, 1, np.array([1.0, -1.0], dtype=np.complex128))
        with pytest.raises(PreconditionError):
            recover_mask(f)


class TestShiftMask:
    @pytest.mark.parametrize("num,exp", [(1, 1), (3, 2)])
    def test_quartic_same_scale(self, quartic_phi, num, exp):
        sol = shift_mask(quartic_phi, PadicRational(2, num, exp))
        assert sol.ok
        assert sol.pointwise_residual < 1e-9

    def test_quartic_refined_window_all_translates(self, quartic_phi):
        for b in enumerate_Ip_ball(2, 2):
            sol = shift_mask(quartic_phi, b, same_scale=False)
            assert sol.ok, f"refined shift mask failed at b = {b}"

    def test_oversized_lset_blocks_refined_mode(self):
        # three prescribed zeros at scale 1 leave #L = 3 > p^N = 2
        m = mask_from_roots(
            2,
            1,
            [PadicRational(2, 1, 2), PadicRational(2, 3, 3), PadicRational(2, 7, 3)],
        )
        phi = refinable_from_mask(m, 1)
        ls = l_set(phi)
        assert not ls.within_bound
        results = [
            shift_mask(phi, b, same_scale=False).ok for b in enumerate_Ip_ball(2, 1)
        ]
        assert not all(results)

    def test_solution_reports_both_residuals(self, quartic_phi):
        sol = shift_mask(quartic_phi, PadicRational(2, 1, 2))
        assert sol.system_residual <= sol.tol
        assert sol.pointwise_residual <= sol.tol
        assert sol.mode == "same_scale"


class TestCheckMra:
    def test_haar_full_verdict(self):
        report = check_mra(omega(2, 0, 1))
        assert report.refinable
        assert report.criterion_ok
        assert report.axiom_a_ok
        assert report.axiom_b_ok
        assert report.orthonormality.verdict
        assert report.haar_equivalent is True

    def test_quartic_verdict(self, quartic_phi):
        report = check_mra(quartic_phi)
        assert report.criterion_ok
        assert report.refinable
        # shifts are non-orthogonal, so Haar equivalence is never attempted
        assert not report.orthonormality.verdict
        assert report.haar_equivalent is None

    def test_criterion_stable_under_dilation(self, quartic_phi):
        base = check_mra(quartic_phi).criterion_ok
        for j in (1, 2):
            assert check_mra(dilate(quartic_phi, j)).criterion_ok == base

    def test_negative_frame_is_lifted(self):
        f = dilate(omega(2, 0, 1), -1)  # frame (-1, 2)
        report = check_mra(f)
        assert (report.support_exp, report.period_exp) == (0, 2)
        # a shrunken indicator is not refinable at the lifted scale:
        # its refined pieces sit at 0 and 1/2, but B_{-1} splits at 0 and 2
        assert not report.refinable
        assert not report.criterion_ok

    def test_zero_mean_rejected(self):
        f = TestFunction(2, 0, 1, np.array([1.0, -1.0], dtype=np.complex128))
        with pytest.raises(PreconditionError):
            check_mra(f)

    def test_axiom_b_witnesses_cover_the_range(self):
        report = check_mra(omega(2, 0, 1))
        lo, hi = report.config.sphere_range
        assert set(report.axiom_b_witnesses) == set(range(lo, hi + 1))


class TestOrthonormality:
    def test_haar_passes_all_stages(self):
        rep = check_orthonormal_shifts(refinable_from_mask(haar_mask(2), 0))
        assert rep.char_sums_ok
        assert rep.hat_supported_in_unit_ball
        assert rep.unit_modulus_ok is True
        assert rep.gram_ok
        assert rep.norm_ok
        assert rep.verdict

    def test_quartic_fails_with_evidence(self, quartic_phi):
        rep = check_orthonormal_shifts(quartic_phi)
        assert not rep.verdict
        assert max(rep.char_sum_residuals) > 1e-3
        # support extends past B_0, so the modulus stage does not apply
        assert rep.hat_supported_in_unit_ball is False
        assert rep.unit_modulus_ok is None

    def test_unimodular_pattern_passes(self, rng):
        m = random_unimodular_mask(rng, 3, 1)
        phi = refinable_from_mask(m, 0)
        rep = check_orthonormal_shifts(phi)
        assert rep.verdict
        assert rep.hat_supported_in_unit_ball
        assert rep.unit_modulus_ok is True


class TestHaarEquivalence:
    def test_haar_dilate_is_equivalent(self):
        phi = refinable_from_mask(haar_mask(2), 0)
        assert check_haar_equivalence(phi) is True

    def test_unimodular_pattern_is_equivalent(self, rng):
        m = random_unimodular_mask(rng, 2, 1)
        phi = refinable_from_mask(m, 0)
        assert check_haar_equivalence(phi) is True

    def test_requires_orthonormal_shifts(self, quartic_phi):
        with pytest.raises(PreconditionError):
            check_haar_equivalence(quartic_phi)
