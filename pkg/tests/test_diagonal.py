"""Diagonal subalgebra bounds."""

from fractions import Fraction

import pytest

from acikit import Ideal, Ring, minimal_resolution, regrade_complex
from acikit.diagonal import (DiagonalSpec, aci_family_betti, cm_bound,
                             diagonal_report, koszul_bound,
                             shift_inequality_holds)
from acikit.errors import NotHomogeneousError
from acikit.resolve import BettiTable


class TestKoszulBound:
    def test_grade2_linearly_presented(self, generic_hb):
        b = minimal_resolution(generic_hb.ideal()).betti
        kb = koszul_bound(b, 2)
        assert kb.koszul_c_min == Fraction(2, 3)  # d/3 with d = 2

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_grade2_any_degree_structural(self, d):
        # structural table of a linearly presented grade-2 family
        ent = {(0, (0,)): 1, (1, (d,)): 3, (2, (d + 1,)): 2}
        kb = koszul_bound(BettiTable(ent, 1), d)
        assert kb.koszul_c_min == Fraction(d, 3)

    def test_degree_one_all_diagonals(self):
        ent = {(0, (0,)): 1, (1, (1,)): 3, (2, (2,)): 2}
        kb = koszul_bound(BettiTable(ent, 1), 1)
        # bound 1/2: every diagonal with c >= 1 clears it
        assert kb.koszul_c_min <= 1

    @pytest.mark.parametrize("n,d,dp,t", [(2, 2, 1, 2), (3, 3, 2, 4),
                                          (4, 2, 1, 3)])
    def test_family_constants(self, n, d, dp, t):
        tb = aci_family_betti("A", n, d, dp, t)
        kb = koszul_bound(tb, d)
        assert kb.koszul_c_min == Fraction((n - 1) * d, n)

    def test_family_b(self):
        tb = aci_family_betti("B", 3, 2, 1, 3)
        kb = koszul_bound(tb, 2)
        assert kb.koszul_c_min == Fraction(4, 3)  # ((n-1)/n) d with n = 3

    def test_gamma_both_readings_reported(self, generic_hb):
        b = minimal_resolution(generic_hb.ideal()).betti
        kb = koszul_bound(b, 2)
        assert kb.gamma == Fraction(1, 2)       # (t_2 - d)/2 = (3-2)/2
        assert kb.gamma_alt == Fraction(5, 2)   # (t_2 + d)/2, reported only
        assert kb.tail_bound == Fraction(2, 3)

    def test_non_equigenerated_refused(self, pfaffian5):
        b = minimal_resolution(pfaffian5[1].ideal()).betti
        with pytest.raises(NotHomogeneousError):
            koszul_bound(b, 2)


class TestCmBound:
    def test_hand_evaluations(self):
        # five hand-checked inputs of min/max arithmetic
        assert cm_bound([1, 2, 2, 2], 7, 1) == 6
        # d=2,u=7,m=7,d1=1,e=2: alpha=min(2+0,0)=0, beta=min(2+6,12)=8, de=4
        assert cm_bound([1, 2, 2, 2], 7, 2) == 8
        # d=2,u=6,m=4,d1=2,e=1: alpha=min(0+2,2)=2, beta=min(4,4)=4, de=2
        assert cm_bound([2, 2, 2], 4, 1) == 4
        # d=3,u=9,m=12,d1=3,e=1: alpha=min(-3,-3)=-3, beta=min(6,6)=6, de=3
        assert cm_bound([3, 3, 3], 12, 1) == 6
        # d=3,u=9,m=6,d1=3,e=2: alpha=min(3+3,6)=6, beta=min(3+6,12)=9, de=6
        assert cm_bound([3, 3, 3], 6, 2) == 9

    def test_e_one_substitution(self):
        # e=1, u=m, d1=d: threshold = max(0, u-d1, d) = u-d1 when large
        assert cm_bound([2, 2, 2, 2], 8, 1) == 6

    def test_monotone_in_e(self):
        vals = [cm_bound([2, 2, 2], 4, e) for e in range(1, 6)]
        assert vals == sorted(vals)

    def test_e_zero_rejected(self):
        with pytest.raises(ValueError):
            cm_bound([2, 2], 4, 0)


class TestShiftInequality:
    def test_t5_clearing_delta(self, pfaffian5):
        from acikit.rees import cone_resolution
        cone = cone_resolution(pfaffian5[1].fs, linear_type=True)
        ok, viol = shift_inequality_holds(cone.betti, 7, 1)
        assert ok and viol is None

    def test_violating_delta(self, pfaffian5):
        from acikit.rees import cone_resolution
        cone = cone_resolution(pfaffian5[1].fs, linear_type=True)
        ok, viol = shift_inequality_holds(cone.betti, 1, 1)
        assert not ok
        assert viol is not None

    def test_standard_regrade_monomial_family(self, monomial_aci):
        from acikit.rees import cone_resolution
        R, gens = monomial_aci
        cone = cone_resolution(gens, linear_type=True)
        S = cone.complex.ring
        S_std = S.with_degrees([(1, 0)] * 4 + [(0, 1)] * 3)
        std = regrade_complex(cone.complex, S_std)
        tbl = BettiTable.of_complex(std)
        b = minimal_resolution(Ideal(R, gens)).betti
        kb = koszul_bound(b, 2)
        # any integer diagonal at or above the bound satisfies the
        # shift inequality, checked shift by shift
        c = int(kb.koszul_c_min) + 1
        ok, _ = shift_inequality_holds(tbl, c, 1)
        assert ok
        # y-shifts: 1 on the first step, then the symmetric-power tail
        # tops out at exactly i; in particular b_max <= i + 1 always,
        # which is what the criterion consumes for every e > 0
        for i in range(1, tbl.pd() + 1):
            bmax = max(s[1] for (k, s) in tbl.entries if k == i)
            assert bmax == (1 if i == 1 else i)
            assert bmax <= i + 1


class TestDiagonalReport:
    def test_t5(self, pfaffian5):
        rep = diagonal_report(pfaffian5[1].fs, DiagonalSpec(7, 1))
        assert rep["family"] == "grade3-plus-one"
        assert rep["cm_rees"] is True
        assert rep["cm_threshold"] == 6
        assert rep["clears"]["cm"] is True
        assert rep["koszul_c_min"] is None  # not equigenerated

    def test_grade2_koszul_clearing(self, generic_hb):
        rep = diagonal_report(generic_hb.fs, DiagonalSpec(1, 1))
        assert rep["family"] == "grade2-plus-one"
        assert Fraction(rep["koszul_c_min"]) == Fraction(2, 3)
        assert rep["clears"]["koszul"] is True

    def test_zero_delta_rejected(self):
        with pytest.raises(ValueError):
            DiagonalSpec(0, 0)
