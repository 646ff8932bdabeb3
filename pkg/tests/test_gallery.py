"""The skew matrix, Pfaffians, and the ideal families."""

from math import comb

import pytest

from acikit import Ideal, Ring, minimal_resolution
from acikit.errors import GradeMismatchError
from acikit.gallery import (SkewMatrix, aci_grade3_ideal, ci_plus_one,
                            cm_type, hilbert_burch_ideal, pfaffian_aci)


class TestSkewMatrix:
    def test_variable_layout(self):
        X = SkewMatrix(6)
        assert X.ring.names == ("x14", "x15", "x16", "x24", "x25", "x26",
                                "x34", "x35", "x36", "x45", "x46", "x56")
        assert X.variable_count() == 3 * 3 + comb(3, 2)

    @pytest.mark.parametrize("t", [5, 6, 7])
    def test_variable_count(self, t):
        assert SkewMatrix(t).variable_count() == 3 * (t - 3) + comb(t - 3, 2)

    def test_entry_skew_symmetry(self):
        X = SkewMatrix(5)
        for i in range(1, 6):
            assert X.entry(i, i).is_zero()
            for j in range(1, 6):
                assert (X.entry(i, j) + X.entry(j, i)).is_zero()
        assert X.entry(1, 2).is_zero()  # zero block

    def test_pfaffian_base_case(self):
        X = SkewMatrix(5)
        assert X.pfaffian((4, 5)) == X.ring.var("x45")

    def test_odd_order_rejected(self):
        X = SkewMatrix(5)
        with pytest.raises(ValueError):
            X.pfaffian((1, 2, 3))

    @pytest.mark.parametrize("t", [5, 6, 7])
    def test_pf_squared_is_det(self, t):
        X = SkewMatrix(t)
        import itertools
        universe = list(range(1, t + 1))
        # every even-order principal submatrix of order 4, plus the big ones
        subsets = list(itertools.combinations(universe, 4))
        if t % 2 == 0:
            subsets.append(tuple(universe))
        else:
            subsets.extend(itertools.combinations(universe, t - 1))
        for idx in subsets:
            pf = X.pfaffian(idx)
            det = X.determinant(idx)
            assert (pf * pf - det).is_zero(), idx


class TestGrade3Family:
    def test_t5_degrees_and_gens(self, pfaffian5):
        X, seq = pfaffian5
        assert [d[0] for d in seq.degrees] == [1, 2, 2, 2]
        assert str(seq.fs[0]) == "x45"

    def test_t6_degrees(self, pfaffian6):
        assert [d[0] for d in pfaffian6[1].degrees] == [2, 2, 2, 3]

    def test_t7_degrees(self, pfaffian7):
        assert [d[0] for d in pfaffian7[1].degrees] == [2, 3, 3, 3]

    def test_t6_matches_printed_generators(self, pfaffian6):
        # the published order-6 example lists these four, up to sign
        X, seq = pfaffian6
        R = seq.ring
        printed = [
            R.poly("x26*x45 - x25*x46 + x24*x56"),
            R.poly("x16*x45 - x15*x46 + x14*x56"),
            R.poly("x16*x25*x34 - x15*x26*x34 - x16*x24*x35 + x14*x26*x35"
                   " + x15*x24*x36 - x14*x25*x36"),
            R.poly("x36*x45 - x35*x46 + x34*x56"),
        ]
        ours = {str(f) for f in seq.fs} | {str(-f) for f in seq.fs}
        for p in printed:
            assert str(p) in ours or str(-p) in ours

    @pytest.mark.parametrize("t", [5, 6, 7])
    def test_height_and_mu(self, t, request):
        seq, I = aci_grade3_ideal(t)
        assert I.height() == 3
        assert len(I.gens) == 4

    def test_t_below_range(self):
        with pytest.raises(ValueError):
            SkewMatrix(4)

    @pytest.mark.parametrize("t", [5, 6, 7])
    def test_reg_and_type(self, t, pfaffian5, pfaffian6, pfaffian7):
        X, seq = {5: pfaffian5, 6: pfaffian6, 7: pfaffian7}[t]
        res = minimal_resolution(seq.ideal())
        assert res.betti.reg() == t - 4
        assert cm_type(res.betti) == t - 3
        # Cohen-Macaulay: depth = dim
        I = seq.ideal()
        assert I.ring.nvars - res.betti.pd() == I.krull_dim()


class TestHilbertBurch:
    def test_generic_linear(self, generic_hb):
        I = generic_hb.ideal()
        assert I.height() == 2
        assert len(I.gens) == 3
        assert all(d == (2,) for d in generic_hb.degrees)

    def test_with_nontrivial_z(self):
        R = Ring("z0,z11,z12,z21,z22,z31,z32")
        Z = [[R.var("z11"), R.var("z12")],
             [R.var("z21"), R.var("z22")],
             [R.var("z31"), R.var("z32")]]
        seq = hilbert_burch_ideal(Z, R.var("z0"))
        assert all(d == (3,) for d in seq.degrees)
        I = seq.ideal()
        # a non-unit z drops the height to 1 (the hypersurface z = 0) but
        # keeps the presentation: the resolution shape is unchanged
        assert I.height() == 1
        res = minimal_resolution(I)
        assert [res.betti.total(k) for k in range(3)] == [1, 3, 2]

    def test_low_grade_rejected(self):
        R = Ring("a,b")
        a, b = R.vars()
        Z = [[a, b], [a, b], [a, b]]  # rank-deficient rows: minors vanish
        with pytest.raises(Exception):
            hilbert_burch_ideal(Z)


class TestCiPlusOne:
    def test_monomial_example(self, monomial_aci):
        R, gens = monomial_aci
        seq = ci_plus_one(gens[:2], gens[2])
        assert len(seq.fs) == 3
        I = seq.ideal()
        assert I.height() == 2

    def test_member_rejected(self, ring_xyz):
        x, y, _ = ring_xyz.vars()
        with pytest.raises(GradeMismatchError):
            ci_plus_one([x, y], x)

    def test_linear_forms_plus_quadric(self):
        # the prefix ideal here is prime, so adjoining any g outside it
        # necessarily raises the height: mu = n+1 but ht = n+1 too (a
        # complete intersection); ht = n needs a non-prime prefix as in
        # the monomial example
        R = Ring("a,b,c,d")
        a, b, c, d = R.vars()
        seq = ci_plus_one([a, b], c * d)
        I = seq.ideal()
        assert len(I.gens) == 3
        assert I.height() == 3

    def test_six_variable_height_gap(self):
        # non-prime prefix: the three-factor analogue of the monomial
        # example keeps mu = ht + 1
        R = Ring("x1,x2,x3,x4,x5,x6")
        J = [R.poly("x1*x2"), R.poly("x3*x4"), R.poly("x5*x6")]
        seq = ci_plus_one(J, R.poly("x2*x3"))
        I = seq.ideal()
        assert I.height() == 3 and len(I.gens) == 4
