from fractions import Fraction

import pytest

from krspectra.glrep import build_irrep
from krspectra.scalars import QQi
from krspectra.tableaux import (
    CrystalError,
    Tableau,
    build_crystal,
    canonical_weight,
    character_eval,
    decompose_normal,
    e_op,
    enumerate_ssyt,
    f_op,
    schur_polynomial,
    string_data,
)


def tab(rows, n):
    return Tableau(rows, n)


class TestOperators:
    def test_f1_undefined_when_no_unmatched(self):
        # no SSYT of shape 2x2 has content (1,3,0,0): f_1 must vanish here
        t = tab([[1, 1], [2, 2]], 4)
        assert f_op(1, t) is None

    def test_f3_single_three(self):
        t = tab([[1, 1], [2, 3]], 4)
        assert f_op(3, t) == tab([[1, 1], [2, 4]], 4)

    def test_f1_one_box(self):
        assert f_op(1, tab([[1]], 2)) == tab([[2]], 2)

    def test_e2_spec_example(self):
        # reading word of [[1,1],[2,3]] is 2,1,3,1; e_2 turns the 3 into 2
        t = tab([[1, 1], [2, 3]], 4)
        assert e_op(2, t) == tab([[1, 1], [2, 2]], 4)

    def test_e1_highest_weight(self):
        assert e_op(1, tab([[1]], 3)) is None

    def test_e_f_inverse_exhaustive_on_2x2(self):
        g = build_crystal(4, (2, 2))
        for t in g.elements:
            for i in (1, 2, 3):
                ft = f_op(i, t)
                if ft is not None:
                    assert e_op(i, ft) == t
                et = e_op(i, t)
                if et is not None:
                    assert f_op(i, et) == t

    def test_results_stay_semistandard(self):
        for t in enumerate_ssyt((3, 1), 3):
            for i in (1, 2):
                for im in (f_op(i, t), e_op(i, t)):
                    if im is not None:
                        assert im.is_semistandard()


class TestBuild:
    def test_2w2_has_20_elements(self):
        g = build_crystal(4, (2, 2))
        assert len(g) == 20

    def test_w1_n2(self):
        g = build_crystal(2, (1,))
        assert len(g) == 2
        assert len(g.f_maps[1]) == 1

    def test_shape_21_n3(self):
        g = build_crystal(3, (2, 1))
        assert len(g) == 8

    def test_cap(self):
        with pytest.raises(CrystalError):
            build_crystal(4, (2, 2), cap=5)

    def test_axioms_hold(self):
        for (n, lam) in [(2, (2,)), (3, (2, 1)), (4, (2, 2))]:
            g = build_crystal(n, lam)
            assert g.check_axioms() is None

    def test_cardinality_matches_glrep_dim(self):
        for (n, l, r) in [(3, 2, 1), (3, 2, 2), (4, 2, 2)]:
            g = build_crystal(n, (l,) * r)
            assert len(g) == build_irrep(n, l, r).dim

    def test_weight_multiset_matches_glrep(self):
        from krspectra.glrep import weight_multiplicities

        for (n, l, r) in [(3, 2, 1), (4, 2, 2)]:
            g = build_crystal(n, (l,) * r)
            counts = {}
            for t in g.elements:
                counts[g.wt[t]] = counts.get(g.wt[t], 0) + 1
            assert counts == weight_multiplicities(build_irrep(n, l, r))


class TestStrings:
    def test_one_box_strings(self):
        g = build_crystal(2, (1,))
        one = tab([[1]], 2)
        two = tab([[2]], 2)
        assert string_data(g, 1, one) == (0, 1)
        assert string_data(g, 1, two) == (1, 0)

    def test_2x2_f2_string(self):
        g = build_crystal(4, (2, 2))
        t = tab([[1, 1], [2, 2]], 4)
        assert string_data(g, 2, t) == (0, 2)


class TestDecompose:
    def test_single_component(self):
        g = build_crystal(2, (1,))
        comps = decompose_normal(g)
        assert len(comps) == 1
        assert comps[0]["normal"]
        assert comps[0]["lambda"] == (1, 0)
        assert comps[0]["sources"] == [tab([[1]], 2)]

    def test_each_component_unique_source_sink(self):
        g = build_crystal(3, (2, 1))
        for comp in decompose_normal(g):
            assert comp["normal"]

    def test_component_character_matches_schur(self):
        g = build_crystal(3, (2, 1))
        comps = decompose_normal(g)
        xs = [Fraction(2), Fraction(1, 3), Fraction(5, 7)]
        for comp in comps:
            lam = [x for x in comp["lambda"] if x]
            assert character_eval(g, comp["elements"], xs) == schur_polynomial(
                lam, xs
            )


class TestCanonicalWeight:
    def test_subtract_min(self):
        assert canonical_weight((3, 1, 2)) == (2, 0, 1)
        assert canonical_weight((0, 0)) == (0, 0)
