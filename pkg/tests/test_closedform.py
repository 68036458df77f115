import pytest

from stablecoh.arith import CohPoly
from stablecoh.closedform import (
    enumerate_Apd,
    hook_nonvanishing,
    p_index,
    series_A,
    series_H,
    series_H_coeff,
    sym_stable_poly,
    truncated_sym_poly,
)
from stablecoh.hooks import hook_poly


def poly(pairs):
    return CohPoly(dict(pairs))


class TestPIndex:
    def test_examples(self):
        assert p_index(4, 3) == 3
        for p in (2, 3, 5, 7):
            assert p_index(0, p) == 0
        assert p_index(6, 2) == 6

    def test_p3_table(self):
        table = {0: 0, 1: 1, 3: 2, 4: 3, 6: 4, 7: 5, 9: 6, 10: 7}
        for m, idx in table.items():
            assert p_index(m, 3) == idx

    def test_rejects_bad_residues(self):
        with pytest.raises(ValueError):
            p_index(5, 3)
        with pytest.raises(ValueError):
            p_index(2, 5)


class TestEnumeration:
    def test_known_sets(self):
        assert {t.digits for t in enumerate_Apd(2, 6)} == {
            (0, 1, 1), (2, 0, 1), (0, 3), (2, 2), (4, 1), (6,)}
        assert {t.digits for t in enumerate_Apd(3, 6)} == {(3, 1), (6,)}
        for p in (3, 5):
            assert {t.digits for t in enumerate_Apd(p, p * p)} == {
                (0, 0, 1), (0, p), (p * p - p, 1), (p * p,)}

    def test_zero(self):
        assert [t.digits for t in enumerate_Apd(5, 0)] == [(0,)]

    def test_lexicographic_order(self):
        tuples = [t.digits for t in enumerate_Apd(2, 12)]
        assert tuples == sorted(tuples)

    def test_tuple_validity_and_index_additivity(self):
        for p in (2, 3, 5):
            for d in range(0, 30):
                for tup in enumerate_Apd(p, d):
                    digits = tup.digits
                    assert all(a % p in (0, 1) for a in digits)
                    assert sum(a * p ** i for i, a in enumerate(digits)) == d
                    if digits != (0,):
                        assert digits[-1] != 0
                    assert tup.index == sum(p_index(a, p) for a in digits)


class TestSymPoly:
    def test_example_d6(self):
        assert sym_stable_poly(6, 2) == poly([(2, 1), (3, 2), (4, 1), (5, 1), (6, 1)])
        assert sym_stable_poly(6, 3) == poly([(3, 1), (4, 1)])
        assert sym_stable_poly(6, 5) == poly([(2, 1), (3, 1)])
        assert sym_stable_poly(6, 7).is_zero()
        assert sym_stable_poly(7, 5).is_zero()

    def test_p_squared(self):
        for p in (2, 3, 5):
            assert sym_stable_poly(p * p, p) == poly([(1, 1), (2, 1), (2 * p - 1, 1), (2 * p, 1)])

    def test_support_and_vanishing(self):
        for p in (2, 3, 5, 7):
            for d in range(1, 41):
                s = sym_stable_poly(d, p)
                if d >= 2 and d % p not in (0, 1):
                    assert s.is_zero()
                elif not s.is_zero():
                    assert 1 <= min(s.support()) and max(s.support()) <= d

    def test_recursion_identity(self):
        # scaling recursion: top digit splits off or the whole tuple divides by p
        for p in (2, 3, 5):
            for d in range(1, 13):
                lhs = sym_stable_poly(p * d, p)
                rhs = sym_stable_poly(p * d - p + 1, p).shifted(1) + sym_stable_poly(d, p)
                assert lhs == rhs, (d, p)


class TestTruncated:
    def test_examples(self):
        assert truncated_sym_poly(6, 3) == CohPoly.t_power(4)
        assert truncated_sym_poly(5, 3).is_zero()
        for d in range(0, 12):
            assert truncated_sym_poly(d, 2) == CohPoly.t_power(d)

    def test_sweep(self):
        for p in (2, 3, 5, 7):
            for d in range(0, 31):
                got = truncated_sym_poly(d, p)
                if d % p in (0, 1):
                    assert got == CohPoly.t_power(p_index(d, p))
                else:
                    assert got.is_zero()


class TestNonvanishing:
    def test_examples(self):
        assert hook_nonvanishing(2, 1, 2) is False
        assert hook_nonvanishing(4, 3, 3) is True
        assert hook_nonvanishing(5, 1, 3) is True

    def test_derived_values_match_recursion(self):
        assert hook_poly(2, 1, 2).is_zero()
        assert hook_poly(5, 1, 3) == poly([(4, 1), (5, 1)])


class TestSeries:
    def test_series_A_low_coefficients(self):
        for p in (2, 3, 5):
            a = series_A(p, 3 * p)
            assert dict(a.u_coeff(0)) == {0: 1}
            assert dict(a.u_coeff(p)) == {1: 1, 2: 1}

    def test_series_A_matches_sym(self):
        for p in (2, 3):
            a = series_A(p, 24)
            for d in range(0, 25 // p):
                assert dict(a.u_coeff(p * d)) == sym_stable_poly(p * d, p).coeffs()

    def test_series_H_examples(self):
        assert series_H_coeff(0, 2, 6) == poly([(2, 1), (3, 2), (4, 1), (5, 1), (6, 1)])
        for p in (2, 3, 5):
            for b in range(0, 8):
                assert series_H_coeff(b, p, 1) == CohPoly.t_power(b + 1)

    def test_series_H_matches_recursion(self):
        for p in (2, 3, 5):
            for b in range(0, 11):
                h = series_H(b, p, 15)
                for a in range(1, 16):
                    coeff = CohPoly(h.u_coeff(a))
                    assert coeff == hook_poly(a, b, p), (a, b, p)

    def test_vanishing_iff_criterion(self):
        for p in (2, 3):
            for b in range(0, 9):
                h = series_H(b, p, 12)
                for a in range(1, 13):
                    empty = not h.u_coeff(a)
                    assert empty == (not hook_nonvanishing(a, b, p)), (a, b, p)

    def test_umax_validation(self):
        with pytest.raises(ValueError):
            series_H(0, 2, 0)
