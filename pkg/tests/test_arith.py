import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablecoh.arith import (
    CohPoly,
    Fp,
    Prime,
    SeriesTU,
    SparseMat,
    binom_mod_p,
    binom_residue,
    poly_mul,
    poly_reverse,
    rank_mod_p,
)


def exact_binom(x: int, i: int) -> int:
    """Independent oracle: the product formula x(x-1)...(x-i+1)/i! over Z."""
    num = math.prod(x - s for s in range(i))
    return num // math.factorial(i)


def dense_rank(entries, rows, cols, p):
    """Independent oracle: plain dense row reduction."""
    a = [[entries.get((r, c), 0) % p for c in range(cols)] for r in range(rows)]
    rank = 0
    row = 0
    for c in range(cols):
        piv = next((r for r in range(row, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][c], -1, p)
        a[row] = [(v * inv) % p for v in a[row]]
        for r in range(rows):
            if r != row and a[r][c]:
                f = a[r][c]
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[row])]
        row += 1
        rank += 1
    return rank


class TestPrimeAndFp:
    def test_prime_accepts_primes(self):
        for p in (2, 3, 5, 7, 11, 97):
            assert Prime(p).value == p

    @pytest.mark.parametrize("n", [0, 1, 4, 9, 15, 91])
    def test_prime_rejects_composites(self, n):
        with pytest.raises(ValueError):
            Prime(n)

    def test_fp_arithmetic(self):
        a, b = Fp(2, 5), Fp(4, 5)
        assert a + b == Fp(1, 5)
        assert a - b == Fp(3, 5)
        assert a * b == Fp(3, 5)
        assert b.inverse() * b == Fp(1, 5)

    def test_fp_range_checked(self):
        with pytest.raises(ValueError):
            Fp(5, 5)

    def test_fp_mixed_moduli_rejected(self):
        with pytest.raises(ValueError):
            Fp(1, 3) + Fp(1, 5)


class TestBinom:
    def test_spec_examples(self):
        assert binom_mod_p(3, 2, 2) == Fp(1, 2)
        # (-10)(-11)(-12)/6 = -220, then reduce mod 3
        assert exact_binom(-10, 3) == -220
        assert binom_mod_p(-10, 3, 3) == Fp((-220) % 3, 3) == Fp(2, 3)
        assert binom_mod_p(6, 3, 3) == Fp(2, 3) == binom_mod_p(2, 1, 3)

    def test_against_exact_oracle(self):
        for p in (2, 3, 5, 7):
            for x in range(-50, 51):
                for i in range(0, 13):
                    assert binom_residue(x, i, p) == exact_binom(x, i) % p, (x, i, p)

    def test_scaling_identity(self):
        # C(pm, pv) = C(m, v) mod p, including negative m
        for p in (2, 3, 5):
            for m in range(-20, 21):
                for v in range(0, 9):
                    assert binom_residue(p * m, p * v, p) == binom_residue(m, v, p)

    @given(st.integers(-10**6, 10**6), st.integers(0, 40), st.sampled_from([2, 3, 5, 7, 11]))
    @settings(max_examples=200)
    def test_matches_oracle_everywhere(self, x, i, p):
        assert binom_residue(x, i, p) == exact_binom(x, i) % p

    def test_negative_lower_rejected(self):
        with pytest.raises(ValueError):
            binom_residue(3, -1, 5)


class TestRank:
    def test_trivial_examples(self):
        eye = SparseMat(2, 2, 3, {(0, 0): 1, (1, 1): 1})
        assert rank_mod_p(eye) == 2
        assert rank_mod_p(SparseMat(3, 4, 5)) == 0
        ones = SparseMat(2, 2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
        assert rank_mod_p(ones) == 1

    def test_against_dense_oracle(self):
        rng = random.Random(42)
        for trial in range(40):
            p = rng.choice([2, 3, 5])
            rows, cols = rng.randrange(1, 51), rng.randrange(1, 51)
            entries = {}
            for r in range(rows):
                for c in range(cols):
                    if rng.random() < 0.15:
                        entries[(r, c)] = rng.randrange(1, p)
            got = rank_mod_p(SparseMat(rows, cols, p, entries))
            assert got == dense_rank(entries, rows, cols, p), (trial, p, rows, cols)

    def test_entry_bookkeeping(self):
        m = SparseMat(2, 2, 3)
        m.add_at(0, 0, 2)
        m.add_at(0, 0, 1)  # cancels mod 3
        assert m.nnz == 0
        with pytest.raises(IndexError):
            m.set(2, 0, 1)

    def test_matmul(self):
        a = SparseMat(2, 2, 5, {(0, 0): 2, (1, 1): 3})
        b = SparseMat(2, 2, 5, {(0, 0): 3, (1, 0): 1})
        c = a.matmul(b)
        assert c.get(0, 0) == 1 and c.get(1, 0) == 3


class TestCohPoly:
    def test_reverse_examples(self):
        p = CohPoly({1: 1, 2: 1})
        assert poly_reverse(p, 4) == CohPoly({3: 1, 2: 1})
        assert poly_reverse(CohPoly.one(), 0) == CohPoly.one()
        q = CohPoly({2: 1, 3: 2, 4: 1, 5: 1, 6: 1})
        assert poly_reverse(q, 6) == CohPoly({4: 1, 3: 2, 2: 1, 1: 1, 0: 1})

    def test_reverse_rejects_large_degree(self):
        with pytest.raises(ValueError):
            poly_reverse(CohPoly({3: 1}), 2)

    @given(st.dictionaries(st.integers(0, 12), st.integers(1, 9), max_size=6),
           st.integers(12, 20))
    def test_reverse_involution(self, coeffs, n):
        p = CohPoly(coeffs)
        assert poly_reverse(poly_reverse(p, n), n) == p

    def test_mul_examples(self):
        t = CohPoly.t_power
        assert poly_mul(CohPoly.one(), CohPoly({2: 3})) == CohPoly({2: 3})
        lin = t(1) + t(2)
        assert poly_mul(lin, lin) == CohPoly({2: 1, 3: 2, 4: 1})

    def test_no_zero_coefficients_stored(self):
        assert CohPoly({2: 0}).is_zero()
        with pytest.raises(ValueError):
            CohPoly({1: -2})
        with pytest.raises(ValueError):
            CohPoly({-1: 2})

    def test_text_forms(self):
        assert CohPoly.zero().text() == "0"
        assert CohPoly({0: 1}).text() == "1"
        assert CohPoly({1: 1, 2: 2}).text() == "t + 2t^2"
        assert CohPoly({2: 1, 3: 2}).text() == "t^2 + 2t^3"

    def test_support_intervals(self):
        p = CohPoly({1: 1, 2: 1, 5: 1, 6: 1, 9: 2})
        assert p.support_intervals() == [(1, 2), (5, 6), (9, 9)]


class TestSeriesTU:
    def test_mul_truncates(self):
        u = SeriesTU.monomial(3, 0, 2)
        assert dict((u * u).u_coeff(3)) == {}
        sq = u * u
        assert sq.truncation_order == 3

    def test_substitute_extends_validity(self):
        s = SeriesTU.monomial(2, 1, 1) + SeriesTU.const(2, 1)
        t = s.substitute_u_power(3)
        assert t.truncation_order == 8
        assert dict(t.u_coeff(3)) == {1: 1}
        assert dict(t.u_coeff(6)) == {}

    def test_shift_down_requires_exactness(self):
        s = SeriesTU.monomial(4, 0, 1)
        with pytest.raises(ArithmeticError):
            s.shift_down_u(2)
        ok = SeriesTU.monomial(4, 2, 3).shift_down_u(3)
        assert dict(ok.u_coeff(0)) == {2: 1}
