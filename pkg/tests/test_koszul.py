import math

import pytest

from stablecoh.koszul import (
    HilbertTail,
    KoszulInstance,
    export_K,
    import_K,
    koszul_dims,
    monomials,
    predicted_tail,
    sample_generic_K,
    variable_pairs,
    verified_dims,
)
from stablecoh.ranks import rank_dense_mod_p, rank_gf2_packed
from stablecoh.arith import SparseMat, rank_mod_p


class TestSampling:
    def test_determinism(self):
        a = sample_generic_K(6, 9, 3, seed=1)
        b = sample_generic_K(6, 9, 3, seed=1)
        assert a.k_basis == b.k_basis

    def test_rank_assertion(self):
        inst = sample_generic_K(6, 9, 3, seed=1)
        assert inst.m == 9 and len(inst.k_basis) == 9

    def test_oversized_m_rejected(self):
        with pytest.raises(ValueError):
            sample_generic_K(4, 7, 2, seed=0)

    def test_rank_deficient_basis_rejected(self):
        rows = ((1, 0, 0, 0, 0, 0), (2, 0, 0, 0, 0, 0))
        with pytest.raises(ValueError):
            KoszulInstance(4, 3, 2, rows, seed=0)

    def test_n_range(self):
        with pytest.raises(ValueError):
            sample_generic_K(9, 3, 3, seed=0)


class TestMonomials:
    def test_counts(self):
        for n in (3, 5, 7):
            for d in (0, 1, 4):
                assert len(monomials(n, d)) == math.comb(n + d - 1, n - 1)

    def test_degrevlex_head(self):
        # descending order starts at the pure power of the first variable
        assert monomials(3, 2)[0] == (2, 0, 0)
        assert monomials(3, 2)[-1] == (0, 0, 2)

    def test_pair_order(self):
        assert variable_pairs(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


class TestDims:
    def test_char_zero_like_tables(self):
        # large p: vanishing from degree n-3 on, with the known leading values
        expectations = {4: (1,), 5: (3, 5), 6: (6, 16, 21)}
        for n, prefix in expectations.items():
            inst = sample_generic_K(n, 2 * n - 3, 31, seed=3)
            tail = koszul_dims(inst)
            assert tail.dims[: len(prefix)] == prefix
            assert all(v == 0 for v in tail.dims[len(prefix):])

    def test_degree_zero_dimension(self):
        for n, m, p in [(4, 3, 5), (5, 6, 3), (6, 9, 7)]:
            inst = sample_generic_K(n, m, p, seed=2)
            tail = koszul_dims(inst, j_max=1)
            assert tail.dims[0] == math.comb(n, 2) - m

    def test_monotone_vanishing_honest(self):
        # no short circuit: every degree computed, zeros never recover
        for seed in (1, 2, 3):
            inst = sample_generic_K(5, 7, 3, seed=seed)
            tail = koszul_dims(inst, j_max=5, short_circuit=False)
            seen_zero = False
            for v in tail.dims:
                if seen_zero:
                    assert v == 0
                seen_zero = seen_zero or v == 0

    def test_short_circuit_matches_honest(self):
        inst = sample_generic_K(5, 7, 5, seed=4)
        fast = koszul_dims(inst, j_max=4, short_circuit=True)
        slow = koszul_dims(inst, j_max=4, short_circuit=False)
        assert fast.dims == slow.dims

    def test_tail_invariant_enforced(self):
        with pytest.raises(AssertionError):
            HilbertTail((3, 0, 1))


class TestPrediction:
    def test_examples(self):
        assert predicted_tail(6, 3)[:2] == (4, 1)
        assert predicted_tail(8, 2)[:2] == (8, 0)
        assert predicted_tail(7, 2)[:2] == (6, 1)
        assert predicted_tail(6, 3).vanishing_bound == 5

    def test_power_characterization(self):
        for p in (2, 3, 5):
            for n in range(4, 31):
                expected = 1 if _is_p_power(n - 3, p) else 0
                assert predicted_tail(n, p).dim == expected, (n, p)

    def test_requires_n_at_least_4(self):
        with pytest.raises(ValueError):
            predicted_tail(3, 2)


def _is_p_power(x, p):
    while x % p == 0:
        x //= p
    return x == 1


class TestVerifiedWorkflow:
    def test_small_case_certifies(self):
        inst, tail = verified_dims(5, 7, 3, seed=1)
        assert tail.dims[2 * 5 - 7] == 0
        assert tail.dims[0] == math.comb(5, 2) - 7

    def test_padding_matches_honest_extension(self):
        inst, tail = verified_dims(5, 7, 5, seed=1, j_max=6)
        honest = koszul_dims(inst, j_max=6, short_circuit=False)
        assert tail.dims == honest.dims


class TestImportExport:
    def test_round_trip(self):
        inst = sample_generic_K(5, 7, 3, seed=9)
        text = export_K(inst)
        back = import_K(text, seed=9)
        assert back.k_basis == inst.k_basis
        assert back.n == 5 and back.m == 7 and back.p == 3
        assert text.splitlines()[0] == "5 7 3"

    def test_import_validates(self):
        with pytest.raises(ValueError):
            import_K("4 2 3\n1 0 0 0 0 0\n")


class TestRankEnginesOnKoszulShapes:
    def test_engines_agree_on_structured_matrix(self):
        from stablecoh.koszul import _delta2_entries
        inst = sample_generic_K(5, 7, 3, seed=6)
        monos_j = monomials(5, 2)
        monos_next = monomials(5, 3)
        idx = {m: i for i, m in enumerate(monos_next)}
        ent = _delta2_entries(inst, 2, monos_j, idx)
        rows, cols = 5 * len(monos_next), 7 * len(monos_j)
        sparse = rank_mod_p(SparseMat(rows, cols, 3, ent))
        dense = rank_dense_mod_p([(r, c, v) for (r, c), v in ent.items()], rows, cols, 3)
        assert sparse == dense

    def test_gf2_engine_agrees(self):
        from stablecoh.koszul import _delta2_entries
        inst = sample_generic_K(5, 7, 2, seed=6)
        monos_j = monomials(5, 2)
        monos_next = monomials(5, 3)
        idx = {m: i for i, m in enumerate(monos_next)}
        ent = _delta2_entries(inst, 2, monos_j, idx)
        rows, cols = 5 * len(monos_next), 7 * len(monos_j)
        sparse = rank_mod_p(SparseMat(rows, cols, 2, ent))
        packed = rank_gf2_packed(list(ent.keys()), rows, cols)
        assert sparse == packed
