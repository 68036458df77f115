"""Brute-force Hilbert functions of Koszul modules W(V, K) over F_p.

W(V, K) is the middle homology of  K (x) S  ->  V (x) S(1)  ->  S(2)  over the
symmetric algebra S on V = k^n, for a subspace K of the second exterior power
given by an explicit coefficient matrix.  Degree by degree,

    dim W_j = dim ker(first map out of V (x) S_{j+1}) - rank(second map on K (x) S_j),

where the kernel dimension is n*C(n+j, n-1) - C(n+j+1, n-1) because monomial
multiplication is onto.  Generic full-rank K of dimension 2n-3 makes W finite
length, which is what the sharp vanishing bound 2n-7 is about.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import comb
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .arith import SparseMat, as_prime, rank_mod_p
from .closedform import sym_stable_poly
from .ranks import rank_auto

logger = logging.getLogger("stablecoh.koszul")

N_MIN, N_MAX = 3, 8
RESAMPLE_LIMIT = 64


def variable_pairs(n: int) -> List[Tuple[int, int]]:
    """Column order for K matrices: pairs (i, j), i < j, lexicographic."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class KoszulInstance:
    n: int
    p: int
    m: int
    k_basis: Tuple[Tuple[int, ...], ...]  # m rows of C(n,2) residues
    seed: int

    def __post_init__(self):
        if not N_MIN <= self.n <= N_MAX:
            raise ValueError(f"n must be in [{N_MIN}, {N_MAX}]")
        pairs = comb(self.n, 2)
        if len(self.k_basis) != self.m or any(len(r) != pairs for r in self.k_basis):
            raise ValueError("K basis must be an m x C(n,2) matrix")
        if _k_rank(self.k_basis, self.p) != self.m:
            raise ValueError("K basis must have full rank over F_p")


def _k_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    ent = {}
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if v % p:
                ent[(r, c)] = v % p
    return rank_mod_p(SparseMat(len(rows), len(rows[0]) if rows else 0, p, ent))


def sample_generic_K(n: int, m: int, p, seed: int) -> KoszulInstance:
    """Uniform random full-rank K from a seeded deterministic stream; retries
    within the same stream and fails after a fixed number of resamples."""
    pv = as_prime(p)
    pairs = comb(n, 2)
    if m > pairs:
        raise ValueError(f"m = {m} exceeds dim of the second exterior power C({n},2) = {pairs}")
    rng = random.Random(seed)
    for _ in range(RESAMPLE_LIMIT):
        rows = tuple(tuple(rng.randrange(pv) for _ in range(pairs)) for _ in range(m))
        if _k_rank(rows, pv) == m:
            return KoszulInstance(n, pv, m, rows, seed)
    raise RuntimeError(f"no full-rank K found in {RESAMPLE_LIMIT} samples (n={n}, m={m}, p={pv})")


# ---------------------------------------------------------------------------
# monomial bookkeeping (degrevlex, fixed variable order)
# ---------------------------------------------------------------------------

def monomials(n: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent tuples of the given degree, in descending degrevlex order."""
    out: List[Tuple[int, ...]] = []

    def rec(prefix: List[int], remaining: int, slot: int):
        if slot == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slot + 1)

    rec([], degree, 0)
    out.sort(key=lambda mono: tuple(reversed(mono)))
    return out


@dataclass(frozen=True)
class HilbertTail:
    """dim W_j for j = 0..j_max; zero entries only ever extend to the right."""

    dims: Tuple[int, ...]

    def __post_init__(self):
        seen_zero = False
        for v in self.dims:
            if seen_zero and v != 0:
                raise AssertionError("Hilbert function grew back after hitting zero")
            seen_zero = seen_zero or v == 0

    def __iter__(self):
        return iter(self.dims)


def _delta2_entries(inst: KoszulInstance, j: int,
                    monos_j: List[Tuple[int, ...]], idx_next: Dict[Tuple[int, ...], int]
                    ) -> Dict[Tuple[int, int], int]:
    """Sparse entries of the map K (x) S_j -> V (x) S_{j+1}: a wedge generator
    v ^ v' sends f to v (x) v'f - v' (x) vf."""
    n, p = inst.n, inst.p
    pairs = variable_pairs(n)
    s_next = len(idx_next)
    ent: Dict[Tuple[int, int], int] = {}
    for s, krow in enumerate(inst.k_basis):
        terms = [(pairs[t], v % p) for t, v in enumerate(krow) if v % p]
        for t, mono in enumerate(monos_j):
            col = s * len(monos_j) + t
            for (i, jj), cv in terms:
                bumped_j = list(mono); bumped_j[jj] += 1
                bumped_i = list(mono); bumped_i[i] += 1
                r1 = i * s_next + idx_next[tuple(bumped_j)]
                r2 = jj * s_next + idx_next[tuple(bumped_i)]
                ent[(r1, col)] = (ent.get((r1, col), 0) + cv) % p
                ent[(r2, col)] = (ent.get((r2, col), 0) - cv) % p
    return {k: v for k, v in ent.items() if v}


def _assert_koszul_identity(inst: KoszulInstance, j: int,
                            entries: Dict[Tuple[int, int], int],
                            monos_next: List[Tuple[int, ...]]):
    """Multiplication after the wedge map must vanish column by column."""
    n, p = inst.n, inst.p
    s_next = len(monos_next)
    acc: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    for (r, c), v in entries.items():
        var, mono = divmod(r, s_next)
        bumped = list(monos_next[mono]); bumped[var] += 1
        key = (c, tuple(bumped))
        acc[key] = (acc.get(key, 0) + v) % p
    if any(acc.values()):
        raise AssertionError("the composite of the two Koszul maps is nonzero")


def _assert_multiplication_onto(n: int, degree: int):
    """Every monomial of positive degree is divisible by its first variable,
    which exhibits a preimage under multiplication row by row."""
    for mono in monomials(n, degree):
        if not any(e > 0 for e in mono):
            raise AssertionError("multiplication map misses a monomial")


def _dim_at_degree(inst: KoszulInstance, j: int) -> int:
    """dim W_j by one rank computation; degrees are independent."""
    n, p, m = inst.n, inst.p, inst.m
    monos_j = monomials(n, j)
    monos_next = monomials(n, j + 1)
    idx_next = {mono: i for i, mono in enumerate(monos_next)}
    ent = _delta2_entries(inst, j, monos_j, idx_next)
    _assert_koszul_identity(inst, j, ent, monos_next)
    _assert_multiplication_onto(n, j + 2)
    ker = n * comb(n + j, n - 1) - comb(n + j + 1, n - 1)
    rank = rank_auto(ent, n * len(monos_next), m * len(monos_j), p)
    return ker - rank


def koszul_dims(inst: KoszulInstance, j_max: Optional[int] = None,
                short_circuit: bool = True) -> HilbertTail:
    """dim W_j for j = 0..j_max (default 2n-6).

    With ``short_circuit`` the computation stops at the first zero and pads,
    which degree-zero generation justifies; pass False to compute every degree
    honestly (the monotone-vanishing tests do).
    """
    n, p, m = inst.n, inst.p, inst.m
    if j_max is None:
        j_max = 2 * n - 6
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    if n == 8 and p == 2:
        logger.warning("n=8, p=2 Koszul tables take minutes")
    dims: List[int] = []
    for j in range(j_max + 1):
        if short_circuit and dims and dims[-1] == 0:
            dims.append(0)
            continue
        dims.append(_dim_at_degree(inst, j))
    if dims and dims[0] != comb(n, 2) - m:
        raise AssertionError(f"dim W_0 = {dims[0]} but a full-rank K forces {comb(n, 2) - m}")
    return HilbertTail(tuple(dims))


class TailPrediction(NamedTuple):
    j_star: int            # 2n - 8, the last degree that can survive
    dim: int               # forced dimension there: 1 iff n - 3 is a p-power
    vanishing_bound: int   # 2n - 7, where vanishing is guaranteed


def predicted_tail(n: int, p) -> TailPrediction:
    """The finite-length tail forced by the symmetric-power calculation: the
    t^1 coefficient of the degree n-3 stable polynomial, sitting in degree
    2n-8, with guaranteed vanishing from 2n-7 on."""
    if n < 4:
        raise ValueError("tail prediction needs n >= 4")
    dim = sym_stable_poly(n - 3, p).coeff(1)
    return TailPrediction(2 * n - 8, dim, 2 * n - 7)


def verified_dims(n: int, m: int, p, seed: int, j_max: Optional[int] = None,
                  max_resamples: int = 32) -> Tuple[KoszulInstance, HilbertTail]:
    """Sample, compute, and resample (logging each rejection) until the
    genericity certificate dims[2n-7] = 0 holds.

    The certificate degree 2n-7 is probed first, so rejected samples cost one
    rank computation; a zero there forces zeros in every higher degree, which
    extends a certified tail to any j_max by padding.
    """
    pv = as_prime(p)
    bound = 2 * n - 7
    if j_max is None:
        j_max = 2 * n - 6
    if bound < 0:
        inst = sample_generic_K(n, m, pv, seed)
        return inst, koszul_dims(inst, j_max=j_max)
    rng_seed = seed
    for _ in range(max_resamples):
        inst = sample_generic_K(n, m, pv, rng_seed)
        at_bound = _dim_at_degree(inst, bound)
        if at_bound == 0:
            tail = koszul_dims(inst, j_max=bound - 1) if bound else HilbertTail(())
            dims = tail.dims + (0,) * (j_max - bound + 1)
            return inst, HilbertTail(dims[: j_max + 1])
        logger.info("seed %d failed genericity (dim W_%d = %d); resampling",
                    rng_seed, bound, at_bound)
        rng_seed = rng_seed * 0x9E3779B97F4A7C15 % (1 << 64) + 1
    raise RuntimeError(f"no generic K found after {max_resamples} samples")


# ---------------------------------------------------------------------------
# plain-text import/export of K matrices
# ---------------------------------------------------------------------------

def export_K(inst: KoszulInstance) -> str:
    lines = [f"{inst.n} {inst.m} {inst.p}"]
    lines += [" ".join(str(v) for v in row) for row in inst.k_basis]
    return "\n".join(lines) + "\n"


def import_K(text: str, seed: int = 0) -> KoszulInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty K matrix text")
    n, m, p = (int(tok) for tok in lines[0].split())
    rows = tuple(tuple(int(tok) % p for tok in ln.split()) for ln in lines[1:])
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, found {len(rows)}")
    return KoszulInstance(n, as_prime(p), m, rows, seed)
