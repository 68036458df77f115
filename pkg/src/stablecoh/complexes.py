"""Arithmetic chain complexes over F_p attached to weighted path graphs.

A weight tuple (w_0, ..., w_d) labels the vertices of a path with d edges.
Basis elements of the complex sit on edge subsets J of {1, ..., d} (stored as
bitmasks, bit j-1 for edge j); the differential drops one edge at a time, with
coefficient a signed binomial of the merged interval weights reduced mod p.
The reversed homology polynomial of this complex is the stable cohomology of
the ribbon Schur bundle with those column lengths; a companion two-column
complex is its sign-exact dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import CohPoly, SparseMat, as_prime, binom_residue, rank_mod_p
from .partitions import RibbonComposition
from .ranks import BudgetExceeded, matrix_budget_bytes

MAX_EDGES = 24  # basis size 2^d guard

ENTRY_BYTES = 120  # rough dict storage per differential entry


def _check_basis_budget(d: int):
    # about d * 2^(d-1) potential entries across all differentials
    need = d * (1 << max(d - 1, 0)) * ENTRY_BYTES
    if need > matrix_budget_bytes():
        raise BudgetExceeded(
            f"complex on {d} edges needs about {need // (1024 * 1024)} MiB; "
            f"raise STABLECOH_BUDGET_MB to allow it")


@dataclass(frozen=True)
class WeightedComposition:
    """Vertex weights (w_0, ..., w_d); interior weights >= 0, last arbitrary."""

    w: Tuple[int, ...]

    def __post_init__(self):
        if not self.w:
            raise ValueError("weight tuple must be nonempty")
        if any(x < 0 for x in self.w[:-1]):
            raise ValueError("all weights except the last must be >= 0")


def _as_weights(w) -> Tuple[int, ...]:
    if isinstance(w, WeightedComposition):
        return w.w
    if isinstance(w, RibbonComposition):
        return w.w
    return WeightedComposition(tuple(int(x) for x in w)).w


@dataclass(frozen=True)
class ChainComplex:
    """Sparse differentials, with basis bitmasks fixed per homological degree.

    ``basis[k]`` lists the degree-k masks in increasing numeric order, and
    ``diff[k-1]`` is the matrix of the degree k -> k-1 map in those bases.
    """

    p: int
    d: int
    basis: Tuple[Tuple[int, ...], ...]
    diff: Tuple[SparseMat, ...]
    label: str

    def index_of(self, k: int, mask: int) -> int:
        from bisect import bisect_left
        b = self.basis[k]
        i = bisect_left(b, mask)
        if i == len(b) or b[i] != mask:
            raise KeyError(f"mask {mask:b} not in degree {k}")
        return i

    def matrix(self, k: int) -> SparseMat:
        """The differential from degree k to degree k-1 (1 <= k <= d)."""
        return self.diff[k - 1]

    def entry(self, k: int, src_mask: int, dst_mask: int) -> int:
        return self.matrix(k).get(self.index_of(k - 1, dst_mask), self.index_of(k, src_mask))

    def dims(self) -> List[int]:
        return [len(b) for b in self.basis]

    def dump_lines(self) -> List[str]:
        """Text dump: header 'd p', then one 'k row col value' line per entry."""
        out = [f"{self.d} {self.p}"]
        for k in range(1, self.d + 1):
            for r, c, v in self.matrix(k).entries():
                out.append(f"{k} {r} {c} {v.residue}")
        return out


def _masks_by_popcount(d: int) -> List[List[int]]:
    out: List[List[int]] = [[] for _ in range(d + 1)]
    for m in range(1 << d):
        out[bin(m).count("1")].append(m)
    return out  # each list is in increasing numeric order by construction


def _interval_entry(w: Tuple[int, ...], jmask: int, j: int, p: int) -> int:
    """Coefficient of the J -> J \\ {j} component, as a residue mod p.

    The sign exponent counts the edges missing from J strictly to the left of
    edge j; the binomial takes the full weight of j's interval over the weight
    of the part left of the cut.
    """
    below = jmask & ((1 << (j - 1)) - 1)
    s = (j - 1) - bin(below).count("1")
    lv = j - 1
    while lv >= 1 and (jmask >> (lv - 1)) & 1:
        lv -= 1
    rv = j
    d = len(w) - 1
    while rv <= d - 1 and (jmask >> rv) & 1:
        rv += 1
    left = sum(w[lv:j])
    total = left + sum(w[j:rv + 1])
    val = binom_residue(total, left, p)
    if s % 2:
        val = (-val) % p
    return val


def _verify_d_squared(diff: Sequence[SparseMat]):
    for k in range(1, len(diff)):
        if not diff[k - 1].matmul(diff[k]).is_zero():
            raise AssertionError("differential does not square to zero")


def build_C(w, p) -> ChainComplex:
    """The ribbon-route complex for vertex weights w over F_p."""
    weights = _as_weights(w)
    pv = as_prime(p)
    d = len(weights) - 1
    if d > MAX_EDGES:
        raise ValueError(f"too many edges: {d} > {MAX_EDGES}")
    _check_basis_budget(d)
    basis = _masks_by_popcount(d)
    index = [{m: i for i, m in enumerate(b)} for b in basis]
    diff: List[SparseMat] = []
    for k in range(1, d + 1):
        mat = SparseMat(len(basis[k - 1]), len(basis[k]), pv)
        for col, jmask in enumerate(basis[k]):
            rest = jmask
            while rest:
                bit = rest & (-rest)
                rest ^= bit
                j = bit.bit_length()
                val = _interval_entry(weights, jmask, j, pv)
                if val:
                    mat.set(index[k - 1][jmask ^ bit], col, val)
        diff.append(mat)
    _verify_d_squared(diff)
    return ChainComplex(pv, d, tuple(tuple(b) for b in basis), tuple(diff),
                        label=f"C({','.join(map(str, weights))})")


def build_G(m: int, d: int, p) -> ChainComplex:
    """The two-column-route complex with parameters (m, d) over F_p."""
    pv = as_prime(p)
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    if d > MAX_EDGES:
        raise ValueError(f"too many elements: {d} > {MAX_EDGES}")
    _check_basis_budget(d)
    basis = _masks_by_popcount(d)
    index = [{msk: i for i, msk in enumerate(b)} for b in basis]
    diff: List[SparseMat] = []
    for t in range(1, d + 1):
        mat = SparseMat(len(basis[t - 1]), len(basis[t]), pv)
        for col, dmask in enumerate(basis[t]):
            elems = [i + 1 for i in range(d) if (dmask >> i) & 1]
            padded = [0] + elems  # d_0 = 0
            for j in range(1, t + 1):
                if j < t:
                    val = binom_residue(padded[j + 1] - padded[j - 1], padded[j] - padded[j - 1], pv)
                    sign = j + 1
                else:
                    val = binom_residue(m + padded[t], padded[t] - padded[t - 1], pv)
                    sign = t + 1 + padded[t] - padded[t - 1]
                if sign % 2:
                    val = (-val) % pv
                if val:
                    mat.set(index[t - 1][dmask ^ (1 << (padded[j] - 1))], col, val)
        diff.append(mat)
    _verify_d_squared(diff)
    return ChainComplex(pv, d, tuple(tuple(b) for b in basis), tuple(diff), label=f"G({m},{d})")


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyProfile:
    """Per-degree homology ranks and the generating polynomial P = sum h_i t^i."""

    ranks: Tuple[int, ...]
    poly: CohPoly

    def __post_init__(self):
        if len(self.ranks) >= 2 and sum((-1) ** i * h for i, h in enumerate(self.ranks)) != 0:
            raise AssertionError("homology ranks violate the zero Euler characteristic")


def homology_poly(complex_: ChainComplex) -> HomologyProfile:
    d = complex_.d
    mranks = [0] * (d + 2)  # mranks[k] = rank of the degree k -> k-1 map
    for k in range(1, d + 1):
        mranks[k] = rank_mod_p(complex_.matrix(k))
    hs = []
    for k in range(d + 1):
        hs.append(len(complex_.basis[k]) - mranks[k] - mranks[k + 1])
    return HomologyProfile(tuple(hs), CohPoly({k: h for k, h in enumerate(hs)}))


def homology_series(w, p) -> CohPoly:
    """P(w): the homology generating polynomial of the weight-w complex."""
    return homology_poly(build_C(w, p)).poly


def ribbon_stable_poly(w, p) -> CohPoly:
    """Stable cohomology polynomial of the ribbon Schur bundle with column
    lengths w (all >= 1): homology of the complex, reversed at the total size."""
    if isinstance(w, RibbonComposition):
        rib = w
    else:
        rib = RibbonComposition(tuple(int(x) for x in w))
    total = rib.size()
    return homology_poly(build_C(rib.w, p)).poly.reversed_at(total)


def twocol_stable_poly(m: int, d: int, p) -> CohPoly:
    """Stable cohomology polynomial of the Schur bundle on the partition with
    column lengths (m, d): the weight (1^d, -m-d-1) homology shifted by t^m."""
    if not 0 <= d <= m:
        raise ValueError(f"(m, d) = ({m}, {d}) is not a two-column partition")
    prof = homology_poly(build_C((1,) * d + (-m - d - 1,), p))
    return prof.poly.shifted(m)


# ---------------------------------------------------------------------------
# structural witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def duality_witness(m: int, d: int, p) -> WitnessReport:
    """Check, entry for entry including signs, that the (m, d) complex is the
    complement-reindexed transpose of the weight (1^d, -m-d-1) complex."""
    if d > 16:
        raise ValueError("duality witness limited to d <= 16")
    pv = as_prime(p)
    g = build_G(m, d, pv)
    c = build_C((1,) * d + (-m - d - 1,), pv)
    full = (1 << d) - 1
    for t in range(1, d + 1):
        for dmask in g.basis[t]:
            rest = dmask
            while rest:
                bit = rest & (-rest)
                rest ^= bit
                g_val = g.entry(t, dmask, dmask ^ bit)
                c_val = c.entry(d - t + 1, full ^ (dmask ^ bit), full ^ dmask)
                if g_val != c_val:
                    return WitnessReport(
                        False,
                        f"degree {t}: G[{dmask:0{max(d,1)}b} -> {dmask ^ bit:0{max(d,1)}b}] = {g_val} "
                        f"but C-transpose gives {c_val}",
                    )
    return WitnessReport(True)


def frobenius_embedding_check(b: int, a: int, p) -> WitnessReport:
    """Verify the weight-scaling inclusion of the (pb, p^a) complex into the
    (pb, 1^{pa}) complex: the edge-set image J -> {jp-p+1 : j in J} union
    {j : j != 1 mod p} matches differentials coefficient for coefficient, and
    homology ranks agree after the a(p-1) degree shift."""
    pv = as_prime(p)
    if b < 1 or a < 0:
        raise ValueError("need b >= 1, a >= 0")
    if pv * a > 20:
        raise ValueError("embedding check limited to pa <= 20")
    small = build_C((pv * b,) + (pv,) * a, pv)
    big = build_C((pv * b,) + (1,) * (pv * a), pv)
    shift = a * (pv - 1)
    amask = 0
    for j in range(1, pv * a + 1):
        if j % pv != 1:
            amask |= 1 << (j - 1)

    def image_mask(jmask: int) -> int:
        out = amask
        for j in range(1, a + 1):
            if (jmask >> (j - 1)) & 1:
                out |= 1 << (j * pv - pv)
        return out

    for jmask in range(1 << a):
        k = bin(jmask).count("1")
        img = image_mask(jmask)
        rest = jmask
        while rest:
            bit = rest & (-rest)
            rest ^= bit
            j = bit.bit_length()
            sv = small.entry(k, jmask, jmask ^ bit)
            bv = big.entry(k + shift, img, img ^ (1 << (j * pv - pv)))
            if sv != bv:
                return WitnessReport(
                    False,
                    f"edge {j} of J={jmask:b}: small coefficient {sv} vs big coefficient {bv}",
                )
        # image must be closed: components to subsets outside the image vanish
        rest = img & amask
        while rest:
            bit = rest & (-rest)
            rest ^= bit
            leak = big.entry(k + shift, img, img ^ bit)
            if leak:
                return WitnessReport(
                    False,
                    f"J={jmask:b}: differential leaks out of the image through edge {bit.bit_length()} "
                    f"with coefficient {leak}",
                )
    hb = homology_poly(big).ranks
    hsm = homology_poly(small).ranks
    for i, h in enumerate(hb):
        expected = hsm[i - shift] if 0 <= i - shift < len(hsm) else 0
        if h != expected:
            return WitnessReport(False, f"homology rank mismatch in degree {i}: {h} vs {expected}")
    return WitnessReport(True)
