"""Rank engines for large matrices over F_p.

The sparse elimination in :mod:`stablecoh.arith` is the right tool for the
chain-complex matrices; the Koszul module produces matrices with tens of
thousands of rows where it drowns in fill.  Two dense engines cover that
regime behind the same rank interface:

* over F_2, rows are packed 64 to a machine word and eliminated in blocks of
  eight pivots with a 256-entry combination table (the classical
  four-Russians device);
* over odd p, a float64 elimination with delayed rank-NB updates pushes the
  bulk of the work into matrix products, which stay exact because all
  intermediate values are below 2^53.
"""

from __future__ import annotations

import os
from typing import Dict, Iterable, Tuple

import numpy as np

from .arith import SparseMat, rank_mod_p

DEFAULT_BUDGET_MB = 4096


class BudgetExceeded(RuntimeError):
    pass


def matrix_budget_bytes() -> int:
    raw = os.environ.get("STABLECOH_BUDGET_MB", "")
    try:
        mb = int(raw) if raw else DEFAULT_BUDGET_MB
    except ValueError:
        mb = DEFAULT_BUDGET_MB
    return mb * 1024 * 1024


def _check_budget(nbytes: int, what: str):
    budget = matrix_budget_bytes()
    if nbytes > budget:
        raise BudgetExceeded(
            f"{what} needs {nbytes // (1024 * 1024)} MiB, over the "
            f"{budget // (1024 * 1024)} MiB budget (set STABLECOH_BUDGET_MB to raise it)"
        )


# ---------------------------------------------------------------------------
# F_2: packed rows, eight pivots at a time
# ---------------------------------------------------------------------------

def rank_gf2_packed(entries: Iterable[Tuple[int, int]], rows: int, cols: int) -> int:
    """Rank over F_2 of the 0/1 matrix with the given nonzero positions.

    The shorter side becomes the elimination rows; the longer side is packed
    into uint64 words.
    """
    if rows == 0 or cols == 0:
        return 0
    transpose = cols > rows
    n_vec, n_bits = (rows, cols) if not transpose else (cols, rows)
    words = (n_bits + 63) // 64
    _check_budget(n_vec * words * 8 + 256 * words * 8, "packed GF(2) elimination")
    a = np.zeros((n_vec, words), dtype=np.uint64)
    for r, c in entries:
        v, b = (r, c) if not transpose else (c, r)
        a[v, b >> 6] ^= np.uint64(1) << np.uint64(b & 63)
    return _rank_gf2_array(a, n_bits)


def _rank_gf2_array(a: np.ndarray, n_bits: int) -> int:
    n_vec, words = a.shape
    alive = np.arange(n_vec)
    rank = 0
    for b0 in range(0, n_bits, 8):
        if alive.size == 0:
            break
        word, shift = b0 >> 6, np.uint64(b0 & 63)
        width = min(8, n_bits - b0)
        win = (a[alive, word] >> shift) & np.uint64((1 << width) - 1)
        code = np.zeros(alive.size, dtype=np.uint64)
        avail = np.ones(alive.size, dtype=bool)  # promoted pivots freeze
        piv_local = []            # indices into `alive`
        piv_snapshots = []        # row contents as of block start
        for j in range(width):
            hits = np.nonzero((((win >> np.uint64(j)) & np.uint64(1)) != 0) & avail)[0]
            if hits.size == 0:
                continue
            pi = hits[0]
            others = hits[1:]
            win[others] ^= win[pi]
            code[others] ^= code[pi] ^ np.uint64(1 << len(piv_local))
            avail[pi] = False
            piv_local.append(pi)
            piv_snapshots.append(a[alive[pi], word:].copy())
        if not piv_local:
            continue
        rank += len(piv_local)
        # combination table over the block's pivots, then one batched fix-up
        table = np.zeros((1 << len(piv_local), words - word), dtype=np.uint64)
        for mask in range(1, 1 << len(piv_local)):
            low = mask & (-mask)
            table[mask] = table[mask ^ low] ^ piv_snapshots[low.bit_length() - 1]
        dirty = np.nonzero(code)[0]
        if dirty.size:
            a[alive[dirty], word:] ^= table[code[dirty]]
        keep = np.ones(alive.size, dtype=bool)
        keep[piv_local] = False
        alive = alive[keep]
    return rank


# ---------------------------------------------------------------------------
# odd p: float64 elimination with delayed block updates
# ---------------------------------------------------------------------------

def rank_dense_mod_p(entries: Iterable[Tuple[int, int, int]], rows: int, cols: int, p: int,
                     block: int = 64) -> int:
    """Rank over F_p via dense elimination; exact, with the column updates
    batched into rank-`block` matrix products."""
    if rows == 0 or cols == 0:
        return 0
    if p * p * block >= 2 ** 50:
        raise ValueError("modulus too large for the float64 engine")
    transpose = rows < cols
    n_r, n_c = (rows, cols) if not transpose else (cols, rows)
    _check_budget(n_r * n_c * 8 * 2, "dense mod-p elimination")
    a = np.zeros((n_r, n_c), dtype=np.float64, order="F")
    for r, c, v in entries:
        rr, cc = (r, c) if not transpose else (c, r)
        a[rr, cc] = v % p
    return _rank_dense_array(a, p, block)


def _rank_dense_array(a: np.ndarray, p: int, block: int = 64) -> int:
    # Unreduced entries of `a` stay exact in float64: each batched update adds
    # at most block * (p-1)^2 per entry, and everything multiplied (factors,
    # pivot rows) is reduced before use.
    n_r, n_c = a.shape
    if n_c // block * block * (p - 1) ** 2 + p >= 2 ** 52:
        raise ValueError("matrix too large for delayed reduction")
    used = np.zeros(n_r, dtype=bool)
    factors = np.zeros((n_r, block), dtype=np.float64, order="F")  # pending multipliers
    piv_rows = np.zeros((block, n_c), dtype=np.float64)            # pending pivot rows
    k = 0
    rank = 0

    def flush(from_col: int):
        nonlocal k
        if k:
            # columns before from_col are dead; leave them stale
            a[:, from_col:] -= factors[:, :k] @ piv_rows[:k, from_col:]
            factors[:, :k] = 0.0
            k = 0

    for c in range(n_c):
        col = a[:, c].copy()
        if k:
            col -= factors[:, :k] @ piv_rows[:k, c]
        col %= p
        col[used] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        r = int(nz[0])
        rank += 1
        used[r] = True
        rowvec = a[r].copy()
        if k:
            rowvec -= factors[r, :k] @ piv_rows[:k]
        rowvec %= p
        inv = pow(int(rowvec[c]), -1, p)
        rowvec = (rowvec * inv) % p
        col[r] = 0.0
        factors[:, k] = col
        piv_rows[k] = rowvec
        k += 1
        if k == block:
            flush(c + 1)
    return rank


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

SPARSE_CUTOFF = 1 << 18  # rows*cols below this: plain sparse elimination


def rank_auto(entries: Dict[Tuple[int, int], int], rows: int, cols: int, p: int) -> int:
    """Pick a rank engine by modulus and size; all paths are exact."""
    if rows * cols <= SPARSE_CUTOFF:
        return rank_mod_p(SparseMat(rows, cols, p, entries))
    if p == 2:
        return rank_gf2_packed(((r, c) for (r, c), v in entries.items() if v % 2), rows, cols)
    return rank_dense_mod_p(((r, c, v) for (r, c), v in entries.items()), rows, cols, p)
