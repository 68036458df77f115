"""Memoized six-case recursion for the hook polynomials H_{a,b}(t)."""

from __future__ import annotations

import threading
from typing import Dict, Tuple

from .arith import CohPoly, as_prime

_memo_lock = threading.Lock()
_memo: Dict[Tuple[int, int, int], CohPoly] = {}


def clear_cache():
    with _memo_lock:
        _memo.clear()


def hook_poly(a: int, b: int, p) -> CohPoly:
    """Stable cohomology polynomial of the hook-shape Schur bundle (a, 1^b).

    Case dispatch, in order:
      (1) H_{0,0} = 1 and H_{1,b} = t^{b+1};
      (2) p does not divide a+b: t^b * H_{a,0} when a = 1 mod p, else 0;
      (3) a = 1 mod p, b = 0: t * H_{a-1,0};
      (4) a = p a' - i, b = p b' + i with 1 <= i <= p-2: t^i * H_{p a', p b'};
      (5) a = p a' + 1, b = p b' - 1, b' >= 1: t^{p b' - b'} * H_{a'+1, b'-1};
      (6) a = p a', b = p b': t^{p b' + 1} * H_{p a' - p + 1, 0}
                              + t^{p b' - b'} * H_{a', b'}.
    After (1) and (2), the residues mod p force exactly one of (3)-(6); the
    final branch raises rather than fall through silently.
    """
    pv = as_prime(p)
    if a == 0 and b == 0:
        return CohPoly.one()
    if a < 1 or b < 0:
        raise ValueError(f"hook parameters out of range: a={a}, b={b}")
    key = (a, b, pv)
    with _memo_lock:
        cached = _memo.get(key)
    if cached is not None:
        return cached
    out = _compute(a, b, pv)
    with _memo_lock:
        _memo.setdefault(key, out)
    return out


def _compute(a: int, b: int, p: int) -> CohPoly:
    if a == 1:
        return CohPoly.t_power(b + 1)
    ra = a % p
    if (a + b) % p != 0:
        if ra != 1:
            return CohPoly.zero()
        if b == 0:
            return hook_poly(a - 1, 0, p).shifted(1)
        return hook_poly(a, 0, p).shifted(b)
    # p | a+b; the residue of a picks the case
    if ra == 0:
        a1, b1 = a // p, b // p
        left = hook_poly(a - p + 1, 0, p).shifted(b + 1)
        right = hook_poly(a1, b1, p).shifted(b - b1)
        return left + right
    if ra == 1:
        b1 = (b + 1) // p  # b = p*b1 - 1 with b1 >= 1 since b = -1 mod p and b >= 0
        a1 = (a - 1) // p
        return hook_poly(a1 + 1, b1 - 1, p).shifted((b + 1) - b1)
    i = p - ra
    if not 1 <= i <= p - 2:
        raise AssertionError(f"case dispatch fell through at ({a},{b}) mod {p}")
    return hook_poly(a + i, b - i, p).shifted(i)


def symmetry_reduce(a: int, b: int, p, k: int) -> Tuple[CohPoly, CohPoly]:
    """Both sides of the p^k reflection identity: the pair
    (H_{a, p^k - 2a - b}, t^{p^k - 2(a+b)} * H_{a,b}), which must be equal
    whenever p^k >= 2(a+b).  Rejects smaller p^k."""
    pv = as_prime(p)
    if a < 1 or b < 0 or k < 0:
        raise ValueError("need a >= 1, b >= 0, k >= 0")
    q = pv ** k
    if q < 2 * (a + b):
        raise ValueError(f"p^k = {q} < 2(a+b) = {2 * (a + b)}")
    lhs = hook_poly(a, q - 2 * a - b, pv)
    rhs = hook_poly(a, b, pv).shifted(q - 2 * (a + b))
    return lhs, rhs
