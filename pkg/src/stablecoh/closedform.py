"""Digit-based closed formulas and truncated generating functions.

Stable cohomology of symmetric powers comes from enumerating base-p expansions
of d with digits congruent to 0 or 1 mod p; the bivariate series package the
hook polynomials H_{a,b}(t) as coefficients of u^a.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .arith import CohPoly, SeriesTU, TPoly, as_prime, tp_add, tp_mul


def p_index(m: int, p) -> int:
    """Position of m among the nonnegative integers congruent to 0, 1 mod p.

    Writing m = p*a + b with b in {0, 1}, the index is 2a + b.  Rejects m with
    m mod p outside {0, 1}.
    """
    pv = as_prime(p)
    if m < 0:
        raise ValueError("m must be nonnegative")
    b = m % pv
    if b not in (0, 1):
        raise ValueError(f"{m} is not congruent to 0 or 1 mod {pv}")
    return 2 * ((m - b) // pv) + b


@dataclass(frozen=True)
class DigitTuple:
    """A tuple (a_0, ..., a_k) with a_i = 0, 1 mod p and sum a_i p^i = d."""

    digits: Tuple[int, ...]
    index: int  # sum of the p-indices of the digits

    def __iter__(self):
        return iter(self.digits)


def _suffixes(r: int, p: int) -> List[Tuple[int, ...]]:
    """All digit tails for remaining value r (most significant digits last)."""
    if r == 0:
        return [()]
    out: List[Tuple[int, ...]] = []
    # admissible leading digits: congruent to 0 or 1 mod p, leaving a p-multiple
    candidates = set()
    for residue in (0, 1):
        a0 = residue
        while a0 <= r:
            if (r - a0) % p == 0:
                candidates.add(a0)
            a0 += p
    for a0 in sorted(candidates):
        for tail in _suffixes((r - a0) // p, p):
            if not tail and a0 == 0:
                continue  # no trailing zero digit
            out.append((a0,) + tail)
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(pv: int, d: int) -> Tuple[DigitTuple, ...]:
    if d == 0:
        return (DigitTuple((0,), 0),)
    tuples = sorted(_suffixes(d, pv))
    return tuple(DigitTuple(t, sum(p_index(a, pv) for a in t)) for t in tuples)


def enumerate_Apd(p, d: int) -> Tuple[DigitTuple, ...]:
    """All digit tuples for (p, d), in lexicographic order.

    For d = 0 the single tuple is (0), the expansion of zero.
    """
    pv = as_prime(p)
    if d < 0:
        raise ValueError("d must be nonnegative")
    return _enumerate_cached(pv, d)


@lru_cache(maxsize=None)
def _sym_stable_cached(d: int, pv: int) -> CohPoly:
    counts: Dict[int, int] = {}
    for tup in _enumerate_cached(pv, d):
        counts[tup.index] = counts.get(tup.index, 0) + 1
    return CohPoly(counts)


def sym_stable_poly(d: int, p) -> CohPoly:
    """Stable cohomology polynomial of the d-th symmetric power bundle:
    one t^{index} term per admissible digit tuple of d."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return _sym_stable_cached(d, as_prime(p))


def truncated_sym_poly(d: int, p) -> CohPoly:
    """Stable cohomology of the p-truncated symmetric power: a single class in
    degree |d|_p when d = 0, 1 mod p, nothing otherwise."""
    pv = as_prime(p)
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d % pv not in (0, 1):
        return CohPoly.zero()
    return CohPoly.t_power(p_index(d, pv))


def hook_nonvanishing(a: int, b: int, p) -> bool:
    """Whether the hook polynomial H_{a,b} is nonzero, by the divisibility
    criterion: with q the largest p-power dividing b+1, H_{a,b} != 0 iff
    pq | a-1 or pq | a+b."""
    pv = as_prime(p)
    if a < 1 or b < 0:
        raise ValueError("need a >= 1, b >= 0")
    q = 1
    c = b + 1
    while c % pv == 0:
        q *= pv
        c //= pv
    pq = pv * q
    return (a - 1) % pq == 0 or (a + b) % pq == 0


# ---------------------------------------------------------------------------
# truncated bivariate series
# ---------------------------------------------------------------------------

_series_lock = threading.Lock()
_series_A_cache: Dict[Tuple[int, int], SeriesTU] = {}
_series_N_cache: Dict[Tuple[int, int, int], SeriesTU] = {}


def clear_series_cache():
    with _series_lock:
        _series_A_cache.clear()
        _series_N_cache.clear()


def series_A(p, u_max: int) -> SeriesTU:
    """The product over i >= 1 of (1 + t u^{p^i}) / (1 - t^2 u^{p^i}),
    truncated at u^u_max.  Its u^{pd} coefficient is the stable polynomial of
    the pd-th symmetric power."""
    pv = as_prime(p)
    if u_max < 0:
        raise ValueError("truncation order must be >= 0")
    key = (pv, u_max)
    with _series_lock:
        cached = _series_A_cache.get(key)
    if cached is not None:
        return cached
    out = SeriesTU.const(u_max, 1)
    q = pv
    while q <= u_max:
        factor = SeriesTU.const(u_max, 1) + SeriesTU.monomial(u_max, 1, q)
        out = out * factor
        # geometric expansion of 1 / (1 - t^2 u^q)
        geo: List[TPoly] = [{} for _ in range(u_max + 1)]
        k = 0
        while k * q <= u_max:
            geo[k * q] = {2 * k: 1}
            k += 1
        out = out * SeriesTU.from_list(u_max, geo)
        q *= pv
    with _series_lock:
        _series_A_cache[key] = out
    return out


def _series_N(b: int, p: int, u_max: int) -> SeriesTU:
    """N_b(t, u) to u-precision u_max, via the two reduction rules on b."""
    key = (b, p, u_max)
    with _series_lock:
        cached = _series_N_cache.get(key)
    if cached is not None:
        return cached
    A = series_A(p, u_max)
    if b == 0:
        one, tu = SeriesTU.const(u_max, 1), SeriesTU.monomial(u_max, 1, 1)
        out = ((one + tu) * A) - one
    else:
        b1, r = divmod(b, p)
        if r == p - 1:
            out = _series_N(b1, p, u_max // p).substitute_u_power(p)
        else:
            inner = _series_N(b1, p, u_max // p).substitute_u_power(p)
            extra = SeriesTU.monomial(u_max, 1, b + 1) + SeriesTU.monomial(u_max, 2, p * b1 + p)
            out = inner + extra * A
    with _series_lock:
        _series_N_cache[key] = out
    return out


def series_H(b: int, p, u_max: int) -> SeriesTU:
    """The series whose u^a coefficient is the hook polynomial H_{a,b}(t),
    for 1 <= a <= u_max.  Computed as t^b/u^b times N_b; the division by u^b
    must be exact and failure signals an implementation bug."""
    pv = as_prime(p)
    if u_max < 1:
        raise ValueError("truncation order must be >= 1")
    if b < 0:
        raise ValueError("b must be >= 0")
    n = _series_N(b, pv, u_max + b)
    return n.shift_down_u(b).scale_t(b)


def series_H_coeff(b: int, p, a: int, u_max: int | None = None) -> CohPoly:
    """Extract H_{a,b} from the series route as a CohPoly; asserts the signed
    intermediate coefficients came out nonnegative."""
    if a < 1:
        raise ValueError("a must be >= 1")
    u = u_max if u_max is not None else a
    c = series_H(b, p, u).u_coeff(a)
    if any(v < 0 for v in c.values()):
        raise ArithmeticError(f"negative coefficient extracting u^{a} of the b={b} series")
    return CohPoly(c)
