"""Exact arithmetic over F_p: scalars, extended binomials, sparse ranks, polynomials.

Everything in this module is a pure function on immutable values.  Scalars of
F_p are carried around as plain ints in ``[0, p)``; the ``Fp`` wrapper exists
for public entry points that want a self-describing value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple


# ---------------------------------------------------------------------------
# primes and field scalars
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Prime:
    """A prime modulus, checked by trial division at construction."""

    value: int

    def __post_init__(self):
        if not _is_prime(self.value):
            raise ValueError(f"{self.value} is not prime")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Prime({self.value})"


def as_prime(p) -> int:
    """Accept a Prime or a raw int; return the validated int modulus."""
    if isinstance(p, Prime):
        return p.value
    return Prime(int(p)).value


@dataclass(frozen=True)
class Fp:
    """A residue in [0, p)."""

    residue: int
    p: int

    def __post_init__(self):
        if not 0 <= self.residue < self.p:
            raise ValueError(f"residue {self.residue} out of range for p={self.p}")

    def _check(self, other: "Fp"):
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp((self.residue + other.residue) % self.p, self.p)

    def __sub__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp((self.residue - other.residue) % self.p, self.p)

    def __mul__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp((self.residue * other.residue) % self.p, self.p)

    def inverse(self) -> "Fp":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fp(pow(self.residue, -1, self.p), self.p)

    def __bool__(self) -> bool:
        return self.residue != 0


# ---------------------------------------------------------------------------
# binomial coefficients mod p, with arbitrary integer upper argument
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _small_binom_table(p: int) -> Tuple[Tuple[int, ...], ...]:
    # Pascal triangle of C(a, b) mod p for 0 <= a, b < p.
    rows = [[1] + [0] * (p - 1)]
    for a in range(1, p):
        prev = rows[-1]
        row = [1] + [(prev[b - 1] + prev[b]) % p for b in range(1, p)]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def binom_residue(x: int, i: int, p: int) -> int:
    """C(x, i) mod p for any integer x and i >= 0, as an int residue.

    Negative x is shifted by the least p^k exceeding i, which leaves the
    residue unchanged; the digits of the shifted value then go through Lucas'
    theorem.
    """
    if i < 0:
        raise ValueError("lower argument must be >= 0")
    if i == 0:
        return 1 % p
    if x < 0:
        pk = p
        while pk <= i:
            pk *= p
        # x + c*pk >= 0 for c large enough; any single shift > i preserves C(x, i) mod p
        x += ((-x) // pk + 1) * pk
    if x < i:
        return 0
    table = _small_binom_table(p)
    out = 1
    while i > 0:
        xd, id_ = x % p, i % p
        if id_ > xd:
            return 0
        out = (out * table[xd][id_]) % p
        x //= p
        i //= p
    return out


def binom_mod_p(x: int, i: int, p) -> Fp:
    """C(x, i) reduced mod p, as an Fp scalar."""
    pv = as_prime(p)
    return Fp(binom_residue(x, i, pv), pv)


# ---------------------------------------------------------------------------
# sparse matrices over F_p and their rank
# ---------------------------------------------------------------------------

class SparseMat:
    """Sparse matrix over F_p with at most one stored entry per position.

    Entries are stored as ``{(row, col): residue}`` with nonzero residues.
    """

    __slots__ = ("rows", "cols", "p", "_data")

    def __init__(self, rows: int, cols: int, p, entries: Mapping[Tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        self.p = as_prime(p)
        self._data: Dict[Tuple[int, int], int] = {}
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r: int, c: int, v: int):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
        v %= self.p
        if v:
            self._data[(r, c)] = v
        else:
            self._data.pop((r, c), None)

    def add_at(self, r: int, c: int, v: int):
        self.set(r, c, self._data.get((r, c), 0) + v)

    def get(self, r: int, c: int) -> int:
        return self._data.get((r, c), 0)

    def entries(self) -> Iterator[Tuple[int, int, Fp]]:
        for (r, c), v in sorted(self._data.items()):
            yield r, c, Fp(v, self.p)

    @property
    def nnz(self) -> int:
        return len(self._data)

    def items(self) -> Iterator[Tuple[Tuple[int, int], int]]:
        return iter(self._data.items())

    def is_zero(self) -> bool:
        return not self._data

    def matmul(self, other: "SparseMat") -> "SparseMat":
        if self.p != other.p or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        out = SparseMat(self.rows, other.cols, self.p)
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (r, c), v in self._data.items():
            by_row.setdefault(r, []).append((c, v))
        by_col: Dict[int, List[Tuple[int, int]]] = {}
        for (r, c), v in other._data.items():
            by_col.setdefault(r, []).append((c, v))
        # accumulate products through the shared index
        acc: Dict[Tuple[int, int], int] = {}
        for r, row_entries in by_row.items():
            for k, v in row_entries:
                for c, w in by_col.get(k, ()):
                    key = (r, c)
                    acc[key] = (acc.get(key, 0) + v * w) % self.p
        for key, v in acc.items():
            if v:
                out._data[key] = v
        return out

    def __repr__(self) -> str:
        return f"SparseMat({self.rows}x{self.cols} mod {self.p}, nnz={self.nnz})"


def rank_mod_p(mat: SparseMat) -> int:
    """Rank over F_p by sparse Gaussian elimination.

    Pivots are chosen Markowitz-style: the cheapest column (fewest live
    entries), then the cheapest row within it, which keeps fill-in low on the
    nearly-triangular matrices produced by the chain complexes.
    """
    p = mat.p
    rows: Dict[int, Dict[int, int]] = {}
    col_rows: Dict[int, set] = {}
    for (r, c), v in mat.items():
        rows.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    rank = 0
    while col_rows:
        # cheapest column, then cheapest row in it
        c = min(col_rows, key=lambda cc: (len(col_rows[cc]), cc))
        pivot_rows = col_rows[c]
        r = min(pivot_rows, key=lambda rr: (len(rows[rr]), rr))
        rank += 1
        piv_row = rows.pop(r)
        inv = pow(piv_row[c], -1, p)
        for cc in piv_row:
            col_rows[cc].discard(r)
            if not col_rows[cc]:
                del col_rows[cc]
        targets = list(col_rows.get(c, ()))
        for rr in targets:
            row = rows[rr]
            f = (row[c] * inv) % p
            for cc, v in piv_row.items():
                nv = (row.get(cc, 0) - f * v) % p
                if nv:
                    if cc not in row:
                        col_rows.setdefault(cc, set()).add(rr)
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    s = col_rows.get(cc)
                    if s is not None:
                        s.discard(rr)
                        if not s:
                            col_rows.pop(cc, None)
            if not row:
                del rows[rr]
    return rank


# ---------------------------------------------------------------------------
# cohomology polynomials
# ---------------------------------------------------------------------------

class CohPoly:
    """Polynomial in t with positive integer coefficients and exponents >= 0.

    The value object for every stable cohomology computation; immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: Dict[int, int] = {}
        for e, v in items:
            if v == 0:
                continue
            c[e] = c.get(e, 0) + v
        for e, v in list(c.items()):
            if v == 0:
                del c[e]
                continue
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if v < 0:
                raise ValueError(f"negative coefficient {v} at t^{e}")
        self._c = c

    @classmethod
    def zero(cls) -> "CohPoly":
        return cls()

    @classmethod
    def one(cls) -> "CohPoly":
        return cls({0: 1})

    @classmethod
    def t_power(cls, e: int) -> "CohPoly":
        return cls({e: 1})

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def support(self) -> List[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def total(self) -> int:
        """Sum of all coefficients (the total dimension)."""
        return sum(self._c.values())

    def __add__(self, other: "CohPoly") -> "CohPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return CohPoly(c)

    def __mul__(self, other: "CohPoly") -> "CohPoly":
        c: Dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return CohPoly(c)

    def shifted(self, k: int) -> "CohPoly":
        """t^k * self."""
        return CohPoly({e + k: v for e, v in self._c.items()})

    def reversed_at(self, n: int) -> "CohPoly":
        """t^n * self(1/t); exponent e maps to n - e.  Requires deg <= n."""
        if self._c and max(self._c) > n:
            raise ValueError(f"degree {max(self._c)} exceeds reversal order {n}")
        return CohPoly({n - e: v for e, v in self._c.items()})

    def support_intervals(self) -> List[Tuple[int, int]]:
        """Maximal runs of consecutive exponents in the support."""
        out: List[Tuple[int, int]] = []
        for e in self.support():
            if out and e == out[-1][1] + 1:
                out[-1] = (out[-1][0], e)
            else:
                out.append((e, e))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, CohPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def text(self) -> str:
        """Canonical text form: ascending exponents joined by ' + '; zero is '0'."""
        if not self._c:
            return "0"
        parts = []
        for e in self.support():
            v = self._c[e]
            if e == 0:
                parts.append(str(v))
                continue
            t = "t" if e == 1 else f"t^{e}"
            parts.append(t if v == 1 else f"{v}{t}")
        return " + ".join(parts)

    def latex(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in self.support():
            v = self._c[e]
            if e == 0:
                parts.append(str(v))
                continue
            t = "t" if e == 1 else (f"t^{e}" if e < 10 else f"t^{{{e}}}")
            parts.append(t if v == 1 else f"{v}{t}")
        return " + ".join(parts)

    def pairs(self) -> List[List[int]]:
        """[[exponent, coefficient], ...] ascending, for JSON output."""
        return [[e, self._c[e]] for e in self.support()]

    def __repr__(self) -> str:
        return f"CohPoly({self.text()})"


def poly_reverse(poly: CohPoly, n: int) -> CohPoly:
    """t^n * P(1/t) as a CohPoly; rejects deg(P) > n."""
    return poly.reversed_at(n)


def poly_mul(a: CohPoly, b: CohPoly) -> CohPoly:
    return a * b


# ---------------------------------------------------------------------------
# signed polynomials in t (series plumbing) and truncated series in t, u
# ---------------------------------------------------------------------------

TPoly = Dict[int, int]  # signed integer coefficients, keyed by t-exponent


def tp_add(a: TPoly, b: TPoly) -> TPoly:
    c = dict(a)
    for e, v in b.items():
        nv = c.get(e, 0) + v
        if nv:
            c[e] = nv
        else:
            c.pop(e, None)
    return c


def tp_mul(a: TPoly, b: TPoly) -> TPoly:
    c: TPoly = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = e1 + e2
            nv = c.get(e, 0) + v1 * v2
            if nv:
                c[e] = nv
            else:
                c.pop(e, None)
    return c


@dataclass(frozen=True)
class SeriesTU:
    """Series in u up to u^truncation_order, with signed t-polynomial coefficients.

    Arithmetic silently discards u-degrees beyond the truncation order.
    """

    truncation_order: int
    coeffs: Tuple[Tuple[Tuple[int, int], ...], ...] = field(default=())

    @classmethod
    def from_list(cls, u_max: int, coeffs: List[TPoly]) -> "SeriesTU":
        if len(coeffs) != u_max + 1:
            raise ValueError("coefficient list must have u_max + 1 entries")
        frozen = tuple(tuple(sorted(c.items())) for c in coeffs)
        return cls(u_max, frozen)

    @classmethod
    def zero(cls, u_max: int) -> "SeriesTU":
        return cls.from_list(u_max, [{} for _ in range(u_max + 1)])

    @classmethod
    def const(cls, u_max: int, value: int) -> "SeriesTU":
        coeffs: List[TPoly] = [{} for _ in range(u_max + 1)]
        if value:
            coeffs[0] = {0: value}
        return cls.from_list(u_max, coeffs)

    @classmethod
    def monomial(cls, u_max: int, t_exp: int, u_exp: int, value: int = 1) -> "SeriesTU":
        coeffs: List[TPoly] = [{} for _ in range(u_max + 1)]
        if u_exp <= u_max and value:
            coeffs[u_exp] = {t_exp: value}
        return cls.from_list(u_max, coeffs)

    def _lists(self) -> List[TPoly]:
        return [dict(c) for c in self.coeffs]

    def u_coeff(self, a: int) -> TPoly:
        if not 0 <= a <= self.truncation_order:
            raise ValueError(f"u-exponent {a} beyond truncation {self.truncation_order}")
        return dict(self.coeffs[a])

    def __add__(self, other: "SeriesTU") -> "SeriesTU":
        u = min(self.truncation_order, other.truncation_order)
        out = [tp_add(dict(self.coeffs[i]), dict(other.coeffs[i])) for i in range(u + 1)]
        return SeriesTU.from_list(u, out)

    def __sub__(self, other: "SeriesTU") -> "SeriesTU":
        neg = SeriesTU.from_list(
            other.truncation_order,
            [{e: -v for e, v in dict(c).items()} for c in other.coeffs],
        )
        return self + neg

    def __mul__(self, other: "SeriesTU") -> "SeriesTU":
        u = min(self.truncation_order, other.truncation_order)
        out: List[TPoly] = [{} for _ in range(u + 1)]
        for i in range(u + 1):
            ci = dict(self.coeffs[i]) if i < len(self.coeffs) else {}
            if not ci:
                continue
            for j in range(u + 1 - i):
                cj = dict(other.coeffs[j]) if j < len(other.coeffs) else {}
                if not cj:
                    continue
                out[i + j] = tp_add(out[i + j], tp_mul(ci, cj))
        return SeriesTU.from_list(u, out)

    def substitute_u_power(self, k: int) -> "SeriesTU":
        """u -> u^k.  Validity mod u^(U+1) becomes validity mod u^(k(U+1)),
        so the truncation order grows to k*U + k - 1."""
        if k < 1:
            raise ValueError("power must be >= 1")
        u = k * self.truncation_order + (k - 1)
        out: List[TPoly] = [{} for _ in range(u + 1)]
        for i, c in enumerate(self.coeffs):
            out[i * k] = dict(c)
        return SeriesTU.from_list(u, out)

    def truncate(self, u_max: int) -> "SeriesTU":
        if u_max > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return SeriesTU.from_list(u_max, [dict(c) for c in self.coeffs[: u_max + 1]])

    def shift_down_u(self, b: int) -> "SeriesTU":
        """Divide by u^b; raises if a nonzero coefficient sits below u^b."""
        for i in range(min(b, self.truncation_order + 1)):
            if self.coeffs[i]:
                raise ArithmeticError(f"division by u^{b} is not exact (u^{i} term present)")
        u = self.truncation_order - b
        out = [dict(self.coeffs[i + b]) for i in range(u + 1)]
        return SeriesTU.from_list(u, out)

    def scale_t(self, t_exp: int) -> "SeriesTU":
        """Multiply by t^t_exp."""
        out = [{e + t_exp: v for e, v in dict(c).items()} for c in self.coeffs]
        return SeriesTU.from_list(self.truncation_order, out)
