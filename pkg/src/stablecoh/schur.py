"""Front door: shape specifications, route dispatch, and cross-validation.

Every supported shape has a preferred engine; cross-validation runs every
other applicable route and compares exactly.  A disagreement raises -- the
redundancy between the digit formulas, the recursion, and the explicit chain
complexes is the product's main self-check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .arith import CohPoly, as_prime
from .closedform import series_H_coeff, sym_stable_poly, truncated_sym_poly
from .complexes import ribbon_stable_poly, twocol_stable_poly
from .hooks import hook_poly
from .partitions import RibbonComposition, composition_to_hook, hook_to_composition

KINDS = ("sym", "wedge", "trunc", "hook", "twocol", "ribbon")


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    params: Tuple[int, ...]

    def __post_init__(self):
        kind, par = self.kind, self.params
        if kind not in KINDS:
            raise ValueError(f"unknown shape kind {kind!r}")
        if kind in ("sym", "wedge", "trunc"):
            if len(par) != 1 or par[0] < 0:
                raise ValueError(f"{kind} takes one nonnegative degree")
        elif kind == "hook":
            if len(par) != 2 or par[0] < 1 or par[1] < 0:
                raise ValueError("hook takes (a, b) with a >= 1, b >= 0")
        elif kind == "twocol":
            if len(par) != 2 or not 0 <= par[1] <= par[0] or par[0] < 1:
                raise ValueError("twocol takes (m, d) with 0 <= d <= m, m >= 1")
        elif kind == "ribbon":
            RibbonComposition(par)  # validates entries >= 1

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(str(x) for x in self.params)}"


def parse_shape(text: str) -> ShapeSpec:
    """Parse the CLI shape grammar, e.g. 'sym:6', 'hook:4,3', 'weight:-7,4,1,1,1'."""
    if ":" not in text:
        raise ValueError(f"shape {text!r} must look like kind:params")
    kind, _, rest = text.partition(":")
    try:
        params = tuple(int(tok) for tok in rest.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ValueError(f"bad shape parameters in {text!r}") from exc
    if kind == "weight":
        return weight_to_shape(params)
    return ShapeSpec(kind, params)


def weight_to_shape(weight: Sequence[int]) -> ShapeSpec:
    """Translate a flag weight (first entry balancing the rest to zero sum)
    into the shape handled by an engine.  Trailing zeros are stripped."""
    w = tuple(int(x) for x in weight)
    if not w:
        raise ValueError("empty weight")
    if sum(w) != 0:
        raise ValueError(f"weight {w} has nonzero total; stable cohomology needs sum zero")
    tail = list(w[1:])
    while tail and tail[-1] == 0:
        tail.pop()
    if any(x <= 0 for x in tail):
        raise ValueError(f"weight tail {tail} is not a partition")
    if any(tail[i + 1] > tail[i] for i in range(len(tail) - 1)):
        raise ValueError(f"weight tail {tail} is not weakly decreasing")
    if not tail:
        return ShapeSpec("sym", (0,))
    if len(tail) == 1:
        return ShapeSpec("sym", (tail[0],))
    if all(x == 1 for x in tail):
        return ShapeSpec("wedge", (len(tail),))
    if all(x == 1 for x in tail[1:]):
        return ShapeSpec("hook", (tail[0], len(tail) - 1))
    if tail[0] == 2:
        return ShapeSpec("twocol", (len(tail), sum(1 for x in tail if x == 2)))
    raise ValueError(f"no engine for weight tail {tuple(tail)} (supported: Sym, wedge, hook, two-column)")


def shape_weight(shape: ShapeSpec) -> Tuple[int, ...]:
    """The flag weight a shape prints as; inverse to weight_to_shape."""
    kind, par = shape.kind, shape.params
    if kind == "sym":
        return (-par[0], par[0]) if par[0] else (0,)
    if kind == "wedge":
        return (-par[0],) + (1,) * par[0]
    if kind == "hook":
        a, b = par
        return (-a - b, a) + (1,) * b
    if kind == "twocol":
        m, d = par
        return (-m - d,) + (2,) * d + (1,) * (m - d)
    raise ValueError(f"{kind} shapes have no flag-weight form")


# ---------------------------------------------------------------------------
# routes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RouteResult:
    name: str
    poly: CohPoly
    millis: float


@dataclass(frozen=True)
class CrossReport:
    shape: ShapeSpec
    prime: int
    routes: Tuple[RouteResult, ...]
    match: bool

    @property
    def poly(self) -> CohPoly:
        return self.routes[0].poly


class RouteMismatchError(AssertionError):
    """Two routes disagreed; carries the full report for diagnosis."""

    def __init__(self, report: CrossReport):
        self.report = report
        lines = [f"route disagreement for {report.shape} mod {report.prime}:"]
        lines += [f"  {r.name}: {r.poly.text()}" for r in report.routes]
        super().__init__("\n".join(lines))


def _routes_for(shape: ShapeSpec, p: int) -> List[Tuple[str, Callable[[], CohPoly]]]:
    kind, par = shape.kind, shape.params
    if kind == "sym":
        d = par[0]
        return [
            ("digit-formula", lambda: sym_stable_poly(d, p)),
            ("hook-recursion", lambda: hook_poly(d, 0, p) if d else CohPoly.one()),
        ]
    if kind == "wedge":
        d = par[0]
        routes = [("exterior-power", lambda: CohPoly.t_power(d))]
        if d >= 1:
            routes.append(("hook-recursion", lambda: hook_poly(1, d - 1, p)))
        return routes
    if kind == "trunc":
        return [("digit-index", lambda: truncated_sym_poly(par[0], p))]
    if kind == "hook":
        a, b = par
        return [
            ("recursion", lambda: hook_poly(a, b, p)),
            ("ribbon-complex", lambda: ribbon_stable_poly(hook_to_composition(a, b), p)),
            ("series", lambda: series_H_coeff(b, p, a)),
        ]
    if kind == "twocol":
        m, d = par
        return [
            ("complex", lambda: twocol_stable_poly(m, d, p)),
            ("hook-duality", lambda: hook_poly(d + 1, m - d, p).reversed_at(2 * m + 1)),
        ]
    if kind == "ribbon":
        routes = [("complex", lambda: ribbon_stable_poly(RibbonComposition(par), p))]
        try:
            a, b = composition_to_hook(RibbonComposition(par))
        except ValueError:
            return routes
        routes.append(("hook-recursion", lambda: hook_poly(a, b, p)))
        return routes
    raise ValueError(f"unknown shape kind {kind!r}")


def stable_cohomology(shape: ShapeSpec, p, cross_validate: bool = False) -> Tuple[CohPoly, CrossReport]:
    """Evaluate the stable cohomology polynomial of a shape mod p.

    Without cross-validation only the preferred route runs.  With it, every
    applicable route runs; disagreement raises RouteMismatchError with all
    route polynomials attached.
    """
    pv = as_prime(p)
    routes = _routes_for(shape, pv)
    if not cross_validate:
        routes = routes[:1]
    results = []
    for name, fn in routes:
        t0 = time.perf_counter()
        poly = fn()
        results.append(RouteResult(name, poly, (time.perf_counter() - t0) * 1000.0))
    match = all(r.poly == results[0].poly for r in results)
    report = CrossReport(shape, pv, tuple(results), match)
    if not match:
        raise RouteMismatchError(report)
    return results[0].poly, report
