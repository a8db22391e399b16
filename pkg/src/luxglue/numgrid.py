"""Quadrature grids, weighted measures, monotone bisection and C^2 function carriers.

Everything downstream works over two discrete stand-ins: a ``WeightedMeasure``
(nodes + positive weights, the discrete measure space) and a ``SmoothFn``
(value / first / second derivative of a C^2 function on an interval).
All reductions use a fixed pairwise tree so results are bit-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NoBracket, NonFinite

ArrayLike = Sequence[float] | np.ndarray

_MAX_BISECT_ITERS = 500


def pairwise_sum(a: np.ndarray) -> float:
    """Sum with a deterministic pairwise reduction tree."""
    a = np.asarray(a, dtype=float).ravel()
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            a = np.concatenate([a[:-1:2] + a[1::2], a[-1:]])
        else:
            a = a[::2] + a[1::2]
    return float(a[0])


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with lo < hi, both finite."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, t: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= t <= self.hi + slack

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.lo, self.hi, n)


@dataclass(frozen=True)
class WeightedMeasure:
    """Finite positive measure: strictly increasing nodes with positive weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or weights.shape != nodes.shape:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if nodes.size == 0:
            raise ValueError("measure needs at least one node")
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("nodes must be strictly increasing")
        if not np.all(weights > 0):
            raise ValueError("weights must all be positive")
        if not np.isfinite(self.mass) or self.mass <= 0:
            raise NonFinite("total mass must be finite and positive")

    @property
    def mass(self) -> float:
        return pairwise_sum(self.weights)

    def rescaled(self, factor: ArrayLike) -> "WeightedMeasure":
        """Same nodes, weights multiplied pointwise by `factor` (must stay > 0)."""
        return WeightedMeasure(self.nodes, self.weights * np.asarray(factor, float))


def merge_measures(*measures: WeightedMeasure) -> WeightedMeasure:
    """Concatenate measures whose node ranges are disjoint and ordered."""
    nodes = np.concatenate([m.nodes for m in measures])
    weights = np.concatenate([m.weights for m in measures])
    order = np.argsort(nodes, kind="stable")
    return WeightedMeasure(nodes[order], weights[order])


@dataclass(frozen=True)
class GridFn:
    """Function sampled on the nodes of a weighted measure."""

    measure: WeightedMeasure
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != self.measure.nodes.shape:
            raise ValueError("one value per node required")

    @classmethod
    def from_callable(cls, measure: WeightedMeasure, fn: Callable) -> "GridFn":
        return cls(measure, np.asarray(fn(measure.nodes), dtype=float))


def integrate(f: GridFn) -> float:
    """Integral of a grid function: sum of weight * value, fixed reduction order."""
    prod = f.measure.weights * f.values
    if np.any(np.isnan(prod)):
        raise NonFinite("NaN in integrand")
    return pairwise_sum(prod)


def gauss_measure(interval: Interval, panels: int, order: int) -> WeightedMeasure:
    """Composite Gauss-Legendre rule: `panels` equal panels of the given order."""
    if panels < 1:
        raise ValueError("panels must be >= 1")
    if not 2 <= order <= 64:
        raise ValueError("order must lie in {2..64}")
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(interval.lo, interval.hi, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return WeightedMeasure(nodes, weights)


def geometric_gauss_measure(
    interval: Interval, panels: int = 40, order: int = 16, ratio: float = 2.0
) -> WeightedMeasure:
    """Composite Gauss-Legendre with panel widths shrinking geometrically toward lo.

    Suited to integrands that vary on a logarithmic scale near the left
    endpoint; the panel adjacent to lo has width ~ length / ratio**panels.
    """
    if panels < 1 or ratio <= 1:
        raise ValueError("need panels >= 1 and ratio > 1")
    if not 2 <= order <= 64:
        raise ValueError("order must lie in {2..64}")
    k = np.arange(panels + 1, dtype=float)
    edges = interval.lo + interval.length * (ratio**k - 1.0) / (ratio**panels - 1.0)
    x, w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return WeightedMeasure(nodes, weights)


def bisect_monotone(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    target: float = 0.0,
    direction: str = "increasing",
    tol: float = 1e-10,
) -> float:
    """Solve g(c) = target on [lo, hi] for monotone g by plain bisection.

    Returns the bracket midpoint once the bracket width is <= tol.  Raises
    NoBracket when the endpoints do not straddle the target and NonFinite when
    g produces NaN inside the bracket.
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError("direction must be 'increasing' or 'decreasing'")
    if not (lo < hi):
        raise ValueError("need lo < hi")
    sign = 1.0 if direction == "increasing" else -1.0

    def shifted(c: float) -> float:
        v = g(c)
        if np.isnan(v):
            raise NonFinite(f"g({c}) is NaN")
        return sign * (v - target)

    flo, fhi = shifted(lo), shifted(hi)
    if flo > 0 or fhi < 0:
        raise NoBracket(
            f"g does not bracket target {target} on [{lo}, {hi}] ({direction})"
        )
    for _ in range(_MAX_BISECT_ITERS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if shifted(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sup_on_grid(f: Callable, m: WeightedMeasure) -> tuple[float, float]:
    """Max of f over the nodes and the first node attaining it."""
    vals = np.asarray(f(m.nodes), dtype=float)
    i = int(np.argmax(vals))
    return float(vals[i]), float(m.nodes[i])


@dataclass(frozen=True)
class SmoothFn:
    """C^2 function carrier: value, first and second derivative maps.

    The interval marks the nominal domain (the piece an operation acts on);
    the callables themselves are expected to evaluate on a neighbourhood of it
    so that one-sided constructions can probe slightly outside.  Callables
    must be vectorized over numpy arrays.
    """

    domain: Interval
    eval0: Callable = field(repr=False)
    eval1: Callable = field(repr=False)
    eval2: Callable = field(repr=False)
    name: str = ""

    def _call(self, fn: Callable, t: ArrayLike) -> np.ndarray:
        arr = np.asarray(t, dtype=float)
        out = np.asarray(fn(np.atleast_1d(arr)), dtype=float)
        return out.reshape(arr.shape)

    def d0(self, t: ArrayLike) -> np.ndarray:
        return self._call(self.eval0, t)

    def d1(self, t: ArrayLike) -> np.ndarray:
        return self._call(self.eval1, t)

    def d2(self, t: ArrayLike) -> np.ndarray:
        return self._call(self.eval2, t)


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    worst_d1_err: float
    worst_d2_err: float
    n_probes: int


def check_derivative_consistency(
    fn: SmoothFn, n_probes: int = 64, rtol: float = 1e-5
) -> ConsistencyReport:
    """Central finite differences of eval0 vs eval1 and eval1 vs eval2.

    Step is 1e-5 * scale (scale from the domain endpoints, capped by the
    domain length); the error is measured relative to the sup of the exact
    derivative over the probe grid, so zero crossings do not inflate it.
    """
    dom = fn.domain
    scale = max(1.0, abs(dom.lo), abs(dom.hi))
    h = min(1e-5 * scale, dom.length / 8.0)
    t = np.linspace(dom.lo + h, dom.hi - h, n_probes)

    def sup_rel_err(approx: np.ndarray, exact: np.ndarray) -> float:
        denom = max(float(np.max(np.abs(approx))), float(np.max(np.abs(exact))), 1e-12)
        return float(np.max(np.abs(approx - exact)) / denom)

    d1_fd = (fn.d0(t + h) - fn.d0(t - h)) / (2 * h)
    e1 = sup_rel_err(d1_fd, fn.d1(t))

    d2_fd = (fn.d1(t + h) - fn.d1(t - h)) / (2 * h)
    e2 = sup_rel_err(d2_fd, fn.d2(t))

    return ConsistencyReport(ok=(e1 <= rtol and e2 <= rtol), worst_d1_err=e1,
                             worst_d2_err=e2, n_probes=n_probes)


def smooth_fn_from_formulas(
    domain: Interval, f0: Callable, f1: Callable, f2: Callable, name: str = ""
) -> SmoothFn:
    return SmoothFn(domain, f0, f1, f2, name)
