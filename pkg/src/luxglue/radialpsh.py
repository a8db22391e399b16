"""Radial potentials on C^n: complex-Hessian spectra, the reference chart
potential log(1 + |z|^2), and the quadruple-log family whose entropy stays
bounded while its oscillation blows up.

A radial potential f(t), t = |z|^2, has complex-Hessian eigenvalues f'(t)
with multiplicity n-1 and f'(t) + t f''(t); its determinant is their product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain
from .gluing import GluePiece, GlueProblem, GlueResult, glue
from .numgrid import (
    GridFn,
    Interval,
    SmoothFn,
    WeightedMeasure,
    gauss_measure,
    geometric_gauss_measure,
    merge_measures,
    pairwise_sum,
)
from .orlicz import EntropyParams, entropy, luxemburg_norm
from .youngfn import phi

# Example normalization of the quadruple-log potential; the raw family used
# in the closed-form bounds drops it.
FEPS_COEFF = math.log(2.0) / 2.0

EPS_MAX = 1.0 / 16.0


@dataclass(frozen=True)
class RadialProfile:
    """A potential f(t = |z|^2) on C^n, n >= 2."""

    n: int
    fn: SmoothFn

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("complex dimension must be >= 2")
        if self.fn.domain.lo < 0:
            raise ValueError("radial domain must sit inside [0, infinity)")


@dataclass(frozen=True)
class CounterexampleParams:
    eps: float
    n: int

    def __post_init__(self) -> None:
        if not 0 < self.eps < EPS_MAX:
            raise ValueError(f"eps must lie in (0, {EPS_MAX})")
        if self.n < 2:
            raise ValueError("n must be >= 2")


@dataclass(frozen=True)
class HessianSpectrum:
    lam_small: float  # multiplicity n - 1
    lam_big: float
    det: float


def hessian_spectrum(p: RadialProfile, t: float) -> HessianSpectrum:
    """Eigenvalues and determinant of the complex Hessian of f(|z|^2) at t."""
    if not p.fn.domain.contains(t, slack=1e-12):
        raise OutOfDomain(f"t={t} outside {p.fn.domain}")
    lam_small = float(p.fn.d1(t))
    lam_big = lam_small + t * float(p.fn.d2(t))
    return HessianSpectrum(lam_small, lam_big, lam_small ** (p.n - 1) * lam_big)


@dataclass(frozen=True)
class PshReport:
    min_small: float
    arg_small: float
    min_big: float
    arg_big: float
    strict: bool


def psh_check(p: RadialProfile, grid: WeightedMeasure) -> PshReport:
    """Minimum eigenvalues over the grid; strictly psh iff both positive."""
    t = grid.nodes
    small = p.fn.d1(t)
    big = small + t * p.fn.d2(t)
    i, j = int(np.argmin(small)), int(np.argmin(big))
    return PshReport(
        float(small[i]), float(t[i]), float(big[j]), float(t[j]),
        bool(small[i] > 0 and big[j] > 0),
    )


def fs_potential() -> SmoothFn:
    """Reference chart potential log(1 + t) with its derivatives."""
    return SmoothFn(
        Interval(0.0, 1e6),
        lambda t: np.log1p(t),
        lambda t: 1.0 / (1.0 + t),
        lambda t: -1.0 / (1.0 + t) ** 2,
        name="log1p",
    )


def fs_profile(n: int) -> RadialProfile:
    return RadialProfile(n, fs_potential())


def fs_background_det(n: int, t: np.ndarray) -> np.ndarray:
    """Complex-Hessian determinant of the reference potential: (1+t)^-(n+1)."""
    return (1.0 + np.asarray(t, dtype=float)) ** (-(n + 1))


# ---------------------------------------------------------------------------
# the quadruple-log family


def _feps_levels(t: np.ndarray, eps: float):
    u = 1.0 / (t + eps)
    L1 = np.log1p(u)
    L2 = np.log1p(L1)
    L3 = np.log1p(L2)
    return u, L1, L2, L3


def _feps_d0(t: np.ndarray, eps: float, coeff: float) -> np.ndarray:
    _, _, _, L3 = _feps_levels(t, eps)
    return -coeff * np.log1p(L3)


def _feps_d1(t: np.ndarray, eps: float, coeff: float) -> np.ndarray:
    u, L1, L2, L3 = _feps_levels(t, eps)
    D = (1 + u) * (1 + L1) * (1 + L2) * (1 + L3)
    return coeff * u * u / D


def _feps_d2(t: np.ndarray, eps: float, coeff: float) -> np.ndarray:
    u, L1, L2, L3 = _feps_levels(t, eps)
    D = (1 + u) * (1 + L1) * (1 + L2) * (1 + L3)
    S = (1 + L1) * (1 + L2) * (1 + L3) + (1 + L2) * (1 + L3) + (1 + L3) + 1.0
    return coeff * u**3 * (u * S - 2.0 * D) / D**2


def _check_feps_domain(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > 0.25 + 1e-12):
        raise OutOfDomain("the quadruple-log family lives on [0, 1/4]")
    return t


def f_eps(params: CounterexampleParams, t) -> np.ndarray:
    return _feps_d0(_check_feps_domain(t), params.eps, FEPS_COEFF)


def f_eps_d1(params: CounterexampleParams, t) -> np.ndarray:
    return _feps_d1(_check_feps_domain(t), params.eps, FEPS_COEFF)


def f_eps_d2(params: CounterexampleParams, t) -> np.ndarray:
    return _feps_d2(_check_feps_domain(t), params.eps, FEPS_COEFF)


def f_eps_at_zero(params: CounterexampleParams) -> float:
    return float(_feps_d0(np.asarray(0.0), params.eps, FEPS_COEFF))


def feps_smoothfn(eps: float, lo: float = 0.0, hi: float = 0.25,
                  coeff: float = FEPS_COEFF) -> SmoothFn:
    """Unguarded carrier for constructions that probe slightly past [lo, hi]."""
    return SmoothFn(
        Interval(lo, hi),
        lambda t: _feps_d0(t, eps, coeff),
        lambda t: _feps_d1(t, eps, coeff),
        lambda t: _feps_d2(t, eps, coeff),
        name=f"feps[{eps:g}]",
    )


def feps_profile(params: CounterexampleParams) -> RadialProfile:
    return RadialProfile(params.n, feps_smoothfn(params.eps))


@dataclass(frozen=True)
class AppendixReport:
    eps: float
    n: int
    sup_big_eigen: float
    integral: float


def appendix_c_bounds(params: CounterexampleParams, t0: float) -> AppendixReport:
    """Sup of the big eigenvalue on [t0, 1/4] and the chart-weighted entropy
    integral of the determinant on [0, 1/4], both for the raw (coefficient-1)
    family."""
    if not 0 < t0 < 0.25:
        raise ValueError("t0 must lie in (0, 1/4)")
    eps, n = params.eps, params.n
    t = np.linspace(t0, 0.25, 4097)
    big = _feps_d1(t, eps, 1.0) + t * _feps_d2(t, eps, 1.0)
    sup_big = float(np.max(big))
    m = geometric_gauss_measure(Interval(0.0, 0.25), panels=40, order=16)
    tt = m.nodes
    F = _feps_d1(tt, eps, 1.0) ** (n - 1) * (
        _feps_d1(tt, eps, 1.0) + tt * _feps_d2(tt, eps, 1.0)
    )
    integrand = (
        tt ** (n - 1)
        * F
        * np.log1p(F) ** n
        * np.log1p(np.log1p(F)) ** (n - 1)
    )
    integral = pairwise_sum(m.weights * integrand)
    return AppendixReport(eps, n, sup_big, integral)


# ---------------------------------------------------------------------------
# the assembled chart potential and its entropy sweep


@dataclass(frozen=True)
class ChartPotential:
    """Potential equal to the quadruple-log family near 0, the reference
    potential past t = 1, and a strictly psh radial glue on the band between."""

    params: CounterexampleParams
    profile: RadialProfile
    glue_result: GlueResult


def build_v_eps(params: CounterexampleParams) -> ChartPotential:
    """Assemble the chart potential for the given eps.

    Glue pieces sit on t in [1/64, 1/16] (the family) and [1, 4] (the
    reference); the glue happens in log coordinates and is exact on both
    pieces, so the seams at 1/16 and 1 are exact.
    """
    eps, n = params.eps, params.n
    left = GluePiece(feps_smoothfn(eps, lo=1.0 / 64.0, hi=1.0 / 16.0))
    fs = fs_potential()
    right = GluePiece(SmoothFn(Interval(1.0, 4.0), fs.eval0, fs.eval1, fs.eval2,
                               name="log1p"))
    result = glue(GlueProblem(left, right, "radial_psh", n=n))
    h = result.h
    b1, a2 = 1.0 / 16.0, 1.0

    def d0(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        mid = np.clip(t, b1 / 2, 2.0)
        return np.where(
            t <= b1, _feps_d0(t, eps, FEPS_COEFF),
            np.where(t >= a2, np.log1p(t), h.d0(mid)),
        )

    def d1(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        mid = np.clip(t, b1 / 2, 2.0)
        return np.where(
            t <= b1, _feps_d1(t, eps, FEPS_COEFF),
            np.where(t >= a2, 1.0 / (1.0 + t), h.d1(mid)),
        )

    def d2(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        mid = np.clip(t, b1 / 2, 2.0)
        return np.where(
            t <= b1, _feps_d2(t, eps, FEPS_COEFF),
            np.where(t >= a2, -1.0 / (1.0 + t) ** 2, h.d2(mid)),
        )

    profile = RadialProfile(n, SmoothFn(Interval(0.0, 9.0), d0, d1, d2,
                                        name=f"veps[{eps:g}]"))
    return ChartPotential(params, profile, result)


def chart_measure(n: int) -> WeightedMeasure:
    """Reference chart measure on t = |z|^2 with total mass pi^n / n!.

    Radial weight K t^(n-1) (1+t)^-(n+1) with K = pi^n / (n-1)!; the region
    t > 1, where the assembled potential coincides with the reference one and
    every density in the sweep equals 1, enters as a single atom carrying the
    exact remaining mass (1 - 2^-n) K / n.
    """
    K = math.pi**n / math.factorial(n - 1)
    core1 = geometric_gauss_measure(Interval(0.0, 1.0 / 16.0), panels=40, order=16)
    core2 = gauss_measure(Interval(1.0 / 16.0, 1.0), panels=24, order=16)
    core = merge_measures(core1, core2)
    w = K * core.nodes ** (n - 1) * (1.0 + core.nodes) ** (-(n + 1))
    tail_mass = K * (1.0 - 2.0 ** (-n)) / n
    tail = WeightedMeasure(np.array([2.0]), np.array([tail_mass]))
    return merge_measures(WeightedMeasure(core.nodes, core.weights * w), tail)


def chart_total_mass(n: int) -> float:
    return math.pi**n / math.factorial(n)


def density_ratio(chart: ChartPotential, measure: WeightedMeasure) -> GridFn:
    """Determinant of the assembled potential against the reference
    determinant; identically 1 past t = 1."""
    n = chart.params.n
    t = measure.nodes
    fn = chart.profile.fn
    lam1 = fn.d1(t)
    lam2 = lam1 + t * fn.d2(t)
    dens = lam1 ** (n - 1) * lam2 * (1.0 + t) ** (n + 1)
    dens = np.where(t >= 1.0, 1.0, dens)
    return GridFn(measure, dens)


@dataclass(frozen=True)
class SweepRow:
    eps: float
    ent: float
    osc: float
    raw_integral: float


def entropy_sweep(n: int, r: float, eps_list) -> list[SweepRow]:
    """For each eps: assemble the chart potential, compute the entropy of its
    density ratio at weight (1, n, r), and record the oscillation proxy
    |f_eps(0)|."""
    measure = chart_measure(n)
    ep = EntropyParams(n, r)
    rows: list[SweepRow] = []
    for eps in eps_list:
        params = CounterexampleParams(float(eps), n)
        chart = build_v_eps(params)
        dens = density_ratio(chart, measure)
        raw = pairwise_sum(measure.weights * phi(ep.young, dens.values))
        rows.append(
            SweepRow(float(eps), entropy(dens, ep), abs(f_eps_at_zero(params)), raw)
        )
    return rows


def fs_constant_density_norm(n: int, r: float) -> float:
    """Entropy of the unit density on the chart measure (the trivial solution
    whose density is identically 1); scalar cross-check for the sweep."""
    m = chart_measure(n)
    return luxemburg_norm(GridFn(m, np.ones_like(m.nodes)), EntropyParams(n, r).young).norm
