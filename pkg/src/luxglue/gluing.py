"""Constructive C^2 gluing of two convex pieces on disjoint intervals.

Three modes:

* strictly_convex: the glue keeps a positive curvature floor and carries
  certified two-sided curvature bounds;
* convex: the zero-floor variant with a certified upper curvature bound;
* radial_psh: pieces are radial potentials in t = |z|^2; the glue happens in
  logarithmic coordinates and returns to t-space, preserving strict
  plurisubharmonicity, with a certified determinant bound on the bridge band.

The construction: modify each piece outside its interval by damping the
second derivative down to a floor c through a smooth cutoff (the modified
function is exact on the piece interval by an integral identity), then bridge
the two modified functions with a regularized max built from a mollified
absolute value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DeltaSearchFailed,
    IncompatiblePieces,
    NonPositiveEps,
    NotStrictlyConvexPiece,
    VerificationFailed,
)
from .numgrid import Interval, SmoothFn, check_derivative_consistency

# Curvature ceiling constant of the mollified absolute value: rho'' <= M/eps.
# The bump mollifier actually peaks near 1.66/eps; certificates use M = 3.
MOLLIFIER_M = 3.0

_TABLE_N = 2048
_PROBE_N = 2049
_WORK_N = 16385


# ---------------------------------------------------------------------------
# cumulative tables on the unit interval


class _UnitTable:
    """I(s) = integral of g over [0, s] and J(s) = integral of I, s in [0, 1].

    Increments use 4-point Gauss per step; evaluation uses cubic Hermite
    interpolation with the exact derivative values (g for I, I for J).
    """

    def __init__(self, g: Callable[[np.ndarray], np.ndarray], n: int = _TABLE_N):
        s = np.linspace(0.0, 1.0, n + 1)
        xg, wg = np.polynomial.legendre.leggauss(4)
        half = 0.5 / n
        mid = 0.5 * (s[:-1] + s[1:])
        pts = mid[:, None] + half * xg[None, :]
        vals = np.asarray(g(pts.ravel()), dtype=float).reshape(n, 4)
        inc = half * (vals @ wg)
        self.n = n
        self.s = s
        self.gI = np.asarray(g(s), dtype=float)
        self.I = np.concatenate([[0.0], np.cumsum(inc)])
        # exact integral of the Hermite cubic of I on each step
        d = 1.0 / n
        incJ = d * (0.5 * (self.I[:-1] + self.I[1:]) + d * (self.gI[:-1] - self.gI[1:]) / 12.0)
        self.J = np.concatenate([[0.0], np.cumsum(incJ)])

    def _hermite(self, sq: np.ndarray, V: np.ndarray, D: np.ndarray) -> np.ndarray:
        sq = np.clip(np.asarray(sq, dtype=float), 0.0, 1.0)
        i = np.clip((sq * self.n).astype(int), 0, self.n - 1)
        d = 1.0 / self.n
        x = sq * self.n - i
        x2 = x * x
        x3 = x2 * x
        return (
            V[i] * (2 * x3 - 3 * x2 + 1)
            + V[i + 1] * (-2 * x3 + 3 * x2)
            + d * (D[i] * (x3 - 2 * x2 + x) + D[i + 1] * (x3 - x2))
        )

    def I_at(self, sq: np.ndarray) -> np.ndarray:
        return self._hermite(sq, self.I, self.gI)

    def J_at(self, sq: np.ndarray) -> np.ndarray:
        return self._hermite(sq, self.J, self.I)


# ---------------------------------------------------------------------------
# bump mollifier primitives (all exactly even/odd via half-tables + mirrors)


def _bump(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    return out


class _BumpTables:
    def __init__(self) -> None:
        self.table = _UnitTable(_bump)  # integrals of the bump over [0, x]
        self.half_mass = float(self.table.I[-1])  # int_0^1 bump
        self.B = 2.0 * self.half_mass  # full mass of the bump on [-1, 1]
        # int_0^x of the (normalized) CDF for x >= 0, and the CDF integral
        # from -1 to 0
        self.J1 = float(self.table.J[-1]) / self.B
        self.yu0 = 0.5 - self.J1

    def cdf(self, x: np.ndarray) -> np.ndarray:
        """Normalized CDF of the bump: 0 at -1, 1/2 at 0, 1 at +1."""
        x = np.asarray(x, dtype=float)
        return 0.5 + np.sign(x) * self.table.I_at(np.abs(x)) / self.B

    def cdf_integral(self, x: np.ndarray) -> np.ndarray:
        """Integral of the CDF from -1 to x (for the mollified |t|)."""
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        d_half = 0.5 * ax + self.table.J_at(ax) / self.B
        return self.yu0 + d_half + np.where(x < 0, x, 0.0)

    def density(self, x: np.ndarray) -> np.ndarray:
        return _bump(x) / self.B


_BUMP: _BumpTables | None = None


def _bump_tables() -> _BumpTables:
    global _BUMP
    if _BUMP is None:
        _BUMP = _BumpTables()
    return _BUMP


def smoothstep(s: np.ndarray) -> np.ndarray:
    """C^infinity monotone step on [0, 1] (bump CDF reparametrized)."""
    return _bump_tables().cdf(2.0 * np.asarray(s, dtype=float) - 1.0)


def rho_eps(eps: float) -> SmoothFn:
    """Mollified absolute value of radius eps.

    Equals |t| for |t| >= eps; everywhere even, >= |t|, with |slope| <= 1 and
    curvature in [0, M/eps] (measured peak about 1.66/eps).
    """
    if not eps > 0:
        raise NonPositiveEps(f"eps must be positive, got {eps}")
    bt = _bump_tables()

    def d0(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = t / eps
        inner = np.abs(x) < 1.0
        out = np.abs(t)
        if np.any(inner):
            xi = x[inner]
            out = out.copy()
            out[inner] = 2.0 * eps * bt.cdf_integral(xi) - t[inner]
        return out

    def d1(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = t / eps
        inner = np.abs(x) < 1.0
        out = np.sign(t)
        if np.any(inner):
            out = out.copy()
            out[inner] = 2.0 * bt.cdf(x[inner]) - 1.0
        return out

    def d2(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return 2.0 * bt.density(t / eps) / eps

    return SmoothFn(Interval(-2.0 * eps, 2.0 * eps), d0, d1, d2, name=f"rho[{eps:g}]")


# ---------------------------------------------------------------------------
# problem/result containers


@dataclass(frozen=True)
class GluePiece:
    """One piece: a C^2 function whose nominal interval is its domain."""

    fn: SmoothFn

    @property
    def interval(self) -> Interval:
        return self.fn.domain


MODES = ("strictly_convex", "convex", "radial_psh")


@dataclass(frozen=True)
class GlueProblem:
    left: GluePiece
    right: GluePiece
    mode: str
    n: int = 2  # complex dimension, used by radial_psh certificates only

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        a1, b1 = self.left.interval.lo, self.left.interval.hi
        a2, b2 = self.right.interval.lo, self.right.interval.hi
        if not a1 < b1 < a2 < b2:
            raise ValueError("need a1 < b1 < a2 < b2")
        if self.mode == "radial_psh" and not a1 > 0:
            raise ValueError("radial mode needs a1 > 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class CompatReport:
    lhs: float
    mid: float
    rhs: float
    ok: bool


@dataclass(frozen=True)
class GlueResult:
    mode: str
    h: SmoothFn
    c: float
    delta: float
    eps: float
    inf_h2: float
    sup_h2: float
    cert_inf_h2: float
    cert_sup_h2: float
    working: Interval
    compat: CompatReport
    log_result: "GlueResult | None" = None
    det_sup: float | None = None
    det_cert: float | None = None
    n: int | None = None


def compatibility(problem: GlueProblem) -> CompatReport:
    """Three-term slope chain whose strict ordering is necessary and
    sufficient for a glue to exist in the given mode."""
    f, g = problem.left.fn, problem.right.fn
    a1, b1 = problem.left.interval.lo, problem.left.interval.hi
    a2, b2 = problem.right.interval.lo, problem.right.interval.hi
    if problem.mode == "radial_psh":
        lhs = b1 * float(f.d1(b1))
        mid = (float(g.d0(a2)) - float(f.d0(b1))) / (np.log(a2) - np.log(b1))
        rhs = a2 * float(g.d1(a2))
    else:
        lhs = float(f.d1(b1))
        mid = (float(g.d0(a2)) - float(f.d0(b1))) / (a2 - b1)
        rhs = float(g.d1(a2))
    return CompatReport(lhs, mid, rhs, bool(lhs < mid < rhs))


def _min_max_on(fn: SmoothFn, lo: float, hi: float, n: int = _PROBE_N) -> tuple[float, float]:
    vals = fn.d2(np.linspace(lo, hi, n))
    return float(np.min(vals)), float(np.max(vals))


def delta_search(problem: GlueProblem, c: float) -> float:
    """Largest dyadic margin delta = (a2-b1)/2^j, j = 2..60, satisfying the
    side conditions of the construction at probe-grid resolution."""
    if problem.mode == "radial_psh":
        raise ValueError("delta search runs on the log-coordinate problem")
    f, g = problem.left.fn, problem.right.fn
    a1, b1 = problem.left.interval.lo, problem.left.interval.hi
    a2, b2 = problem.right.interval.lo, problem.right.interval.hi
    gap = a2 - b1
    compat = compatibility(problem)
    if not compat.ok:
        raise DeltaSearchFailed("compatibility chain fails; conditions unsatisfiable")
    sup_f = _min_max_on(f, a1, b1)[1]
    sup_g = _min_max_on(g, a2, b2)[1]
    mid = compat.mid
    f1b, g1a = compat.lhs, compat.rhs

    for j in range(2, 61):
        delta = gap / 2.0**j
        min_f_d, max_f_d = _min_max_on(f, a1 - delta, b1 + delta)
        min_g_d, max_g_d = _min_max_on(g, a2 - delta, b2 + delta)
        if max_f_d > sup_f + 1.0 or max_g_d > sup_g + 1.0:
            continue
        fb = float(f.d0(b1 + delta))
        fpb = float(f.d1(b1 + delta))
        ga = float(g.d0(a2 - delta))
        gpa = float(g.d1(a2 - delta))
        if problem.mode == "strictly_convex":
            if min_f_d < c or min_g_d < c:
                continue
            if not (gpa - fpb) / (gap - 2 * delta) > c:
                continue
            lhs4 = 2.0 * ((float(g.d0(a2)) - fb) / (gap - delta) - fpb) / (gap - delta)
            if not lhs4 >= c / 2.0 + (mid - f1b) / gap:
                continue
            lhs5 = 2.0 * (gpa - (ga - float(f.d0(b1))) / (gap - delta)) / (gap - delta)
            if not lhs5 >= c / 2.0 + (g1a - mid) / gap:
                continue
        else:
            # convex mode: the pieces' global formulas stand in for convex
            # extensions, so the extension must stay convex on the margins
            floor = -1e-12 * (1.0 + max(abs(sup_f), abs(sup_g)))
            if min_f_d < floor or min_g_d < floor:
                continue
            if not fpb < gpa:
                continue
            if not 2.0 * ((float(g.d0(a2)) - fb) / (gap - delta) - fpb) >= mid - f1b:
                continue
            if not 2.0 * (gpa - (ga - float(f.d0(b1))) / (gap - delta)) >= g1a - mid:
                continue
        return delta
    raise DeltaSearchFailed("no dyadic delta satisfied the side conditions (j <= 60)")


class _Regularized:
    """Piece modified outside its interval: second derivative is damped to the
    floor c through a smooth cutoff with support margin 0.9 * delta.

    Exact on the piece interval by the identity
    value(t) = double integral of cutoff*(f''-c) from the anchor, plus the
    anchored parabola; the double integral telescopes against the closed
    forms there.
    """

    def __init__(self, piece: SmoothFn, anchor: float, c: float, delta: float):
        A, B = piece.domain.lo, piece.domain.hi
        if anchor not in (A, B):
            raise ValueError("anchor must be a piece endpoint")
        self.piece = piece
        self.A, self.B, self.P, self.c = A, B, anchor, c
        self.ds = 0.9 * delta
        ds = self.ds
        f0, f1, f2 = piece.d0, piece.d1, piece.d2

        def fall(s: np.ndarray) -> np.ndarray:
            return 1.0 - smoothstep(s)

        self._right = _UnitTable(lambda s: fall(s) * (f2(B + s * ds) - c))
        self._left = _UnitTable(lambda s: fall(s) * (f2(A - s * ds) - c))
        self.f0A = float(f0(A))
        self.f1Aval = float(f1(A))
        self.WB = float(f1(B)) - self.f1Aval - c * (B - A)
        self.VB = float(f0(B)) - self.f0A - self.f1Aval * (B - A) - 0.5 * c * (B - A) ** 2
        self.W_end_R = self.WB + ds * float(self._right.I[-1])
        self.W_end_L = -ds * float(self._left.I[-1])
        self.V_Bd = self.VB + self.WB * ds + ds**2 * float(self._right.J[-1])
        self.V_Ad = ds**2 * float(self._left.J[-1])
        if anchor == A:
            self.WP, self.VP = 0.0, 0.0
        else:
            self.WP, self.VP = self.WB, self.VB
        self.f0P = float(f0(anchor))
        self.f1P = float(f1(anchor))

    def cutoff(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        A, B, ds = self.A, self.B, self.ds
        out = np.zeros_like(t)
        core = (t >= A) & (t <= B)
        out[core] = 1.0
        left = (t < A) & (t > A - ds)
        out[left] = smoothstep((t[left] - (A - ds)) / ds)
        right = (t > B) & (t < B + ds)
        out[right] = smoothstep(((B + ds) - t[right]) / ds)
        return out

    def _w(self, t: np.ndarray) -> np.ndarray:
        """Integral of cutoff*(f''-c) from A to t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        A, B, ds, c = self.A, self.B, self.ds, self.c
        f1 = self.piece.d1
        out = np.empty_like(t)
        m = (t >= A) & (t <= B)
        out[m] = f1(t[m]) - self.f1Aval - c * (t[m] - A)
        m = (t > B) & (t < B + ds)
        out[m] = self.WB + ds * self._right.I_at((t[m] - B) / ds)
        m = t >= B + ds
        out[m] = self.W_end_R
        m = (t < A) & (t > A - ds)
        out[m] = -ds * self._left.I_at((A - t[m]) / ds)
        m = t <= A - ds
        out[m] = self.W_end_L
        return out

    def _v(self, t: np.ndarray) -> np.ndarray:
        """Integral of _w from A to t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        A, B, ds, c = self.A, self.B, self.ds, self.c
        f0 = self.piece.d0
        out = np.empty_like(t)
        m = (t >= A) & (t <= B)
        tm = t[m]
        out[m] = f0(tm) - self.f0A - self.f1Aval * (tm - A) - 0.5 * c * (tm - A) ** 2
        m = (t > B) & (t < B + ds)
        tm = t[m]
        out[m] = self.VB + self.WB * (tm - B) + ds**2 * self._right.J_at((tm - B) / ds)
        m = t >= B + ds
        out[m] = self.V_Bd + self.W_end_R * (t[m] - (B + ds))
        m = (t < A) & (t > A - ds)
        out[m] = ds**2 * self._left.J_at((A - t[m]) / ds)
        m = t <= A - ds
        out[m] = self.V_Ad + self.W_end_L * (t[m] - (A - ds))
        return out

    def d0(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        dt = t - self.P
        return (
            self._v(t) - self.VP - self.WP * dt
            + self.f0P + self.f1P * dt + 0.5 * self.c * dt**2
        )

    def d1(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return self._w(t) - self.WP + self.f1P + self.c * (t - self.P)

    def d2(self, t: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return self.cutoff(t) * (self.piece.d2(t) - self.c) + self.c


def _piece_curvature_check(problem: GlueProblem) -> tuple[float, float, float, float]:
    """(alpha1, alpha2, sup_f, sup_g) with mode-specific positivity demands."""
    f, g = problem.left.fn, problem.right.fn
    a1, b1 = problem.left.interval.lo, problem.left.interval.hi
    a2, b2 = problem.right.interval.lo, problem.right.interval.hi
    alpha1, sup_f = _min_max_on(f, a1, b1)
    alpha2, sup_g = _min_max_on(g, a2, b2)
    if problem.mode == "strictly_convex":
        if alpha1 <= 0:
            raise NotStrictlyConvexPiece(f"left piece: min f'' = {alpha1} <= 0")
        if alpha2 <= 0:
            raise NotStrictlyConvexPiece(f"right piece: min g'' = {alpha2} <= 0")
    else:
        floor = -1e-12 * (1.0 + max(abs(sup_f), abs(sup_g)))
        if alpha1 < floor or alpha2 < floor:
            raise NotStrictlyConvexPiece("convex mode needs convex pieces")
    return alpha1, alpha2, sup_f, sup_g


def _validate_piece(fn: SmoothFn, label: str) -> None:
    report = check_derivative_consistency(fn)
    if not report.ok:
        raise VerificationFailed(
            f"{label} piece failed the derivative-consistency contract: "
            f"d1 err {report.worst_d1_err:.3e}, d2 err {report.worst_d2_err:.3e}"
        )


def glue(problem: GlueProblem) -> GlueResult:
    """Build the glued function with certified curvature bounds.

    Raises IncompatiblePieces when the slope chain fails (no glue exists),
    NotStrictlyConvexPiece when a piece misses its mode's curvature demand,
    DeltaSearchFailed when no dyadic margin satisfies the side conditions.
    """
    _validate_piece(problem.left.fn, "left")
    _validate_piece(problem.right.fn, "right")
    if problem.mode == "radial_psh":
        return _glue_radial(problem)

    compat = compatibility(problem)
    if not compat.ok:
        raise IncompatiblePieces(
            f"slope chain must increase strictly: {compat.lhs} < {compat.mid} "
            f"< {compat.rhs} fails"
        )
    alpha1, alpha2, sup_f, sup_g = _piece_curvature_check(problem)
    a1, b1 = problem.left.interval.lo, problem.left.interval.hi
    a2, b2 = problem.right.interval.lo, problem.right.interval.hi
    gap = a2 - b1
    if problem.mode == "strictly_convex":
        c = min(alpha1 / 2, alpha2 / 2, (compat.mid - compat.lhs) / gap,
                (compat.rhs - compat.mid) / gap)
    else:
        c = 0.0
    delta = delta_search(problem, c)
    ft = _Regularized(problem.left.fn, anchor=b1, c=c, delta=delta)
    gt = _Regularized(problem.right.fn, anchor=a2, c=c, delta=delta)
    pb1, pa2 = np.array([b1]), np.array([a2])
    gap_b1 = float(ft.d0(pb1)[0] - gt.d0(pb1)[0])
    gap_a2 = float(gt.d0(pa2)[0] - ft.d0(pa2)[0])
    eps = 0.5 * min(gap_b1, gap_a2)
    if not eps > 0:
        raise VerificationFailed(
            f"bridge separation not positive: gaps {gap_b1}, {gap_a2}"
        )
    rho = rho_eps(eps)

    def h0(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        F, G = ft.d0(t), gt.d0(t)
        mid = 0.5 * (F + G + rho.d0(F - G))
        return np.where(t <= b1, F, np.where(t >= a2, G, mid))

    def h1(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        F, G = ft.d0(t), gt.d0(t)
        F1, G1 = ft.d1(t), gt.d1(t)
        mid = 0.5 * (F1 + G1 + rho.d1(F - G) * (F1 - G1))
        return np.where(t <= b1, F1, np.where(t >= a2, G1, mid))

    def h2(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        F, G = ft.d0(t), gt.d0(t)
        F1, G1 = ft.d1(t), gt.d1(t)
        F2, G2 = ft.d2(t), gt.d2(t)
        d = F - G
        mid = 0.5 * (F2 + G2 + rho.d2(d) * (F1 - G1) ** 2 + rho.d1(d) * (F2 - G2))
        return np.where(t <= b1, F2, np.where(t >= a2, G2, mid))

    working = Interval(a1 - 1.0, b2 + 1.0)
    h = SmoothFn(working, h0, h1, h2, name=f"glue[{problem.mode}]")
    grid = np.linspace(working.lo, working.hi, _WORK_N)
    h2_vals = h.d2(grid)
    inf_h2, sup_h2 = float(np.min(h2_vals)), float(np.max(h2_vals))
    denom = gap * min(compat.mid - compat.lhs, compat.rhs - compat.mid)
    slope_span = (compat.rhs - compat.lhs) ** 2
    lead = 16.0 if problem.mode == "strictly_convex" else 4.0
    cert_sup = lead * MOLLIFIER_M * slope_span / denom + 1.0 + max(sup_f, sup_g)
    return GlueResult(
        mode=problem.mode,
        h=h,
        c=c,
        delta=delta,
        eps=eps,
        inf_h2=inf_h2,
        sup_h2=sup_h2,
        cert_inf_h2=c,
        cert_sup_h2=cert_sup,
        working=working,
        compat=compat,
    )


def _log_piece(piece: GluePiece) -> GluePiece:
    """Same function in logarithmic coordinates: tau -> f(e^tau)."""
    fn = piece.fn
    lo, hi = piece.interval.lo, piece.interval.hi

    def F0(tau: np.ndarray) -> np.ndarray:
        return fn.d0(np.exp(np.asarray(tau, dtype=float)))

    def F1(tau: np.ndarray) -> np.ndarray:
        t = np.exp(np.asarray(tau, dtype=float))
        return t * fn.d1(t)

    def F2(tau: np.ndarray) -> np.ndarray:
        t = np.exp(np.asarray(tau, dtype=float))
        return t * fn.d1(t) + t * t * fn.d2(t)

    return GluePiece(SmoothFn(Interval(np.log(lo), np.log(hi)), F0, F1, F2,
                              name=f"log[{fn.name}]"))


def _glue_radial(problem: GlueProblem) -> GlueResult:
    f, g = problem.left.fn, problem.right.fn
    a1, b1 = problem.left.interval.lo, problem.left.interval.hi
    a2, b2 = problem.right.interval.lo, problem.right.interval.hi
    n = problem.n
    for fn, lo, hi, label in ((f, a1, b1, "left"), (g, a2, b2, "right")):
        t = np.linspace(lo, hi, _PROBE_N)
        lam1 = fn.d1(t)
        lam2 = lam1 + t * fn.d2(t)
        if np.min(lam1) <= 0 or np.min(lam2) <= 0:
            raise NotStrictlyConvexPiece(
                f"{label} piece is not strictly plurisubharmonic in t = |z|^2"
            )
    compat = compatibility(problem)
    if not compat.ok:
        raise IncompatiblePieces(
            f"radial slope chain fails: {compat.lhs} < {compat.mid} < {compat.rhs}"
        )
    log_problem = GlueProblem(_log_piece(problem.left), _log_piece(problem.right),
                              "strictly_convex", n=n)
    log_res = glue(log_problem)
    H = log_res.h

    def h0(t: np.ndarray) -> np.ndarray:
        return H.d0(np.log(np.asarray(t, dtype=float)))

    def h1(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return H.d1(np.log(t)) / t

    def h2(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        tau = np.log(t)
        return (H.d2(tau) - H.d1(tau)) / (t * t)

    working = Interval(a1, float(np.exp(np.log(b2) + 1.0)))
    h = SmoothFn(working, h0, h1, h2, name="glue[radial_psh]")

    # determinant of the complex Hessian of h(|z|^2) on the bridge band,
    # measured and certified
    tau_band = np.linspace(np.log(b1), np.log(a2), _WORK_N)
    det_band = np.exp(-n * tau_band) * H.d1(tau_band) ** (n - 1) * H.d2(tau_band)
    det_sup = float(np.max(det_band))
    supF = _min_max_on(log_problem.left.fn, np.log(a1), np.log(b1))[1]
    supG = _min_max_on(log_problem.right.fn, np.log(a2), np.log(b2))[1]
    log_gap = np.log(a2) - np.log(b1)
    denom = log_gap * min(compat.mid - compat.lhs, compat.rhs - compat.mid)
    det_cert = (
        a2 ** (n - 1) * float(g.d1(a2)) ** (n - 1) / b1 ** (2 * n)
        * (16.0 * MOLLIFIER_M * (compat.rhs - compat.lhs) ** 2 / denom
           + 1.0 + max(supF, supG))
    )
    grid = np.linspace(working.lo, working.hi, _WORK_N)
    h2_vals = h.d2(grid)
    return GlueResult(
        mode="radial_psh",
        h=h,
        c=log_res.c,
        delta=log_res.delta,
        eps=log_res.eps,
        inf_h2=float(np.min(h2_vals)),
        sup_h2=float(np.max(h2_vals)),
        cert_inf_h2=log_res.cert_inf_h2,
        cert_sup_h2=log_res.cert_sup_h2,
        working=working,
        compat=compat,
        log_result=log_res,
        det_sup=det_sup,
        det_cert=det_cert,
        n=n,
    )
