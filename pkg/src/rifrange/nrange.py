"""Numerical ranges of complex matrices and their torus aggregates.

The closure of the numerical range of the compressed shift is the convex
hull of the union over the torus of the numerical ranges of the symbol
values.  For 2x2 values the elliptical range theorem gives the exact
boundary; for general size a rotated-Hermitian-part support sweep does.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonpositiveCoefficient, NotHermitian
from .rif import RifProduct, _require_off_exceptional
from .symbol import MatrixSymbol, eval_symbol, symbol_diagonal

ZERO_EPS = 1e-9
HULL_COLLINEAR_EPS = 1e-12
JACOBI_OFFDIAG_EPS = 1e-13


class ZeroVerdict(Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    NOT_INTERIOR = "NotInterior"


class WitnessVerdict(Enum):
    INTERIOR_WITNESS = "InteriorWitness"
    NO_WITNESS = "NoWitness"


@dataclass(frozen=True)
class EllipseDisk:
    """Elliptical disk with the given foci and minor-axis length."""

    f1: complex
    f2: complex
    minor: float

    @property
    def major(self) -> float:
        return float(np.sqrt(abs(self.f1 - self.f2) ** 2 + self.minor ** 2))

    @property
    def center(self) -> complex:
        return (self.f1 + self.f2) / 2

    def boundary(self, K: int) -> np.ndarray:
        """K points of the parametric boundary (degenerate cases included)."""
        t = 2 * np.pi * np.arange(K) / K
        axis = self.f2 - self.f1
        rot = axis / abs(axis) if abs(axis) > 0 else 1.0
        return self.center + rot * (0.5 * self.major * np.cos(t) + 0.5j * self.minor * np.sin(t))


@dataclass(frozen=True)
class SupportSamples:
    angles: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class PlanarRegion:
    """Point cloud with its convex hull polygon (counterclockwise)."""

    points: np.ndarray
    hull: np.ndarray


# --- Hermitian eigenproblem (cyclic Jacobi) ----------------------------------

def hermitian_eigensystem(A: np.ndarray, tol: float = JACOBI_OFFDIAG_EPS):
    """Eigenvalues (ascending) and unitary eigenvector columns of a Hermitian matrix.

    Cyclic Jacobi sweeps with a phase-adjusted rotation per pivot; for the
    tiny matrices used here (m <= 8) a handful of sweeps drives the
    off-diagonal norm to rounding level.
    """
    A = np.asarray(A, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.conj().T)) > 1e-10 * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    n = A.shape[0]
    H = (A + A.conj().T) / 2
    V = np.eye(n, dtype=complex)
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(60):
        off = float(np.sqrt(np.sum(np.abs(H[offdiag]) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = H[p, q]
                if abs(g) <= 1e-18 * scale:
                    continue
                phase = g / abs(g)
                delta = (H[q, q].real - H[p, p].real) / (2 * abs(g))
                t = np.sign(delta) / (abs(delta) + np.sqrt(1 + delta * delta)) if delta != 0 else 1.0
                cth = 1.0 / np.sqrt(1 + t * t)
                sth = t * cth
                J = np.eye(n, dtype=complex)
                J[p, p] = cth
                J[q, q] = cth
                J[p, q] = sth * phase
                J[q, p] = -sth * np.conj(phase)
                H = J.conj().T @ H @ J
                V = V @ J
    vals = np.real(np.diag(H))
    order = np.argsort(vals)
    return vals[order], V[:, order]


def hermitian_eigs(A: np.ndarray) -> list[float]:
    vals, _ = hermitian_eigensystem(A)
    return [float(v) for v in vals]


def support_function(A: np.ndarray, K: int) -> SupportSamples:
    """h(phi) = top eigenvalue of the Hermitian part of exp(-i phi) A, K angles."""
    if K < 8:
        raise ValueError("K must be at least 8")
    A = np.asarray(A, dtype=complex)
    angles = 2 * np.pi * np.arange(K) / K
    values = np.empty(K)
    for k, phi in enumerate(angles):
        R = np.exp(-1j * phi) * A
        vals, _ = hermitian_eigensystem((R + R.conj().T) / 2)
        values[k] = vals[-1]
    return SupportSamples(angles, values)


def support_boundary_points(A: np.ndarray, K: int) -> np.ndarray:
    """One numerical-range boundary point per support direction.

    The top eigenvector v of the rotated Hermitian part realizes the
    support value; its quadratic form v* A v is the touching point.
    """
    return _support_sweep(A, K)[0]


def _support_sweep(A: np.ndarray, K: int):
    A = np.asarray(A, dtype=complex)
    pts = np.empty(K, dtype=complex)
    vals = np.empty(K)
    for k in range(K):
        phi = 2 * np.pi * k / K
        R = np.exp(-1j * phi) * A
        ev, V = hermitian_eigensystem((R + R.conj().T) / 2)
        v = V[:, -1]
        pts[k] = v.conj() @ (A @ v)
        vals[k] = ev[-1]
    return pts, vals


# --- Elliptical range (2x2) ---------------------------------------------------

def ellipse_from_2x2(A: np.ndarray) -> EllipseDisk:
    """Numerical range of a 2x2 matrix: foci at the eigenvalues, minor axis
    sqrt(trace(A*A) - |f1|^2 - |f2|^2)."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise ValueError("ellipse_from_2x2 needs a 2x2 matrix")
    if A[1, 0] == 0 or A[0, 1] == 0:
        f1, f2 = complex(A[0, 0]), complex(A[1, 1])
    else:
        mean = (A[0, 0] + A[1, 1]) / 2
        disc = np.sqrt(((A[0, 0] - A[1, 1]) / 2) ** 2 + A[0, 1] * A[1, 0])
        f1, f2 = complex(mean - disc), complex(mean + disc)
    t = float(np.sum(np.abs(A) ** 2))
    minor = float(np.sqrt(max(0.0, t - abs(f1) ** 2 - abs(f2) ** 2)))
    return EllipseDisk(f1, f2, minor)


def minor_axis_identity_residual(theta: RifProduct, tau: complex) -> float:
    """Check that the product formula for the minor axis matches the
    defect product sqrt(1-|f1|^2) sqrt(1-|f2|^2) of the two foci."""
    if theta.m != 2:
        raise ValueError("minor-axis identity needs exactly two factors")
    if abs(abs(tau) - 1) > 1e-9:
        raise ValueError("tau must be unimodular")
    g1, g2 = theta.factors
    minor = abs(g1.lam * g2.lam) * abs(tau - g1.tau2) * abs(tau - g2.tau2) \
        / (abs(g1.a + g1.c * tau) * abs(g2.a + g2.c * tau))
    f1, f2 = symbol_diagonal(theta, tau)
    rhs = np.sqrt(max(0.0, 1 - abs(f1) ** 2)) * np.sqrt(max(0.0, 1 - abs(f2) ** 2))
    return float(abs(minor - rhs))


# --- Convex hull machinery ----------------------------------------------------

def monotone_chain(points: np.ndarray, eps: float = HULL_COLLINEAR_EPS) -> np.ndarray:
    """Andrew monotone-chain hull, counterclockwise, collinear points dropped."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    pts = np.unique(pts, axis=0)
    if len(pts) <= 2:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    xs = pts[order, 0].tolist()
    ys = pts[order, 1].tolist()
    n = len(xs)

    def scan(indices):
        hx: list[float] = []
        hy: list[float] = []
        for i in indices:
            x, y = xs[i], ys[i]
            while len(hx) >= 2:
                cross = (hx[-1] - hx[-2]) * (y - hy[-2]) - (hy[-1] - hy[-2]) * (x - hx[-2])
                if cross <= eps:
                    hx.pop()
                    hy.pop()
                else:
                    break
            hx.append(x)
            hy.append(y)
        return hx, hy

    lx, ly = scan(range(n))
    ux, uy = scan(range(n - 1, -1, -1))
    hull = np.array([lx[:-1] + ux[:-1], ly[:-1] + uy[:-1]]).T
    return hull


def _prefilter(points: np.ndarray, candidates: np.ndarray | None = None,
               margin: float = 1e-9, directions: int = 64) -> np.ndarray:
    """Keep only points that can contribute to the hull.

    Points deeper than `margin` inside the convex polygon spanned by the
    candidate support points cannot be hull vertices.  When the candidates
    are themselves input points, margin may be tiny; when they come from a
    continuous model of the boundary, margin must dominate the sampling
    sagitta of the point cloud.  Point location uses one wedge lookup per
    point (the polygon is star-shaped around its vertex mean).
    """
    pts = points
    if len(pts) <= 4096:
        return pts
    if candidates is None:
        phis = 2 * np.pi * np.arange(directions) / directions
        x, y = pts[:, 0], pts[:, 1]
        idx = np.unique([int(np.argmax(np.cos(p) * x + np.sin(p) * y)) for p in phis])
        candidates = pts[idx]
    inner = monotone_chain(candidates)
    if len(inner) < 3:
        return pts
    o = inner.mean(axis=0)
    ang_v = np.arctan2(inner[:, 1] - o[1], inner[:, 0] - o[0])
    shift = int(np.argmin(ang_v))
    inner = np.roll(inner, -shift, axis=0)
    ang_v = np.roll(ang_v, -shift)
    ang_p = np.arctan2(pts[:, 1] - o[1], pts[:, 0] - o[0])
    d = np.searchsorted(ang_v, ang_p, side="right") - 1
    d[d < 0] = len(inner) - 1
    v = inner[d]
    w = inner[(d + 1) % len(inner)]
    cross = (w[:, 0] - v[:, 0]) * (pts[:, 1] - v[:, 1]) \
        - (w[:, 1] - v[:, 1]) * (pts[:, 0] - v[:, 0])
    return pts[cross <= margin]


def region_hull(M: MatrixSymbol, T: int, K: int, dense: bool = False) -> PlanarRegion:
    """Sampled numerical-range region of the compressed shift.

    Boundary points of the numerical range of the symbol value at each of
    T torus samples (exact ellipse parameterization when m = 2, support
    sweep otherwise), hulled together.  The torus grid contains +1 and -1
    exactly, where the extreme features of the region occur.
    """
    if T < 16 or K < 16:
        raise ValueError("need at least 16 torus samples and 16 angle samples")
    taus = np.exp(2j * np.pi * np.arange(T) / T)
    taus[0] = 1.0
    if T % 2 == 0:
        taus[T // 2] = -1.0
    m = M.m
    candidates = None
    margin = 1e-9
    if m == 1:
        w = np.conj(taus)
        pts_c = M.entries[0][0](w)
    elif m == 2:
        pts_c, candidates = _ellipse_cloud(M, taus, K)
        margin = max(1e-9, (2 * np.pi / K) ** 2)
    else:
        rows = []
        cand = []
        for tau in taus:
            bd, h = _support_sweep(eval_symbol(M, complex(tau)), K)
            rows.append(bd)
            cand.append(h)
        pts_c = np.concatenate(rows)
        best = np.argmax(np.vstack(cand), axis=0)
        candidates = np.array([rows[t][k] for k, t in enumerate(best)])
        candidates = np.column_stack([candidates.real, candidates.imag])
    pts_c = np.unique(pts_c.ravel())
    pts = np.column_stack([pts_c.real, pts_c.imag])
    hull = monotone_chain(np.unique(_prefilter(pts, candidates, margin), axis=0))
    return PlanarRegion(points=pts if dense else hull.copy(), hull=hull)


def _ellipse_cloud(M: MatrixSymbol, taus: np.ndarray, K: int):
    """Parametric ellipse boundary points per torus sample, plus one
    closed-form support point of the union per sweep direction (hull
    prefilter candidates)."""
    w = np.conj(taus)
    e00 = M.entries[0][0](w)
    e11 = M.entries[1][1](w)
    e10 = M.entries[1][0](w)
    e01 = M.entries[0][1](w)
    f1, f2 = e00, e11
    t = np.abs(e00) ** 2 + np.abs(e11) ** 2 + np.abs(e10) ** 2 + np.abs(e01) ** 2
    minor = np.sqrt(np.maximum(0.0, t - np.abs(f1) ** 2 - np.abs(f2) ** 2))
    major = np.sqrt(np.abs(f1 - f2) ** 2 + minor ** 2)
    axis = f2 - f1
    rot = np.where(np.abs(axis) > 0, axis / np.where(np.abs(axis) > 0, np.abs(axis), 1.0), 1.0)
    ang = 2 * np.pi * np.arange(K) / K
    cloud = ((f1 + f2) / 2)[:, None] + rot[:, None] * (
        0.5 * major[:, None] * np.cos(ang)[None, :]
        + 0.5j * minor[:, None] * np.sin(ang)[None, :])

    center = (f1 + f2) / 2
    A, B = major / 2, minor / 2
    phi0 = np.angle(rot)
    phis = 2 * np.pi * np.arange(64) / 64
    psi = phis[:, None] - phi0[None, :]
    support = np.real(center[None, :] * np.exp(-1j * phis)[:, None]) \
        + np.sqrt((A[None, :] * np.cos(psi)) ** 2 + (B[None, :] * np.sin(psi)) ** 2)
    best = np.argmax(support, axis=1)
    cand = []
    for k, tbest in enumerate(best):
        ps = phis[k] - phi0[tbest]
        den = np.sqrt((A[tbest] * np.cos(ps)) ** 2 + (B[tbest] * np.sin(ps)) ** 2)
        if den < 1e-15:
            cand.append(center[tbest])
        else:
            cand.append(center[tbest] + rot[tbest]
                        * (A[tbest] ** 2 * np.cos(ps) + 1j * B[tbest] ** 2 * np.sin(ps)) / den)
    cand = np.asarray(cand)
    return cloud, np.column_stack([cand.real, cand.imag])


def numerical_radius(region: PlanarRegion) -> float:
    """Largest modulus over the hull vertices."""
    verts = region.hull if len(region.hull) else region.points
    if len(verts) == 0:
        raise ValueError("empty region")
    return float(np.max(np.hypot(verts[:, 0], verts[:, 1])))


def point_in_hull(region: PlanarRegion, x: float, y: float, margin: float = 0.0) -> bool:
    """Convex winding test; on-edge counts as inside.

    With margin > 0 the point must clear every edge by that perpendicular
    distance (strict interior test).
    """
    hull = region.hull
    if len(hull) < 3:
        return False
    rel = hull - np.array([x, y])
    nxt = np.roll(rel, -1, axis=0)
    cross = rel[:, 0] * nxt[:, 1] - rel[:, 1] * nxt[:, 0]
    edge = np.roll(hull, -1, axis=0) - hull
    elen = np.hypot(edge[:, 0], edge[:, 1])
    dist = cross / np.where(elen > 0, elen, 1.0)
    if margin > 0:
        return bool(np.all(dist >= margin))
    return bool(np.all(dist >= -1e-12))


def hull_boundary_distance(region: PlanarRegion, x: float, y: float) -> float:
    """Distance from (x, y) to the hull polygon boundary."""
    hull = region.hull
    p = np.array([x, y])
    a = hull
    b = np.roll(hull, -1, axis=0)
    ab = b - a
    ap = p - a
    denom = np.sum(ab * ab, axis=1)
    tpar = np.clip(np.where(denom > 0, np.sum(ap * ab, axis=1) / np.where(denom > 0, denom, 1.0), 0.0), 0.0, 1.0)
    proj = a + tpar[:, None] * ab
    return float(np.min(np.hypot(proj[:, 0] - p[0], proj[:, 1] - p[1])))


# --- Zero inclusion -----------------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    verdict: WitnessVerdict
    foci_sum: float          # |f1| + |f2| at this tau
    major_axis: float        # |1 - conj(f1) f2|
    center_condition: tuple[bool, ...]       # per factor: |conj(beta) - f| > |conj(beta)|
    real_coeff_criterion: tuple[bool | None, ...]  # per factor, None when not applicable


def zero_test_general(theta: RifProduct, tau: complex, eps: float = ZERO_EPS) -> WitnessReport:
    """Single-slice interior witness for zero via the focal inequality.

    The authoritative verdict is |f1| + |f2| < |1 - conj(f1) f2| (strictly,
    by eps); the circle-center condition and its real-coefficient
    reformulation are evaluated per factor and reported alongside.
    """
    if theta.m != 2:
        raise ValueError("zero_test_general needs exactly two factors")
    _require_off_exceptional(theta, tau)
    f1, f2 = symbol_diagonal(theta, tau)
    lhs = abs(f1) + abs(f2)
    rhs = abs(1 - np.conj(f1) * f2)
    verdict = WitnessVerdict.INTERIOR_WITNESS if lhs < rhs - eps else WitnessVerdict.NO_WITNESS
    centers = []
    realcrit = []
    for f, fval in zip(theta.factors, (f1, f2)):
        denom = abs(f.a) ** 2 - abs(f.c) ** 2
        if abs(denom) < 1e-14:
            centers.append(False)
            realcrit.append(None)
            continue
        beta = -(f.a * np.conj(f.b) - f.c * np.conj(f.d)) / denom
        centers.append(bool(abs(np.conj(beta) - fval) > abs(np.conj(beta))))
        if abs((f.a * np.conj(f.b) - f.c * np.conj(f.d)).imag) < 1e-12:
            realcrit.append(bool(
                abs(np.conj(f.a) * f.d - f.b * np.conj(f.c))
                > abs(f.a * np.conj(f.b) - f.c * np.conj(f.d))))
        else:
            realcrit.append(None)
    return WitnessReport(verdict, float(lhs), float(rhs), tuple(centers), tuple(realcrit))


@dataclass(frozen=True)
class NormalizedZeroReport:
    verdict: ZeroVerdict
    product: float
    quad_zero_low: float     # 1/(c1 c2) - 1
    quad_zero_high: float    # -1 - 1/(c1 + c2 + c1 c2)


def zero_test_normalized(c1: float, c2: float, eps: float = ZERO_EPS) -> NormalizedZeroReport:
    """Zero inclusion for the normalized two-factor family p_j = a_j - z1 + c_j z2.

    With a_j = c_j + 1 the origin is interior exactly when c1 c2 > 1/2 and
    on the boundary exactly when c1 c2 = 1/2.  The quadratic-zero
    diagnostics locate where the rotated Hermitian part changes definiteness.
    """
    if c1 <= 0 or c2 <= 0:
        raise NonpositiveCoefficient("c1 and c2 must be positive")
    prod = c1 * c2
    if prod > 0.5 + eps:
        verdict = ZeroVerdict.INTERIOR
    elif abs(prod - 0.5) <= eps:
        verdict = ZeroVerdict.BOUNDARY
    else:
        verdict = ZeroVerdict.NOT_INTERIOR
    return NormalizedZeroReport(
        verdict, float(prod),
        float(1.0 / prod - 1.0),
        float(-1.0 - 1.0 / (c1 + c2 + prod)),
    )


def normalized_factors(c1: float, c2: float):
    """Coefficient quadruples (a, b, c, d) for the normalized zero-test family."""
    return [(c1 + 1.0, -1.0, c1, 0.0), (c2 + 1.0, -1.0, c2, 0.0)]
