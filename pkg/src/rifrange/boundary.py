"""Closed-form boundary for the squared-factor family.

For the square of one factor built from p = a - z1 + c*z2 with a, c > 0
and a - c = 1, the numerical-range region is swept by a one-parameter
family of circles

    center c(th) = (a + c e^{i th}) / (a + c),
    radius r(th) = a c (1 - cos th) / (a + c)^2,

and its boundary is the outer envelope of that family: the curve
E1(th) = c(th) + r(th) e^{i s1(th)} with
s1(th) = th - arcsin(a sin th / (a + c)).  The second envelope solution
s2 = th - pi + arcsin(...) stays inside the disk of centers.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .nrange import ellipse_from_2x2, region_hull
from .rif import RifProduct
from .symbol import MatrixSymbol, eval_symbol


class Branch(Enum):
    OUTER = "outer"
    INNER = "inner"


@dataclass(frozen=True)
class CircleFamily:
    a: float
    c: float

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0:
            raise ValueError("family needs a, c > 0")
        if abs(self.a - self.c - 1.0) > 1e-12:
            raise ValueError("family needs a - c = 1")

    def center(self, theta):
        return (self.a + self.c * np.exp(1j * np.asarray(theta, dtype=float))) / (self.a + self.c)

    def radius(self, theta):
        return self.a * self.c * (1.0 - np.cos(np.asarray(theta, dtype=float))) / (self.a + self.c) ** 2

    @property
    def center_circle_center(self) -> float:
        """Center of the circle traced by the family centers."""
        return self.a / (self.a + self.c)

    @property
    def center_circle_radius(self) -> float:
        return self.c / (self.a + self.c)


def normalize_coeffs(a: complex, c: complex) -> tuple[CircleFamily, complex]:
    """Reduce general nonzero (a, c) to the positive normalized family.

    Returns the family built from (|a|, |c|) and the unit rotation
    exp(i arg(a)) carried by the original coefficients; callers that want
    outputs in the original coordinates multiply points by the rotation.
    """
    if a == 0 or c == 0:
        raise ValueError("coefficients must be nonzero")
    return CircleFamily(abs(a), abs(c)), cmath.exp(1j * cmath.phase(complex(a)))


def circle_at(F: CircleFamily, theta: float) -> tuple[complex, float]:
    return complex(F.center(theta)), float(F.radius(theta))


@dataclass(frozen=True)
class EnvelopeCurve:
    thetas: np.ndarray
    points: np.ndarray           # (n, 2)
    tangent_angles: np.ndarray   # s(theta) along the curve
    branch: Branch


def envelope(F: CircleFamily, grid) -> tuple[EnvelopeCurve, EnvelopeCurve]:
    """Outer and inner envelope curves over the given theta grid.

    The grid must live in [0, 2pi) and contain 0, where both branches are
    pinned to (1, 0) (the family circle there is the single point 1, and
    the formulas extend continuously).
    """
    th = np.asarray(grid, dtype=float)
    if th.ndim != 1 or len(th) == 0:
        raise ValueError("grid must be a nonempty 1-d array")
    if np.any((th < 0) | (th >= 2 * np.pi)):
        raise ValueError("grid values must lie in [0, 2pi)")
    if not np.any(th == 0.0):
        raise ValueError("grid must contain 0")
    ratio = F.a / (F.a + F.c)
    arc = np.arcsin(ratio * np.sin(th))
    c = F.center(th)
    r = F.radius(th)
    curves = []
    for branch, s in ((Branch.OUTER, th - arc), (Branch.INNER, th - np.pi + arc)):
        pts_c = c + r * np.exp(1j * s)
        pts = np.column_stack([pts_c.real, pts_c.imag])
        pts[th == 0.0] = (1.0, 0.0)
        curves.append(EnvelopeCurve(th.copy(), pts, s, branch))
    return curves[0], curves[1]


def envelope_residuals(E: EnvelopeCurve, F: CircleFamily) -> tuple[float, float]:
    """Worst violations of the two envelope conditions along the curve.

    f(x, y, th) = (x - c1)^2 + (y - c2)^2 - r^2 must vanish, and so must
    its theta-derivative -(x - c1) c1' - (y - c2) c2' - r r' with the
    closed-form center/radius derivatives.
    """
    th = E.thetas
    x, y = E.points[:, 0], E.points[:, 1]
    c = F.center(th)
    r = F.radius(th)
    ac = F.a + F.c
    c1p = -F.c * np.sin(th) / ac
    c2p = F.c * np.cos(th) / ac
    rp = F.a * F.c * np.sin(th) / ac ** 2
    fres = (x - c.real) ** 2 + (y - c.imag) ** 2 - r ** 2
    ftres = -(x - c.real) * c1p - (y - c.imag) * c2p - r * rp
    return float(np.max(np.abs(fres))), float(np.max(np.abs(ftres)))


def non_circularity_gap(F: CircleFamily) -> float:
    """Positive gap witnessing that the region is not a disk.

    If the region were a disk, its boundary circle would be fixed by the
    extreme real points; the quarter-turn family point Q then lies outside
    that circle by exactly (a c)^2 / (a + c)^4.
    """
    a, c = F.a, F.c
    s = a + c
    alpha = a ** 2 / s ** 2
    rad = (2 * a * c + c ** 2) / s ** 2
    qx, qy = a / s, (c ** 2 + 2 * a * c) / s ** 2
    return float((qx - alpha) ** 2 + qy ** 2 - rad ** 2)


def convexity_check(E: EnvelopeCurve, eps: float = 1e-10) -> bool:
    """True iff the tangent direction is strictly monotone and the sampled
    polygon turns one way at every vertex, clearing the eps noise floor.

    Near-flat vertices (|cross| <= eps) count as failures: the boundary
    curve of the region turns uniformly, while the inner envelope branch
    has stretches of vanishing discrete turning at the same grid size.
    """
    if len(E.points) < 3:
        return True
    if not np.all(np.diff(E.tangent_angles) > 0):
        return False
    pts = E.points
    edges = np.roll(pts, -1, axis=0) - pts
    nxt = np.roll(edges, -1, axis=0)
    cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
    return bool(np.all(cross > eps) or np.all(cross < -eps))


def reparam_consistency(F: CircleFamily, theta: RifProduct, samples: int) -> float:
    """Agreement between the two circle parameterizations.

    The numerical range of the symbol value at tau is a circle; mapping tau
    through the Blaschke factor -(c + a w)/(a + c w) at w = conj(tau) gives
    the family angle whose circle must coincide with it.
    """
    if theta.m != 2:
        raise ValueError("reparameterization check needs the squared factor (two copies)")
    from .symbol import build_symbol

    M = build_symbol(theta)
    worst = 0.0
    for k in range(samples):
        tau = np.exp(2j * np.pi * k / samples)
        disk = ellipse_from_2x2(eval_symbol(M, complex(tau)))
        lam = -(F.c + F.a * np.conj(tau)) / (F.a + F.c * np.conj(tau))
        th = float(np.angle(lam)) % (2 * np.pi)
        ctr, rad = circle_at(F, th)
        worst = max(worst,
                    abs(disk.center - ctr),
                    abs(disk.minor / 2 - rad))
    return float(worst)


def extreme_point_curve(F: CircleFamily, grid) -> np.ndarray:
    """Farthest point of each family circle from the center of the circle of
    centers; not the region boundary, but a useful comparison curve."""
    th = np.asarray(grid, dtype=float)
    c = F.center(th)
    r = F.radius(th)
    base = F.center_circle_center
    rel = c - base
    unit = np.where(np.abs(rel) > 0, rel / np.where(np.abs(rel) > 0, np.abs(rel), 1.0), 1.0)
    pts = c + r * unit
    return np.column_stack([pts.real, pts.imag])


def hull_vs_envelope(F: CircleFamily, M: MatrixSymbol, T: int, K: int) -> float:
    """Symmetric Hausdorff distance between the sampled hull boundary and the
    outer envelope polygon (mutual nearest-vertex search, T envelope points)."""
    region = region_hull(M, T, K)
    grid = 2 * np.pi * np.arange(T) / T
    outer, _ = envelope(F, grid)
    return _hausdorff(region.hull, outer.points)


def _hausdorff(P: np.ndarray, Q: np.ndarray) -> float:
    def one_sided(A, B):
        worst = 0.0
        chunk = 2048
        for lo in range(0, len(A), chunk):
            blk = A[lo:lo + chunk]
            d2 = (blk[:, None, 0] - B[None, :, 0]) ** 2 + (blk[:, None, 1] - B[None, :, 1]) ** 2
            worst = max(worst, float(np.sqrt(np.min(d2, axis=1).max())))
        return worst

    return max(one_sided(P, Q), one_sided(Q, P))
