"""Bivariate and univariate complex polynomials.

Coefficients are stored densely: degrees stay tiny (at most ~8)
everywhere in this package, so there is no point in a sparse layout.
The bivariate grid ``coeffs[k1][k2]`` multiplies ``z1**k1 * z2**k2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidDegree, RootfindFailure

STABILITY_EPS = 1e-10
ROOT_EPS = 1e-12
ROOT_MAX_ITER = 500


class StabilityClass(Enum):
    STABLE_WITH_TORUS_ZERO = "stable_with_torus_zero"
    STABLE_NO_TORUS_ZERO = "stable_no_torus_zero"
    UNSTABLE = "unstable"


def _trim2(grid: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero rows/columns; zero polynomial keeps a 1x1 grid."""
    g = np.atleast_2d(np.asarray(grid, dtype=complex))
    rows = np.nonzero(g.any(axis=1))[0]
    cols = np.nonzero(g.any(axis=0))[0]
    if len(rows) == 0:
        return np.zeros((1, 1), dtype=complex)
    return g[: rows[-1] + 1, : cols[-1] + 1].copy()


@dataclass(frozen=True)
class BivariatePoly:
    """Polynomial in (z1, z2); exact degree equals the grid shape minus one."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim2(self.coeffs))

    @property
    def degree(self) -> tuple[int, int]:
        return self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.coeffs.shape == other.coeffs.shape \
            and bool(np.array_equal(self.coeffs, other.coeffs))


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial with ascending coefficients; leading coefficient nonzero unless zero."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if len(nz) else np.zeros(1, dtype=complex)
        object.__setattr__(self, "coeffs", c.copy())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc if acc.shape else complex(acc)

    def __mul__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return UnivariatePoly(np.convolve(self.coeffs, other.coeffs))

    def scaled(self, s: complex) -> "UnivariatePoly":
        return UnivariatePoly(self.coeffs * s)


def eval2(p: BivariatePoly, z: tuple[complex, complex]):
    """Horner evaluation, innermost in z2."""
    z1, z2 = z
    acc = np.zeros_like(np.asarray(z1, dtype=complex) * np.asarray(z2, dtype=complex))
    for row in p.coeffs[::-1]:
        inner = np.zeros_like(acc)
        for c in row[::-1]:
            inner = inner * z2 + c
        acc = acc * z1 + inner
    return acc if acc.shape else complex(acc)


def reflect(p: BivariatePoly, deg: tuple[int, int]) -> BivariatePoly:
    """Coefficient reflection: result[k1][k2] = conj(p[m-k1][n-k2]) for deg (m, n).

    On the torus the reflected polynomial has the same modulus as p, which
    is what makes quotients of the two inner functions.
    """
    m, n = deg
    pm, pn = p.degree
    if pm > m or pn > n:
        raise InvalidDegree(f"reflection degree {deg} below polynomial degree {(pm, pn)}")
    grid = np.zeros((m + 1, n + 1), dtype=complex)
    grid[: pm + 1, : pn + 1] = p.coeffs
    return BivariatePoly(np.conj(grid[::-1, ::-1]))


def linear_stability_check(a: complex, b: complex, c: complex,
                           eps: float = STABILITY_EPS) -> StabilityClass:
    """Trichotomy for p = a + b*z1 + c*z2: compare |a| against |b| + |c|."""
    gap = abs(a) - (abs(b) + abs(c))
    if gap < -eps:
        return StabilityClass.UNSTABLE
    if gap <= eps:
        return StabilityClass.STABLE_WITH_TORUS_ZERO
    return StabilityClass.STABLE_NO_TORUS_ZERO


def roots(q: UnivariatePoly, seed: int = 0) -> list[complex]:
    """All complex roots with multiplicity by Durand-Kerner iteration.

    Initial guesses sit on a radius enclosing all roots, each rotated by a
    small seeded perturbation so no starting point is a symmetry fixed point.
    Residual guarantee: |q(root)| <= ROOT_EPS * max|coeff| * max(1, |root|)^n
    (the conditioning factor is 1 on the closed unit disk, where every root
    this package consumes lives; roots of large modulus cannot beat it in
    double precision).  Multiple roots land within ~sqrt(machine eps) of the
    true value, which still satisfies the residual bound.
    """
    if q.is_zero:
        raise ValueError("zero polynomial has no well-defined root set")
    n = q.degree
    if n == 0:
        return []
    c = q.coeffs / q.coeffs[-1]
    if n == 1:
        return [complex(-c[0])]
    rng = np.random.default_rng(seed)
    radius = 1.0 + float(np.max(np.abs(c[:-1])))
    angles = 2 * np.pi * (np.arange(n) + 0.35) / n + rng.uniform(-0.05, 0.05, n)
    z = radius * np.exp(1j * angles)

    def qval(x):
        acc = np.zeros_like(x)
        for ck in c[::-1]:
            acc = acc * x + ck
        return acc

    for _ in range(ROOT_MAX_ITER):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        step = qval(z) / denom
        z = z - step
        if np.max(np.abs(step)) < 1e-14 * (1.0 + np.max(np.abs(z))):
            break
    scale = float(np.max(np.abs(q.coeffs)))
    resid = np.abs(qval(z)) * abs(q.coeffs[-1])
    bound = ROOT_EPS * scale * np.maximum(1.0, np.abs(z)) ** n
    if np.any(resid > bound):
        raise RootfindFailure(
            f"Durand-Kerner residual {np.max(resid):.3e} above tolerance",
            best=[complex(v) for v in z],
        )
    return [complex(v) for v in sorted(z, key=lambda w: (w.real, w.imag))]


def from_roots(rts, leading: complex = 1.0) -> UnivariatePoly:
    """Monic product of (z - r) over the given roots, scaled by `leading`."""
    coeffs = np.array([leading], dtype=complex)
    for r in rts:
        coeffs = np.convolve(coeffs, np.array([-r, 1.0], dtype=complex))
    return UnivariatePoly(coeffs)
