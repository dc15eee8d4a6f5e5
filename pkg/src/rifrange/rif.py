"""Degree-(1,1) rational inner factors and their products.

A factor is the inner function built from p = a + b*z1 + c*z2 + d*z1*z2:
the quotient of the reflected polynomial over p.  Valid factors have no
zero on the open bidisk and exactly one singularity (tau1, tau2) on the
torus; the constant lambda normalizes the canonical kernel function
f(z) = lambda * (z2 - tau2) / p(z) to unit Hardy-space norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DenominatorZero, ExceptionalSlice, NotSingularOnTorus, UnstableDenominator
from .poly2 import BivariatePoly, StabilityClass, UnivariatePoly, linear_stability_check, reflect, roots

TORUS_EPS = 1e-10
SLICE_EPS = 1e-6
_STABILITY_RADII = np.linspace(0.1, 0.99, 64)
_STABILITY_ANGLES = np.exp(2j * np.pi * (np.arange(64) + 0.5) / 64)


@dataclass(frozen=True)
class RifFactor:
    a: complex
    b: complex
    c: complex
    d: complex
    tau1: complex
    tau2: complex
    lam: complex

    @property
    def poly(self) -> BivariatePoly:
        return BivariatePoly(np.array([[self.a, self.c], [self.b, self.d]]))

    @property
    def reflected(self) -> BivariatePoly:
        return reflect(self.poly, (1, 1))

    def p(self, z1, z2):
        return self.a + self.b * z1 + self.c * z2 + self.d * z1 * z2

    def p_reflected(self, z1, z2):
        return (np.conj(self.a) * z1 * z2 + np.conj(self.b) * z2
                + np.conj(self.c) * z1 + np.conj(self.d))

    def kernel_fn(self, z1, z2):
        """f(z) = lambda (z2 - tau2) / p(z), the unit vector spanning the factor's kernel space."""
        return self.lam * (z2 - self.tau2) / self.p(z1, z2)


@dataclass(frozen=True)
class RifProduct:
    factors: tuple[RifFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> tuple[int, int]:
        return self.m, self.m

    @property
    def exceptional(self) -> tuple[complex, ...]:
        """The tau2 parameters where slices degenerate."""
        return tuple(f.tau2 for f in self.factors)


def factor_from_coeffs(a: complex, b: complex, c: complex, d: complex) -> RifFactor:
    """Validate coefficients and locate the torus singularity.

    The singularity coordinates come from matching coefficients in the
    kernel decomposition of the factor:

        tau1 = -2 (a conj(b) - c conj(d)) / (|a|^2 + |b|^2 - |c|^2 - |d|^2)
        tau2 = -2 (a conj(c) - b conj(d)) / (|a|^2 + |c|^2 - |b|^2 - |d|^2)

    and lambda is the principal square root of conj(a) c - d conj(b).
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    den1 = abs(a) ** 2 + abs(b) ** 2 - abs(c) ** 2 - abs(d) ** 2
    den2 = abs(a) ** 2 + abs(c) ** 2 - abs(b) ** 2 - abs(d) ** 2
    if abs(den1) < TORUS_EPS or abs(den2) < TORUS_EPS:
        raise NotSingularOnTorus("degenerate coefficient balance; no isolated torus singularity")
    tau1 = -2 * (a * np.conj(b) - c * np.conj(d)) / den1
    tau2 = -2 * (a * np.conj(c) - b * np.conj(d)) / den2
    if abs(abs(tau1) - 1) > TORUS_EPS or abs(abs(tau2) - 1) > TORUS_EPS:
        raise NotSingularOnTorus(
            f"candidate singularity ({tau1:.6g}, {tau2:.6g}) leaves the torus")
    pval = a + b * tau1 + c * tau2 + d * tau1 * tau2
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if abs(pval) > 1e-9 * max(scale, 1.0):
        raise NotSingularOnTorus(f"p({tau1:.6g}, {tau2:.6g}) = {pval:.3e} is not zero")
    _check_stability(a, b, c, d, scale)
    lam = complex(np.sqrt(complex(np.conj(a) * c - d * np.conj(b))))
    return RifFactor(a, b, c, d, complex(tau1), complex(tau2), lam)


def _check_stability(a, b, c, d, scale):
    """Reject denominators vanishing on the sampled open bidisk.

    For fixed z2 the unique z1-zero is -(a + c z2)/(b + d z2); the factor is
    stable iff that zero stays outside the closed disk, i.e.
    |a + c z2| >= |b + d z2| on the disk.  Sampled on a polar grid; the
    linear trichotomy gives an exact decision when d = 0.
    """
    if d == 0:
        if linear_stability_check(a, b, c) is StabilityClass.UNSTABLE:
            raise UnstableDenominator("|a| < |b| + |c|: denominator vanishes inside the bidisk")
    z2 = (_STABILITY_RADII[:, None] * _STABILITY_ANGLES[None, :]).ravel()
    margin = np.abs(a + c * z2) - np.abs(b + d * z2)
    if np.min(margin) < -1e-12 * max(scale, 1.0):
        raise UnstableDenominator("denominator vanishes on the sampled bidisk grid")


def product_from_coeffs(quads) -> RifProduct:
    return RifProduct(tuple(factor_from_coeffs(*q) for q in quads))


def eval_product(theta: RifProduct, z: tuple[complex, complex]) -> complex:
    """Evaluate the product of reflected-over-plain quotients at a point."""
    z1, z2 = z
    out = 1.0 + 0.0j
    for f in theta.factors:
        den = f.p(z1, z2)
        scale = max(abs(f.a), abs(f.b), abs(f.c), abs(f.d), 1.0)
        if abs(den) <= 1e-12 * scale:
            raise DenominatorZero(f"denominator of factor vanishes at {z}")
        out *= f.p_reflected(z1, z2) / den
    return complex(out)


def slice_blaschke(theta: RifProduct, tau: complex, seed: int = 0) -> list[complex]:
    """Zeros of the slice Blaschke product at z2 = tau, one per factor.

    Each factor's reflected polynomial is linear in z1 once z2 is frozen,
    so the slice contributes exactly one zero, always inside the disk for
    admissible tau.
    """
    _require_off_exceptional(theta, tau)
    zeros: list[complex] = []
    for f in theta.factors:
        # reflected poly at z2 = tau: (conj(a) tau + conj(c)) z1 + (conj(b) tau + conj(d))
        lead = np.conj(f.a) * tau + np.conj(f.c)
        const = np.conj(f.b) * tau + np.conj(f.d)
        q = UnivariatePoly(np.array([const, lead]))
        zeros.extend(roots(q, seed=seed))
    return zeros


def _require_off_exceptional(theta: RifProduct, tau: complex, eps: float = SLICE_EPS):
    if abs(abs(tau) - 1) > 1e-9:
        raise ValueError(f"slice parameter must be unimodular, got |tau| = {abs(tau)}")
    for t2 in theta.exceptional:
        if abs(tau - t2) <= eps:
            raise ExceptionalSlice(f"tau = {tau:.6g} within {eps} of exceptional point {t2:.6g}")


def backward_shift_residual(phi: RifFactor, samples) -> float:
    """Worst deviation of difference quotients from the closed-form shifts.

    For F in {f, theta} the quotient (F(z) - F(0, z2)) / z1 is compared with

        f(z) * (-(b + d z2)/(a + c z2))          for F = f
        f(z) * lambda (z2 - tau2)/(a + c z2)     for F = theta

    over the given interior sample points.
    """
    worst = 0.0
    for z1, z2 in samples:
        if z1 == 0:
            raise ValueError("samples must have z1 != 0")
        f_z = phi.kernel_fn(z1, z2)
        f_0 = phi.kernel_fn(0.0, z2)
        lhs_f = (f_z - f_0) / z1
        rhs_f = f_z * (-(phi.b + phi.d * z2) / (phi.a + phi.c * z2))
        th_z = phi.p_reflected(z1, z2) / phi.p(z1, z2)
        th_0 = phi.p_reflected(0.0, z2) / phi.p(0.0, z2)
        lhs_t = (th_z - th_0) / z1
        rhs_t = f_z * phi.lam * (z2 - phi.tau2) / (phi.a + phi.c * z2)
        worst = max(worst, abs(lhs_f - rhs_f), abs(lhs_t - rhs_t))
    return worst


def parse_factor_config(obj) -> RifProduct:
    """Build a product from the JSON factor schema.

    Expected shape: {"factors": [{"a": [re, im], "b": ..., "c": ..., "d": ...}, ...]};
    bare numbers are accepted wherever a [re, im] pair is allowed.
    """
    from .errors import UsageError

    if not isinstance(obj, dict) or "factors" not in obj:
        raise UsageError('config must be an object with a "factors" list')
    raw = obj["factors"]
    if not isinstance(raw, list) or not raw:
        raise UsageError("factors must be a nonempty list")
    quads = []
    for item in raw:
        if not isinstance(item, dict):
            raise UsageError("each factor must be an object with keys a, b, c, d")
        quad = []
        for key in ("a", "b", "c", "d"):
            if key not in item:
                raise UsageError(f"factor missing coefficient {key!r}")
            quad.append(_parse_complex(item[key], key))
        quads.append(tuple(quad))
    return product_from_coeffs(quads)


def _parse_complex(v, key):
    from .errors import UsageError

    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise UsageError(f"coefficient {key!r} must be a number or [re, im] pair")
