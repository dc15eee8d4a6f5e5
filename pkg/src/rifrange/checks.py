"""Cross-checking suite: every structural claim gets an independent probe.

Each check compares two computations that share as little code as
possible (closed forms vs quadrature, symbol values vs slice zeros, the
general support sweep vs the one-variable basis matrix) and reports the
worst deviation against a fixed tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .nrange import minor_axis_identity_residual, support_function
from .rif import RifFactor, RifProduct, backward_shift_residual, eval_product, slice_blaschke
from .symbol import MatrixSymbol, basis_gram, build_symbol, eval_symbol, slice_isometry_residual, tmw_matrix

INNER_TOL = 1e-9
GRAM_TOL = 1e-3
SLICE_ISOMETRY_TOL = 1e-6
DIAG_MATCH_TOL = 1e-9
MINOR_AXIS_TOL = 1e-10
TMW_CROSS_TOL = 1e-8
BACKWARD_SHIFT_TOL = 1e-10
LAMBDA_FLIP_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_dev: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name} max_dev={self.max_dev:.3e} tol={self.tol:.0e} {status}"


def offset_torus_grid(n: int, theta: RifProduct, eps: float = 1e-4) -> np.ndarray:
    """n unimodular samples staggered off the exceptional set."""
    taus = np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
    for i, t in enumerate(taus):
        while any(abs(t - e) < eps for e in theta.exceptional):
            t *= np.exp(0.37j * eps)
        taus[i] = t
    return taus


def check_inner_modulus(theta: RifProduct, n: int = 128) -> CheckResult:
    """|product| == 1 on a torus grid away from the singular points."""
    grid = np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
    worst = 0.0
    for z1 in grid:
        for z2 in grid:
            if any(abs(z1 - f.tau1) < 1e-6 and abs(z2 - f.tau2) < 1e-6 for f in theta.factors):
                continue
            worst = max(worst, abs(abs(eval_product(theta, (z1, z2))) - 1.0))
    return CheckResult("inner_modulus", worst, INNER_TOL)


def check_gram_identity(theta: RifProduct, N: int = 1024) -> CheckResult:
    G = basis_gram(theta, N)
    return CheckResult("gram_identity", float(np.max(np.abs(G - np.eye(theta.m)))), GRAM_TOL)


def check_slice_isometry(theta: RifProduct, N: int = 4096, count: int = 8) -> CheckResult:
    taus = offset_torus_grid(count, theta)
    worst = max(slice_isometry_residual(theta, complex(t), N) for t in taus)
    return CheckResult("slice_isometry", worst, SLICE_ISOMETRY_TOL)


def greedy_match_distance(xs, ys) -> float:
    """Largest pairing distance of a greedy nearest-neighbor matching."""
    ys = list(ys)
    worst = 0.0
    for x in xs:
        k = int(np.argmin([abs(x - y) for y in ys]))
        worst = max(worst, abs(x - ys.pop(k)))
    return worst


def check_diagonal_slice_zeros(theta: RifProduct, M: MatrixSymbol | None = None,
                               count: int = 36) -> CheckResult:
    """Symbol diagonal at tau must be the slice Blaschke zero multiset."""
    M = M or build_symbol(theta)
    worst = 0.0
    for t in offset_torus_grid(count, theta):
        diag = np.diag(eval_symbol(M, complex(t)))
        zeros = slice_blaschke(theta, complex(t))
        worst = max(worst, greedy_match_distance(diag, zeros))
    return CheckResult("diagonal_slice_zeros", worst, DIAG_MATCH_TOL)


def check_minor_axis(theta: RifProduct, count: int = 100, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for ang in rng.uniform(0.0, 2 * np.pi, count):
        worst = max(worst, minor_axis_identity_residual(theta, complex(np.exp(1j * ang))))
    return CheckResult("minor_axis_identity", worst, MINOR_AXIS_TOL)


def check_tmw_cross(theta: RifProduct, M: MatrixSymbol | None = None,
                    count: int = 36, angles: int = 360) -> CheckResult:
    """Support functions of the symbol value and of the one-variable basis
    matrix built from the slice zeros must agree."""
    M = M or build_symbol(theta)
    worst = 0.0
    for t in offset_torus_grid(count, theta):
        A = eval_symbol(M, complex(t))
        B = tmw_matrix(slice_blaschke(theta, complex(t)))
        ha = support_function(A, angles).values
        hb = support_function(B, angles).values
        worst = max(worst, float(np.max(np.abs(ha - hb))))
    return CheckResult("tmw_cross_oracle", worst, TMW_CROSS_TOL)


def check_backward_shift(theta: RifProduct, count: int = 100, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for f in theta.factors:
        samples = []
        while len(samples) < count:
            z1 = _disk_sample(rng)
            z2 = _disk_sample(rng)
            if abs(z1) < 1e-3:
                continue
            samples.append((z1, z2))
        worst = max(worst, backward_shift_residual(f, samples))
    return CheckResult("backward_shift", worst, BACKWARD_SHIFT_TOL)


def _disk_sample(rng, rmax: float = 0.95) -> complex:
    r = rmax * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def check_lambda_flip(theta: RifProduct, angles: int = 360) -> CheckResult:
    """Flipping the sign of any lambda conjugates the symbol by a diagonal
    unitary, so every support value must be unchanged."""
    M = build_symbol(theta)
    tau = complex(np.exp(0.8j))
    base = support_function(eval_symbol(M, tau), angles).values
    worst = 0.0
    for k in range(theta.m):
        flipped = []
        for i, f in enumerate(theta.factors):
            lam = -f.lam if i == k else f.lam
            flipped.append(RifFactor(f.a, f.b, f.c, f.d, f.tau1, f.tau2, lam))
        Mk = build_symbol(RifProduct(tuple(flipped)))
        vals = support_function(eval_symbol(Mk, tau), angles).values
        worst = max(worst, float(np.max(np.abs(vals - base))))
    return CheckResult("lambda_sign_invariance", worst, LAMBDA_FLIP_TOL)


def run_verification(theta: RifProduct, seed: int = 0) -> list[CheckResult]:
    """Full suite; the minor-axis identity only applies to two-factor products."""
    M = build_symbol(theta)
    results = [
        check_inner_modulus(theta),
        check_gram_identity(theta),
        check_slice_isometry(theta),
        check_diagonal_slice_zeros(theta, M),
        check_tmw_cross(theta, M),
        check_backward_shift(theta, seed=seed),
        check_lambda_flip(theta),
    ]
    if theta.m == 2:
        results.insert(4, check_minor_axis(theta, seed=seed))
    return results
