"""Matrix Toeplitz symbols for compressed shifts on products of factors.

The compression of multiplication by z1 to the canonical z2-invariant
subspace is unitarily equivalent to a matrix Toeplitz operator whose
m x m symbol has rational entries in w = conj(z2).  For a product of
degree-(1,1) factors the entries are explicit:

    diagonal (i, i):      conj( -(b_i + d_i z2) / (a_i + c_i z2) )
    below diagonal j > i: conj( lam_j (z2 - tau2_j)/(a_j + c_j z2)
                              * lam_i (z2 - tau2_i)/(a_i + c_i z2)
                              * prod_{i<k<j} (conj(b_k) z2 + conj(d_k)) / (a_k + c_k z2) )

Conjugation turns each expression into a genuine rational function of w
with coefficient-conjugated numerator and denominator.  The symbol here
is lower triangular; the one-variable basis matrix (`tmw_matrix`) stays
upper triangular.  Nothing downstream assumes either orientation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroOutsideDisk
from .poly2 import UnivariatePoly
from .rif import RifProduct, _require_off_exceptional

GRAM_ROOT_CLUSTER = 1e-8


@dataclass(frozen=True)
class RationalFunc:
    """Quotient of univariate polynomials in w; denominator zero-free on |w| <= 1."""

    num: UnivariatePoly
    den: UnivariatePoly

    def __call__(self, w):
        return self.num(w) / self.den(w)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero


@dataclass(frozen=True)
class MatrixSymbol:
    """m x m grid of rational entries, indexed [row][col], lower triangular."""

    entries: tuple[tuple[RationalFunc, ...], ...]

    @property
    def m(self) -> int:
        return len(self.entries)


def build_symbol(theta: RifProduct) -> MatrixSymbol:
    """Assemble the exact rational symbol of the compressed shift."""
    fs = theta.factors
    m = theta.m
    zero = RationalFunc(UnivariatePoly(np.array([0.0])), UnivariatePoly(np.array([1.0])))
    rows = []
    for j in range(m):
        row = []
        for i in range(m):
            if j < i:
                row.append(zero)
            elif j == i:
                f = fs[i]
                num = UnivariatePoly(np.array([-np.conj(f.b), -np.conj(f.d)]))
                den = UnivariatePoly(np.array([np.conj(f.a), np.conj(f.c)]))
                row.append(RationalFunc(num, den))
            else:
                fj, fi = fs[j], fs[i]
                scale = np.conj(fj.lam * fi.lam)
                num = UnivariatePoly(np.array([-np.conj(fj.tau2), 1.0]))
                num = num * UnivariatePoly(np.array([-np.conj(fi.tau2), 1.0]))
                den = UnivariatePoly(np.array([np.conj(fj.a), np.conj(fj.c)]))
                den = den * UnivariatePoly(np.array([np.conj(fi.a), np.conj(fi.c)]))
                for k in range(i + 1, j):
                    fk = fs[k]
                    num = num * UnivariatePoly(np.array([fk.d, fk.b]))
                    den = den * UnivariatePoly(np.array([np.conj(fk.a), np.conj(fk.c)]))
                row.append(RationalFunc(num.scaled(scale), den))
        rows.append(tuple(row))
    return MatrixSymbol(tuple(rows))


def eval_symbol(M: MatrixSymbol, tau: complex) -> np.ndarray:
    """Value of the symbol on the torus: entrywise evaluation at w = conj(tau)."""
    w = np.conj(tau)
    out = np.empty((M.m, M.m), dtype=complex)
    for j in range(M.m):
        for i in range(M.m):
            out[j, i] = M.entries[j][i](w)
    return out


def symbol_diagonal(theta: RifProduct, tau: complex) -> list[complex]:
    """Diagonal of the symbol at tau (the slice Blaschke zeros, in factor order)."""
    w = np.conj(tau)
    return [complex(-(np.conj(f.b) + np.conj(f.d) * w) / (np.conj(f.a) + np.conj(f.c) * w))
            for f in theta.factors]


def tmw_matrix(zeros) -> np.ndarray:
    """Upper-triangular basis matrix of a one-variable compressed shift.

    Diagonal holds the Blaschke zeros; entry (i, j) for i < j is
    prod_{i<k<j} (-conj(zeros[k])) * sqrt(1-|zeros[i]|^2) * sqrt(1-|zeros[j]|^2).
    """
    zs = [complex(z) for z in zeros]
    for z in zs:
        if abs(z) >= 1:
            raise ZeroOutsideDisk(f"Blaschke zero {z} has modulus >= 1")
    m = len(zs)
    out = np.zeros((m, m), dtype=complex)
    defect = [np.sqrt(1.0 - abs(z) ** 2) for z in zs]
    for i in range(m):
        out[i, i] = zs[i]
        inner = 1.0 + 0.0j
        for j in range(i + 1, m):
            if j > i + 1:
                inner *= -np.conj(zs[j - 1])
            out[i, j] = inner * defect[i] * defect[j]
    return out


# --- Hardy-space quadrature oracles ------------------------------------------

def _slice_data(theta: RifProduct, z2: complex):
    """Per-factor linear data in z1 at frozen z2.

    p_k  = B_k z1 + A_k,  reflected p_k = U_k z1 + V_k.
    """
    A = np.array([f.a + f.c * z2 for f in theta.factors])
    B = np.array([f.b + f.d * z2 for f in theta.factors])
    U = np.array([np.conj(f.a) * z2 + np.conj(f.c) for f in theta.factors])
    V = np.array([np.conj(f.b) * z2 + np.conj(f.d) for f in theta.factors])
    w = np.array([f.lam * (z2 - f.tau2) for f in theta.factors])
    return A, B, U, V, w


def _trunc_mul(acc: np.ndarray, lin: tuple[complex, complex], n: int) -> np.ndarray:
    """Multiply a truncated series by (value + slope * eps)."""
    val, slope = lin
    out = acc * val
    out[1:] += acc[: n - 1] * slope
    return out


def _trunc_div(num: np.ndarray, den: np.ndarray, n: int) -> np.ndarray:
    out = np.empty(n, dtype=complex)
    for k in range(n):
        s = num[k]
        for l in range(k):
            s -= out[l] * den[k - l]
        out[k] = s / den[0]
    return out


def _slice_gram_entry(A, B, U, V, w, i: int, j: int) -> complex:
    """Circle average of b_i * conj(b_j) in z1 by residues.

    The basis functions b_i are the kernel function of factor i multiplied
    by the preceding inner factors.  On |z1| = 1 the conjugate side becomes
    rational in z1 with poles exactly at the reflections of the factor
    zeros, all inside the open disk, so the average is a finite residue sum.
    Nearby poles are clustered and treated as one multiple pole.
    """
    scale = w[i] * np.conj(w[j])
    numf = [(V[k], U[k]) for k in range(i)] + \
           [(np.conj(U[k]), np.conj(V[k])) for k in range(j)]
    denf = [(A[k], B[k]) for k in range(i + 1)] + \
           [(np.conj(B[k]), np.conj(A[k])) for k in range(j + 1)]
    roots = np.array([-val / slope if slope != 0 else np.inf
                      for (val, slope) in denf])
    inside = np.abs(roots) < 1.0
    total = 0.0 + 0.0j
    done = np.zeros(len(denf), dtype=bool)
    for idx in range(len(denf)):
        if not inside[idx] or done[idx]:
            continue
        cluster = np.where(inside & ~done & (np.abs(roots - roots[idx]) < GRAM_ROOT_CLUSTER))[0]
        done[cluster] = True
        rho = roots[cluster].mean()
        mu = len(cluster)
        tn = np.zeros(mu, dtype=complex)
        tn[0] = scale
        for val, slope in numf:
            tn = _trunc_mul(tn, (slope * rho + val, slope), mu)
        td = np.zeros(mu, dtype=complex)
        td[0] = 1.0
        for idx2, (val, slope) in enumerate(denf):
            if idx2 in cluster:
                td *= slope
            else:
                td = _trunc_mul(td, (slope * rho + val, slope), mu)
        total += _trunc_div(tn, td, mu)[mu - 1]
    return complex(total)


def slice_gram(theta: RifProduct, z2: complex) -> np.ndarray:
    """Gram matrix of the basis restricted to the slice at z2, z1-integral exact."""
    A, B, U, V, w = _slice_data(theta, z2)
    m = theta.m
    out = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(i, m):
            out[i, j] = _slice_gram_entry(A, B, U, V, w, i, j)
            out[j, i] = np.conj(out[i, j])
    return out


def basis_gram(theta: RifProduct, N: int) -> np.ndarray:
    """Gram matrix of the orthonormal-candidate basis in the two-variable Hardy space.

    Midpoint average over N torus slices in z2 of slice Gram matrices whose
    z1-integral is evaluated by residues (a uniform product rule cannot
    resolve the integrable blow-up along the singular direction, so the
    inner integral is done exactly instead).  Nodes falling onto an
    exceptional point are nudged by a quarter step.
    """
    if N < 64 or N & (N - 1):
        raise ValueError("N must be a power of two, at least 64")
    m = theta.m
    total = np.zeros((m, m), dtype=complex)
    exceptional = theta.exceptional
    for k in range(N):
        z2 = np.exp(2j * np.pi * (k + 0.5) / N)
        if any(abs(z2 - t) < 1e-9 for t in exceptional):
            z2 = np.exp(2j * np.pi * (k + 0.75) / N)
        total += slice_gram(theta, complex(z2))
    return total / N


def slice_isometry_residual(theta: RifProduct, tau: complex, N: int) -> float:
    """Deviation from the identity of the one-variable Gram at a fixed slice.

    Midpoint rule with N nodes on the circle in z1; the integrand is smooth
    there because tau is held away from the exceptional set.
    """
    _require_off_exceptional(theta, tau)
    z1 = np.exp(2j * np.pi * (np.arange(N) + 0.5) / N)
    vals = _basis_values(theta, z1, tau)
    m = theta.m
    G = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(i, m):
            G[i, j] = np.mean(vals[i] * np.conj(vals[j]))
            G[j, i] = np.conj(G[i, j])
    return float(np.max(np.abs(G - np.eye(m))))


def _basis_values(theta: RifProduct, z1, z2):
    """Values of the basis functions b_i = (prod_{k<i} theta_k) * f_i."""
    vals = []
    prefix = np.ones_like(np.asarray(z1, dtype=complex) * np.asarray(z2, dtype=complex))
    for f in theta.factors:
        vals.append(prefix * f.kernel_fn(z1, z2))
        prefix = prefix * f.p_reflected(z1, z2) / f.p(z1, z2)
    return vals


def render_symbol(M: MatrixSymbol) -> str:
    """Row-major text rendering: `row,col: num=[...] den=[...]` per entry."""
    lines = []
    for j in range(M.m):
        for i in range(M.m):
            e = M.entries[j][i]
            lines.append(f"{j + 1},{i + 1}: num=[{_fmt_coeffs(e.num)}] den=[{_fmt_coeffs(e.den)}]")
    return "\n".join(lines)


def _fmt_coeffs(p: UnivariatePoly) -> str:
    return ",".join(_fmt_complex(c) for c in p.coeffs)


def _fmt_complex(c: complex) -> str:
    re, im = float(np.real(c)), float(np.imag(c))
    if im == 0:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"
