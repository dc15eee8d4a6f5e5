import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rifrange import (
    NonpositiveCoefficient,
    NotHermitian,
    PlanarRegion,
    WitnessVerdict,
    ZeroVerdict,
    build_symbol,
    ellipse_from_2x2,
    eval_symbol,
    hermitian_eigs,
    hull_boundary_distance,
    minor_axis_identity_residual,
    monotone_chain,
    normalized_factors,
    numerical_radius,
    point_in_hull,
    product_from_coeffs,
    region_hull,
    support_function,
    zero_test_general,
    zero_test_normalized,
)
from rifrange.nrange import hermitian_eigensystem

JORDAN = np.array([[0.0, 1.0], [0.0, 0.0]])


# --- eigensolver ---------------------------------------------------------------

def test_eigs_diagonal():
    assert np.allclose(hermitian_eigs(np.diag([1.0, 2.0])), [1.0, 2.0])


def test_eigs_hermitian_part_of_jordan():
    assert np.allclose(hermitian_eigs((JORDAN + JORDAN.T) / 2), [-0.5, 0.5])


def test_eigs_symbol_at_one(ex1_symbol):
    A = eval_symbol(ex1_symbol, 1.0)
    assert np.allclose(hermitian_eigs((A + A.conj().T) / 2), [1.0, 1.0])


def test_eigs_rejects_nonhermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigs(JORDAN)


def test_eigs_against_lapack():
    rng = np.random.default_rng(3)
    for n in (2, 3, 5, 8):
        for _ in range(20):
            B = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            H = (B + B.conj().T) / 2
            vals, vecs = hermitian_eigensystem(H)
            assert np.max(np.abs(vals - np.linalg.eigvalsh(H))) < 1e-12
            assert np.max(np.abs(vecs.conj().T @ H @ vecs - np.diag(vals))) < 1e-12


# --- support function ----------------------------------------------------------

def test_support_jordan_disk():
    h = support_function(JORDAN, 24)
    assert np.allclose(h.values, 0.5)


def test_support_identity():
    h = support_function(np.eye(2), 24)
    assert np.allclose(h.values, np.cos(h.angles))


def test_support_segment():
    h = support_function(np.diag([1.0, -1.0]), 24)
    assert np.allclose(h.values, np.abs(np.cos(h.angles)))


def test_support_requires_enough_angles():
    with pytest.raises(ValueError):
        support_function(JORDAN, 4)


# --- elliptical range ----------------------------------------------------------

def test_ellipse_jordan():
    e = ellipse_from_2x2(JORDAN)
    assert e.f1 == 0 and e.f2 == 0 and abs(e.minor - 1.0) < 1e-15


def test_ellipse_from_symbol_at_minus_one(ex1_symbol):
    e = ellipse_from_2x2(eval_symbol(ex1_symbol, -1.0))
    foci = sorted([e.f1, e.f2], key=lambda z: z.real)
    assert abs(foci[0] - 1 / 5) < 1e-14 and abs(foci[1] - 1 / 3) < 1e-14
    assert abs(e.minor - 4 * np.sqrt(12) / 15) < 1e-14


def test_ellipse_segment():
    e = ellipse_from_2x2(np.diag([1.0, -1.0]))
    assert e.minor == 0.0


def _ellipse_support(e, phis):
    """Closed-form support function of an elliptical disk."""
    phi0 = np.angle(e.f2 - e.f1) if abs(e.f2 - e.f1) > 0 else 0.0
    return (np.real(e.center * np.exp(-1j * phis))
            + np.sqrt((e.major / 2) ** 2 * np.cos(phis - phi0) ** 2
                      + (e.minor / 2) ** 2 * np.sin(phis - phi0) ** 2))


def test_support_sweep_matches_ellipse_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(25):
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        e = ellipse_from_2x2(A)
        h = support_function(A, 90)
        assert np.max(np.abs(h.values - _ellipse_support(e, h.angles))) < 1e-9


def test_support_sweep_vs_oversampled_parametric_boundary():
    rng = np.random.default_rng(12)
    A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    e = ellipse_from_2x2(A)
    pts = e.boundary(64 * 90)
    h = support_function(A, 90)
    sampled = np.max(np.real(pts[None, :] * np.exp(-1j * h.angles)[:, None]), axis=1)
    assert np.max(np.abs(h.values - sampled)) < 1e-5


# --- minor-axis identity ---------------------------------------------------------

def test_minor_axis_identity_at_minus_one(ex1):
    assert minor_axis_identity_residual(ex1, -1.0) <= 1e-12


def test_minor_axis_identity_at_one(ex1):
    assert minor_axis_identity_residual(ex1, 1.0) <= 1e-12


def test_minor_axis_identity_random(ex1):
    rng = np.random.default_rng(5)
    worst = max(minor_axis_identity_residual(ex1, complex(np.exp(1j * a)))
                for a in rng.uniform(0, 2 * np.pi, 100))
    assert worst <= 1e-10


# --- hulls and regions -----------------------------------------------------------

def test_region_hull_contains_one_and_stays_contractive(ex1_symbol):
    region = region_hull(ex1_symbol, 720, 720)
    assert point_in_hull(region, 1.0, 0.0)
    assert np.max(np.hypot(region.hull[:, 0], region.hull[:, 1])) <= 1 + 1e-9
    assert min(abs(complex(x, y) - 1) for x, y in region.hull) < 1e-12


def test_region_hull_single_factor_circle():
    theta = product_from_coeffs([(2, -1, -1, 0)])
    region = region_hull(build_symbol(theta), 360, 16)
    # the value curve is the circle centered 2/3 with radius 1/3
    dev = np.abs(np.abs(region.hull[:, 0] + 1j * region.hull[:, 1] - 2 / 3) - 1 / 3)
    assert np.max(dev) <= 1e-6


def test_region_hull_refinement_nests(ex1_symbol):
    coarse = region_hull(ex1_symbol, 16, 16)
    fine = region_hull(ex1_symbol, 720, 720)
    for x, y in coarse.hull:
        assert point_in_hull(fine, x, y, margin=-1e-9) or hull_boundary_distance(fine, x, y) < 1e-9


def test_region_hull_rejects_small_grids(ex1_symbol):
    with pytest.raises(ValueError):
        region_hull(ex1_symbol, 8, 720)


def test_region_hull_dense_points_contractive(ex1_symbol):
    region = region_hull(ex1_symbol, 180, 180, dense=True)
    assert np.max(np.hypot(region.points[:, 0], region.points[:, 1])) <= 1 + 1e-9
    assert len(region.points) > len(region.hull)


def test_region_hull_three_factor_sweep(ex2_symbol):
    region = region_hull(ex2_symbol, 24, 24)
    assert point_in_hull(region, 1.0, 0.0)  # symbol value at tau=1 is the identity
    assert np.max(np.hypot(region.hull[:, 0], region.hull[:, 1])) <= 1 + 1e-9


def test_region_hull_three_factor_prefilter_consistency(ex2_symbol):
    """The candidate-polygon shortcut must not change the hull for m >= 3."""
    from rifrange.nrange import _support_sweep, monotone_chain as chain

    T = K = 20
    taus = np.exp(2j * np.pi * np.arange(T) / T)
    taus[0], taus[T // 2] = 1.0, -1.0
    pts = np.concatenate([_support_sweep(
        __import__("rifrange").eval_symbol(ex2_symbol, complex(t)), K)[0] for t in taus])
    direct = chain(np.column_stack([pts.real, pts.imag]))
    region = region_hull(ex2_symbol, T, K)
    assert np.allclose(np.sort(direct, axis=0), np.sort(region.hull, axis=0), atol=1e-12)


def test_numerical_radius_example(ex1_symbol):
    region = region_hull(ex1_symbol, 720, 720)
    assert abs(numerical_radius(region) - 1.0) <= 1e-9


def test_numerical_radius_point_and_disk():
    pt = PlanarRegion(points=np.array([[1.0, 0.0]]), hull=np.array([[1.0, 0.0]]))
    assert numerical_radius(pt) == 1.0
    ang = np.linspace(0, 2 * np.pi, 100, endpoint=False)
    disk = monotone_chain(np.column_stack([0.5 * np.cos(ang), 0.5 * np.sin(ang)]))
    assert abs(numerical_radius(PlanarRegion(disk, disk)) - 0.5) < 1e-12


def test_radius_control_single_zero_tmw():
    from rifrange import tmw_matrix

    e = ellipse_from_2x2(np.array([[0.5, 0], [0, 0.5]], dtype=complex))
    assert abs(tmw_matrix([0.5])[0, 0]) == 0.5 and e.minor == 0


def test_hull_idempotent_and_contains_points():
    rng = np.random.default_rng(9)
    pts = rng.normal(size=(500, 2))
    hull = monotone_chain(pts)
    again = monotone_chain(hull)
    assert np.allclose(np.sort(hull, axis=0), np.sort(again, axis=0))
    region = PlanarRegion(pts, hull)
    for x, y in pts:
        assert point_in_hull(region, x, y) or hull_boundary_distance(region, x, y) <= 1e-12


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=60))
@settings(max_examples=60, deadline=None)
def test_hull_convexity_property(points):
    hull = monotone_chain(np.array(points))
    if len(hull) < 3:
        return
    edges = np.roll(hull, -1, axis=0) - hull
    nxt = np.roll(edges, -1, axis=0)
    cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
    assert np.all(cross >= -1e-12)


# --- zero inclusion --------------------------------------------------------------

def test_zero_test_normalized_verdicts():
    assert zero_test_normalized(1.0, 0.5).verdict is ZeroVerdict.BOUNDARY
    assert zero_test_normalized(0.9, 0.9).verdict is ZeroVerdict.INTERIOR
    assert zero_test_normalized(0.5, 0.5).verdict is ZeroVerdict.NOT_INTERIOR


def test_zero_test_normalized_diagnostics():
    rep = zero_test_normalized(0.9, 0.9)
    assert abs(rep.product - 0.81) < 1e-15
    assert abs(rep.quad_zero_low - (1 / 0.81 - 1)) < 1e-15
    assert abs(rep.quad_zero_high - (-1 - 1 / (0.9 + 0.9 + 0.81))) < 1e-15


def test_zero_test_normalized_rejects_nonpositive():
    with pytest.raises(NonpositiveCoefficient):
        zero_test_normalized(-1.0, 0.5)


def test_zero_test_general_witness():
    theta = product_from_coeffs(normalized_factors(0.9, 0.9))
    found = False
    for ang in np.linspace(0.1, 2 * np.pi - 0.1, 72):
        rep = zero_test_general(theta, complex(np.exp(1j * ang)))
        if rep.verdict is WitnessVerdict.INTERIOR_WITNESS:
            found = True
            assert rep.foci_sum < rep.major_axis
            break
    assert found


def test_zero_test_general_no_witness_when_outside():
    theta = product_from_coeffs(normalized_factors(0.5, 0.5))
    for ang in np.linspace(0.1, 2 * np.pi - 0.1, 72):
        rep = zero_test_general(theta, complex(np.exp(1j * ang)))
        assert rep.verdict is WitnessVerdict.NO_WITNESS


def test_zero_test_general_exceptional():
    from rifrange import ExceptionalSlice

    theta = product_from_coeffs(normalized_factors(0.9, 0.9))
    with pytest.raises(ExceptionalSlice):
        zero_test_general(theta, -1.0)  # tau2 = -1 for the normalized family


def test_focal_condition_arithmetic():
    # degenerate-foci arithmetic: |f1|+|f2| vs |1 - conj(f1) f2|
    f1, f2 = 0.1, -0.1
    assert abs(f1) + abs(f2) < abs(1 - np.conj(f1) * f2)
    f1, f2 = 1.0, 1.0
    assert not (abs(f1) + abs(f2) < abs(1 - np.conj(f1) * f2))
    f1, f2 = 1.0, 0.0
    assert not (abs(f1) + abs(f2) < abs(1 - np.conj(f1) * f2) - 1e-9)


def test_zero_verdicts_match_hull_geometry():
    for c1, c2, verdict in ((0.9, 0.9, ZeroVerdict.INTERIOR), (0.5, 0.5, ZeroVerdict.NOT_INTERIOR)):
        theta = product_from_coeffs(normalized_factors(c1, c2))
        region = region_hull(build_symbol(theta), 720, 720)
        if verdict is ZeroVerdict.INTERIOR:
            assert point_in_hull(region, 0.0, 0.0, margin=1e-6)
        else:
            assert np.min(region.hull[:, 0]) > 0
