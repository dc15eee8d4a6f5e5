import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rifrange import (
    DenominatorZero,
    ExceptionalSlice,
    NotSingularOnTorus,
    UnstableDenominator,
    backward_shift_residual,
    eval_product,
    factor_from_coeffs,
    parse_factor_config,
    slice_blaschke,
)
from rifrange.rif import _check_stability


def test_factor_example_one():
    f = factor_from_coeffs(2, -1, -1, 0)
    assert abs(f.tau1 - 1) < 1e-12 and abs(f.tau2 - 1) < 1e-12
    assert abs(f.lam - 1j * np.sqrt(2)) < 1e-12


def test_factor_example_two():
    f = factor_from_coeffs(3, -1, -2, 0)
    assert abs(f.tau2 - 1) < 1e-12
    assert abs(f.lam - 1j * np.sqrt(6)) < 1e-12


def test_factor_example_three():
    f = factor_from_coeffs(3, -1, -1, -1)
    assert abs(f.lam - 2j) < 1e-12


def test_factor_rejects_offtorus_singularity():
    with pytest.raises(NotSingularOnTorus):
        factor_from_coeffs(1.9, -1, -1, 0)


def test_factor_rejects_unstable():
    with pytest.raises(NotSingularOnTorus):
        factor_from_coeffs(1, -1, -1, 0)


def test_stability_grid_rejects_interior_zero():
    with pytest.raises(UnstableDenominator):
        _check_stability(1.0, -2.0, 0.5, 0.1, 2.0)


def test_eval_product_at_origin(ex1):
    single = parse_factor_config({"factors": [{"a": 2, "b": -1, "c": -1, "d": 0}]})
    assert eval_product(single, (0.0, 0.0)) == 0


def test_eval_product_inner_on_torus(ex1):
    val = eval_product(ex1, (1j, -1.0))
    assert abs(abs(val) - 1.0) < 1e-12


def test_eval_product_denominator_zero(ex1):
    with pytest.raises(DenominatorZero):
        eval_product(ex1, (1.0, 1.0))


def test_slice_zeros_at_i(ex1):
    zeros = slice_blaschke(ex1, 1j)
    expect = {(2 - 1j) / 5, (3 - 2j) / 13}
    assert all(min(abs(z - e) for e in expect) < 1e-12 for z in zeros)
    assert len(zeros) == 2


def test_slice_exceptional(ex1):
    with pytest.raises(ExceptionalSlice):
        slice_blaschke(ex1, 1.0)


def test_slice_degree_and_modulus(ex2):
    for ang in np.linspace(0.2, 6.0, 17):
        zeros = slice_blaschke(ex2, complex(np.exp(1j * ang)))
        assert len(zeros) == ex2.m
        assert all(abs(z) < 1 for z in zeros)


def test_backward_shift_residual_random(ex1):
    rng = np.random.default_rng(1)
    samples = []
    while len(samples) < 100:
        z1 = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        z2 = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if abs(z1) > 1e-3:
            samples.append((complex(z1), complex(z2)))
    assert backward_shift_residual(ex1.factors[0], samples) <= 1e-10


def test_backward_shift_hand_point(ex1):
    assert backward_shift_residual(ex1.factors[0], [(0.5, 0.0)]) <= 1e-12


def test_backward_shift_with_d_term(ex2):
    assert backward_shift_residual(ex2.factors[2], [(0.3 + 0.2j, -0.4j)]) <= 1e-12


def test_inner_property_on_grid(ex1):
    grid = np.exp(2j * np.pi * (np.arange(48) + 0.5) / 48)
    worst = 0.0
    for z1 in grid:
        for z2 in grid:
            worst = max(worst, abs(abs(eval_product(ex1, (z1, z2))) - 1))
    assert worst <= 1e-9


def test_tau2_square_identity(ex2):
    for f in ex2.factors:
        num = f.a * np.conj(f.c) - f.b * np.conj(f.d)
        den = np.conj(f.a) * f.c - f.d * np.conj(f.b)
        assert abs(f.tau2 ** 2 - num / den) < 1e-12


@given(st.floats(0.05, 4.0), st.floats(0.0, 2 * np.pi), st.floats(0.0, 2 * np.pi))
@settings(max_examples=40, deadline=None)
def test_rotated_normalized_factors_validate(c, alpha, beta):
    # p = (c+1) - e^{i alpha} z1 + c e^{i beta} z2 is always a valid factor
    f = factor_from_coeffs(c + 1.0, -np.exp(1j * alpha), c * np.exp(1j * beta), 0.0)
    assert abs(abs(f.tau1) - 1) < 1e-9
    assert abs(abs(f.tau2) - 1) < 1e-9
    assert abs(f.p(f.tau1, f.tau2)) < 1e-9
    assert abs(f.lam ** 2 - (np.conj(f.a) * f.c - f.d * np.conj(f.b))) < 1e-12


def test_parse_factor_config_rejects_bad_shapes():
    from rifrange import UsageError

    for bad in ({}, {"factors": []}, {"factors": [{"a": 1, "b": 2, "c": 3}]},
                 {"factors": [{"a": "x", "b": 0, "c": 0, "d": 0}]}):
        with pytest.raises(UsageError):
            parse_factor_config(bad)
