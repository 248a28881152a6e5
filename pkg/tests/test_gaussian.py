"""Closed-form layer: wavefunctions, Wigner evaluators, outcome factors.

Reference values are either textbook constants or integrals recomputed here
with scipy.integrate against an independent formula.
"""

import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from sqvac import (
    AngularAverageSpec,
    ConfigurationError,
    DegenerateInputError,
    DomainError,
    GaussianComponent,
    GaussianWignerSpec,
    added_outcome_value,
    amplitude_ratio,
    angular_average_purity,
    angular_average_value,
    norm_ratio,
    outcome_factors,
    spec_norm_ratio,
    squeeze_parameter,
    squeezed_wavefunction,
    subtracted_outcome_value,
    wigner_value,
)


def grid_2d(extent, n):
    xs = np.linspace(-extent, extent, n)
    return xs, xs[:, None], xs[None, :]


def integrate_2d(vals, xs):
    inner = scipy.integrate.simpson(vals, x=xs, axis=1)
    return scipy.integrate.simpson(inner, x=xs)


# ------------------------------------------------------------ scalar ratios

def test_amplitude_ratio_values():
    assert amplitude_ratio(2.0) == pytest.approx(5.0 / 3.0, rel=1e-15)
    assert amplitude_ratio(0.5) == pytest.approx(-5.0 / 3.0, rel=1e-15)
    assert norm_ratio(2.0) == pytest.approx(25.0 / 9.0, rel=1e-15)


def test_amplitude_ratio_unit_width_degenerate():
    with pytest.raises(DegenerateInputError):
        amplitude_ratio(1.0)
    with pytest.raises(DegenerateInputError):
        norm_ratio(1.0)


def test_squeeze_parameter():
    assert squeeze_parameter(2.0) == pytest.approx(-math.log(2.0), rel=1e-15)
    with pytest.raises(DomainError):
        squeeze_parameter(-1.0)


@pytest.mark.parametrize("sx", [0.4, 0.8, 2.0, 3.5])
def test_squeeze_parameter_tanh_identity(sx):
    z = squeeze_parameter(sx)
    assert (1 - sx * sx) / (1 + sx * sx) == pytest.approx(math.tanh(z), rel=1e-14)


def test_wavefunction_normalized():
    for sx in (0.5, 2.0):
        total, _ = scipy.integrate.quad(
            lambda x: squeezed_wavefunction(x, sx) ** 2, -np.inf, np.inf
        )
        assert total == pytest.approx(1.0, rel=1e-12)
    assert squeezed_wavefunction(0.0, 2.0) == pytest.approx(
        (2.0 * math.sqrt(math.pi)) ** -0.5, rel=1e-14
    )


# ---------------------------------------------------------------- specs

def test_component_validation():
    with pytest.raises(DomainError):
        GaussianComponent(0.0, 0.0, 2.0, 0.5)
    with pytest.raises(DomainError):
        GaussianComponent(1.0, 0.0, -2.0, 0.5)
    with pytest.raises(DomainError):
        GaussianComponent(1.0, 0.0, 0.5, 0.5)  # below the uncertainty floor


def test_component_angle_is_pi_periodic():
    c = GaussianComponent(1.0, math.pi + 0.3, 2.0, 0.5)
    assert c.theta == pytest.approx(0.3, abs=1e-12)


def test_spec_weight_validation():
    with pytest.raises(ConfigurationError):
        GaussianWignerSpec(())
    with pytest.raises(DomainError):
        GaussianWignerSpec(
            (
                GaussianComponent.pure(0.0, 2.0, 0.6),
                GaussianComponent.pure(1.0, 2.0, 0.6),
            )
        )
    with pytest.raises(DomainError):
        GaussianWignerSpec.two_angle_mixture(1.2, 0.0, 1.0, 2.0)


def test_outcome_weight_gap_is_one():
    # added minus subtracted trace is one photon, exactly, per component
    for c in (
        GaussianComponent.pure(0.3, 2.0),
        GaussianComponent(1.0, 0.0, 4.0, 0.5),
    ):
        assert c.added_weight() - c.subtracted_weight() == pytest.approx(1.0, abs=1e-14)


def test_radial_coefficients_identities():
    # a + b = sigma^2 and a - b = sigma^-2 pin both coefficients
    for sx in (1.0, 1.5, 2.2, 5.0):
        a, b = AngularAverageSpec(sx).radial_coefficients()
        assert a + b == pytest.approx(sx * sx, rel=1e-14)
        assert a - b == pytest.approx(sx ** -2, rel=1e-14)


# ------------------------------------------------------------- wigner_value

def test_wigner_pure_reference_point():
    spec = GaussianWignerSpec.pure_state(2.0)
    assert wigner_value(spec, 0.0, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-14)
    expect = math.exp(-0.25 - 1.0) / math.pi  # x^2/sx^2 + p^2/sp^2 at (1, 0.5)
    assert wigner_value(spec, 1.0, 0.5) == pytest.approx(expect, rel=1e-13)


def test_wigner_rotation_covariance():
    th = 0.7
    spec0 = GaussianWignerSpec.pure_state(2.0)
    spec = GaussianWignerSpec.pure_state(2.0, theta=th)
    xs, x, p = grid_2d(3.0, 21)
    xr = x * math.cos(th) + p * math.sin(th)
    pr = p * math.cos(th) - x * math.sin(th)
    np.testing.assert_allclose(
        wigner_value(spec, x, p), wigner_value(spec0, xr, pr), rtol=1e-12, atol=1e-15
    )


def test_wigner_mixture_is_weighted_sum():
    mix = GaussianWignerSpec.two_angle_mixture(0.3, 0.0, 1.1, 2.2)
    xs, x, p = grid_2d(4.0, 31)
    parts = 0.3 * wigner_value(GaussianWignerSpec.pure_state(2.2), x, p) \
        + 0.7 * wigner_value(GaussianWignerSpec.pure_state(2.2, theta=1.1), x, p)
    np.testing.assert_allclose(wigner_value(mix, x, p), parts, rtol=1e-13, atol=1e-16)


def test_wigner_normalized():
    xs, x, p = grid_2d(24.0, 801)
    vals = wigner_value(GaussianWignerSpec.single(4.0, 0.5), x, p)
    assert integrate_2d(vals, xs) == pytest.approx(1.0, abs=1e-10)


# ---------------------------------------------------------- outcome factors

def test_outcome_factors_pure_origin():
    fp, fm = outcome_factors(0.0, 0.0, 2.0, 0.5)
    assert fp == pytest.approx(-1.0, rel=1e-14)
    assert fm == pytest.approx(-1.0, rel=1e-14)


def test_outcome_factors_impure_origin():
    fp, fm = outcome_factors(0.0, 0.0, 4.0, 0.5)
    assert fp == pytest.approx(-0.3321917808219178, rel=1e-13)
    assert fm == pytest.approx(-0.14473684210526316, rel=1e-13)


def test_outcome_factors_vacuum_degenerate():
    with pytest.raises(DegenerateInputError):
        outcome_factors(0.0, 0.0, 1.0, 1.0)


@pytest.mark.parametrize("sx,sp,extent", [(2.0, 0.5, 14.0), (4.0, 0.5, 26.0)])
def test_outcome_factors_normalize_against_wigner(sx, sp, extent):
    # integral of f_plusminus * W over the plane is exactly 1
    xs, x, p = grid_2d(extent, 801)
    w = wigner_value(GaussianWignerSpec.single(sx, sp), x, p)
    fp, fm = outcome_factors(x, p, sx, sp)
    assert integrate_2d(fp * w, xs) == pytest.approx(1.0, abs=1e-9)
    assert integrate_2d(fm * w, xs) == pytest.approx(1.0, abs=1e-9)


def test_outcome_values_match_factor_route():
    # single-component path must agree with outcome_factors * wigner_value
    spec = GaussianWignerSpec.single(4.0, 0.5)
    xs, x, p = grid_2d(10.0, 41)
    w = wigner_value(spec, x, p)
    fp, fm = outcome_factors(x, p, 4.0, 0.5)
    np.testing.assert_allclose(added_outcome_value(spec, x, p), fp * w,
                               rtol=1e-12, atol=1e-16)
    np.testing.assert_allclose(subtracted_outcome_value(spec, x, p), fm * w,
                               rtol=1e-12, atol=1e-16)


def test_outcome_values_integrate_to_one():
    spec = GaussianWignerSpec.two_angle_mixture(0.5, 0.0, math.pi / 4, 2.2)
    xs, x, p = grid_2d(16.0, 801)
    assert integrate_2d(added_outcome_value(spec, x, p), xs) == pytest.approx(
        1.0, abs=1e-9
    )
    assert integrate_2d(subtracted_outcome_value(spec, x, p), xs) == pytest.approx(
        1.0, abs=1e-9
    )


def test_subtract_from_vacuum_degenerate():
    spec = GaussianWignerSpec.pure_state(1.0)
    with pytest.raises(DegenerateInputError):
        subtracted_outcome_value(spec, 0.0, 0.0)


def test_equal_width_mixture_outcomes_coincide():
    # same-width pure mixture: adding and subtracting give identical states
    spec = GaussianWignerSpec.two_angle_mixture(0.5, 0.0, math.pi / 4, 2.2)
    xs, x, p = grid_2d(8.0, 81)
    gap = added_outcome_value(spec, x, p) - subtracted_outcome_value(spec, x, p)
    assert np.max(np.abs(gap)) < 1e-14


def test_impure_outcomes_differ():
    spec = GaussianWignerSpec.single(4.0, 0.5)
    xs, x, p = grid_2d(12.0, 201)
    gap = added_outcome_value(spec, x, p) - subtracted_outcome_value(spec, x, p)
    assert np.max(np.abs(gap)) > 0.01


# ---------------------------------------------------------- spec_norm_ratio

def test_spec_norm_ratio_pure_matches_scalar():
    for sx in (0.5, 2.0, 3.0):
        assert spec_norm_ratio(GaussianWignerSpec.pure_state(sx)) == pytest.approx(
            norm_ratio(sx), rel=1e-13
        )


def test_spec_norm_ratio_impure():
    # (16 + 0.25 + 2)/4 over (16 + 0.25 - 2)/4
    spec = GaussianWignerSpec.single(4.0, 0.5)
    assert spec_norm_ratio(spec) == pytest.approx(18.25 / 14.25, rel=1e-14)


def test_spec_norm_ratio_vacuum_degenerate():
    with pytest.raises(DegenerateInputError):
        spec_norm_ratio(GaussianWignerSpec.pure_state(1.0))


@settings(max_examples=60, deadline=None)
@given(
    sx=st.one_of(
        st.floats(min_value=0.2, max_value=0.95),
        st.floats(min_value=1.05, max_value=5.0),
    )
)
def test_spec_norm_ratio_tracks_norm_ratio(sx):
    assert spec_norm_ratio(GaussianWignerSpec.pure_state(sx)) == pytest.approx(
        norm_ratio(sx), rel=1e-11
    )


# --------------------------------------------------------- angular average

def test_angular_average_origin():
    assert angular_average_value(2.2, 0.0, 0.0) == pytest.approx(
        1.0 / math.pi, rel=1e-14
    )


def test_angular_average_matches_brute_force():
    # average wigner_value over 720 orientation angles in [0, pi)
    thetas = np.linspace(0.0, math.pi, 721)[:-1]
    pts = [(0.0, 0.5), (1.0, 0.0), (1.3, -0.7), (0.0, 2.5)]
    for sx in (1.5, 2.2):
        for x, p in pts:
            acc = np.mean(
                [
                    wigner_value(GaussianWignerSpec.pure_state(sx, theta=t), x, p)
                    for t in thetas
                ]
            )
            assert angular_average_value(sx, x, p) == pytest.approx(acc, rel=1e-12)


def test_angular_average_far_tail_is_safe():
    # radius 30: the bare Bessel factor alone would overflow float64
    val = angular_average_value(2.2, 30.0, 0.0)
    assert 0.0 < val < 1e-70


def test_angular_average_purity_values():
    assert angular_average_purity(1.0) == pytest.approx(1.0, abs=1e-14)
    assert angular_average_purity(1.5) == pytest.approx(0.8567907363065936, rel=1e-13)
    assert angular_average_purity(2.2) == pytest.approx(0.5973884954432070, rel=1e-13)
    assert angular_average_purity(5.0) == pytest.approx(0.19923780683180788, rel=1e-13)


def test_angular_average_purity_against_quadrature():
    # purity = 2 * integral_0^inf exp(-2 a s) I0(b s)^2 ds, s = r^2
    sx = 2.2
    a, b = AngularAverageSpec(sx).radial_coefficients()
    val, err = scipy.integrate.quad(
        lambda s: 2.0 * math.exp(2.0 * (b - a) * s) * scipy.special.i0e(b * s) ** 2,
        0.0,
        np.inf,
    )
    assert angular_average_purity(sx) == pytest.approx(val, rel=1e-10)


def test_wigner_value_dispatches_angular_spec():
    spec = AngularAverageSpec(2.2)
    xs, x, p = grid_2d(3.0, 11)
    np.testing.assert_array_equal(
        wigner_value(spec, x, p), angular_average_value(2.2, x, p)
    )
