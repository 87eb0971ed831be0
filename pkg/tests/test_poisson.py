import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closedcoulomb.errors import NonNeutralSource, NotConverged, PoleSingularity
from closedcoulomb.fields import charge_for_scale, field_sphere2, potential_sphere2
from closedcoulomb.gauss import flux_latitude_s2
from closedcoulomb.poisson import (
    MONOPOLE_TOL,
    HarmonicSpectrum,
    apply_laplace_beltrami,
    eval_field_theta,
    eval_theta_profile,
    expand_point_charges,
    expand_pole_pair,
    filter_weights,
    solve_poisson,
)

import oracles

Q2 = charge_for_scale(1.0, 2)


def random_real_spectrum(rng, l_max, monopole, kind="source"):
    pos = rng.normal(size=(l_max + 1, l_max + 1)) + 1j * rng.normal(size=(l_max + 1, l_max + 1))
    pos = np.tril(pos)
    pos[0, 0] = monopole
    return HarmonicSpectrum.from_nonnegative_m(l_max, pos, kind)


# --- pole-pair source -------------------------------------------------------


def test_pole_pair_even_modes_vanish():
    s = expand_pole_pair(1.0, 1.0, 16)
    assert s.monopole == 0.0
    assert s.coeff(2, 0) == 0.0
    assert np.all(s.zonal()[::2] == 0.0)


def test_pole_pair_l1_value():
    s = expand_pole_pair(1.0, 1.0, 4)
    assert s.coeff(1, 0).real == pytest.approx(2 * math.sqrt(3 / (4 * math.pi)), rel=1e-15)


def test_pole_pair_l1_against_gaussian_cap_limit():
    # narrow normalised caps converge to the delta projection with O(width^2) error
    target = expand_pole_pair(1.0, 1.0, 1).coeff(1, 0).real
    widths = (0.04, 0.02, 0.01)
    errs = [abs(oracles.gaussian_cap_pair_l1(w) - target) for w in widths]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 2e-4
    # Richardson step on the w^2 error term
    extrap = (4 * oracles.gaussian_cap_pair_l1(0.01) - oracles.gaussian_cap_pair_l1(0.02)) / 3
    assert extrap == pytest.approx(target, abs=1e-6)


def test_pole_pair_matches_general_point_charge_projection():
    L = 12
    pair = expand_pole_pair(0.7, 2.0, L)
    general = expand_point_charges([(0.7, 0.0, 0.0), (-0.7, math.pi, 0.0)], 2.0, L)
    np.testing.assert_allclose(general.zonal(), pair.zonal(), atol=1e-13)
    off_axis = np.delete(general.coeffs, 12, axis=1)
    assert np.max(np.abs(off_axis)) < 1e-12


def test_even_l_coefficients_by_quadrature_of_basis():
    # c_l0 = q (Y_l0(0) - Y_l0(pi)) / R^2; Y_l0 from scipy is even in cos(theta) for even l
    from scipy.special import sph_harm_y

    s = expand_pole_pair(1.0, 1.0, 6)
    for l in range(7):
        ref = (sph_harm_y(l, 0, 0.0, 0.0) - sph_harm_y(l, 0, math.pi, 0.0)).real
        assert s.coeff(l, 0).real == pytest.approx(ref, abs=1e-14)


# --- solvability gate -------------------------------------------------------


def test_gate_rejects_monopole():
    c = np.zeros(5, dtype=complex)
    c[0] = 0.5
    with pytest.raises(NonNeutralSource, match="total charge on a closed space must be zero"):
        solve_poisson(HarmonicSpectrum(4, c))


def test_single_point_charge_is_rejected():
    with pytest.raises(NonNeutralSource):
        solve_poisson(expand_point_charges([(1.0, 1.0, 2.0)], 1.0, 8))


def test_zero_source_zero_potential():
    pot = solve_poisson(HarmonicSpectrum(8, np.zeros(9)))
    assert not np.any(pot.coeffs) and pot.kind == "potential"


def test_l1_mode_eigenvalue():
    c = np.zeros(4, dtype=complex)
    c[1] = 3.0
    pot = solve_poisson(HarmonicSpectrum(3, c))
    assert pot.coeff(1, 0) == pytest.approx(1.5)


def test_radius_and_permittivity_scaling():
    c = np.zeros(4, dtype=complex)
    c[3] = 1.0
    pot = solve_poisson(HarmonicSpectrum(3, c, radius=2.0), epsilon0=0.5)
    assert pot.coeff(3, 0).real == pytest.approx(4.0 / (0.5 * 12))


@settings(max_examples=100, deadline=None)
@given(st.floats(1.01e-12, 1e6), st.sampled_from([-1.0, 1.0]), st.integers(0, 2**32 - 1))
def test_gate_property_non_neutral(mag, sign, seed):
    spec = random_real_spectrum(np.random.default_rng(seed), 6, sign * mag)
    with pytest.raises(NonNeutralSource):
        solve_poisson(spec)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1e-12, 1e-12), st.integers(0, 2**32 - 1))
def test_gate_accepts_within_tolerance(mono, seed):
    spec = random_real_spectrum(np.random.default_rng(seed), 6, mono)
    pot = solve_poisson(spec)
    assert pot.monopole == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.1, 10), st.floats(0.1, 10))
def test_spectral_consistency(seed, R, eps0):
    rng = np.random.default_rng(seed)
    pos = np.tril(rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9)))
    pos[0, 0] = 0.0
    src = HarmonicSpectrum.from_nonnegative_m(8, pos, radius=R)
    back = apply_laplace_beltrami(solve_poisson(src, eps0), eps0)
    np.testing.assert_allclose(back.coeffs, src.coeffs, rtol=1e-14, atol=1e-15)


# --- container --------------------------------------------------------------


def test_conjugate_symmetry_enforced():
    L = 2
    c = np.zeros((L + 1, 2 * L + 1), dtype=complex)
    c[1, L + 1] = 1 + 2j  # m = +1 without its m = -1 partner
    with pytest.raises(ValueError):
        HarmonicSpectrum(L, c)
    c[1, L - 1] = -(1 - 2j)
    HarmonicSpectrum(L, c)


def test_container_validation():
    with pytest.raises(ValueError):
        HarmonicSpectrum(2, np.zeros(4))
    with pytest.raises(ValueError):
        HarmonicSpectrum(2, np.array([1.0, 0, 0]), kind="potential")
    with pytest.raises(ValueError):
        HarmonicSpectrum(2, np.zeros(3), kind="density")
    s = HarmonicSpectrum(2, np.array([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError):
        s.coeffs[0] = 5.0


def test_total_charge_from_monopole():
    spec = expand_point_charges([(2.0, 0.4, 1.0), (0.5, 2.0, 3.0)], 1.5, 4)
    assert spec.total_charge == pytest.approx(2.5, rel=1e-13)
    assert expand_pole_pair(1.0, 1.5, 4).total_charge == 0.0


def test_spectrum_csv_round_trip(rng):
    full = random_real_spectrum(rng, 4, 0.0)
    back = HarmonicSpectrum.from_csv(full.to_csv())
    np.testing.assert_array_equal(back.coeffs, full.coeffs)
    pair = solve_poisson(expand_pole_pair(1.0, 1.0, 5))
    text = pair.to_csv()
    assert text.splitlines()[0] == "l,m,re,im" and len(text.splitlines()) == 7
    again = HarmonicSpectrum.from_csv(text, kind="potential")
    assert again.axisymmetric
    np.testing.assert_array_equal(again.coeffs, pair.coeffs)


# --- profiles ---------------------------------------------------------------


def test_equator_potential_zero_and_antisymmetry(rng):
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 128))
    assert abs(eval_theta_profile(pot, [math.pi / 2])[0]) < 1e-12
    th = rng.uniform(0.05, math.pi / 2, 20)
    np.testing.assert_allclose(eval_theta_profile(pot, th) + eval_theta_profile(pot, math.pi - th), 0.0, atol=1e-12)


def test_potential_profile_matches_closed_form():
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 256))
    th = np.linspace(math.pi / 4, 3 * math.pi / 4, 41)
    np.testing.assert_allclose(eval_theta_profile(pot, th), potential_sphere2(Q2, th, 1.0), atol=1e-10)


def test_field_at_sixty_degrees():
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 512))
    assert eval_field_theta(pot, [math.pi / 3])[0] == pytest.approx(1 / math.sin(math.pi / 3), rel=1e-2)


@pytest.mark.parametrize("R", [0.5, 2.0])
def test_field_scales_with_radius(R):
    pot = solve_poisson(expand_pole_pair(Q2, R, 256))
    th = np.linspace(math.pi / 4, 3 * math.pi / 4, 11)
    np.testing.assert_allclose(eval_field_theta(pot, th), field_sphere2(Q2, R * th, R), rtol=1e-8)


def test_unfiltered_partial_sums_converge_slowly():
    # plain truncation: amplitude of the tail falls like l^-1/2, still a few percent at 512
    th = np.linspace(math.pi / 4, 3 * math.pi / 4, 201)
    errs = []
    for L in (64, 512):
        pot = solve_poisson(expand_pole_pair(Q2, 1.0, L))
        errs.append(np.max(np.abs(eval_field_theta(pot, th, spectral_filter="none") / field_sphere2(Q2, th, 1.0) - 1)))
    assert errs[1] < errs[0]
    assert 0.02 < errs[1] < 0.06
    assert errs[0] / errs[1] == pytest.approx(math.sqrt(8), rel=0.15)


def test_filters():
    assert np.all(filter_weights(10, "none") == 1)
    w = filter_weights(512, "exponential")
    assert w[0] == 1.0 and w[-1] < 1e-15 and np.all(np.diff(w) <= 0)
    with pytest.raises(ValueError):
        filter_weights(4, "boxcar")


def test_not_converged():
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 64))
    with pytest.raises(NotConverged):
        eval_field_theta(pot, [1.0, 2.0], spectral_filter="none", tail_tol=1e-3)
    eval_field_theta(solve_poisson(expand_pole_pair(Q2, 1.0, 256)), [1.0, 2.0], tail_tol=1e-6)


def test_profile_pole_margin_and_zonal_requirement(rng):
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 16))
    with pytest.raises(PoleSingularity):
        eval_field_theta(pot, [0.0])
    full = solve_poisson(random_real_spectrum(rng, 4, 0.0))
    with pytest.raises(ValueError):
        eval_theta_profile(full, [1.0])


def test_gauss_check_on_spectral_field():
    pot = solve_poisson(expand_pole_pair(Q2, 1.0, 512))
    res = flux_latitude_s2(lambda r: eval_field_theta(pot, r / 1.0), Q2, 1.0, math.pi / 2)
    assert res.relative_deviation <= 1e-2


def test_monopole_tol_value():
    assert MONOPOLE_TOL == 1e-12
