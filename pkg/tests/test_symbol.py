import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combent import ChainParams, CombSpec, comb_branches, comb_symbol, fourier_coeff, symbol_g
from combent.exceptions import ValidationError
from combent.oracles import comb_fourier_coeff_quadrature, fourier_coeff_quadrature
from combent.symbol import reduce_angle
from combent.validation import parse_angle

angles = st.floats(min_value=0.01, max_value=math.pi - 0.01)


def test_from_field_roundtrip():
    par = ChainParams.from_field(0.5)
    assert par.k == pytest.approx(math.pi / 3, abs=1e-15)
    assert par.h == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("bad", [-0.1, math.pi + 1e-3, float("nan")])
def test_angle_out_of_range_rejected(bad):
    with pytest.raises(ValidationError):
        ChainParams(bad)


def test_field_out_of_range_rejected():
    with pytest.raises(ValidationError):
        ChainParams.from_field(1.5)


@pytest.mark.parametrize("L,p", [(0, 1), (3, 0), (2.5, 1)])
def test_comb_spec_validation(L, p):
    with pytest.raises(ValidationError):
        CombSpec(L, p)


@pytest.mark.parametrize(
    "text,value",
    [("pi/3", math.pi / 3), ("2*pi/3", 2 * math.pi / 3), ("pi", math.pi), ("0.25", 0.25)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == value


def test_parse_angle_garbage():
    with pytest.raises(ValidationError):
        parse_angle("pi/x")


def test_symbol_values_at_k_third():
    par = ChainParams(math.pi / 3)
    assert symbol_g(0.0, par) == 1.0
    assert symbol_g(math.pi / 2, par) == -1.0
    # half-open convention [-k, k)
    assert symbol_g(-math.pi / 3, par) == 1.0
    assert symbol_g(math.pi / 3, par) == -1.0


def test_symbol_is_periodic():
    par = ChainParams(1.1)
    theta = np.linspace(-3, 3, 41)
    assert np.array_equal(symbol_g(theta, par), symbol_g(theta + 2 * math.pi, par))


def test_reduce_angle_range():
    t = reduce_angle(np.linspace(-20, 20, 1001))
    assert np.all(t >= -math.pi) and np.all(t < math.pi)


def test_fourier_coeff_examples():
    assert fourier_coeff(0, ChainParams(math.pi / 2)) == 0.0
    assert fourier_coeff(1, ChainParams(math.pi / 2)) == pytest.approx(2 / math.pi, abs=1e-15)
    assert fourier_coeff(2, ChainParams(math.pi / 2)) == pytest.approx(0.0, abs=1e-16)


@settings(max_examples=40, deadline=None)
@given(k=angles, n=st.integers(-60, 60))
def test_fourier_coeff_matches_quadrature(k, n):
    par = ChainParams(k)
    assert abs(fourier_coeff_quadrature(n, par) - fourier_coeff(n, par)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(k=angles, n=st.integers(0, 200))
def test_fourier_coeff_even_and_bounded(k, n):
    par = ChainParams(k)
    assert fourier_coeff(n, par) == fourier_coeff(-n, par)
    assert abs(fourier_coeff(n, par)) <= 1.0


def test_fourier_coeff_parseval():
    # sum |g~_n|^2 = mean of g^2 = 1
    par = ChainParams(0.9)
    n = np.arange(1, 2_000_001)
    total = fourier_coeff(0, par) ** 2 + 2 * np.sum(fourier_coeff(n, par) ** 2)
    assert total == pytest.approx(1.0, abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(k=angles, p=st.integers(1, 8), n=st.integers(-30, 30))
def test_comb_coefficients_are_subsampled(k, p, n):
    par = ChainParams(k)
    assert abs(comb_fourier_coeff_quadrature(n, p, par) - fourier_coeff(p * n, par)) < 1e-10


def test_comb_symbol_p1_is_symbol():
    par = ChainParams(1.3)
    theta = np.linspace(-3.1, 3.1, 57)
    assert np.array_equal(comb_symbol(theta, 1, par), symbol_g(theta, par))


@settings(max_examples=60, deadline=None)
@given(k=angles, p=st.integers(1, 12))
def test_branches_match_direct_average(k, p):
    par = ChainParams(k)
    br = comb_branches(p, par)
    assert 0.0 <= br.theta_star <= math.pi
    if br.theta_star > 1e-6:
        assert comb_symbol(0.0, p, par) == pytest.approx(br.g_at_0, abs=1e-14)
    if br.theta_star < math.pi - 1e-6:
        assert comb_symbol(math.pi - 1e-9, p, par) == pytest.approx(br.g_at_pi, abs=1e-14)
    assert -1.0 <= br.g_at_0 <= 1.0 and -1.0 <= br.g_at_pi <= 1.0


def test_branches_p2_k_sixth():
    br = comb_branches(2, ChainParams(math.pi / 6))
    assert br.theta_star == pytest.approx(math.pi / 3)
    assert br.g_at_0 == pytest.approx(0.0, abs=1e-15)
    assert br.g_at_pi == -1.0
    assert br.has_jump


def test_no_jump_when_pk_is_multiple_of_pi():
    br = comb_branches(3, ChainParams(math.pi / 3))
    assert br.theta_star == pytest.approx(math.pi)
    assert not br.has_jump
    assert br.g_at_0 == br.g_at_pi
