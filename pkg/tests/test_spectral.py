import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combent import (
    ChainParams,
    CombSpec,
    build_comb_toeplitz,
    contour_entropy_oracle,
    entropy_kernel_e,
    exact_entropy,
    ising_comb_entropy,
)
from combent.exceptions import DomainError, ResourceLimitError


def test_kernel_values():
    assert entropy_kernel_e(1.0, 0.0) == 1.0
    assert entropy_kernel_e(1.0, 1.0) == 0.0
    assert entropy_kernel_e(1.0, -1.0) == 0.0
    assert entropy_kernel_e(1.0, -1 / 3) == pytest.approx(0.9182958340544896, abs=1e-15)


def test_kernel_domain():
    with pytest.raises(DomainError):
        entropy_kernel_e(1.0, 1.1)


@settings(max_examples=50, deadline=None)
@given(y=st.floats(-1, 1))
def test_kernel_symmetric_and_bounded(y):
    v = entropy_kernel_e(1.0, y)
    assert v == pytest.approx(entropy_kernel_e(1.0, -y), abs=1e-15)
    assert 0.0 <= v <= 1.0 + 1e-15


def test_toeplitz_structure(params):
    T = build_comb_toeplitz(CombSpec(6, 3), params)
    M = T.entries
    assert np.array_equal(M, M.T)
    assert np.allclose(np.diag(M), 2 * params.k / math.pi - 1)
    assert M[2, 0] == M[5, 3]
    assert not M.flags.writeable


def test_single_tooth_is_single_spin():
    par = ChainParams(math.pi / 3)
    assert exact_entropy(CombSpec(1, 5), par).entropy_bits == pytest.approx(
        entropy_kernel_e(1.0, -1 / 3), abs=1e-15
    )


@pytest.mark.parametrize("L", [1, 7, 64, 200])
def test_zero_matrix_case_gives_L_bits(L):
    res = exact_entropy(CombSpec(L, 2), ChainParams(math.pi / 2))
    assert res.entropy_bits == L
    assert res.eigenvalues.size == L


@settings(max_examples=30, deadline=None)
@given(k=st.floats(0.05, math.pi - 0.05), L=st.integers(1, 40), p=st.integers(1, 6))
def test_entropy_bounds_and_spectrum(k, L, p):
    res = exact_entropy(CombSpec(L, p), ChainParams(k))
    assert np.all(np.abs(res.eigenvalues) <= 1.0)
    assert 0.0 <= res.entropy_bits <= L + 1e-12


def test_particle_hole_symmetry():
    # k -> pi - k flips the sign of g, so the spectrum flips and S is unchanged
    for p in (1, 2, 3):
        a = exact_entropy(CombSpec(30, p), ChainParams(0.7)).entropy_bits
        b = exact_entropy(CombSpec(30, p), ChainParams(math.pi - 0.7)).entropy_bits
        assert a == pytest.approx(b, abs=1e-11)


def test_matrix_size_cap():
    with pytest.raises(ResourceLimitError):
        build_comb_toeplitz(CombSpec(50, 1), ChainParams(1.0), max_dim=10)


def test_ising_identity():
    for L in (1, 5, 100):
        for p in (1, 2, 7):
            assert ising_comb_entropy(CombSpec(L, p)) == L


def test_contour_documented_example():
    spec, par = CombSpec(4, 3), ChainParams(math.pi / 3)
    exact = exact_entropy(spec, par).entropy_bits
    assert abs(contour_entropy_oracle(spec, par) - exact) < 1e-4


@pytest.mark.parametrize("L,p", [(1, 1), (3, 2), (6, 4)])
def test_contour_matches_spectrum(params, L, p):
    spec = CombSpec(L, p)
    exact = exact_entropy(spec, params).entropy_bits
    assert abs(contour_entropy_oracle(spec, params) - exact) < 1e-4


def test_contour_coarse_epsilon_is_biased():
    # near-edge eigenvalues make a large regulator visibly inaccurate
    spec, par = CombSpec(6, 1), ChainParams(math.pi / 3)
    exact = exact_entropy(spec, par).entropy_bits
    fine = abs(contour_entropy_oracle(spec, par) - exact)
    coarse = abs(contour_entropy_oracle(spec, par, epsilon=1e-3) - exact)
    assert coarse > 10 * fine


def test_contour_preconditions():
    par = ChainParams(1.0)
    with pytest.raises(DomainError):
        contour_entropy_oracle(CombSpec(9, 1), par)
    with pytest.raises(DomainError):
        contour_entropy_oracle(CombSpec(3, 1), par, delta=0.5)
    with pytest.raises(DomainError):
        contour_entropy_oracle(CombSpec(3, 1), par, n_points=100)


def test_contour_handles_eigenvalues_at_the_edge():
    # k = 0 gives T_A = -I: every eigenvalue sits at -1, half a regulator from the contour
    par = ChainParams(0.0)
    assert abs(contour_entropy_oracle(CombSpec(3, 1), par)) < 1e-4
