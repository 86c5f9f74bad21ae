import math

import numpy as np
import pytest

from combent import ChainParams, fit_scaling, single_spin_entropy, sweep_e1_vs_k, sweep_e1_vs_p, sweep_e2
from combent.exceptions import SeriesDivergenceError, ValidationError
from combent.sweep import DEFAULT_L_SCHEDULE, default_k_grid, large_p_convergence


def test_default_grid_is_interior():
    k = default_k_grid()
    assert k.size == 257
    assert k[0] > 0 and k[-1] < math.pi
    assert np.allclose(np.diff(k), math.pi / 258)


def test_sweep_k_rows_and_laws():
    ks = default_k_grid(33)
    rows = sweep_e1_vs_k([1, 2, 4], ks)
    assert len(rows) == 3 * 33
    for r in rows:
        assert r.h == pytest.approx(math.cos(r.k), abs=1e-15)
        if r.p == 1:
            assert r.e1 == 0.0
        if r.p == 2:
            assert r.e1 == pytest.approx(2 * min(r.k, math.pi - r.k) / math.pi, abs=1e-12)
    mid = [r for r in rows if r.p == 4 and abs(r.k - math.pi / 2) < 1e-12]
    assert mid and mid[0].e1 == pytest.approx(1.0)


@pytest.mark.parametrize("p", [3, 5])
def test_sweep_k_piecewise_linear_between_breakpoints(p):
    # branch values are frozen between k = m pi/p and (m+1) pi/p, only theta* moves
    for m in range(p):
        ks = np.linspace(m * math.pi / p + 0.01, (m + 1) * math.pi / p - 0.01, 25)
        e1 = np.array([r.e1 for r in sweep_e1_vs_k([p], ks)])
        assert np.max(np.abs(np.diff(e1, 2))) < 1e-13


def test_sweep_k_rejects_endpoints():
    with pytest.raises(ValidationError):
        sweep_e1_vs_k([2], [0.0, 1.0])


def test_sweep_rows_columns():
    row = sweep_e1_vs_k([3], [1.0])[0]
    assert set(row.as_dict()) == {"k", "h", "p", "e1"}
    assert list(row.as_dict(["k", "p"])) == ["k", "p"]


def test_threads_preserve_order():
    ks = default_k_grid(20)
    assert sweep_e1_vs_k([2, 3], ks, n_jobs=4) == sweep_e1_vs_k([2, 3], ks, n_jobs=1)


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_sweep_p_maxima_at_length_scale(ell):
    rows = sweep_e1_vs_p(ell, 3 * ell + 0.5, 0.01)
    ref = single_spin_entropy(ChainParams(math.pi / ell))
    p = np.array([r.p for r in rows])
    e1 = np.array([r.e1 for r in rows])
    for n in (1, 2, 3):
        i = int(np.argmin(np.abs(p - n * ell)))
        assert p[i] == n * ell and rows[i].is_integer_p
        assert e1[i] == pytest.approx(ref, abs=1e-12)
    # strictly below the single-spin value away from the cusps
    away = np.min(np.abs(p[:, None] - ell * np.arange(1, 4)[None, :]), axis=1) > 0.02
    assert np.all(e1[away] < ref)


def test_sweep_p_integer_markers():
    rows = sweep_e1_vs_p(3, 5, 0.05)
    ints = [r.p for r in rows if r.is_integer_p]
    assert ints == [1.0, 2.0, 3.0, 4.0, 5.0]


def test_sweep_p_validation():
    with pytest.raises(ValidationError):
        sweep_e1_vs_p(1, 5)
    with pytest.raises(ValidationError):
        sweep_e1_vs_p(3, 5, 0.1)


def test_sweep_e2_piecewise_constant_in_k():
    ks = default_k_grid(255)
    for p in (2, 5):
        rows = sweep_e2([p], ks)
        e2 = np.array([r.e2 for r in rows])
        jumps = np.count_nonzero(np.abs(np.diff(e2)) > 1e-12)
        # jumps only where p k crosses a multiple of pi
        assert jumps <= 2 * p
        assert all(r.tail_bound <= 1e-12 for r in rows)
    j2 = np.count_nonzero(np.abs(np.diff([r.e2 for r in sweep_e2([2], ks)])) > 1e-12)
    j5 = np.count_nonzero(np.abs(np.diff([r.e2 for r in sweep_e2([5], ks)])) > 1e-12)
    assert j5 > j2


def test_sweep_e2_discontinuous_at_multiples_of_ell():
    ell = 3
    rows = sweep_e2(range(2, 14), [math.pi / ell])
    e2 = {int(r.p): r.e2 for r in rows}
    for n in (1, 2, 3, 4):
        assert e2[n * ell] == 0.0
        assert abs(e2[n * ell + 1]) > 0


def test_sweep_e2_rejects_block():
    with pytest.raises(SeriesDivergenceError):
        sweep_e2([1, 2], [1.0])


def test_fit_zero_matrix_case():
    fit = fit_scaling(2, ChainParams(math.pi / 2), range(20, 401, 20))
    assert fit.coeff_linear == pytest.approx(1.0, abs=1e-6)
    assert fit.L_range == (20, 400)


def test_fit_p3_half_filling():
    from combent import e1_coefficient, e2_coefficient

    par = ChainParams(math.pi / 2)
    fit = fit_scaling(3, par, range(20, 301, 20))
    assert fit.coeff_linear == pytest.approx(e1_coefficient(3, par), rel=1e-2)
    assert fit.coeff_log == pytest.approx(e2_coefficient(3, par), rel=0.1)
    assert fit.residual_rms >= 0


def test_fit_residual_drops_with_larger_min_L():
    par = ChainParams(math.pi / 3)
    small = fit_scaling(2, par, np.geomspace(10, 320, 11).astype(int))
    large = fit_scaling(2, par, np.geomspace(50, 320, 11).astype(int))
    assert large.residual_rms < small.residual_rms


def test_fit_requires_enough_points():
    with pytest.raises(ValidationError):
        fit_scaling(2, ChainParams(1.0), [10, 20, 30])
    assert len(DEFAULT_L_SCHEDULE) >= 8


def test_large_p_summary():
    out = large_p_convergence(ChainParams(math.pi / 3), range(10, 60))
    assert out["sup_scaled"] < 0.2
    assert out["sup_distance"] <= out["sup_scaled"] / 10 + 1e-15
