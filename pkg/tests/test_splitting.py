import numpy as np
import pytest

from memstress.effective import SymTridiag, banded_effective, ising_effective_surface
from memstress.spectral import eigh_tridiag
from memstress.splitting import (
    dense_eigenvalue_mp,
    measure_splitting,
    plateau_spectrum,
    predicted_order,
    tridiag_eigenvalue_mp,
)


def test_predicted_order_values():
    assert predicted_order(4, 1) == 3
    assert predicted_order(10, 1) == 9
    assert predicted_order(10, 1, 3) == 3
    assert predicted_order(10, 5, 1) == 1
    assert predicted_order(7, 1, 10) == 1  # one wide hop suffices


def test_predicted_order_validation():
    with pytest.raises(ValueError):
        predicted_order(4, 0)
    with pytest.raises(ValueError):
        predicted_order(3, 2)
    with pytest.raises(ValueError):
        predicted_order(4, 1, 0)


def test_plateau_spectrum_n4():
    d = 0.07
    got = plateau_spectrum(4, d)
    want = 2 * 5 + 2 * d * np.cos(np.arange(1, 5) * np.pi / 5.0)
    assert np.allclose(got, want, atol=1e-15)
    assert np.allclose(plateau_spectrum(4, 0.0), 10.0)
    with pytest.raises(ValueError):
        plateau_spectrum(3, 0.1)


def test_two_by_two_splitting_is_linear():
    fit = measure_splitting(
        lambda d: SymTridiag(np.zeros(2), np.array([d])),
        (0, 1),
        np.logspace(-2, -1, 6),
        predicted=1,
    )
    # closed form: eigenvalues -+ d, splitting exactly 2 d
    assert np.allclose(fit.splittings, 2.0 * fit.deltas, rtol=1e-12)
    assert fit.fitted_order == pytest.approx(1.0, abs=1e-9)


def test_flat_chain_contrast_linear():
    M = 6
    fit = measure_splitting(
        lambda d: SymTridiag(np.full(M, 2.0), np.full(M - 1, 0.5 * d)),
        (0, 1),
        np.logspace(-2, -1, 6),
        predicted=1,
    )
    assert abs(fit.fitted_order - 1.0) <= 0.05


def test_ising_n3_third_order():
    fit = measure_splitting(
        lambda d: ising_effective_surface(3, d),
        (0, 1),
        np.logspace(-2, -1, 6),
        predicted=predicted_order(4, 1),
    )
    assert fit.predicted_order == 3
    assert abs(fit.fitted_order - 3.0) <= 0.1
    assert fit.ok


def test_banded_k2_order_bound():
    # mirror-symmetric random bands: asymmetric ones split the pair at
    # second order by detuning it, without any tunneling between the ends
    N = 3
    M = 4
    rng = np.random.default_rng(7)
    unit = rng.uniform(-1.0, 1.0, size=(2, M - 1))
    for b in (1, 2):
        row = unit[b - 1, : M - b]
        unit[b - 1, : M - b] = 0.5 * (row + row[::-1])
    fit = measure_splitting(
        lambda d: banded_effective(N, d, 2, d * unit) if d else np.diag([4.0, 6.0, 6.0, 4.0]),
        (0, 1),
        0.1 * np.logspace(-1.5, -0.5, 6),
        predicted=predicted_order(M, 1, 2),
    )
    assert fit.fitted_order >= predicted_order(M, 1, 2) - 0.1


def test_asymmetric_bands_detune_at_second_order():
    # contrast: breaking the mirror symmetry caps the protection at delta^2
    N = 4
    M = 10
    rng = np.random.default_rng(3)
    unit = rng.uniform(-1.0, 1.0, size=(2, M - 1))
    fit = measure_splitting(
        lambda d: banded_effective(N, d, 2, d * unit)
        if d
        else np.diag(ising_effective_surface(N, 1.0).diag),
        (0, 1),
        0.1 * np.logspace(-1.5, -0.5, 6),
        predicted=2,
    )
    assert abs(fit.fitted_order - 2.0) <= 0.2


def test_extended_precision_agrees_with_double():
    m = ising_effective_surface(3, 0.1)
    s = eigh_tridiag(m)
    for k in (0, 1, 3):
        hi = float(tridiag_eigenvalue_mp(m, k, dps=50))
        assert abs(hi - s.eigenvalues[k]) <= 1e-6 * max(1.0, abs(hi))
    hi_dense = float(dense_eigenvalue_mp(m.dense(), 1, dps=50))
    assert abs(hi_dense - s.eigenvalues[1]) <= 1e-6


def test_splitting_shrinks_with_system_size():
    delta = 0.1

    def split_at(N):
        fit = measure_splitting(
            lambda d: ising_effective_surface(N, d),
            (0, 1),
            delta * np.logspace(-0.5, 0, 5),
            predicted=None,
        )
        return fit.splittings[-1]

    assert split_at(4) < split_at(3) * 1e-3


def test_measure_splitting_validation():
    with pytest.raises(ValueError):
        measure_splitting(
            lambda d: SymTridiag(np.array([0.0, 1.0]), np.array([d])),
            (0, 1),
            np.logspace(-2, -1, 6),
        )
    with pytest.raises(ValueError):
        measure_splitting(
            lambda d: SymTridiag(np.zeros(2), np.array([d])),
            (0, 1),
            [0.1, 0.2],
        )
