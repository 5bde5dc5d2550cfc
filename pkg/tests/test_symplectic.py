import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import tmsv
from cventangle.errors import IndexOutOfRange, PairingFailure
from cventangle.symplectic import (
    CovarianceMatrix,
    build_omega,
    check_physical,
    global_invariants,
    is_symplectic,
    log_negativity,
    partial_transpose,
    seralian_from_blocks,
    symplectic_spectrum,
    two_mode_squeezed_vacuum,
)

OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])


def test_omega_single_mode():
    assert_allclose(build_omega(1), OMEGA)


def test_omega_two_modes_is_direct_sum():
    expected = np.zeros((4, 4))
    expected[:2, :2] = OMEGA
    expected[2:, 2:] = OMEGA
    assert_allclose(build_omega(2), expected)


@given(st.integers(min_value=1, max_value=8))
def test_omega_antisymmetric_and_squares_to_minus_one(n):
    om = build_omega(n)
    assert_allclose(om.T, -om)
    assert_allclose(om @ om, -np.eye(2 * n))


def test_spectrum_of_diagonal_cm():
    assert_allclose(symplectic_spectrum(np.diag([2.0, 2.0, 3.0, 3.0])), [2.0, 3.0])


@pytest.mark.parametrize("r", [0.0, 0.3, 1.0, 2.5])
def test_spectrum_of_squeezed_vacuum_is_pure(r):
    assert_allclose(symplectic_spectrum(tmsv(r)), [1.0, 1.0], rtol=1e-9)
    assert_allclose(two_mode_squeezed_vacuum(r), tmsv(r))


def test_spectrum_recovers_williamson_input(sampler):
    for n in range(1, 6):
        for _ in range(20):
            cm, nu = sampler.random_cm(n)
            assert_allclose(symplectic_spectrum(cm), nu, rtol=1e-8)


def test_unpaired_eigenvalues_raise():
    # symmetric input always pairs; a non-symmetric one gives Omega-sigma
    # real eigenvalues of different modulus
    bad = np.array([[1.0, 0.0], [5.0, 1.0]])
    with pytest.raises(PairingFailure):
        symplectic_spectrum(bad)


def test_random_symplectics_are_symplectic(sampler):
    for n in (1, 2, 4):
        assert is_symplectic(sampler.random_symplectic(n))


@pytest.mark.parametrize(
    "cm, physical",
    [
        (np.eye(4), True),
        (np.diag([0.5, 0.5]), False),
        (np.diag([2.0, 0.5]), True),
        (-np.eye(2), False),
    ],
)
def test_check_physical_examples(cm, physical):
    assert check_physical(cm) is physical


def test_sampled_spectra_respect_uncertainty(sampler):
    for n in range(1, 6):
        for _ in range(20):
            cm, _ = sampler.random_cm(n)
            nu = symplectic_spectrum(cm)
            assert nu.min() >= 1 - 1e-9
            assert_allclose(np.prod(nu**2), np.linalg.det(cm), rtol=1e-8)


def test_partial_transpose_identity_unchanged():
    assert_allclose(partial_transpose(np.eye(4), [0, 1]), np.eye(4))


def test_partial_transpose_flips_momentum_correlation():
    pt = partial_transpose(tmsv(1.0), [1])
    assert_allclose(pt[:2, 2:], np.diag([np.sinh(2.0), np.sinh(2.0)]))


def test_partial_transpose_is_involution(sampler):
    for n in (2, 3, 5):
        cm, _ = sampler.random_cm(n)
        modes = list(range(0, n, 2))
        assert_allclose(partial_transpose(partial_transpose(cm, modes), modes), cm, atol=1e-12)


def test_partial_transpose_rejects_bad_modes():
    with pytest.raises(IndexOutOfRange):
        partial_transpose(np.eye(4), [2])
    with pytest.raises(IndexError):
        partial_transpose(np.eye(4), [-1])


@pytest.mark.parametrize(
    "cm, expected",
    [(np.eye(4), (1.0, 2.0)), (np.diag([2.0, 2.0, 3.0, 3.0]), (36.0, 13.0)), (tmsv(0.7), (1.0, 2.0))],
)
def test_global_invariants_examples(cm, expected):
    assert_allclose(global_invariants(cm), expected, rtol=1e-10)


def test_seralian_matches_block_formula(sampler):
    for _ in range(50):
        cm, nu = sampler.random_cm(2)
        assert_allclose(seralian_from_blocks(cm), np.sum(nu**2), rtol=1e-9)
        det, delta = global_invariants(cm)
        assert delta**2 >= 4 * det * (1 - 1e-12)


@pytest.mark.parametrize(
    "cm, expected",
    [(np.eye(4), 0.0), (tmsv(1.0), 2.0), (np.diag([2.0, 2.0, 3.0, 3.0]), 0.0)],
)
def test_log_negativity_examples(cm, expected):
    assert log_negativity(cm, [1]) == pytest.approx(expected, abs=1e-12)


def test_log_negativity_zero_on_products(sampler):
    for _ in range(30):
        a, _ = sampler.random_cm(1)
        b, _ = sampler.random_cm(2)
        cm = np.zeros((6, 6))
        cm[:2, :2], cm[2:, 2:] = a, b
        assert log_negativity(cm, [0]) == pytest.approx(0.0, abs=1e-12)


def test_log_negativity_invariant_under_local_symplectics(sampler):
    for _ in range(100):
        cm, _ = sampler.random_cm(2)
        en = log_negativity(cm, [0])
        assert en >= 0.0
        S = sampler.random_local_symplectic(2, int(sampler.rng.integers(2)))
        assert abs(log_negativity(S @ cm @ S.T, [0]) - en) < 1e-7


def test_cm_json_round_trip(tmp_path):
    cm = CovarianceMatrix(tmsv(0.4))
    path = tmp_path / "cm.json"
    cm.dump(path)
    assert json.loads(path.read_text())["n_modes"] == 2
    assert_allclose(CovarianceMatrix.load(path).matrix, cm.matrix)


def test_cm_rejects_asymmetric_and_odd_shapes():
    with pytest.raises(ValueError):
        CovarianceMatrix(np.array([[1.0, 0.1], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        CovarianceMatrix(np.eye(3))
    with pytest.raises(ValueError):
        CovarianceMatrix.from_dict({"n_modes": 3, "matrix": np.eye(4).tolist()})
