import numpy as np
import pytest
from numpy.testing import assert_allclose

from cventangle.errors import UnphysicalState
from cventangle.extremal import Region, classify, negativity_bounds
from cventangle.multimode import (
    SymmetricMultimodeParams,
    build_symmetric_cm,
    estimated_bounds,
    localize,
    one_to_k_negativity,
    one_to_n_negativity,
    symmetric_block_spectrum,
    symmetric_cm,
)
from cventangle.symplectic import check_physical, log_negativity, symplectic_spectrum
from cventangle.twomode import TwoModeInvariants, invariants_from_cm, standard_form_from_invariants


def params_from_standard_form(inv):
    a, b, cp, cm = standard_form_from_invariants(inv)
    # alpha = diag(a, a), beta = b I, gamma = diag(c+, c-)
    return SymmetricMultimodeParams(a, a, b, 0.0, 0.0, cp, cm, 1)


def test_single_mode_block_reproduces_two_mode_cm():
    inv = TwoModeInvariants(0.5, 0.7, 0.45, 5.0)
    params = params_from_standard_form(inv)
    assert_allclose(symmetric_cm(params), standard_form_from_invariants(inv).matrix())


def test_uncoupled_block_is_separable(sampler):
    for n in (1, 3, 5):
        p = sampler.symmetric_multimode(n)
        p = SymmetricMultimodeParams(p.a1, p.a2, p.b, p.e1, p.e2, 0.0, 0.0, n)
        assert log_negativity(build_symmetric_cm(p), [0]) == pytest.approx(0.0, abs=1e-12)
        for method in ("direct", "localized"):
            assert one_to_n_negativity(p, method) == pytest.approx(0.0, abs=1e-12)
        assert one_to_n_negativity(p, "estimated") == (0.0, 0.0)
        eq = localize(p).equivalent
        assert eq.mu == pytest.approx(eq.mu1 * eq.mu2, rel=1e-9)


def test_sampled_three_mode_block_is_physical(sampler):
    for _ in range(20):
        assert check_physical(build_symmetric_cm(sampler.symmetric_multimode(3)))


def test_unphysical_parameters_raise():
    with pytest.raises(UnphysicalState):
        build_symmetric_cm(SymmetricMultimodeParams(1.0, 1.0, 1.0, 0.0, 0.0, 0.9, 0.9, 2))


def test_block_spectrum_examples():
    assert symmetric_block_spectrum(2.5, 0.0, 0.0, 4) == pytest.approx((2.5, 2.5))
    assert symmetric_block_spectrum(2.5, 0.3, -0.2, 1)[1] == pytest.approx(2.5)


def test_block_spectrum_matches_explicit_block(sampler):
    for _ in range(20):
        p = sampler.symmetric_multimode(3)
        block = symmetric_cm(p)[2:, 2:]
        nu_minus, nu_plus = symmetric_block_spectrum(p.b, p.e1, p.e2, 3)
        assert_allclose(symplectic_spectrum(block), np.sort([nu_minus, nu_minus, nu_plus]), rtol=1e-8)


def test_single_mode_localization_is_identity(sampler):
    for _ in range(20):
        p = sampler.symmetric_multimode(1)
        assert_allclose(localize(p).equivalent, invariants_from_cm(symmetric_cm(p)), rtol=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_localized_negativity_equals_direct(sampler, n):
    for _ in range(100):
        p = sampler.symmetric_multimode(n)
        assert one_to_n_negativity(p, "localized") == pytest.approx(one_to_n_negativity(p, "direct"), abs=1e-8)


def test_estimated_bounds_sandwich_direct_value(sampler):
    hits = 0
    for _ in range(300):
        p = sampler.symmetric_multimode(4)
        eq = localize(p).equivalent
        if classify(*eq[:3]).tag is not Region.ENTANGLED:
            continue
        hits += 1
        e_min, e_max = estimated_bounds(p)
        assert (e_min, e_max) == negativity_bounds(*eq[:3])
        direct = one_to_n_negativity(p, "direct")
        assert e_min - 1e-9 <= direct <= e_max + 1e-9
        ebar, rel = one_to_n_negativity(p, "estimated")
        assert ebar == pytest.approx(0.5 * (e_min + e_max))
    assert hits > 20


def test_full_spectrum_contains_degenerate_block_value(sampler):
    for n in (2, 3, 4, 5):
        p = sampler.symmetric_multimode(n)
        nu = symplectic_spectrum(build_symmetric_cm(p))
        nu_minus, _ = symmetric_block_spectrum(p.b, p.e1, p.e2, n)
        assert np.count_nonzero(np.isclose(nu, nu_minus, rtol=1e-8)) >= n - 1


def test_one_to_k_hierarchy(sampler):
    for _ in range(20):
        p = sampler.symmetric_multimode(4)
        values = [one_to_k_negativity(p, k) for k in range(1, 5)]
        assert all(v >= 0.0 for v in values)
        assert values[-1] == pytest.approx(one_to_n_negativity(p, "direct"), abs=1e-12)
    with pytest.raises(ValueError):
        one_to_k_negativity(p, 5)


def test_params_helpers():
    p = SymmetricMultimodeParams.from_sequence([2, 2, 1.5, 0.1, 0.1, 0.8, -0.8], 3)
    assert p.n == 3 and p.as_tuple()[2] == 1.5
    assert p.with_n(5).n == 5
    with pytest.raises(ValueError):
        SymmetricMultimodeParams.from_sequence([1, 2, 3], 2)
    with pytest.raises(ValueError):
        SymmetricMultimodeParams(1, 1, 1, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        one_to_n_negativity(p, "guess")
