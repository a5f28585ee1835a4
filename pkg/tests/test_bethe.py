import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptchain import (ChainSpec, Phase, gamma_critical, locate_critical_gamma,
                     momentum_index, solve_kappa, solve_real_momenta,
                     solve_spectrum)
from ptchain.bethe import count_real_momenta
from ptchain.errors import PhaseError


def test_roots_n3_gamma_one():
    # G reduces to 2 J^2 sin(3k) cos(k); k = pi rejected as a null state.
    roots = solve_real_momenta(ChainSpec(3, 1.0, 1.0))
    assert np.allclose(roots, [np.pi / 3, np.pi / 2, 2 * np.pi / 3], atol=1e-12)


def test_roots_n2_energies():
    roots = solve_real_momenta(ChainSpec(2, 1.0, 0.6))
    energies = np.sort(-2 * np.cos(roots))
    assert np.allclose(energies, [-0.8, 0.8], atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_roots_hermitian_limit(n):
    roots = solve_real_momenta(ChainSpec(n, 1.0, 0.0))
    expected = np.pi * np.arange(1, n + 1) / (n + 1)
    assert np.allclose(roots, expected, atol=1e-12)


@pytest.mark.parametrize("n", [3, 5, 9])
def test_roots_at_gamma_equals_hopping(n):
    # theta_k = 0 there, so the roots sit at n_k pi / N plus the zero mode.
    roots = solve_real_momenta(ChainSpec(n, 1.0, 1.0))
    expected = np.sort(np.append(np.pi * np.arange(1, n) / n, np.pi / 2))
    assert np.allclose(roots, expected, atol=1e-12)


@pytest.mark.parametrize("n,gamma", [(6, 0.3), (7, 0.9), (10, 0.5), (9, 1.2)])
def test_momentum_index_consistency(n, gamma):
    # momentum_index itself raises when the quantization identity is violated;
    # the critical pair legitimately shares one interval index.
    spec = ChainSpec(n, 1.0, gamma)
    for k in solve_real_momenta(spec):
        assert 0 <= momentum_index(spec, k) <= n


def test_root_count_transition():
    for n in (6, 7, 11, 20):
        gc = gamma_critical(n)
        assert count_real_momenta(ChainSpec(n, 1.0, gc - 1e-3)) == n
        assert count_real_momenta(ChainSpec(n, 1.0, gc + 1e-3)) == n - 2


def test_root_detection_survives_near_coalescence():
    # The two roots straddling pi/2 sit ~2e-4 apart here; the uniform grid
    # alone would miss them.
    n = 20
    spec = ChainSpec(n, 1.0, gamma_critical(n) - 1e-5)
    assert len(solve_real_momenta(spec)) == n


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_locate_critical_gamma(n):
    assert locate_critical_gamma(n) == pytest.approx(gamma_critical(n), abs=1e-6)


def test_kappa_analytic_n2():
    spec = ChainSpec(2, 1.0, math.sqrt(2.0))
    kappa = solve_kappa(spec)
    assert kappa == pytest.approx(math.asinh(0.5), abs=1e-12)
    sol = solve_spectrum(spec)
    assert np.allclose(np.sort_complex(sol.energies), [-1j, 1j], atol=1e-12)


def test_kappa_requires_broken_phase():
    with pytest.raises(PhaseError):
        solve_kappa(ChainSpec(8, 1.0, 0.5))


def test_kappa_vanishes_at_boundary():
    n = 9
    gc = gamma_critical(n)
    kappas = [solve_kappa(ChainSpec(n, 1.0, gc + off))
              for off in (1e-2, 1e-4, 1e-6)]
    assert kappas[0] > kappas[1] > kappas[2] > 0
    assert kappas[2] < 1e-2


def test_kappa_large_n_approximation():
    spec = ChainSpec(20, 1.0, 1.01)
    kappa = solve_kappa(spec)
    alpha = (1 + spec.gamma**2) / (spec.gamma**2 - 1)
    assert kappa == pytest.approx(1 / math.sqrt(20 * alpha), rel=0.05)


def test_spectrum_n3():
    sol = solve_spectrum(ChainSpec(3, 1.0, 1.0))
    assert sol.phase is Phase.UNBROKEN
    assert np.allclose(np.sort(sol.energies.real), [-1.0, 0.0, 1.0], atol=1e-12)
    assert np.max(np.abs(sol.energies.imag)) == 0.0


def test_spectrum_n3_hermitian():
    sol = solve_spectrum(ChainSpec(3, 1.0, 0.0))
    assert np.allclose(np.sort(sol.energies.real),
                       [-math.sqrt(2), 0.0, math.sqrt(2)], atol=1e-12)


def test_spectrum_broken_n8():
    sol = solve_spectrum(ChainSpec(8, 1.0, 1.2))
    assert sol.phase is Phase.BROKEN
    real = [m for m in sol.modes if m.is_real]
    cplx = [m for m in sol.modes if not m.is_real]
    assert len(real) == 6 and len(cplx) == 2
    kappa = solve_kappa(ChainSpec(8, 1.0, 1.2))
    pair = sorted((m.energy for m in cplx), key=lambda z: z.imag)
    assert pair[0] == pytest.approx(-2j * math.sinh(kappa), abs=1e-12)
    assert pair[1] == pytest.approx(+2j * math.sinh(kappa), abs=1e-12)
    for m in cplx:
        assert m.k.real == pytest.approx(math.pi / 2, abs=1e-15)


@settings(deadline=None, max_examples=25)
@given(n=st.integers(min_value=2, max_value=11),
       frac=st.sampled_from([0.2, 0.45, 0.8, 1.25, 1.7]))
def test_spectrum_traceless_and_chiral(n, frac):
    spec = ChainSpec(n, 1.0, frac * gamma_critical(n))
    energies = solve_spectrum(spec).energies
    assert abs(np.sum(energies)) < 1e-9
    ordered = np.sort_complex(energies)
    assert np.max(np.abs(ordered + ordered[::-1])) < 1e-9
