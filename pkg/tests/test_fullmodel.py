"""Exact joint-space evolution against spectral and matrix-exponential
oracles."""

import math

import numpy as np
import pytest
import scipy.linalg

from qcfd.errors import ConfigError
from qcfd.fockspace import FieldStateSpec, build_field_state, displaced_fock_overlap, required_dim
from qcfd.fullmodel import (
    ExactPropagator,
    ModelParams,
    SpinFieldVector,
    build_hamiltonian,
    evolve_exact,
    excited_probability,
    get_propagator,
)


def jcm(lam=0.05, alpha=10.0, omega=1.0):
    return ModelParams(omega0=1.0, omega=omega, lam=lam, coupling="jcm",
                       alpha_mod=alpha, alpha_phase=0.0)


def plus_z_product(field):
    return SpinFieldVector.from_product(np.array([1.0, 0.0]), field)


def test_params_validation():
    with pytest.raises(ConfigError):
        ModelParams(omega0=-1.0, omega=1.0, lam=0.1, coupling="jcm",
                    alpha_mod=1.0, alpha_phase=0.0)
    with pytest.raises(ConfigError):
        ModelParams(omega0=1.0, omega=1.0, lam=0.1, coupling="other",
                    alpha_mod=1.0, alpha_phase=0.0)
    p = ModelParams(omega0=1.0, omega=1.0, lam=0.1, coupling="jcm",
                    alpha_mod=2.0, alpha_phase=-0.5)
    assert p.alpha_phase == pytest.approx(2.0 * math.pi - 0.5, abs=1e-15)
    assert p.frame_alpha == pytest.approx(2.0 * np.exp(0.5j), abs=1e-14)
    assert p.epsilon == pytest.approx(0.1 * 2.0 / 2.0, abs=1e-15)


def test_jcm_dressed_doublet():
    # resonance: the n-th doublet sits at n + 1/2 +/- lam sqrt(n+1), plus
    # the uncoupled ground level -1/2
    lam = 0.1
    h = build_hamiltonian(jcm(lam=lam), 8)
    evals = np.linalg.eigvalsh(h.entries)
    assert evals[0] == pytest.approx(-0.5, abs=1e-10)
    assert evals[1] == pytest.approx(0.5 - lam, abs=1e-10)
    assert evals[2] == pytest.approx(0.5 + lam, abs=1e-10)
    assert evals[3] == pytest.approx(1.5 - lam * math.sqrt(2.0), abs=1e-10)


def test_propagator_matches_expm():
    p = ModelParams(omega0=1.0, omega=0.8, lam=0.15, coupling="rabi",
                    alpha_mod=1.0, alpha_phase=0.3)
    dim = 24
    h = build_hamiltonian(p, dim)
    prop = ExactPropagator(h)
    rng = np.random.default_rng(3)
    psi0 = rng.normal(size=2 * dim) + 1j * rng.normal(size=2 * dim)
    psi0 /= np.linalg.norm(psi0)
    for t in (0.7, 4.1):
        ref = scipy.linalg.expm(-1j * t * h.entries) @ psi0
        got = prop.evolve(psi0, np.array([t]))[0]
        assert np.max(np.abs(got - ref)) < 1e-10


def test_excited_series_matches_evolve():
    p = jcm(lam=0.05, alpha=2.0)
    dim = 40
    field = build_field_state(FieldStateSpec.coherent(2.0), dim)
    psi0 = plus_z_product(field)
    prop = ExactPropagator(build_hamiltonian(p, dim))
    times = np.linspace(0.0, 30.0, 301)
    series = prop.excited_series(psi0.amplitudes, times, chunk=37)
    amps = prop.evolve(psi0.amplitudes, times)
    direct = np.sum(np.abs(amps[:, :dim]) ** 2, axis=1)
    assert np.max(np.abs(series - direct)) < 1e-12


def test_cummings_collapse_formula():
    # classic resonant JCM collapse: the envelope formula holds to a few
    # per cent through the first collapse
    lam, alpha = 0.05, 10.0
    p = jcm(lam=lam, alpha=alpha)
    dim = required_dim(alpha + 0.5 * lam * 40.0)
    field = build_field_state(FieldStateSpec.coherent(alpha), dim)
    psi0 = plus_z_product(field)
    times = np.linspace(0.0, 40.0, 401)
    series = get_propagator(p, dim).excited_series(psi0.amplitudes, times)
    formula = 0.5 + 0.5 * np.exp(-(lam * times) ** 2 / 2) * np.cos(2 * lam * alpha * times)
    assert np.max(np.abs(series - formula)) < 0.03
    assert series[0] == pytest.approx(1.0, abs=1e-12)


def test_exact_matches_spectral_sum_displaced_fock():
    # independent oracle: resonant JCM from |+z, D(a)|n>> is a weighted sum
    # of sinusoids at 2 lam sqrt(m+1)
    lam, alpha, n = 0.05, 3.0, 2
    p = jcm(lam=lam, alpha=alpha)
    dim = 70
    field = build_field_state(FieldStateSpec.displaced_fock(alpha, n), dim)
    psi0 = plus_z_product(field)
    times = np.linspace(0.0, 25.0, 101)
    series = get_propagator(p, dim).excited_series(psi0.amplitudes, times)
    w = np.array([abs(displaced_fock_overlap(m, n, alpha)) ** 2
                  for m in range(dim)])
    freqs = 2.0 * lam * np.sqrt(np.arange(dim) + 1.0)
    oracle = 0.5 + 0.5 * (w[None, :] * np.cos(np.outer(times, freqs))).sum(axis=1)
    assert np.max(np.abs(series - oracle)) < 1e-10


def test_conservation_laws():
    p = jcm(lam=0.1, alpha=2.0)
    dim = 60
    field = build_field_state(FieldStateSpec.coherent(2.0), dim)
    psi0 = plus_z_product(field)
    h = build_hamiltonian(p, dim)
    states = evolve_exact(h, psi0, np.linspace(0.0, 50.0, 26))
    number = np.arange(dim)
    e0 = None
    for s in states:
        assert abs(s.norm() - 1.0) < 1e-9
        energy = np.vdot(s.amplitudes, h.entries @ s.amplitudes).real
        # jcm conserves total excitation a^dag a + sigma_z / 2
        exc = (np.sum(number * np.abs(s.plus_block()) ** 2)
               + np.sum(number * np.abs(s.minus_block()) ** 2)
               + 0.5 * (np.sum(np.abs(s.plus_block()) ** 2)
                        - np.sum(np.abs(s.minus_block()) ** 2)))
        if e0 is None:
            e0, x0 = energy, exc
        assert abs(energy - e0) < 1e-9
        assert abs(exc - x0) < 1e-8


def test_truncation_robustness():
    # enlarging the basis by 40 must not move the excited probability
    p = jcm(lam=0.05, alpha=4.0)
    times = np.linspace(0.0, 40.0, 81)
    series = []
    for dim in (required_dim(5.0), required_dim(5.0) + 40):
        field = build_field_state(FieldStateSpec.coherent(4.0), dim)
        psi0 = plus_z_product(field)
        series.append(get_propagator(p, dim).excited_series(psi0.amplitudes, times))
    assert np.max(np.abs(series[0] - series[1])) < 1e-6


def test_evolve_exact_validation():
    p = jcm(lam=0.05, alpha=1.0)
    dim = 30
    h = build_hamiltonian(p, dim)
    field = build_field_state(FieldStateSpec.coherent(1.0), dim)
    psi0 = plus_z_product(field)
    with pytest.raises(ConfigError):
        evolve_exact(h, psi0, np.array([1.0, 0.5]))
    with pytest.raises(ConfigError):
        evolve_exact(h, psi0, np.array([-1.0, 0.5]))
    bad_dim = build_field_state(FieldStateSpec.coherent(1.0), dim + 1)
    with pytest.raises(ConfigError):
        evolve_exact(h, plus_z_product(bad_dim), np.array([0.0, 1.0]))


def test_excited_probability_projects_plus_block():
    field = build_field_state(FieldStateSpec.coherent(1.0), 25)
    spin = np.array([1.0, 1.0j]) / math.sqrt(2.0)
    psi = SpinFieldVector.from_product(spin, field)
    assert excited_probability(psi) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ConfigError):
        excited_probability(SpinFieldVector(fock_dim=25,
                                            amplitudes=np.zeros(50, dtype=complex)))


def test_propagator_cache_reuses_instances():
    p = jcm(lam=0.07, alpha=1.0)
    assert get_propagator(p, 16) is get_propagator(p, 16)
    assert get_propagator(p, 16) is not get_propagator(p, 18)


def test_rabi_breaks_excitation_conservation():
    # sanity check that the two couplings genuinely differ: the rabi
    # Hamiltonian does not commute with the excitation number
    p = ModelParams(omega0=1.0, omega=1.0, lam=0.1, coupling="rabi",
                    alpha_mod=1.0, alpha_phase=0.0)
    dim = 40
    h = build_hamiltonian(p, dim)
    exc = np.zeros((2 * dim, 2 * dim))
    number = np.diag(np.arange(float(dim)))
    exc[:dim, :dim] = number + 0.5 * np.eye(dim)
    exc[dim:, dim:] = number - 0.5 * np.eye(dim)
    comm = h.entries @ exc - exc @ h.entries
    assert np.max(np.abs(comm)) > 0.01
