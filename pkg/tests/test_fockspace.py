"""Fock-space primitives against brute-force matrix oracles."""

import math

import numpy as np
import pytest
import scipy.special

from qcfd.errors import ConfigError, TruncationError
from qcfd.fockspace import (
    FieldStateSpec,
    FockVector,
    annihilation_matrix,
    build_field_state,
    displaced_fock_overlap,
    displacement_matrix,
    laguerre,
    required_dim,
)


def test_annihilation_entries():
    a = annihilation_matrix(6).entries
    for n in range(1, 6):
        assert a[n - 1, n] == pytest.approx(math.sqrt(n), abs=0.0)
    assert np.count_nonzero(a) == 5


def test_commutator_identity_below_truncation_edge():
    dim = 40
    a = annihilation_matrix(dim).entries
    c = a @ a.conj().T - a.conj().T @ a
    # the last diagonal entry carries the whole truncation defect
    assert np.max(np.abs(c[: dim - 1, : dim - 1] - np.eye(dim - 1))) < 1e-12
    assert c[dim - 1, dim - 1] == pytest.approx(1.0 - dim, rel=1e-12)


def test_laguerre_small_values():
    # L_2(x) = 1 - 2x + x^2/2
    assert laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)
    assert laguerre(0, 3, 7.7) == pytest.approx(1.0, abs=0.0)
    assert laguerre(1, 2, 0.25) == pytest.approx(3.0 - 0.25, abs=1e-15)


def test_laguerre_against_scipy_sweep():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(0, 18))
        k = int(rng.integers(0, 12))
        x = float(rng.uniform(0.0, 25.0))
        ref = scipy.special.eval_genlaguerre(n, k, x)
        scale = max(1.0, abs(ref))
        assert abs(laguerre(n, k, x) - ref) < 1e-11 * scale


def test_laguerre_array_arguments():
    xs = np.linspace(0.0, 9.0, 13)
    vals = laguerre(5, 3, xs)
    ref = scipy.special.eval_genlaguerre(5, 3, xs)
    assert np.max(np.abs(vals - ref)) < 1e-11 * np.max(np.abs(ref))
    ks = np.arange(0.0, 6.0)
    vals = laguerre(4, ks, 2.5)
    for i, k in enumerate(ks):
        assert vals[i] == pytest.approx(scipy.special.eval_genlaguerre(4, k, 2.5),
                                        rel=1e-12)


def test_laguerre_rejects_bad_degree():
    with pytest.raises(ConfigError):
        laguerre(-1, 0, 1.0)
    with pytest.raises(ConfigError):
        laguerre(2, -3, 1.0)


def test_displacement_matrix_unitary_and_coherent_column():
    beta = 1.3 - 0.4j
    d = displacement_matrix(beta, 60)
    assert d.unitary
    # column 0 is the coherent state: e^{-|b|^2/2} b^n / sqrt(n!)
    n = np.arange(60)
    ref = np.exp(-abs(beta) ** 2 / 2) * beta ** n / np.sqrt(
        scipy.special.factorial(n))
    assert np.max(np.abs(d.entries[:, 0] - ref)) < 1e-12


def test_displacement_inverse():
    beta = 0.9 + 0.7j
    d = displacement_matrix(beta, 50).entries
    dinv = displacement_matrix(-beta, 50).entries
    # away from the truncation corner the product is the identity
    prod = dinv @ d
    assert np.max(np.abs(prod[:20, :20] - np.eye(20))) < 1e-10


def test_displacement_matrix_warns_when_truncated():
    with pytest.warns(UserWarning):
        d = displacement_matrix(4.0, 12)
    assert not d.unitary
    assert d.truncation_defect > 1e-6


def test_overlap_against_expm_sweep():
    # acceptance invariant: closed-form overlaps vs brute-force matrix,
    # m, n <= 15, over a seeded sweep of complex displacements
    rng = np.random.default_rng(23)
    dim = 80
    for _ in range(12):
        beta = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        d = displacement_matrix(beta, dim).entries
        for m in range(16):
            for n in range(16):
                assert abs(displaced_fock_overlap(m, n, beta) - d[m, n]) < 1e-10


def test_overlap_zero_displacement():
    assert displaced_fock_overlap(3, 3, 0.0) == 1.0
    assert displaced_fock_overlap(2, 3, 0.0) == 0.0


def test_overlap_unitarity_row_sums():
    beta = 2.2 - 1.1j
    for n in (0, 1, 5):
        total = sum(abs(displaced_fock_overlap(m, n, beta)) ** 2
                    for m in range(required_dim(beta)))
        assert total == pytest.approx(1.0, abs=1e-12)


def test_coherent_state_poisson_statistics():
    alpha = 10.0
    dim = required_dim(alpha)
    state = build_field_state(FieldStateSpec.coherent(alpha), dim)
    assert state.norm() == pytest.approx(1.0, abs=1e-9)
    assert state.mean_occupation() == pytest.approx(alpha ** 2, rel=1e-9)
    a = annihilation_matrix(dim).entries
    mean_a = np.vdot(state.amplitudes, a @ state.amplitudes)
    assert abs(mean_a - alpha) < 1e-9


def test_coherent_state_large_amplitude_no_expm():
    # the analytic column must stay accurate where expm would overflow a
    # reasonable basis: alpha = 40 means <n> = 1600
    alpha = 40.0
    state = build_field_state(FieldStateSpec.coherent(alpha), required_dim(alpha))
    assert state.norm() == pytest.approx(1.0, abs=1e-9)
    assert state.mean_occupation() == pytest.approx(1600.0, rel=1e-9)


def test_displaced_fock_state_vector_matches_matrix():
    beta, n = 1.7 + 0.3j, 4
    dim = 70
    state = build_field_state(FieldStateSpec.displaced_fock(beta, n), dim)
    ref = displacement_matrix(beta, dim).entries[:, n]
    assert np.max(np.abs(state.amplitudes - ref)) < 1e-10


def test_superposition_state_norm_and_truncation_error():
    beta = 3.0
    w = 1.0 / math.sqrt(2.0)
    spec = FieldStateSpec.superposition([((beta, 0), w), ((beta, 1), w)])
    state = build_field_state(spec, required_dim(beta) + 4)
    assert state.norm() == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(TruncationError) as err:
        build_field_state(spec, 8)
    assert err.value.suggested_dim >= required_dim(beta)


def test_build_field_state_rejects_unnormalized_weights():
    spec = FieldStateSpec.superposition([((1.0, 0), 0.9), ((1.0, 1), 0.9)])
    with pytest.raises(ConfigError):
        build_field_state(spec, 40)


def test_displaced_spec_matches_matrix_displacement():
    rng = np.random.default_rng(7)
    dim = 90
    for _ in range(6):
        b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        s = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        n = int(rng.integers(0, 4))
        spec = FieldStateSpec.displaced_fock(b, n)
        direct = build_field_state(spec.displaced(s), dim).amplitudes
        via_matrix = displacement_matrix(s, dim).entries @ \
            build_field_state(spec, dim).amplitudes
        assert np.max(np.abs(direct - via_matrix)) < 1e-9


def test_displacement_expectation_matches_matrix():
    rng = np.random.default_rng(41)
    dim = 110
    w = 1.0 / math.sqrt(2.0)
    for _ in range(6):
        b = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        z = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        spec = FieldStateSpec.superposition([((b, 0), w), ((b, 2), w)])
        psi = build_field_state(spec, dim).amplitudes
        ref = np.vdot(psi, displacement_matrix(z, dim).entries @ psi)
        assert abs(spec.displacement_expectation(z) - ref) < 1e-9


def test_mean_annihilation_matches_matrix():
    w = 1.0 / math.sqrt(2.0)
    spec = FieldStateSpec.superposition(
        [((2.0, 0), w), ((2.0, 1), w * np.exp(-0.3j))])
    dim = 60
    psi = build_field_state(spec, dim).amplitudes
    a = annihilation_matrix(dim).entries
    ref = np.vdot(psi, a @ psi)
    assert abs(spec.mean_annihilation() - ref) < 1e-10
    # the fig3 pattern: <a> = beta + e^{-i xi}/2 for xi equal to the
    # displacement phase
    assert spec.mean_annihilation() == pytest.approx(2.0 + 0.5 * np.exp(-0.3j),
                                                     abs=1e-10)


def test_fock_vector_validation():
    with pytest.raises(ConfigError):
        FockVector(dim=3, amplitudes=np.zeros(4))
    with pytest.raises(ConfigError):
        FieldStateSpec(displacements=(1.0,), levels=(0, 1), weights=(1.0,))
    with pytest.raises(ConfigError):
        FieldStateSpec(displacements=(1.0,), levels=(-2,), weights=(1.0,))


def test_required_dim_monotone():
    vals = [required_dim(a) for a in (0.0, 1.0, 4.0, 10.0, 40.0)]
    assert vals == sorted(vals)
    assert required_dim(0.0) == 20
