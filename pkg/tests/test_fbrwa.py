"""Rotating-wave field solution, closed forms, coefficient tables and the
coupled field-equation integrator."""

import math

import numpy as np
import pytest

from qcfd._kernels import kernel
from qcfd._reference import rhs as reference_rhs
from qcfd._reference import tables as reference_tables
from qcfd.errors import ConfigError, UnsupportedRegimeError
from qcfd.fbrwa import (
    CoefficientTables,
    FBRWAResult,
    fbrwa_field_overlap,
    fbrwa_prepare,
    lambda_eff,
    p_excited_closed_form,
    p_excited_fbrwa,
    qcfd_coefficient_tables,
    qcfd_integrate,
)
from qcfd.fockspace import FieldStateSpec
from qcfd.floquet import floquet_solve, jcm_floquet_solution
from qcfd.fullmodel import ModelParams


def params_for(coupling, lam, alpha, phi=0.0, omega=1.0):
    return ModelParams(omega0=1.0, omega=omega, lam=lam, coupling=coupling,
                       alpha_mod=alpha, alpha_phase=phi)


def fig3_spec(beta_mod, phi):
    beta = beta_mod * np.exp(-1j * phi)
    w = 1.0 / math.sqrt(2.0)
    return FieldStateSpec.superposition(
        [((beta, 0), w), ((beta, 1), w * np.exp(-1j * phi))])


def test_lambda_eff_jcm_resonance():
    # acceptance anchor: lam_eff = lam / 2 on jcm resonance
    p = params_for("jcm", 0.05, 10.0)
    assert abs(lambda_eff(jcm_floquet_solution(p), p.lam) - 0.025) < 1e-12
    assert abs(lambda_eff(floquet_solve(p), p.lam) - 0.025) < 1e-9


def test_prepare_projections_plus_z():
    p = params_for("jcm", 0.05, 10.0)
    sol = jcm_floquet_solution(p)
    res = fbrwa_prepare(sol, p, FieldStateSpec.coherent(10.0))
    # +z splits evenly over the mode pair at t = 0 on resonance
    assert abs(res.proj_plus) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
    assert abs(res.proj_minus) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
    assert abs(res.proj_plus) ** 2 + abs(res.proj_minus) ** 2 == pytest.approx(
        1.0, abs=1e-12)
    # the prepared field sits at the phase-space origin of the displaced frame
    assert res.field_spec.max_displacement() < 1e-12


def test_eta_drift_directions():
    p = params_for("jcm", 0.05, 10.0, phi=0.6)
    res = fbrwa_prepare(jcm_floquet_solution(p), p, FieldStateSpec.coherent(
        10.0 * np.exp(-0.6j)))
    t = 7.0
    eta_p = res.eta(t, +1)
    eta_m = res.eta(t, -1)
    assert eta_p == pytest.approx(-1j * np.exp(-0.6j) * 0.025 * t, abs=1e-14)
    assert eta_m == pytest.approx(-eta_p, abs=1e-14)
    with pytest.raises(ConfigError):
        res.eta(1.0, 0)


def test_overlap_envelope_coherent():
    p = params_for("jcm", 0.05, 10.0)
    res = fbrwa_prepare(jcm_floquet_solution(p), p, FieldStateSpec.coherent(10.0))
    for t in (0.0, 5.0, 20.0, 60.0):
        ov = fbrwa_field_overlap(res, t)
        ref = math.exp(-2.0 * (0.025 * t) ** 2)
        assert abs(ov - ref) < 1e-12
    with pytest.raises(ConfigError):
        fbrwa_field_overlap(res, -1.0)


def test_overlap_envelope_displaced_fock_node():
    # n = 1: envelope e^{-2 x^2} (1 - 4 x^2), x = lam_eff t; node at x = 1/2
    p = params_for("jcm", 0.05, 10.0)
    res = fbrwa_prepare(jcm_floquet_solution(p), p,
                        FieldStateSpec.displaced_fock(10.0, 1))
    le = 0.025
    for t in (3.0, 11.0, 33.0):
        x = le * t
        ref = math.exp(-2.0 * x * x) * (1.0 - 4.0 * x * x)
        assert abs(fbrwa_field_overlap(res, t) - ref) < 1e-12
    t_node = 0.5 / le
    assert abs(fbrwa_field_overlap(res, t_node)) < 1e-12


def test_cummings_value_frozen():
    # lam = 0.05, alpha = 10, t = 20: P = 1/2 + 1/2 e^{-1/2} cos 20
    p = params_for("jcm", 0.05, 10.0)
    sol = jcm_floquet_solution(p)
    res = fbrwa_prepare(sol, p, FieldStateSpec.coherent(10.0))
    assert p_excited_fbrwa(sol, res, 20.0) == pytest.approx(0.623757141084284,
                                                            abs=1e-12)
    assert p_excited_fbrwa(sol, res, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_closed_forms_equal_pipeline():
    # acceptance invariant: the closed forms and the rotating-wave pipeline
    # are the same function on jcm resonance, to near machine precision
    lam, alpha = 0.05, 10.0
    p = params_for("jcm", lam, alpha)
    sol = jcm_floquet_solution(p)
    times = np.linspace(0.0, 80.0, 641)

    res = fbrwa_prepare(sol, p, FieldStateSpec.coherent(alpha))
    gap = np.abs(p_excited_fbrwa(sol, res, times)
                 - p_excited_closed_form("coherent", lam, alpha, times))
    assert np.max(gap) < 1e-12

    for n in (1, 2, 10):
        res = fbrwa_prepare(sol, p, FieldStateSpec.displaced_fock(alpha, n))
        gap = np.abs(p_excited_fbrwa(sol, res, times)
                     - p_excited_closed_form("displaced_fock", lam, alpha,
                                             times, n=n))
        assert np.max(gap) < 1e-12


def test_fig3_closed_form_equals_pipeline():
    # frame at the displacement beta of the two-level superposition, so the
    # residual field sits at the origin and the closed form comes out exactly
    lam, beta = 0.05, 10.0
    for phi in (0.0, 0.8):
        spec = fig3_spec(beta, phi)
        p = params_for("jcm", lam, beta, phi=phi)
        sol = jcm_floquet_solution(p)
        res = fbrwa_prepare(sol, p, spec)
        times = np.linspace(0.0, 80.0, 321)
        gap = np.abs(p_excited_fbrwa(sol, res, times)
                     - p_excited_closed_form("superposition_fig3", lam, beta,
                                             times))
        assert np.max(gap) < 1e-12


def test_closed_form_regime_guards():
    with pytest.raises(UnsupportedRegimeError):
        p_excited_closed_form("coherent", 0.05, 10.0, 1.0,
                              params=params_for("rabi", 0.05, 10.0))
    with pytest.raises(UnsupportedRegimeError):
        p_excited_closed_form("coherent", 0.05, 10.0, 1.0,
                              params=params_for("jcm", 0.05, 10.0, omega=1.1))
    with pytest.raises(ConfigError):
        p_excited_closed_form("squeezed", 0.05, 10.0, 1.0)


def test_probability_bounds_sweep():
    rng = np.random.default_rng(31)
    times = np.linspace(0.0, 120.0, 241)
    for _ in range(10):
        lam = float(rng.uniform(0.005, 0.06))
        alpha = float(rng.uniform(3.0, 15.0))
        if abs(2.0 * (0.5 + lam * alpha) - round(2.0 * (0.5 + lam * alpha))) < 1e-6:
            continue  # stay clear of odd-multiple degeneracies
        spin = rng.normal(size=2) + 1j * rng.normal(size=2)
        p = params_for("jcm", lam, alpha)
        sol = jcm_floquet_solution(p)
        res = fbrwa_prepare(sol, p, FieldStateSpec.coherent(alpha), spin)
        vals = p_excited_fbrwa(sol, res, times)
        assert vals.min() > -1e-9 and vals.max() < 1.0 + 1e-9


def test_coefficient_tables_match_kernel():
    # the printed double sums and the kernel's compact products are the
    # same matrices
    for coupling in ("jcm", "rabi"):
        p = params_for(coupling, 0.02, 10.0, phi=0.3)
        sol = floquet_solve(p)
        tab = qcfd_coefficient_tables(sol, p)
        for t in (0.0, 0.7, 3.9, 12.3):
            ca_ref, cad_ref = reference_tables(
                t, sol._a_idx, sol._a_coef, sol._b_idx, sol._b_coef,
                p.omega0, p.alpha_phase, sol.q_plus, p.lam,
                lambda_eff(sol, p.lam), 1 if coupling == "rabi" else 0, 0)
            assert np.max(np.abs(tab.coefficient("a", t) - ca_ref)) < 1e-13
            assert np.max(np.abs(tab.coefficient("adag", t) - cad_ref)) < 1e-13
            # Hermitian pairing of the two tables
            assert np.max(np.abs(cad_ref - ca_ref.conj().T)) < 1e-15


def test_fbrwa_static_equals_lambda_eff():
    for coupling in ("jcm", "rabi"):
        p = params_for(coupling, 0.02, 10.0, phi=1.1)
        sol = floquet_solve(p)
        tab = CoefficientTables(sol, p)
        ref = lambda_eff(sol, p.lam) * np.exp(1j * p.alpha_phase)
        assert abs(tab.fbrwa_static() - ref) < 1e-12


def test_compiled_and_reference_kernels_agree():
    p = params_for("rabi", 0.02, 10.0, phi=0.4)
    sol = floquet_solve(p)
    n = 60
    rng = np.random.default_rng(13)
    chi = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
    args = (sol._a_idx, sol._a_coef, sol._b_idx, sol._b_coef, p.omega0,
            p.alpha_phase, sol.q_plus, p.lam, lambda_eff(sol, p.lam), 1)
    sq = np.sqrt(np.arange(1.0, n + 1.0))
    for mode in (0, 1, 2):
        for t in (0.0, 1.7):
            ca_r, cad_r = reference_tables(t, *args, mode)
            ca_k, cad_k = kernel.tables(t, *args, mode)
            assert np.max(np.abs(ca_r - ca_k)) < 1e-15
            assert np.max(np.abs(cad_r - cad_k)) < 1e-15
            f_r = reference_rhs(t, chi, *args[:4], sq, *args[4:], mode)
            f_k = kernel.rhs(t, chi, *args[:4], sq, *args[4:], mode)
            assert np.max(np.abs(f_r - f_k)) < 1e-14


def test_qcfd_zero_coupling_is_stationary():
    # off resonance: with lam = 0 the resonant quasienergy gap would sit
    # exactly on the odd-multiple degeneracy
    p = params_for("jcm", 0.0, 0.0, omega=0.6)
    sol = floquet_solve(p)
    spec = FieldStateSpec.coherent(0.0)
    times = np.linspace(0.0, 10.0, 11)
    out = qcfd_integrate(sol, p, ((1.0, 0.0), spec), times, fock_dim=24)
    p0 = out[0][1]
    for state, prob in out:
        assert prob == pytest.approx(p0, abs=1e-12)
        assert state.total_weight() == pytest.approx(out[0][0].total_weight(),
                                                     abs=1e-12)


def test_qcfd_fbrwa_mode_matches_analytic_pipeline():
    lam, alpha = 0.05, 10.0
    p = params_for("jcm", lam, alpha)
    sol = jcm_floquet_solution(p)
    spec = FieldStateSpec.displaced_fock(alpha, 1)
    times = np.linspace(0.0, 60.0, 61)
    out = qcfd_integrate(sol, p, ((1.0, 0.0), spec), times, fock_dim=64,
                         mode="fbrwa")
    probs = np.array([x[1] for x in out])
    res = fbrwa_prepare(sol, p, spec)
    ref = p_excited_fbrwa(sol, res, times)
    assert np.max(np.abs(probs - ref)) < 1e-6
    # jcm resonance: the time-dependent diagonal is already static, so the
    # diagonal experiment mode coincides with the rotating-wave mode
    out_diag = qcfd_integrate(sol, p, ((1.0, 0.0), spec), times, fock_dim=64,
                              mode="diagonal")
    probs_diag = np.array([x[1] for x in out_diag])
    assert np.max(np.abs(probs_diag - ref)) < 1e-6


def test_qcfd_norm_invariant_and_bounds():
    # total weight within 1e-8 of the initial value along the whole run
    p = params_for("jcm", 0.1, 4.0)
    sol = jcm_floquet_solution(p)
    spec = FieldStateSpec.coherent(4.0)
    times = np.linspace(0.0, 120.0, 121)
    out = qcfd_integrate(sol, p, ((1.0, 0.0), spec), times, fock_dim=160)
    w0 = out[0][0].total_weight()
    for state, prob in out:
        assert abs(state.total_weight() - w0) < 1e-8
        assert -1e-9 < prob < 1.0 + 1e-9


def test_qcfd_validation_errors():
    p = params_for("jcm", 0.05, 10.0)
    sol = jcm_floquet_solution(p)
    spec = FieldStateSpec.coherent(10.0)
    with pytest.raises(ConfigError):
        qcfd_integrate(sol, p, ((1.0, 0.0), spec), np.array([1.0, 2.0]), 64)
    with pytest.raises(ConfigError):
        qcfd_integrate(sol, p, ((1.0, 0.0), spec), np.array([0.0, 2.0, 1.0]), 64)
    with pytest.raises(ConfigError):
        qcfd_integrate(sol, p, ((1.0, 0.0), spec), np.array([0.0, 1.0]), 64,
                       mode="bogus")
    with pytest.raises(ConfigError):
        qcfd_integrate(sol, p, ((0.0, 0.0), spec), np.array([0.0, 1.0]), 64)


def test_qcfd_boundary_truncation_error():
    from qcfd.errors import TruncationError

    p = params_for("jcm", 0.1, 4.0)
    sol = jcm_floquet_solution(p)
    spec = FieldStateSpec.coherent(4.0)
    # drift lam_eff * t = 10 forces the field outside an 18-level basis
    with pytest.raises(TruncationError) as err:
        qcfd_integrate(sol, p, ((1.0, 0.0), spec),
                       np.linspace(0.0, 200.0, 21), fock_dim=18)
    assert err.value.suggested_dim > 18


def test_fbrwa_result_weight_guard():
    from qcfd.errors import NumericError

    with pytest.raises(NumericError):
        FBRWAResult(lambda_eff=0.025, proj_plus=1.0, proj_minus=0.5,
                    phi=0.0, field_spec=FieldStateSpec.coherent(0.0))
