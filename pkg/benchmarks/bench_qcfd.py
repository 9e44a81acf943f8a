#!/usr/bin/env python3
"""Time the compiled propagation kernel against the pure NumPy twin.

Both backends run the same adaptive integration on identical inputs, so the
comparison is kernel-only: mode-sum tables, right-hand side, step control.
The run also reports the sup difference of the two outputs, so a speedup
never hides a divergence.
"""

import argparse
import time

import numpy as np

from qcfd import (
    FieldStateSpec,
    ModelParams,
    build_field_state,
    floquet_solve,
    floquet_state_at,
    lambda_eff,
    required_dim,
)
from qcfd import _reference
from qcfd.fbrwa import _MODES

try:
    from qcfd import _speedups
except ImportError:
    _speedups = None

WORKLOADS = {
    # coherent field on resonance, long enough to cover one revival
    "revival": dict(coupling="jcm", lam=0.1, alpha=4.0, kind="coherent",
                    level=0, t_end=250.0, n_points=251),
    # weakly coupled displaced number state: small vectors, many steps
    "collapse": dict(coupling="rabi", lam=0.02, alpha=10.0,
                     kind="displaced_fock", level=1, t_end=280.0,
                     n_points=281),
}


def build_job(w, fock_dim, mode, t_end):
    """Assemble the positional argument tuple for kernel.propagate."""
    if t_end is None:
        t_end = w["t_end"]
    params = ModelParams(omega0=1.0, omega=1.0, lam=w["lam"],
                         coupling=w["coupling"], alpha_mod=w["alpha"],
                         alpha_phase=0.0)
    sol = floquet_solve(params)
    if w["kind"] == "coherent":
        spec = FieldStateSpec.coherent(w["alpha"])
    else:
        spec = FieldStateSpec.displaced_fock(w["alpha"], w["level"])
    displaced = spec.displaced(-params.frame_alpha)
    lam_eff_val = lambda_eff(sol, params.lam)
    if fock_dim is None:
        worst = displaced.max_displacement() + abs(lam_eff_val) * t_end
        fock_dim = required_dim(worst) + 4 * displaced.max_level()
    field0 = build_field_state(displaced, fock_dim)
    psi_plus0, psi_minus0 = floquet_state_at(sol, 0.0)
    spin = np.array([1.0, 0.0], dtype=complex)
    chi0 = np.stack([complex(np.vdot(psi_plus0, spin)) * field0.amplitudes,
                     complex(np.vdot(psi_minus0, spin)) * field0.amplitudes])
    n_points = max(2, int(round(w["n_points"] * t_end / w["t_end"])))
    times = np.linspace(0.0, t_end, n_points)
    job = (chi0, times, sol._a_idx, sol._a_coef, sol._b_idx, sol._b_coef,
           params.omega0, params.alpha_phase, sol.q_plus, params.lam,
           lam_eff_val, 1 if params.coupling == "rabi" else 0,
           _MODES[mode], 1e-10, 1e-12)
    return job, fock_dim


def time_backend(module, job, repeats):
    best = np.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = module.propagate(*job)
        best = min(best, time.perf_counter() - t0)
    if out[1] != module.STATUS_OK:
        raise RuntimeError(
            f"{module.BACKEND} kernel stopped with status {out[1]} "
            f"at t = {out[2]:.6g}")
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workload", choices=sorted(WORKLOADS),
                    default="revival")
    ap.add_argument("--mode", choices=sorted(_MODES), default="full")
    ap.add_argument("--fock-dim", type=int, default=None,
                    help="override the truncation chosen from the drift")
    ap.add_argument("--t-end", type=float, default=None)
    ap.add_argument("--repeats", type=int, default=3,
                    help="timing repeats per backend (best is reported)")
    args = ap.parse_args(argv)

    job, dim = build_job(WORKLOADS[args.workload], args.fock_dim,
                         args.mode, args.t_end)
    print(f"workload {args.workload}: fock_dim {dim}, t_end {job[1][-1]:g}, "
          f"{job[1].size} output nodes, mode {args.mode}")

    t_py, out_py = time_backend(_reference, job, args.repeats)
    print(f"python    {t_py:9.3f} s   {out_py[5]:7d} accepted "
          f"{out_py[6]:5d} rejected steps")
    if _speedups is None:
        print("compiled kernel not built; nothing to compare against")
        return
    t_c, out_c = time_backend(_speedups, job, args.repeats)
    print(f"compiled  {t_c:9.3f} s   {out_c[5]:7d} accepted "
          f"{out_c[6]:5d} rejected steps")
    gap = float(np.max(np.abs(out_c[0] - out_py[0])))
    print(f"speedup {t_py / t_c:.1f}x, sup |compiled - python| = {gap:.3e}")


if __name__ == "__main__":
    main()
