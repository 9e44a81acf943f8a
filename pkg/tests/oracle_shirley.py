"""Independent Floquet oracle: extended-space (frequency-ladder) matrix.

Diagonalizes H_F[(m,s),(m',s')] = H^(m-m')_{ss'} + m w0 delta, the static
matrix whose eigenpairs are the quasienergies and Fourier components of the
periodic modes. Entirely separate route from the package's monodromy
solver: no time propagation at all.
"""

import numpy as np


def shirley_modes(params, cutoff=12):
    """Quasienergy and harmonic maps (q, A, B) for the upper mode.

    The drive has a single harmonic: +z/-z off-diagonal element
    lam |alpha| e^{-i(w0 t + phi)} for jcm, plus the conjugate term for rabi.
    A/B are keyed like the package maps (even/odd harmonics of
    theta = w0 t + phi), gauge-fixed so the largest A is real positive.
    """
    w0 = params.omega0
    vel = params.lam * params.alpha_mod * np.exp(-1j * params.alpha_phase)
    n_blocks = 2 * cutoff + 1
    dim = 2 * n_blocks
    h = np.zeros((dim, dim), dtype=complex)

    def idx(m, s):
        return 2 * (m + cutoff) + s  # s = 0 for +z, 1 for -z

    for m in range(-cutoff, cutoff + 1):
        h[idx(m, 0), idx(m, 0)] = 0.5 * params.omega + m * w0
        h[idx(m, 1), idx(m, 1)] = -0.5 * params.omega + m * w0
        # e^{-i w0 t} term couples photon blocks m' = m - 1 -> m ... the
        # convention H(t) = sum_k H^(k) e^{i k w0 t} puts v e^{-i w0 t}
        # into H^(-1), i.e. block (m, m+1).
        if m + 1 <= cutoff:
            h[idx(m, 0), idx(m + 1, 1)] += vel
            h[idx(m + 1, 1), idx(m, 0)] += np.conj(vel)
            if params.coupling == "rabi":
                h[idx(m, 1), idx(m + 1, 0)] += vel
                h[idx(m + 1, 0), idx(m, 1)] += np.conj(vel)
    evals, evecs = np.linalg.eigh(h)

    # the physical branch: largest weight on the central +z component
    weights = np.abs(evecs[idx(0, 0), :])
    j = int(np.argmax(weights))
    q = float(evals[j])
    vec = evecs[:, j]

    a_map, b_map = {}, {}
    for m in range(-cutoff, cutoff + 1):
        cp = vec[idx(m, 0)] * np.exp(-1j * m * params.alpha_phase)
        cm = vec[idx(m, 1)] * np.exp(-1j * m * params.alpha_phase)
        if m % 2 == 0:
            a_map[m] = cp
        else:
            b_map[m] = cm
        # wrong-parity components must vanish for this drive
        leak = abs(cm) if m % 2 == 0 else abs(cp)
        assert leak < 1e-9, f"parity leakage {leak:.2e} at m={m}"
    norm = np.sqrt(sum(abs(v) ** 2 for v in a_map.values())
                   + sum(abs(v) ** 2 for v in b_map.values()))
    kmax = max(a_map, key=lambda k: abs(a_map[k]))
    gauge = a_map[kmax] / abs(a_map[kmax])
    a_map = {k: v / norm / gauge for k, v in a_map.items()}
    b_map = {k: v / norm / gauge for k, v in b_map.items()}
    return q, a_map, b_map


def shirley_lambda_eff(params, cutoff=12):
    _, a_map, b_map = shirley_modes(params, cutoff)
    total = 0.0
    for k, av in a_map.items():
        total += av * (b_map.get(k + 1, 0.0) + b_map.get(k - 1, 0.0))
    return params.lam * complex(total)
