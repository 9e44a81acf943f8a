"""Pure NumPy propagation kernel for the coupled Floquet-basis field
equations. Mirrors the compiled kernel in _speedups exactly: same tableau,
same error norm, same status codes, bit-compatible logic.

The state is chi, shape (2, N): field amplitudes attached to the upper and
lower Floquet modes, in the displaced interaction frame. The equation is

    i d(chi_s)/dt = sum_s' [ Ca[s,s'] a + Cad[s,s'] a^dag ] chi_s'

with 2x2 tables built from the periodic mode sums P(t), Q(t), the
quasienergy phase e^{-2i q_plus t} and the frame phase e^{-i omega0 t}.
Status codes: 0 ok, 1 step-size underflow, 2 norm drift beyond 1e-6,
3 boundary (top Fock level) population beyond 1e-8.
"""

import numpy as np

BACKEND = "python"

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_NORM_DRIFT = 2
STATUS_TRUNCATION = 3

NORM_DRIFT_LIMIT = 1e-6
BOUNDARY_LIMIT = 1e-8

# Dormand-Prince 5(4) tableau; row 7 equals the 5th-order weights (FSAL).
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def tables(t, a_idx, a_coef, b_idx, b_coef, omega0, phi, q_plus, lam,
           lam_eff, rabi, mode):
    """2x2 coefficient matrices (Ca, Cad) of a and a^dag at time t.

    mode 0 keeps everything, mode 1 zeroes the mode-changing blocks,
    mode 2 keeps only the static diagonal (coefficient lam_eff).
    """
    if mode == 2:
        d = lam_eff * np.exp(1j * phi)
        ca = np.array([[d, 0.0], [0.0, -d]], dtype=complex)
        return ca, ca.conj().T
    theta = omega0 * t + phi
    p = complex(np.sum(a_coef * np.exp(1j * theta * a_idx)))
    q = complex(np.sum(b_coef * np.exp(1j * theta * b_idx)))
    g2 = np.exp(-2j * q_plus * t)
    u = np.exp(-1j * omega0 * t)
    spp = np.conj(p) * q
    s_plus = np.array([[spp, -np.conj(p) ** 2 * np.conj(g2)],
                       [q * q * g2, -spp]], dtype=complex)
    ca = lam * u * (s_plus + s_plus.conj().T) if rabi else lam * u * s_plus
    if mode == 1:
        ca[0, 1] = 0.0
        ca[1, 0] = 0.0
    return ca, ca.conj().T


def rhs(t, chi, a_idx, a_coef, b_idx, b_coef, sq, omega0, phi, q_plus, lam,
        lam_eff, rabi, mode):
    """d(chi)/dt for chi of shape (2, N); sq[n] = sqrt(n+1)."""
    ca, cad = tables(t, a_idx, a_coef, b_idx, b_coef, omega0, phi, q_plus,
                     lam, lam_eff, rabi, mode)
    a_chi = np.zeros_like(chi)
    a_chi[:, :-1] = sq[:-1] * chi[:, 1:]
    ad_chi = np.zeros_like(chi)
    ad_chi[:, 1:] = sq[:-1] * chi[:, :-1]
    return -1j * (ca @ a_chi + cad @ ad_chi)


def propagate(chi0, t_nodes, a_idx, a_coef, b_idx, b_coef, omega0, phi,
              q_plus, lam, lam_eff, rabi, mode, rtol, atol):
    """Adaptive embedded 5(4) integration through the sorted grid t_nodes.

    Output nodes are hit exactly by clipping the step; the first node must
    equal the initial time of chi0. Returns
    (out, status, t_reached, max_drift, max_boundary, n_accepted, n_rejected).
    """
    chi0 = np.asarray(chi0, dtype=complex)
    t_nodes = np.asarray(t_nodes, dtype=float)
    nf = chi0.shape[1]
    sq = np.sqrt(np.arange(1.0, nf + 1.0))
    args = (a_idx, a_coef, b_idx, b_coef, sq, omega0, phi, q_plus, lam,
            lam_eff, rabi, mode)

    out = np.zeros((t_nodes.size, 2, nf), dtype=complex)
    chi = chi0.copy()
    out[0] = chi
    norm0 = float(np.linalg.norm(chi))
    t = float(t_nodes[0])
    h = min(0.01 * 2.0 * np.pi / omega0,
            max(float(t_nodes[-1] - t_nodes[0]), 1e-8))
    f = rhs(t, chi, *args)
    max_drift = 0.0
    max_boundary = 0.0
    n_acc = 0
    n_rej = 0
    facmax = 5.0
    k = [None] * 7

    for i in range(1, t_nodes.size):
        target = float(t_nodes[i])
        while target - t > 1e-14 * max(1.0, abs(target)):
            clipped = h >= target - t
            h_try = target - t if clipped else h
            k[0] = f
            for s in range(1, 7):
                y_stage = chi + h_try * sum(
                    w * k[j] for j, w in enumerate(_A[s]) if w != 0.0)
                k[s] = rhs(t + _C[s] * h_try, y_stage, *args)
            y_new = y_stage  # stage 7 input is the 5th-order result (FSAL)
            err_vec = h_try * sum(w * k[j] for j, w in enumerate(_E) if w != 0.0)
            scale = atol + rtol * np.maximum(np.abs(chi), np.abs(y_new))
            err = float(np.sqrt(np.mean((np.abs(err_vec) / scale) ** 2)))
            if err <= 1.0:
                t = target if clipped else t + h_try
                chi = y_new
                f = k[6]
                n_acc += 1
                drift = abs(float(np.linalg.norm(chi)) - norm0)
                max_drift = max(max_drift, drift)
                if drift > NORM_DRIFT_LIMIT:
                    return (out, STATUS_NORM_DRIFT, t, max_drift,
                            max_boundary, n_acc, n_rej)
                boundary = float(abs(chi[0, -1]) ** 2 + abs(chi[1, -1]) ** 2)
                max_boundary = max(max_boundary, boundary)
                if boundary > BOUNDARY_LIMIT:
                    return (out, STATUS_TRUNCATION, t, max_drift,
                            max_boundary, n_acc, n_rej)
                fac = facmax if err < 1e-30 else min(
                    facmax, max(0.2, 0.9 * err ** -0.2))
                h = h_try * fac
                facmax = 5.0
            else:
                n_rej += 1
                h = h_try * max(0.2, min(0.9, 0.9 * err ** -0.2))
                facmax = 1.0
            if h < 1e-13 * max(1.0, abs(t)):
                return (out, STATUS_STEP_UNDERFLOW, t, max_drift,
                        max_boundary, n_acc, n_rej)
        out[i] = chi
    return out, STATUS_OK, t, max_drift, max_boundary, n_acc, n_rej
