# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation kernel for the coupled Floquet-basis field
equations. Semantics mirror _reference exactly: same tableau, same error
norm, same status codes; only the loop implementation differs.
"""

import numpy as np

from libc.math cimport cos, fabs, fmax, pow, sin, sqrt

BACKEND = "compiled"

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_NORM_DRIFT = 2
STATUS_TRUNCATION = 3

NORM_DRIFT_LIMIT = 1e-6
BOUNDARY_LIMIT = 1e-8

ctypedef double complex cplx

cdef double _NORM_DRIFT = 1e-6
cdef double _BOUNDARY = 1e-8

# Dormand-Prince 5(4) tableau (FSAL).
cdef double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0


cdef inline cplx _cis(double x):
    return cos(x) + 1j * sin(x)


cdef inline double _cmag(cplx z):
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef void _tables_c(double t, double[::1] a_idx, double[::1] a_coef,
                    double[::1] b_idx, double[::1] b_coef,
                    double omega0, double phi, double q_plus, double lam,
                    double lam_eff, int rabi, int mode, cplx* ca):
    cdef double theta
    cdef cplx p = 0, q = 0, g2, u, spp, spm, smp
    cdef Py_ssize_t j
    if mode == 2:
        ca[0] = lam_eff * _cis(phi)
        ca[1] = 0
        ca[2] = 0
        ca[3] = -ca[0]
        return
    theta = omega0 * t + phi
    for j in range(a_idx.shape[0]):
        p = p + a_coef[j] * _cis(theta * a_idx[j])
    for j in range(b_idx.shape[0]):
        q = q + b_coef[j] * _cis(theta * b_idx[j])
    g2 = _cis(-2.0 * q_plus * t)
    u = _cis(-omega0 * t)
    spp = p.conjugate() * q
    spm = -p.conjugate() * p.conjugate() * g2.conjugate()
    smp = q * q * g2
    if rabi:
        ca[0] = lam * u * (spp + spp.conjugate())
        ca[1] = lam * u * (spm + smp.conjugate())
        ca[2] = lam * u * (smp + spm.conjugate())
        ca[3] = -ca[0]
    else:
        ca[0] = lam * u * spp
        ca[1] = lam * u * spm
        ca[2] = lam * u * smp
        ca[3] = -ca[0]
    if mode == 1:
        ca[1] = 0
        ca[2] = 0


cdef void _rhs_c(double t, cplx[:, ::1] chi, cplx[:, ::1] out,
                 double[::1] a_idx, double[::1] a_coef,
                 double[::1] b_idx, double[::1] b_coef, double[::1] sq,
                 double omega0, double phi, double q_plus, double lam,
                 double lam_eff, int rabi, int mode):
    cdef cplx ca[4]
    cdef cplx cad00, cad01, cad10, cad11, ap, am, bp, bm
    cdef Py_ssize_t n, nf = chi.shape[1]
    _tables_c(t, a_idx, a_coef, b_idx, b_coef, omega0, phi, q_plus, lam,
              lam_eff, rabi, mode, ca)
    cad00 = ca[0].conjugate()
    cad01 = ca[2].conjugate()
    cad10 = ca[1].conjugate()
    cad11 = ca[3].conjugate()
    for n in range(nf):
        if n + 1 < nf:
            ap = sq[n] * chi[0, n + 1]
            am = sq[n] * chi[1, n + 1]
        else:
            ap = 0
            am = 0
        if n > 0:
            bp = sq[n - 1] * chi[0, n - 1]
            bm = sq[n - 1] * chi[1, n - 1]
        else:
            bp = 0
            bm = 0
        out[0, n] = -1j * (ca[0] * ap + ca[1] * am + cad00 * bp + cad01 * bm)
        out[1, n] = -1j * (ca[2] * ap + ca[3] * am + cad10 * bp + cad11 * bm)


def tables(t, a_idx, a_coef, b_idx, b_coef, omega0, phi, q_plus, lam,
           lam_eff, rabi, mode):
    """2x2 coefficient matrices (Ca, Cad) of a and a^dag at time t."""
    cdef cplx ca[4]
    _tables_c(float(t),
              np.ascontiguousarray(a_idx, dtype=np.float64),
              np.ascontiguousarray(a_coef, dtype=np.float64),
              np.ascontiguousarray(b_idx, dtype=np.float64),
              np.ascontiguousarray(b_coef, dtype=np.float64),
              float(omega0), float(phi), float(q_plus), float(lam),
              float(lam_eff), int(rabi), int(mode), ca)
    ca_arr = np.array([[ca[0], ca[1]], [ca[2], ca[3]]], dtype=complex)
    return ca_arr, ca_arr.conj().T


def rhs(t, chi, a_idx, a_coef, b_idx, b_coef, sq, omega0, phi, q_plus, lam,
        lam_eff, rabi, mode):
    """d(chi)/dt for chi of shape (2, N); sq[n] = sqrt(n+1)."""
    chi = np.ascontiguousarray(chi, dtype=np.complex128)
    out = np.zeros_like(chi)
    _rhs_c(float(t), chi, out,
           np.ascontiguousarray(a_idx, dtype=np.float64),
           np.ascontiguousarray(a_coef, dtype=np.float64),
           np.ascontiguousarray(b_idx, dtype=np.float64),
           np.ascontiguousarray(b_coef, dtype=np.float64),
           np.ascontiguousarray(sq, dtype=np.float64),
           float(omega0), float(phi), float(q_plus), float(lam),
           float(lam_eff), int(rabi), int(mode))
    return out


def propagate(chi0, t_nodes, a_idx, a_coef, b_idx, b_coef, omega0, phi,
              q_plus, lam, lam_eff, rabi, mode, rtol, atol):
    """Adaptive embedded 5(4) integration through the sorted grid t_nodes.

    Returns
    (out, status, t_reached, max_drift, max_boundary, n_accepted, n_rejected).
    """
    chi0 = np.ascontiguousarray(chi0, dtype=np.complex128)
    t_arr = np.ascontiguousarray(t_nodes, dtype=np.float64)
    ai = np.ascontiguousarray(a_idx, dtype=np.float64)
    ac = np.ascontiguousarray(a_coef, dtype=np.float64)
    bi = np.ascontiguousarray(b_idx, dtype=np.float64)
    bc = np.ascontiguousarray(b_coef, dtype=np.float64)
    cdef Py_ssize_t nf = chi0.shape[1], n_nodes = t_arr.shape[0]
    sq_arr = np.sqrt(np.arange(1.0, nf + 1.0))
    out_arr = np.zeros((n_nodes, 2, nf), dtype=np.complex128)
    k_arr = np.zeros((7, 2, nf), dtype=np.complex128)
    y_arr = np.zeros((2, nf), dtype=np.complex128)
    chi_arr = chi0.copy()

    cdef double[::1] aiv = ai, acv = ac, biv = bi, bcv = bc, sq = sq_arr
    cdef double[::1] tn = t_arr
    cdef cplx[:, :, ::1] out = out_arr
    cdef cplx[:, :, ::1] k = k_arr
    cdef cplx[:, ::1] chi = chi_arr
    cdef cplx[:, ::1] y = y_arr
    cdef double w0 = float(omega0), ph = float(phi), qp = float(q_plus)
    cdef double lm = float(lam), le = float(lam_eff)
    cdef double rt = float(rtol), at = float(atol)
    cdef int rb = int(rabi), md = int(mode)

    cdef Py_ssize_t i, r, n
    cdef double t = tn[0], target, h, h_try, err, err_sum, sc, mag
    cdef double norm0 = 0.0, norm1, drift, boundary, fac, facmax = 5.0
    cdef double max_drift = 0.0, max_boundary = 0.0
    cdef long n_acc = 0, n_rej = 0
    cdef bint clipped
    cdef cplx ev

    for r in range(2):
        for n in range(nf):
            out[0, r, n] = chi[r, n]
            mag = _cmag(chi[r, n])
            norm0 += mag * mag
    norm0 = sqrt(norm0)
    h = 0.01 * 2.0 * np.pi / w0
    if h > fmax(tn[n_nodes - 1] - tn[0], 1e-8):
        h = fmax(tn[n_nodes - 1] - tn[0], 1e-8)
    _rhs_c(t, chi, k[0], aiv, acv, biv, bcv, sq, w0, ph, qp, lm, le, rb, md)

    for i in range(1, n_nodes):
        target = tn[i]
        while target - t > 1e-14 * fmax(1.0, fabs(target)):
            clipped = h >= target - t
            h_try = target - t if clipped else h
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (A21 * k[0, r, n])
            _rhs_c(t + C2 * h_try, y, k[1], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (
                        A31 * k[0, r, n] + A32 * k[1, r, n])
            _rhs_c(t + C3 * h_try, y, k[2], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (
                        A41 * k[0, r, n] + A42 * k[1, r, n] + A43 * k[2, r, n])
            _rhs_c(t + C4 * h_try, y, k[3], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (
                        A51 * k[0, r, n] + A52 * k[1, r, n]
                        + A53 * k[2, r, n] + A54 * k[3, r, n])
            _rhs_c(t + C5 * h_try, y, k[4], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (
                        A61 * k[0, r, n] + A62 * k[1, r, n]
                        + A63 * k[2, r, n] + A64 * k[3, r, n]
                        + A65 * k[4, r, n])
            _rhs_c(t + h_try, y, k[5], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)
            for r in range(2):
                for n in range(nf):
                    y[r, n] = chi[r, n] + h_try * (
                        B1 * k[0, r, n] + B3 * k[2, r, n] + B4 * k[3, r, n]
                        + B5 * k[4, r, n] + B6 * k[5, r, n])
            _rhs_c(t + h_try, y, k[6], aiv, acv, biv, bcv, sq,
                   w0, ph, qp, lm, le, rb, md)

            err_sum = 0.0
            for r in range(2):
                for n in range(nf):
                    ev = h_try * (E1 * k[0, r, n] + E3 * k[2, r, n]
                                  + E4 * k[3, r, n] + E5 * k[4, r, n]
                                  + E6 * k[5, r, n] + E7 * k[6, r, n])
                    sc = at + rt * fmax(_cmag(chi[r, n]), _cmag(y[r, n]))
                    mag = _cmag(ev) / sc
                    err_sum += mag * mag
            err = sqrt(err_sum / (2.0 * nf))

            if err <= 1.0:
                t = target if clipped else t + h_try
                norm1 = 0.0
                for r in range(2):
                    for n in range(nf):
                        chi[r, n] = y[r, n]
                        k[0, r, n] = k[6, r, n]
                        mag = _cmag(chi[r, n])
                        norm1 += mag * mag
                n_acc += 1
                drift = fabs(sqrt(norm1) - norm0)
                if drift > max_drift:
                    max_drift = drift
                if drift > _NORM_DRIFT:
                    return (out_arr, STATUS_NORM_DRIFT, t, max_drift,
                            max_boundary, n_acc, n_rej)
                boundary = 0.0
                for r in range(2):
                    mag = _cmag(chi[r, nf - 1])
                    boundary += mag * mag
                if boundary > max_boundary:
                    max_boundary = boundary
                if boundary > _BOUNDARY:
                    return (out_arr, STATUS_TRUNCATION, t, max_drift,
                            max_boundary, n_acc, n_rej)
                if err < 1e-30:
                    fac = facmax
                else:
                    fac = 0.9 * pow(err, -0.2)
                    if fac < 0.2:
                        fac = 0.2
                    if fac > facmax:
                        fac = facmax
                h = h_try * fac
                facmax = 5.0
            else:
                n_rej += 1
                fac = 0.9 * pow(err, -0.2)
                if fac < 0.2:
                    fac = 0.2
                if fac > 0.9:
                    fac = 0.9
                h = h_try * fac
                facmax = 1.0
            if h < 1e-13 * fmax(1.0, fabs(t)):
                return (out_arr, STATUS_STEP_UNDERFLOW, t, max_drift,
                        max_boundary, n_acc, n_rej)
        for r in range(2):
            for n in range(nf):
                out[i, r, n] = chi[r, n]
    return out_arr, STATUS_OK, t, max_drift, max_boundary, n_acc, n_rej
