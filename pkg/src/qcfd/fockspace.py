"""Truncated Fock-space primitives: ladder and displacement operators,
associated Laguerre polynomials, displaced-Fock overlaps and field-state
construction.

Conventions: Fock amplitudes are indexed n = 0 .. dim-1 and the
annihilation matrix has entries M[n-1, n] = sqrt(n). The displacement
operator is D(beta) = exp(beta a^dag - beta* a), so D(beta)|0> is the
coherent state of amplitude beta.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from .errors import ConfigError, NumericError, TruncationError

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


def required_dim(amplitude) -> int:
    """Truncation rule: smallest recommended basis size for states displaced
    by the given modulus."""
    a = float(abs(amplitude))
    return int(math.ceil(a * a + 8.0 * a + 20.0))


def sufficient_dim(amplitude) -> int:
    """Looser bound used only to decide when displacement_matrix warns."""
    a = float(abs(amplitude))
    return int(math.ceil(a * a + 6.0 * a + 10.0))


@dataclass(frozen=True)
class FockVector:
    """State vector on the truncated Fock basis."""

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError(f"fock dim must be >= 1, got {self.dim}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.dim,):
            raise ConfigError(
                f"amplitude vector has shape {amps.shape}, expected ({self.dim},)")
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "FockVector") -> complex:
        if other.dim != self.dim:
            raise ConfigError("dimension mismatch in inner product")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def mean_occupation(self) -> float:
        n = np.arange(self.dim)
        return float(np.real(np.sum(n * np.abs(self.amplitudes) ** 2)))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator on the truncated Fock space (side dim) or on the joint
    spin-field space (side 2*dim). Flags are verified at construction."""

    dim: int
    entries: np.ndarray
    hermitian: bool = False
    unitary: bool = False
    truncation_defect: float = 0.0

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError(f"fock dim must be >= 1, got {self.dim}")
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ConfigError(f"entries must be square, got shape {m.shape}")
        if m.shape[0] not in (self.dim, 2 * self.dim):
            raise ConfigError(
                f"side {m.shape[0]} is neither dim nor 2*dim for dim={self.dim}")
        object.__setattr__(self, "entries", m)
        if self.hermitian:
            defect = float(np.max(np.abs(m - m.conj().T)))
            if defect >= HERMITIAN_TOL:
                raise NumericError(
                    f"matrix flagged Hermitian but max|M - M^dag| = {defect:.3e}")
        if self.unitary:
            g = m.conj().T @ m
            np.fill_diagonal(g, g.diagonal() - 1.0)
            defect = float(np.max(np.abs(g)))
            if defect >= UNITARY_TOL:
                raise NumericError(
                    f"matrix flagged unitary but max|M^dag M - 1| = {defect:.3e}")

    @property
    def side(self) -> int:
        return self.entries.shape[0]


def annihilation_matrix(dim: int) -> OperatorMatrix:
    """Truncated annihilation operator, M[n-1, n] = sqrt(n)."""
    if dim < 1:
        raise ConfigError(f"fock dim must be >= 1, got {dim}")
    m = np.diag(np.sqrt(np.arange(1.0, dim)), k=1).astype(complex)
    return OperatorMatrix(dim=dim, entries=m)


def displacement_matrix(beta, dim: int) -> OperatorMatrix:
    """D(beta) on the truncated basis via the matrix exponential of
    beta a^dag - beta* a.

    The truncated generator stays anti-Hermitian, so the matrix is unitary
    no matter how small dim is; what truncation breaks is the displacement
    action itself. The recorded defect is therefore the deviation of the
    first column from the closed-form coherent amplitudes. Below
    dim = |beta|^2 + 6|beta| + 10 we warn and leave the unitary flag unset
    as a signal that the matrix no longer represents D(beta).
    """
    beta = complex(beta)
    a = annihilation_matrix(dim).entries
    gen = beta * a.conj().T - np.conj(beta) * a
    d = scipy.linalg.expm(gen)
    defect = float(np.linalg.norm(d[:, 0] - _overlap_column(beta, 0, dim)))
    if dim < sufficient_dim(beta):
        warnings.warn(
            f"dim={dim} is below {sufficient_dim(beta)} required for |beta|="
            f"{abs(beta):.4g}; displacement action truncated (defect {defect:.2e})",
            stacklevel=2)
        return OperatorMatrix(dim=dim, entries=d, truncation_defect=defect)
    g = d.conj().T @ d
    np.fill_diagonal(g, g.diagonal() - 1.0)
    return OperatorMatrix(dim=dim, entries=d,
                          unitary=float(np.max(np.abs(g))) < UNITARY_TOL,
                          truncation_defect=defect)


def laguerre(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^(k)(x) by the three-term upward
    recurrence, stable for the moderate degrees used here.

    x may be a float or an ndarray; k may be a float array of the same shape
    when evaluating a sweep of superscripts at once.
    """
    if n < 0 or int(n) != n:
        raise ConfigError(f"degree n must be a nonnegative integer, got {n}")
    n = int(n)
    xs = np.asarray(x, dtype=float)
    ks = np.asarray(k, dtype=float)
    if np.any(ks < 0):
        raise ConfigError(f"superscript k must be nonnegative, got {k}")
    prev = np.ones(np.broadcast(xs, ks).shape, dtype=float)
    if n == 0:
        return prev.item() if prev.ndim == 0 else prev
    cur = 1.0 + ks - xs
    cur = np.broadcast_to(cur, prev.shape).astype(float)
    for m in range(1, n):
        prev, cur = cur, ((2.0 * m + ks + 1.0 - xs) * cur - (m + ks) * prev) / (m + 1.0)
    return cur.item() if cur.ndim == 0 else cur


def displaced_fock_overlap(m: int, n: int, beta) -> complex:
    """Matrix element <m|D(beta)|n> in closed form.

    For m >= n this is sqrt(n!/m!) beta^(m-n) e^(-|beta|^2/2)
    L_n^(m-n)(|beta|^2); the m < n case follows from the transpose identity
    <m|D(beta)|n> = <n|D(-beta*)|m>, which holds because the ladder matrices
    are real so D(beta)^T = D(-beta*).
    """
    if m < 0 or n < 0 or int(m) != m or int(n) != n:
        raise ConfigError(f"fock labels must be nonnegative integers, got {m}, {n}")
    m, n = int(m), int(n)
    beta = complex(beta)
    if m < n:
        return displaced_fock_overlap(n, m, -np.conj(beta))
    if beta == 0:
        return 1.0 + 0.0j if m == n else 0.0j
    d = m - n
    x = abs(beta) ** 2
    logmag = 0.5 * (gammaln(n + 1) - gammaln(m + 1)) + d * math.log(abs(beta)) - x / 2.0
    phase = cmath.exp(1j * d * cmath.phase(beta))
    return complex(laguerre(n, d, x) * math.exp(logmag) * phase)


def _overlap_column(beta, n: int, dim: int) -> np.ndarray:
    """All <m|D(beta)|n> for m = 0 .. dim-1, vectorized over m."""
    beta = complex(beta)
    if beta == 0:
        col = np.zeros(dim, dtype=complex)
        if n < dim:
            col[n] = 1.0
        return col
    col = np.empty(dim, dtype=complex)
    lo = min(n, dim)
    for m in range(lo):
        col[m] = displaced_fock_overlap(m, n, beta)
    if lo < dim:
        m_arr = np.arange(lo, dim)
        d = m_arr - n
        x = abs(beta) ** 2
        logmag = 0.5 * (gammaln(n + 1) - gammaln(m_arr + 1)) \
            + d * math.log(abs(beta)) - x / 2.0
        phase = np.exp(1j * d * cmath.phase(beta))
        col[lo:] = laguerre(n, d.astype(float), x) * np.exp(logmag) * phase
    return col


@dataclass(frozen=True)
class FieldStateSpec:
    """Declarative field state: a weighted sum of displaced Fock states
    sum_i w_i D(beta_i)|n_i>. Construction helpers cover the shipped kinds."""

    displacements: tuple
    levels: tuple
    weights: tuple
    truncation_tol: float = 1e-6

    def __post_init__(self):
        if not (len(self.displacements) == len(self.levels) == len(self.weights)):
            raise ConfigError("displacements, levels and weights must align")
        if len(self.levels) == 0:
            raise ConfigError("field state needs at least one term")
        if any(int(n) != n or n < 0 for n in self.levels):
            raise ConfigError(f"fock levels must be nonnegative integers: {self.levels}")
        if not (0 < self.truncation_tol < 1):
            raise ConfigError(f"truncation_tol out of range: {self.truncation_tol}")
        object.__setattr__(self, "displacements",
                           tuple(complex(b) for b in self.displacements))
        object.__setattr__(self, "levels", tuple(int(n) for n in self.levels))
        object.__setattr__(self, "weights",
                           tuple(complex(w) for w in self.weights))

    @classmethod
    def coherent(cls, alpha, truncation_tol: float = 1e-6) -> "FieldStateSpec":
        return cls((complex(alpha),), (0,), (1.0 + 0.0j,), truncation_tol)

    @classmethod
    def displaced_fock(cls, alpha, n: int, truncation_tol: float = 1e-6) -> "FieldStateSpec":
        return cls((complex(alpha),), (int(n),), (1.0 + 0.0j,), truncation_tol)

    @classmethod
    def superposition(cls, terms, truncation_tol: float = 1e-6) -> "FieldStateSpec":
        """terms: iterable of ((displacement, level), weight)."""
        disp, lev, wts = [], [], []
        for (b, n), w in terms:
            disp.append(complex(b))
            lev.append(int(n))
            wts.append(complex(w))
        return cls(tuple(disp), tuple(lev), tuple(wts), truncation_tol)

    def displaced(self, shift) -> "FieldStateSpec":
        """Apply D(shift) exactly: D(s)D(b) = e^((s b* - s* b)/2) D(s + b)."""
        s = complex(shift)
        disp, wts = [], []
        for b, w in zip(self.displacements, self.weights):
            chi = 0.5 * (s * np.conj(b) - np.conj(s) * b)
            disp.append(s + b)
            wts.append(w * cmath.exp(chi))
        return FieldStateSpec(tuple(disp), tuple(self.levels), tuple(wts),
                              self.truncation_tol)

    def displacement_expectation(self, zeta) -> complex:
        """<state|D(zeta)|state>, evaluated analytically (dimension-free)."""
        z = complex(zeta)
        total = 0.0j
        for bi, mi, wi in zip(self.displacements, self.levels, self.weights):
            for bj, nj, wj in zip(self.displacements, self.levels, self.weights):
                # D(-b_i) D(z) D(b_j) = e^chi D(z - b_i + b_j)
                chi = 0.5 * (np.conj(bi) * z - bi * np.conj(z)
                             + (z - bi) * np.conj(bj) - np.conj(z - bi) * bj)
                total += (np.conj(wi) * wj * cmath.exp(chi)
                          * displaced_fock_overlap(mi, nj, z - bi + bj))
        return complex(total)

    def norm_sq(self) -> float:
        return float(np.real(self.displacement_expectation(0.0)))

    def mean_annihilation(self) -> complex:
        """<state|a|state> analytically, using a D(b) = D(b)(a + b)."""
        total = 0.0j
        for bi, mi, wi in zip(self.displacements, self.levels, self.weights):
            for bj, nj, wj in zip(self.displacements, self.levels, self.weights):
                chi = 0.5 * (bi * np.conj(bj) - np.conj(bi) * bj)
                pair = cmath.exp(chi) * np.conj(wi) * wj
                val = bj * displaced_fock_overlap(mi, nj, bj - bi)
                if nj > 0:
                    val += math.sqrt(nj) * displaced_fock_overlap(mi, nj - 1, bj - bi)
                total += pair * val
        return complex(total)

    def max_displacement(self) -> float:
        return max(abs(b) for b in self.displacements)

    def max_level(self) -> int:
        return max(self.levels)


def build_field_state(spec: FieldStateSpec, dim: int) -> FockVector:
    """Materialize a FieldStateSpec on a truncated basis.

    Fails with TruncationError when more than spec.truncation_tol of the
    norm falls outside the basis; the error carries the offending
    displacement modulus and a dim that suffices.
    """
    if dim < 1:
        raise ConfigError(f"fock dim must be >= 1, got {dim}")
    analytic = spec.norm_sq()
    if abs(analytic - 1.0) > 1e-9:
        raise ConfigError(
            f"field-state weights give squared norm {analytic:.12g}, expected 1")
    amps = np.zeros(dim, dtype=complex)
    for b, n, w in zip(spec.displacements, spec.levels, spec.weights):
        amps += w * _overlap_column(b, n, dim)
    deficit = analytic - float(np.vdot(amps, amps).real)
    if deficit > spec.truncation_tol:
        worst = spec.max_displacement()
        suggested = required_dim(worst) + 4 * spec.max_level()
        raise TruncationError(
            f"dim={dim} leaves {deficit:.3e} of the norm outside the basis for "
            f"|displacement| up to {worst:.4g}; use dim >= {suggested}",
            offending_amplitude=worst, suggested_dim=suggested)
    return FockVector(dim=dim, amplitudes=amps)
