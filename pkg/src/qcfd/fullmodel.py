"""Exact quantum reference engine: the time-independent spin-boson
Hamiltonian on the joint spin (x) Fock space and its spectral-decomposition
propagator.

The joint basis is spin-major: amplitudes[0:N] are the +z (excited) block,
amplitudes[N:2N] the -z block, each indexed by photon number.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConfigError, NumericError
from .fockspace import FockVector, OperatorMatrix, annihilation_matrix

COUPLINGS = ("jcm", "rabi")


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the model.

    omega0: field angular frequency; omega: spin splitting; lam: coupling
    strength; coupling: 'jcm' (a sigma+ + h.c.) or 'rabi' ((a + a^dag) sigma+
    + h.c.); alpha_mod, alpha_phase: modulus and phase of the reference field
    displacement that defines the semiclassical frame.
    """

    omega0: float
    omega: float
    lam: float
    coupling: str
    alpha_mod: float
    alpha_phase: float = 0.0

    def __post_init__(self):
        if not (self.omega0 > 0):
            raise ConfigError(f"omega0 must be positive, got {self.omega0}")
        if self.omega < 0:
            raise ConfigError(f"omega must be nonnegative, got {self.omega}")
        if self.lam < 0:
            raise ConfigError(f"lam must be nonnegative, got {self.lam}")
        if self.coupling not in COUPLINGS:
            raise ConfigError(
                f"coupling must be one of {COUPLINGS}, got {self.coupling!r}")
        if self.alpha_mod < 0:
            raise ConfigError(f"alpha_mod must be nonnegative, got {self.alpha_mod}")
        if not all(math.isfinite(x) for x in
                   (self.omega0, self.omega, self.lam, self.alpha_mod,
                    self.alpha_phase)):
            raise ConfigError("model parameters must be finite")
        object.__setattr__(self, "alpha_phase",
                           float(self.alpha_phase) % (2.0 * math.pi))

    @property
    def epsilon(self) -> float:
        """Validity diagnostic lam*|alpha|/(2 omega); inf when omega = 0."""
        if self.omega > 0:
            return self.lam * self.alpha_mod / (2.0 * self.omega)
        return math.inf if self.lam * self.alpha_mod > 0 else 0.0

    @property
    def frame_alpha(self) -> complex:
        """Complex displacement |alpha| e^{-i phi} defining the frame change."""
        return self.alpha_mod * np.exp(-1j * self.alpha_phase)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega0


@dataclass(frozen=True)
class SpinFieldVector:
    """State on spin (x) Fock, spin-major layout [(+z, n), (-z, n)]."""

    fock_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.fock_dim < 1:
            raise ConfigError(f"fock dim must be >= 1, got {self.fock_dim}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 * self.fock_dim,):
            raise ConfigError(
                f"amplitudes have shape {amps.shape}, expected ({2 * self.fock_dim},)")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_product(cls, spin, field: FockVector) -> "SpinFieldVector":
        """Tensor product of a 2-component spin vector with a field vector."""
        spin = np.asarray(spin, dtype=complex)
        if spin.shape != (2,):
            raise ConfigError(f"spin vector must have 2 components, got {spin.shape}")
        amps = np.concatenate([spin[0] * field.amplitudes,
                               spin[1] * field.amplitudes])
        return cls(fock_dim=field.dim, amplitudes=amps)

    def plus_block(self) -> np.ndarray:
        return self.amplitudes[: self.fock_dim]

    def minus_block(self) -> np.ndarray:
        return self.amplitudes[self.fock_dim:]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def build_hamiltonian(params: ModelParams, fock_dim: int) -> OperatorMatrix:
    """H = omega0 a^dag a + (omega/2) sigma_z + lam (f sigma+ + f^dag sigma-)
    with f = a (jcm) or a + a^dag (rabi), on the spin-major joint basis."""
    if fock_dim < 2:
        raise ConfigError(f"fock_dim must be >= 2, got {fock_dim}")
    a = annihilation_matrix(fock_dim).entries
    number = np.diag(np.arange(float(fock_dim)))
    f = a if params.coupling == "jcm" else a + a.conj().T
    n2 = 2 * fock_dim
    h = np.zeros((n2, n2), dtype=complex)
    h[:fock_dim, :fock_dim] = params.omega0 * number + 0.5 * params.omega * np.eye(fock_dim)
    h[fock_dim:, fock_dim:] = params.omega0 * number - 0.5 * params.omega * np.eye(fock_dim)
    h[:fock_dim, fock_dim:] = params.lam * f
    h[fock_dim:, :fock_dim] = params.lam * f.conj().T
    return OperatorMatrix(dim=fock_dim, entries=h, hermitian=True)


class ExactPropagator:
    """One-time dense eigendecomposition of a joint Hamiltonian, reused for
    evolution to arbitrary times. Instances are immutable after __init__."""

    def __init__(self, hamiltonian: OperatorMatrix):
        m = hamiltonian.entries
        if not hamiltonian.hermitian:
            defect = float(np.max(np.abs(m - m.conj().T)))
            if defect >= 1e-10:
                raise ConfigError(
                    f"propagator needs a Hermitian matrix, max|H - H^dag| = {defect:.3e}")
        try:
            self.energies, self.modes = scipy.linalg.eigh(m, check_finite=False)
        except scipy.linalg.LinAlgError as exc:
            scale = float(np.max(np.abs(m)))
            raise NumericError(
                f"eigendecomposition failed (side {m.shape[0]}, max|H| = "
                f"{scale:.3e}): {exc}") from exc
        self.fock_dim = hamiltonian.dim
        self.side = m.shape[0]

    def _mode_amplitudes(self, psi0: np.ndarray) -> np.ndarray:
        if psi0.shape != (self.side,):
            raise ConfigError(
                f"state length {psi0.shape} does not match side {self.side}")
        return self.modes.conj().T @ psi0

    def evolve(self, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
        """Amplitude matrix of shape (len(times), side)."""
        c0 = self._mode_amplitudes(np.asarray(psi0, dtype=complex))
        phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), self.energies))
        return (phases * c0) @ self.modes.T

    def excited_series(self, psi0: np.ndarray, times: np.ndarray,
                       chunk: int = 128) -> np.ndarray:
        """P(+z)(t) over a time grid without materializing every state.

        Works chunk-by-chunk so the |side| x |times| intermediate never
        exceeds |side| x chunk.
        """
        c0 = self._mode_amplitudes(np.asarray(psi0, dtype=complex))
        times = np.asarray(times, dtype=float)
        v_up = self.modes[: self.fock_dim, :]
        out = np.empty(times.size, dtype=float)
        for start in range(0, times.size, chunk):
            tc = times[start:start + chunk]
            phases = np.exp(-1j * np.outer(self.energies, tc)) * c0[:, None]
            up = v_up @ phases
            out[start:start + tc.size] = np.sum(np.abs(up) ** 2, axis=0)
        return out


_PROPAGATOR_CACHE: dict = {}
_PROPAGATOR_LOCK = threading.Lock()


def get_propagator(params: ModelParams, fock_dim: int) -> ExactPropagator:
    """Per-(params, fock_dim) cache; single-writer insertion."""
    key = (params, fock_dim)
    prop = _PROPAGATOR_CACHE.get(key)
    if prop is None:
        prop = ExactPropagator(build_hamiltonian(params, fock_dim))
        with _PROPAGATOR_LOCK:
            _PROPAGATOR_CACHE.setdefault(key, prop)
            prop = _PROPAGATOR_CACHE[key]
    return prop


def evolve_exact(hamiltonian: OperatorMatrix, psi0: SpinFieldVector,
                 times) -> list:
    """psi(t) = sum_j e^{-i E_j t} <v_j|psi0> |v_j> for each requested time.

    times must be ascending and nonnegative; every output state is checked
    to hold the initial norm within 1e-9.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ConfigError("times must be a nonempty 1-d array")
    if times[0] < 0 or np.any(np.diff(times) < 0):
        raise ConfigError("times must be nonnegative and ascending")
    if 2 * psi0.fock_dim != hamiltonian.entries.shape[0]:
        raise ConfigError(
            f"state fock_dim {psi0.fock_dim} does not match Hamiltonian side "
            f"{hamiltonian.entries.shape[0]}")
    prop = ExactPropagator(hamiltonian)
    norm0 = psi0.norm()
    amps = prop.evolve(psi0.amplitudes, times)
    out = []
    for row in amps:
        drift = abs(float(np.linalg.norm(row)) - norm0)
        if drift > 1e-9:
            raise NumericError(
                f"evolution norm drift {drift:.3e} exceeds 1e-9; "
                f"eigendecomposition likely ill-conditioned")
        out.append(SpinFieldVector(fock_dim=psi0.fock_dim, amplitudes=row))
    return out


def excited_probability(psi: SpinFieldVector) -> float:
    """P(+z): total weight of the +z block. Requires a normalized state."""
    norm = psi.norm()
    if abs(norm - 1.0) > 1e-6:
        raise ConfigError(f"state norm {norm:.9f} is not 1 within 1e-6")
    return float(np.sum(np.abs(psi.plus_block()) ** 2))
