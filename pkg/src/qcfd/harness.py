"""Scenario configuration, engine dispatch, figure presets, comparison
metrics and CSV/SVG emission.

A scenario pins the model constants, the initial field and spin, a uniform
time grid and a set of engines. The reference displacement entering the
model parameters is always derived from the field state as <a>, so config
files only describe the physical state.
"""

from __future__ import annotations

import cmath
import hashlib
import math
import os
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from . import fbrwa as fbrwa_mod
from .errors import ConfigError, GridError, NumericError, UnsupportedRegimeError
from .fockspace import FieldStateSpec, build_field_state, required_dim
from .floquet import floquet_solve
from .fullmodel import ModelParams, SpinFieldVector, get_propagator

ENGINE_ORDER = ("exact", "qcfd", "fbrwa", "closed_form")

SPIN_STATES = {
    "+z": (1.0, 0.0),
    "-z": (0.0, 1.0),
    "+x": (math.sqrt(0.5), math.sqrt(0.5)),
    "-x": (math.sqrt(0.5), -math.sqrt(0.5)),
    "+y": (math.sqrt(0.5), 1j * math.sqrt(0.5)),
    "-y": (math.sqrt(0.5), -1j * math.sqrt(0.5)),
}

FIELD_KINDS = ("coherent", "displaced_fock", "superposition_fig3")


@dataclass(frozen=True)
class ScenarioConfig:
    params: ModelParams
    field: FieldStateSpec
    initial_spin: tuple
    time_grid: tuple  # (t_start, t_end, n_points)
    engines: tuple
    fock_dim_override: int | None = None
    out_path: str | None = None
    out_format: str = "csv"

    def __post_init__(self):
        t_start, t_end, n_points = self.time_grid
        if not (t_start >= 0):
            raise ConfigError(f"t_start must be >= 0, got {t_start}")
        if n_points == 1:
            if t_end != t_start:
                raise ConfigError(
                    "a single-point grid requires t_end == t_start")
        elif n_points >= 2:
            if not (t_end > t_start):
                raise ConfigError(
                    f"t_end must exceed t_start, got [{t_start}, {t_end}]")
        else:
            raise ConfigError(f"n_points must be >= 1, got {n_points}")
        spin = np.asarray(self.initial_spin, dtype=complex)
        if spin.shape != (2,) or np.linalg.norm(spin) == 0:
            raise ConfigError("initial_spin must be a nonzero 2-vector")
        object.__setattr__(self, "initial_spin",
                           tuple(complex(z) for z in spin))
        if not self.engines:
            raise ConfigError("at least one engine must be selected")
        bad = [e for e in self.engines if e not in ENGINE_ORDER]
        if bad:
            raise ConfigError(
                f"unknown engines {bad}; valid: {list(ENGINE_ORDER)}")
        ordered = tuple(e for e in ENGINE_ORDER if e in self.engines)
        object.__setattr__(self, "engines", ordered)
        if self.fock_dim_override is not None and self.fock_dim_override < 2:
            raise ConfigError(
                f"fock_dim override must be >= 2, got {self.fock_dim_override}")
        if self.out_format not in ("csv", "svg", "both"):
            raise ConfigError(
                f"out_format must be csv, svg or both, got {self.out_format!r}")

    def times(self) -> np.ndarray:
        t_start, t_end, n_points = self.time_grid
        return np.linspace(t_start, t_end, n_points)


@dataclass(frozen=True)
class TimeSeries:
    engine: str
    t: np.ndarray
    p: np.ndarray
    metadata: dict = dataclass_field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if t.shape != p.shape or t.ndim != 1:
            raise ConfigError(
                f"time and value arrays must align, got {t.shape} vs {p.shape}")
        if p.size and (p.min() < -1e-9 or p.max() > 1.0 + 1e-9):
            raise NumericError(
                f"probability series leaves [0, 1]: range "
                f"[{p.min():.3e}, {p.max():.3e}]")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "p", p)


def _scenario_hash(config: ScenarioConfig) -> str:
    p = config.params
    parts = [f"{p.omega0:.17g}", f"{p.omega:.17g}", f"{p.lam:.17g}",
             p.coupling, f"{p.alpha_mod:.17g}", f"{p.alpha_phase:.17g}"]
    for b, n, w in zip(config.field.displacements, config.field.levels,
                       config.field.weights):
        parts.append(f"{b.real:.17g},{b.imag:.17g},{n},{w.real:.17g},{w.imag:.17g}")
    parts.extend(f"{z.real:.17g},{z.imag:.17g}" for z in config.initial_spin)
    parts.append(",".join(f"{x:.17g}" for x in config.time_grid[:2])
                 + f",{config.time_grid[2]}")
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:12]


def _derive_params(omega0, omega, lam, coupling,
                   field_spec: FieldStateSpec, fallback_phase: float) -> ModelParams:
    """Model parameters with the reference displacement <a> of the field."""
    mean = field_spec.mean_annihilation()
    alpha_mod = abs(mean)
    if alpha_mod > 0:
        alpha_phase = (-cmath.phase(mean)) % (2.0 * math.pi)
    else:
        alpha_phase = fallback_phase
    return ModelParams(omega0=omega0, omega=omega, lam=lam, coupling=coupling,
                       alpha_mod=alpha_mod, alpha_phase=alpha_phase)


def make_field_spec(kind: str, amplitude: float, phase: float,
                    level: int = 0) -> FieldStateSpec:
    """Shipped field kinds. amplitude/phase give beta = amplitude e^{-i phase};
    the fig3 superposition uses weights (1, e^{-i phase})/sqrt(2) on the
    displaced Fock levels 0 and 1."""
    if kind not in FIELD_KINDS:
        raise ConfigError(f"unknown field kind {kind!r}; valid: {FIELD_KINDS}")
    if amplitude < 0:
        raise ConfigError(f"field amplitude must be >= 0, got {amplitude}")
    beta = amplitude * cmath.exp(-1j * phase)
    if kind == "coherent":
        return FieldStateSpec.coherent(beta)
    if kind == "displaced_fock":
        return FieldStateSpec.displaced_fock(beta, level)
    w = 1.0 / math.sqrt(2.0)
    return FieldStateSpec.superposition(
        [((beta, 0), w), ((beta, 1), w * cmath.exp(-1j * phase))])


def _lab_fock_dim(params: ModelParams, field_spec: FieldStateSpec,
                  t_end: float) -> int:
    """Truncation for lab-frame evolution: field spread plus the worst-case
    interaction drift over the run."""
    drift = (0.5 if params.coupling == "jcm" else 1.0) * params.lam * t_end
    margin = math.sqrt(2.0 * field_spec.max_level() + 1.0) - 1.0
    return required_dim(field_spec.max_displacement() + drift + margin)


def _resolve_fock_dim(auto: int, override: int | None) -> int:
    env = os.environ.get("QCFD_FOCK_DIM")
    if env:
        try:
            dim = int(env)
        except ValueError:
            raise ConfigError(f"QCFD_FOCK_DIM is not an integer: {env!r}") from None
        if dim < 2:
            raise ConfigError(f"QCFD_FOCK_DIM must be >= 2, got {dim}")
        return dim
    if override is not None:
        return override
    return auto


def _closed_form_kind(config: ScenarioConfig):
    """Map the scenario onto a closed-form kind, or explain why none fits."""
    spin = np.asarray(config.initial_spin, dtype=complex)
    spin = spin / np.linalg.norm(spin)
    if abs(abs(spin[0]) - 1.0) > 1e-12:
        raise UnsupportedRegimeError(
            "closed forms assume the spin starts in +z; use the fbrwa engine")
    spec = config.field
    phi = config.params.alpha_phase
    if len(spec.levels) == 1:
        n = spec.levels[0]
        return ("coherent" if n == 0 else "displaced_fock",
                abs(spec.displacements[0]), n)
    if len(spec.levels) == 2 and sorted(spec.levels) == [0, 1]:
        i0 = spec.levels.index(0)
        i1 = 1 - i0
        b0, b1 = spec.displacements[i0], spec.displacements[i1]
        w0, w1 = spec.weights[i0], spec.weights[i1]
        beta_ok = abs(b0 - b1) < 1e-12 and \
            abs(b0 - abs(b0) * cmath.exp(-1j * phi)) < 1e-9
        weights_ok = abs(abs(w0) - math.sqrt(0.5)) < 1e-9 \
            and abs(abs(w1) - math.sqrt(0.5)) < 1e-9
        xi = (-cmath.phase(w1 / w0)) % (2.0 * math.pi)
        xi_ok = min(abs(xi - phi), 2.0 * math.pi - abs(xi - phi)) < 1e-9
        if beta_ok and weights_ok and xi_ok:
            return "superposition_fig3", abs(b0), None
    raise UnsupportedRegimeError(
        "no closed form covers this field state; use the fbrwa or qcfd engine")


def _run_exact(config: ScenarioConfig, times: np.ndarray):
    dim = _resolve_fock_dim(
        _lab_fock_dim(config.params, config.field, float(times[-1])),
        config.fock_dim_override)
    field0 = build_field_state(config.field, dim)
    spin = np.asarray(config.initial_spin, dtype=complex)
    spin = spin / np.linalg.norm(spin)
    psi0 = SpinFieldVector.from_product(spin, field0)
    prop = get_propagator(config.params, dim)
    return prop.excited_series(psi0.amplitudes, times), {"fock_dim": dim}


def _run_fbrwa(config: ScenarioConfig, times: np.ndarray):
    sol = floquet_solve(config.params)
    result = fbrwa_mod.fbrwa_prepare(sol, config.params, config.field,
                                     config.initial_spin)
    p = fbrwa_mod.p_excited_fbrwa(sol, result, times)
    return p, {"lambda_eff": result.lambda_eff,
               "gauge_residual": sol.gauge_residual}


def _run_closed_form(config: ScenarioConfig, times: np.ndarray):
    if config.params.coupling != "jcm":
        raise UnsupportedRegimeError(
            "the closed_form engine covers the resonant jcm only; "
            "use the fbrwa engine for rabi")
    kind, amplitude, n = _closed_form_kind(config)
    p = fbrwa_mod.p_excited_closed_form(kind, config.params.lam, amplitude,
                                        times, n=n or 0, params=config.params)
    return p, {"kind": kind}


def _run_qcfd(config: ScenarioConfig, times: np.ndarray):
    sol = floquet_solve(config.params)
    lam_eff = fbrwa_mod.lambda_eff(sol, config.params.lam)
    displaced = config.field.displaced(-config.params.frame_alpha)
    margin = math.sqrt(2.0 * displaced.max_level() + 1.0) - 1.0
    auto = required_dim(displaced.max_displacement()
                        + abs(lam_eff) * float(times[-1]) + margin)
    dim = _resolve_fock_dim(auto, config.fock_dim_override)
    run_times = times
    prepend = times.size == 0 or times[0] > 0
    if prepend:
        run_times = np.concatenate([[0.0], times])
    results = fbrwa_mod.qcfd_integrate(
        sol, config.params, (config.initial_spin, config.field), run_times, dim)
    probs = np.array([p for _, p in results])
    if prepend:
        probs = probs[1:]
    return probs, {"fock_dim": dim, "lambda_eff": lam_eff}


_ENGINE_RUNNERS = {
    "exact": _run_exact,
    "fbrwa": _run_fbrwa,
    "closed_form": _run_closed_form,
    "qcfd": _run_qcfd,
}


def run_scenario(config: ScenarioConfig) -> list:
    """One TimeSeries per selected engine, in a fixed engine order."""
    times = config.times()
    tag = _scenario_hash(config)
    out = []
    for engine in config.engines:
        p, extra = _ENGINE_RUNNERS[engine](config, times)
        meta = {"params_hash": tag}
        meta.update(extra)
        out.append(TimeSeries(engine=engine, t=times.copy(),
                              p=np.asarray(p, dtype=float), metadata=meta))
    return out


@dataclass(frozen=True)
class CompareMetrics:
    sup_norm: float
    rmse: float
    dominant_freq_a: float
    dominant_freq_b: float
    dominant_freq_diff: float
    freq_bin: float
    n_samples: int


def _dominant_frequency(t: np.ndarray, x: np.ndarray) -> float:
    """Angular frequency of the largest spectral line of the detrended
    signal; 0 when the detrended signal vanishes."""
    coeffs = np.polyfit(t, x, 1)
    resid = x - np.polyval(coeffs, t)
    if not np.any(np.abs(resid) > 1e-300):
        return 0.0
    spectrum = np.abs(np.fft.rfft(resid))
    if spectrum.size < 2:
        return 0.0
    k = 1 + int(np.argmax(spectrum[1:]))
    dt = t[1] - t[0]
    return 2.0 * math.pi * k / (t.size * dt)


def compare(series_a: TimeSeries, series_b: TimeSeries,
            window: tuple | None = None) -> CompareMetrics:
    """Sup-norm, RMSE and dominant-frequency estimates over a time window.

    Requires identical uniform grids; frequency estimates detrend linearly
    first, so a slow collapse envelope does not masquerade as a line.
    """
    ta, tb = series_a.t, series_b.t
    if ta.size != tb.size or ta.size == 0 or \
            float(np.max(np.abs(ta - tb))) > 1e-12 * max(1.0, float(ta[-1])):
        raise GridError("series grids differ; resample before comparing")
    if window is not None:
        lo, hi = window
        mask = (ta >= lo - 1e-12) & (ta <= hi + 1e-12)
    else:
        mask = np.ones(ta.size, dtype=bool)
    t = ta[mask]
    if t.size < 4:
        raise GridError(
            f"window keeps {t.size} samples; at least 4 are needed")
    steps = np.diff(t)
    if float(np.max(steps) - np.min(steps)) > 1e-9 * float(np.max(steps)):
        raise GridError("frequency metrics need a uniform grid in the window")
    xa = series_a.p[mask]
    xb = series_b.p[mask]
    diff = xa - xb
    dt = t[1] - t[0]
    return CompareMetrics(
        sup_norm=float(np.max(np.abs(diff))),
        rmse=float(np.sqrt(np.mean(diff ** 2))),
        dominant_freq_a=_dominant_frequency(t, xa),
        dominant_freq_b=_dominant_frequency(t, xb),
        dominant_freq_diff=0.0 if not np.any(diff) else _dominant_frequency(t, diff),
        freq_bin=2.0 * math.pi / (t.size * dt),
        n_samples=int(t.size))


def render_csv(series: list) -> str:
    lines = ["t,engine,p,params_hash"]
    for s in series:
        tag = s.metadata.get("params_hash", "")
        for ti, pi in zip(s.t, s.p):
            lines.append(f"{ti:.17g},{s.engine},{pi:.17g},{tag}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list:
    """Inverse of render_csv: one TimeSeries per engine, original order."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "t,engine,p,params_hash":
        raise ConfigError("unrecognized CSV header; expected t,engine,p,params_hash")
    order = []
    data = {}
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != 4:
            raise ConfigError(f"malformed CSV row: {ln!r}")
        t_str, engine, p_str, tag = cells
        if engine not in data:
            order.append(engine)
            data[engine] = ([], [], tag)
        data[engine][0].append(float(t_str))
        data[engine][1].append(float(p_str))
    return [TimeSeries(engine=e, t=np.array(data[e][0]), p=np.array(data[e][1]),
                       metadata={"params_hash": data[e][2]})
            for e in order]


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def render_svg(series: list, width: int = 720, height: int = 440) -> str:
    """Self-contained line plot: one polyline per engine, axes, legend."""
    ml, mr, mt, mb = 64, 24, 24, 48
    iw, ih = width - ml - mr, height - mt - mb
    t_lo = min(float(s.t[0]) for s in series)
    t_hi = max(float(s.t[-1]) for s in series)
    p_lo = min(0.0, min(float(np.min(s.p)) for s in series))
    p_hi = max(1.0, max(float(np.max(s.p)) for s in series))
    t_span = (t_hi - t_lo) or 1.0
    p_span = (p_hi - p_lo) or 1.0

    def sx(t):
        return ml + iw * (t - t_lo) / t_span

    def sy(p):
        return mt + ih * (1.0 - (p - p_lo) / p_span)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{iw}" height="{ih}" fill="none" '
        f'stroke="black" stroke-width="1"/>',
    ]
    for tick in np.linspace(t_lo, t_hi, 6):
        x = sx(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{mt + ih}" x2="{x:.2f}" '
                     f'y2="{mt + ih + 5}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{x:.2f}" y="{mt + ih + 20}" font-size="12" '
                     f'text-anchor="middle">{tick:.4g}</text>')
    for tick in np.linspace(p_lo, p_hi, 6):
        y = sy(tick)
        parts.append(f'<line x1="{ml - 5}" y1="{y:.2f}" x2="{ml}" '
                     f'y2="{y:.2f}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{ml - 8}" y="{y + 4:.2f}" font-size="12" '
                     f'text-anchor="end">{tick:.3g}</text>')
    parts.append(f'<text x="{ml + iw / 2:.2f}" y="{height - 10}" '
                 f'font-size="13" text-anchor="middle">t</text>')
    parts.append(f'<text x="16" y="{mt + ih / 2:.2f}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{mt + ih / 2:.2f})">P(+z)</text>')
    for i, s in enumerate(series):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{sx(ti):.2f},{sy(pi):.2f}" for ti, pi in zip(s.t, s.p))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.2"/>')
        ly = mt + 16 + 16 * i
        parts.append(f'<line x1="{ml + iw - 130}" y1="{ly}" '
                     f'x2="{ml + iw - 104}" y2="{ly}" stroke="{color}" '
                     f'stroke-width="2"/>')
        parts.append(f'<text x="{ml + iw - 98}" y="{ly + 4}" '
                     f'font-size="12">{s.engine}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(series: list, fmt: str, path: str) -> list:
    """Write the series in the requested format(s); returns written paths."""
    if not series:
        raise ConfigError("emit called with no series; nothing to write")
    if fmt not in ("csv", "svg", "both"):
        raise ConfigError(f"format must be csv, svg or both, got {fmt!r}")
    root, ext = os.path.splitext(path)
    if ext.lower() in (".csv", ".svg"):
        root = root if root else path
    paths = []
    try:
        if fmt in ("csv", "both"):
            target = path if ext.lower() == ".csv" else root + ".csv"
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(render_csv(series))
            paths.append(target)
        if fmt in ("svg", "both"):
            target = path if ext.lower() == ".svg" else root + ".svg"
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(render_svg(series))
            paths.append(target)
    except OSError as exc:
        raise OSError(f"cannot write output near {path!r}: {exc}") from exc
    return paths


def parse_config_text(text: str) -> dict:
    """Flat key=value lines; # starts a comment; later keys win."""
    out = {}
    for ln_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln_no}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().lower()] = value.strip()
    return out


_FLOAT_KEYS = ("omega0", "omega", "lambda", "alpha", "phi", "t_start", "t_end")
_KNOWN_KEYS = set(_FLOAT_KEYS) | {
    "coupling", "field", "n", "spin", "n_points", "engines", "fock_dim",
    "out", "format"}


def build_scenario(mapping: dict) -> ScenarioConfig:
    """ScenarioConfig from a flat string mapping (config file + overrides)."""
    unknown = sorted(set(mapping) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")

    def fget(key, default=None):
        if key not in mapping:
            if default is None:
                raise ConfigError(f"missing required config key {key!r}")
            return default
        try:
            return float(mapping[key])
        except ValueError:
            raise ConfigError(
                f"config key {key!r} is not a number: {mapping[key]!r}") from None

    coupling = mapping.get("coupling", "jcm")
    omega0 = fget("omega0", 1.0)
    omega = fget("omega", 1.0)
    lam = fget("lambda", 0.0)
    alpha = fget("alpha", 0.0)
    phi = fget("phi", 0.0)
    kind = mapping.get("field", "coherent")
    try:
        level = int(mapping.get("n", "0"))
    except ValueError:
        raise ConfigError(f"config key 'n' is not an integer: {mapping['n']!r}") from None
    spec = make_field_spec(kind, alpha, phi, level)
    params = _derive_params(omega0, omega, lam, coupling, spec, phi)

    spin_name = mapping.get("spin", "+z")
    if spin_name not in SPIN_STATES:
        raise ConfigError(
            f"unknown spin {spin_name!r}; valid: {sorted(SPIN_STATES)}")
    t_start = fget("t_start", 0.0)
    t_end = fget("t_end")
    try:
        n_points = int(mapping["n_points"])
    except KeyError:
        raise ConfigError("missing required config key 'n_points'") from None
    except ValueError:
        raise ConfigError(
            f"config key 'n_points' is not an integer: {mapping['n_points']!r}") from None
    engines = tuple(e.strip() for e in mapping.get("engines", "").split(",")
                    if e.strip())
    fock_dim = None
    if "fock_dim" in mapping:
        try:
            fock_dim = int(mapping["fock_dim"])
        except ValueError:
            raise ConfigError(
                f"config key 'fock_dim' is not an integer: "
                f"{mapping['fock_dim']!r}") from None
    return ScenarioConfig(
        params=params, field=spec, initial_spin=SPIN_STATES[spin_name],
        time_grid=(t_start, t_end, n_points), engines=engines,
        fock_dim_override=fock_dim, out_path=mapping.get("out"),
        out_format=mapping.get("format", "csv"))


def build_params(mapping: dict) -> ModelParams:
    """Model parameters alone (no grid or engines), for mode analysis."""
    grid_free = {k: v for k, v in mapping.items()
                 if k in _KNOWN_KEYS and k not in
                 ("t_start", "t_end", "n_points", "engines", "fock_dim",
                  "out", "format", "spin")}
    unknown = sorted(set(mapping) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")

    def fget(key, default):
        try:
            return float(grid_free.get(key, default))
        except ValueError:
            raise ConfigError(
                f"config key {key!r} is not a number: {mapping[key]!r}") from None

    phi = fget("phi", 0.0)
    try:
        level = int(grid_free.get("n", "0"))
    except ValueError:
        raise ConfigError(f"config key 'n' is not an integer: {mapping['n']!r}") from None
    spec = make_field_spec(grid_free.get("field", "coherent"),
                           fget("alpha", 0.0), phi, level)
    return _derive_params(fget("omega0", 1.0), fget("omega", 1.0),
                          fget("lambda", 0.0), grid_free.get("coupling", "jcm"),
                          spec, phi)


def _preset(coupling, lam, alpha, kind, level, engines, t_end, n_points,
            phi=0.0):
    spec = make_field_spec(kind, alpha, phi, level)
    params = _derive_params(1.0, 1.0, lam, coupling, spec, phi)
    return ScenarioConfig(params=params, field=spec,
                          initial_spin=SPIN_STATES["+z"],
                          time_grid=(0.0, t_end, n_points), engines=engines)


def preset_scenarios() -> dict:
    """Named figure configurations. Time extents cover one full collapse,
    t_end = 4 sqrt(2) / lambda."""
    span1 = 4.0 * math.sqrt(2.0) / 0.05
    span2 = 4.0 * math.sqrt(2.0) / 0.02
    span2c = 4.0 * math.sqrt(2.0) / 0.01
    return {
        "fig1a": _preset("jcm", 0.05, 10.0, "displaced_fock", 0,
                         ("exact", "closed_form"), span1, 1601),
        "fig1b": _preset("jcm", 0.05, 10.0, "displaced_fock", 1,
                         ("exact", "closed_form"), span1, 1601),
        "fig1c": _preset("jcm", 0.05, 10.0, "displaced_fock", 2,
                         ("exact", "closed_form"), span1, 1601),
        "fig1d": _preset("jcm", 0.05, 10.0, "displaced_fock", 10,
                         ("exact", "closed_form"), span1, 1601),
        "fig2a": _preset("rabi", 0.02, 10.0, "displaced_fock", 1,
                         ("exact", "fbrwa"), span2, 2829),
        "fig2b": _preset("rabi", 0.02, 20.0, "displaced_fock", 1,
                         ("exact", "fbrwa"), span2, 2829),
        "fig2c": _preset("rabi", 0.01, 40.0, "displaced_fock", 1,
                         ("exact", "fbrwa"), span2c, 5657),
        "fig3": _preset("jcm", 0.05, 10.0, "superposition_fig3", 0,
                        ("exact", "closed_form"), span1, 1601),
    }
