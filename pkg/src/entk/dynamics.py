"""Markovian open-system evolution and entanglement trajectories.

Density matrices are vectorized row-major, vec(A rho B) = (A kron B^T) vec(rho).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import curve_fit

from .errors import (
    BadDimension,
    DimensionTooLarge,
    FitDiverged,
    InsufficientData,
    OutOfRange,
    UnsupportedExactForm,
    ValidationDrift,
    ValidationError,
)
from .pure import ProjectorMix, default_mix
from .roof import (
    SeparableDominantEigenvector,
    quasi_pure,
    roof_gap,
    wootters_tau,
)
from .states import (
    DensityMatrix,
    PureState,
    as_density,
    bell,
    ghz,
    maximally_entangled,
    random_hermitian,
    validate_density,
    von_neumann_entropy,
    w_state,
)

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.T.copy()
EXCITED = SIGMA_PLUS @ SIGMA_MINUS

MAX_DIM = 64
DRIFT_TOL = 1e-8


# ------------------------------------------------------------------ channels


def _rate(x, name):
    x = float(x)
    if not x >= 0:
        raise OutOfRange(f"{name} must be >= 0, got {x}")
    return x


@dataclass(frozen=True)
class ZeroTemperature:
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", _rate(self.gamma, "gamma"))

    def jumps(self):
        return [(self.gamma, SIGMA_MINUS)]


@dataclass(frozen=True)
class Thermal:
    gamma: float
    nbar: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", _rate(self.gamma, "gamma"))
        object.__setattr__(self, "nbar", _rate(self.nbar, "nbar"))

    def jumps(self):
        return [
            (self.gamma * (self.nbar + 1), SIGMA_MINUS),
            (self.gamma * self.nbar, SIGMA_PLUS),
        ]


@dataclass(frozen=True)
class InfiniteTemperature:
    gamma: float  # the product Gamma * nbar held fixed

    def __post_init__(self):
        object.__setattr__(self, "gamma", _rate(self.gamma, "gamma"))

    def jumps(self):
        return [(self.gamma, SIGMA_MINUS), (self.gamma, SIGMA_PLUS)]


@dataclass(frozen=True)
class Dephasing:
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", _rate(self.gamma, "gamma"))

    def jumps(self):
        return [(self.gamma, EXCITED)]


ChannelKind = ZeroTemperature | Thermal | InfiniteTemperature | Dephasing

_CHANNEL_NAMES = {
    "zero": ZeroTemperature,
    "t0": ZeroTemperature,
    "thermal": Thermal,
    "infinite": InfiniteTemperature,
    "dephasing": Dephasing,
}


def parse_channel(text: str) -> ChannelKind:
    """'dephasing:0.01', 'zero:1', 'infinite:0.5', 'thermal:1,0.1' (gamma, nbar)."""
    name, _, args = text.partition(":")
    cls = _CHANNEL_NAMES.get(name.strip().lower())
    if cls is None:
        raise ValidationError(f"unknown channel {name!r}; expected one of {sorted(_CHANNEL_NAMES)}")
    try:
        vals = [float(x) for x in args.split(",")] if args else []
    except ValueError as exc:
        raise ValidationError(f"bad channel parameters in {text!r}") from exc
    need = 2 if cls is Thermal else 1
    if len(vals) != need:
        raise ValidationError(f"channel {name} takes {need} parameter(s), got {len(vals)}")
    return cls(*vals)


@dataclass(frozen=True)
class LindbladModel:
    """Identical channel acting independently on each of ``n_sites`` qubits."""

    n_sites: int
    channel: ChannelKind

    def __post_init__(self):
        if self.n_sites < 1:
            raise BadDimension(f"n_sites must be >= 1, got {self.n_sites}")

    @property
    def dims(self) -> tuple[int, ...]:
        return (2,) * self.n_sites

    @property
    def dim(self) -> int:
        return 2**self.n_sites


def _embed(op, site, n):
    return np.kron(np.kron(np.eye(2**site), op), np.eye(2 ** (n - site - 1)))


def build_liouvillian(model: LindbladModel, hamiltonian=None, max_dim: int = MAX_DIM) -> np.ndarray:
    d = model.dim
    if d > max_dim:
        raise DimensionTooLarge(f"Hilbert dimension {d} exceeds the cap {max_dim}")
    eye = np.eye(d)
    L = np.zeros((d * d, d * d), dtype=complex)
    if hamiltonian is not None:
        h = np.asarray(hamiltonian, dtype=complex)
        if h.shape != (d, d):
            raise ValidationError(f"Hamiltonian must be {d}x{d}, got {h.shape}")
        L += -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for site in range(model.n_sites):
        for rate, op in model.channel.jumps():
            if rate == 0:
                continue
            dop = _embed(op, site, model.n_sites)
            ddag_d = dop.conj().T @ dop
            L += rate / 2 * (
                2 * np.kron(dop, dop.conj()) - np.kron(ddag_d, eye) - np.kron(eye, ddag_d.T)
            )
    return L


# ------------------------------------------------------------------ observables


def concurrence_observable(rho: DensityMatrix, mix: ProjectorMix | None = None) -> float:
    """Wootters concurrence for two qubits, quasi-pure estimate otherwise (nan if undefined)."""
    if rho.dims == (2, 2) and mix is None:
        return max(roof_gap(wootters_tau(rho)), 0.0)
    try:
        return quasi_pure(rho, mix)
    except SeparableDominantEigenvector:
        return float("nan")


def singular_gap_observable(rho: DensityMatrix) -> float:
    return roof_gap(wootters_tau(rho))


OBSERVABLES = {
    "concurrence": concurrence_observable,
    "entropy": lambda r: von_neumann_entropy(r),
    "lambda_max": lambda r: float(r.eigvalsh()[-1]),
}


@dataclass
class Trajectory:
    times: np.ndarray
    states: list
    observables: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)


def _record(states, names, mix):
    out = {}
    for name in names:
        if name == "concurrence":
            out[name] = np.array([concurrence_observable(s, mix) for s in states])
        elif name == "gap":
            out[name] = np.array([singular_gap_observable(s) for s in states])
        else:
            fn = OBSERVABLES.get(name)
            if fn is None:
                raise ValidationError(f"unknown observable {name!r}")
            out[name] = np.array([fn(s) for s in states])
    return out


def _clean(m, dims):
    m = (m + m.conj().T) / 2
    m = m / np.trace(m).real
    try:
        return validate_density(m, dims, DRIFT_TOL)
    except ValidationError as exc:
        raise ValidationDrift(f"evolved state left the state space: {exc}") from exc


def _check_times(times):
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValidationError("times must be a nonempty 1-d sequence")
    if t[0] < 0 or np.any(np.diff(t) <= 0):
        raise ValidationError("times must be nonnegative and strictly increasing")
    return t


def evolve(
    rho0,
    model: LindbladModel,
    times,
    hamiltonian=None,
    observables=("concurrence", "entropy", "lambda_max"),
    mix: ProjectorMix | None = None,
    max_dim: int = MAX_DIM,
) -> Trajectory:
    """States at ``times`` via exp(L dt) on the vectorized density matrix.

    Propagators are cached per distinct step, so uniform grids cost one
    matrix exponential.
    """
    rho0 = as_density(rho0)
    if rho0.dims != model.dims:
        raise ValidationError(f"state dims {rho0.dims} do not match model dims {model.dims}")
    t = _check_times(times)
    L = build_liouvillian(model, hamiltonian, max_dim)
    d = model.dim
    cache = {}
    vec = np.asarray(rho0.matrix, dtype=complex).ravel()
    prev = 0.0
    states = []
    for ti in t:
        dt = ti - prev
        if dt > 0:
            key = round(dt, 12)
            prop = cache.get(key)
            if prop is None:
                prop = cache[key] = expm(L * dt)
            vec = prop @ vec
        state = _clean(vec.reshape(d, d), model.dims)
        vec = np.asarray(state.matrix).ravel()
        states.append(state)
        prev = ti
    return Trajectory(t, states, _record(states, observables, mix))


# ------------------------------------------------------------------ closed forms


@dataclass(frozen=True)
class DecayValue:
    value: float
    first_order: bool = False

    def __float__(self):
        return self.value


_BELL_KINDS = {"psi+": "psi", "psi-": "psi", "phi+": "phi", "phi-": "phi"}

THERMAL_VALIDITY = 0.05


def bell_decay_closed_form(state: str, channel: ChannelKind, t: float) -> DecayValue:
    """Concurrence of an initial Bell state under independent per-qubit channels."""
    family = _BELL_KINDS.get(state.lower().replace("±", "+"))
    if family is None:
        raise ValidationError(f"unknown Bell state {state!r}")
    if t < 0:
        raise OutOfRange(f"t must be >= 0, got {t}")
    g = channel.gamma
    if isinstance(channel, InfiniteTemperature):
        return DecayValue(max(math.exp(-4 * g * t) / 2 + math.exp(-2 * g * t) - 0.5, 0.0))
    if isinstance(channel, Dephasing):
        return DecayValue(math.exp(-g * t))
    if isinstance(channel, ZeroTemperature):
        return DecayValue(math.exp(-(1 if family == "psi" else 2) * g * t))
    n = channel.nbar
    if g * t > THERMAL_VALIDITY:
        raise UnsupportedExactForm(
            f"thermal closed form only to first order (Gamma t <= {THERMAL_VALIDITY}); use evolve"
        )
    if family == "psi":
        slope = 2 * n + 1 + 2 * math.sqrt(n * (n + 1))
    else:
        slope = 2 * (2 * n + 1)
    return DecayValue(1 - slope * g * t, first_order=True)


def asymptotic_singular_gap(nbar: float) -> float:
    """Long-time limit of sigma_1 - sum_{i>1} sigma_i for Bell states under a thermal bath."""
    nbar = _rate(nbar, "nbar")
    if math.isinf(nbar):
        return -0.5
    return -2 * nbar * (nbar + 1) / (2 * nbar + 1) ** 2


# ------------------------------------------------------------------ random environment


def embedded_maximally_entangled(d1: int, d2: int) -> PureState:
    d = min(d1, d2)
    v = np.zeros(d1 * d2, dtype=complex)
    for i in range(d):
        v[i * d2 + i] = 1 / math.sqrt(d)
    return PureState(v, (d1, d2))


def random_open_evolution(
    system_dims,
    env_dim: int,
    alpha_se: float,
    alpha_s: float,
    seed,
    times,
    observables=("concurrence", "entropy", "lambda_max"),
) -> Trajectory:
    """System-environment unitary evolution with random Hamiltonians, environment traced out.

    H = alpha_se H_se + alpha_s H_s x 1 + 1 (the environment Hamiltonian is
    the identity). H_se and H_s use independent child seeds of ``seed``.
    The bipartite concurrence observable is the quasi-pure estimate.
    """
    d1, d2 = (int(x) for x in system_dims)
    if min(d1, d2, env_dim) < 2:
        raise BadDimension("all dimensions must be >= 2")
    ds = d1 * d2
    dt = ds * env_dim
    if dt > 4096:
        raise DimensionTooLarge(f"total dimension {dt} too large")
    ss_se, ss_s = np.random.SeedSequence(seed).spawn(2)
    h_se = random_hermitian(dt, ss_se)
    h_s = random_hermitian(ds, ss_s)
    h = alpha_se * h_se + alpha_s * np.kron(h_s, np.eye(env_dim)) + np.eye(dt)
    lam, q = np.linalg.eigh(h)
    psi_s = embedded_maximally_entangled(d1, d2).vector
    env0 = np.zeros(env_dim)
    env0[0] = 1.0
    c0 = q.conj().T @ np.kron(psi_s, env0)
    t = _check_times(times)
    states = []
    for ti in t:
        psi = (q * np.exp(-1j * lam * ti)) @ c0
        m = psi.reshape(ds, env_dim)
        rho = m @ m.conj().T
        states.append(_clean(rho, (d1, d2)))
    mix = ProjectorMix.bipartite()
    return Trajectory(t, states, _record(states, observables, mix))


# ------------------------------------------------------------------ fitting


@dataclass(frozen=True)
class ExpFit:
    A: float
    gamma: float
    B: float
    residual: float
    window: tuple[float, float]
    n_samples: int

    def __call__(self, t):
        return self.A * np.exp(-self.gamma * np.asarray(t)) + self.B


def default_window(times, values) -> tuple[int, int]:
    """Index range [i0, i1): first sample below 0.95 v0 up to the first below max(1e-3, B + 1e-3)."""
    v = np.asarray(values)
    v0, b = v[0], v[-1]
    below = np.nonzero(v < 0.95 * v0)[0]
    i0 = int(below[0]) if below.size else 0
    floor = max(1e-3, b + 1e-3)
    end = np.nonzero((v < floor) & (np.arange(v.size) > i0))[0]
    i1 = int(end[0]) + 1 if end.size else v.size
    return i0, i1


def _model(t, a, g, b):
    return a * np.exp(-g * t) + b


def fit_exponential(times, values, window=None, min_samples: int = 8) -> ExpFit:
    """Least-squares fit of A exp(-gamma t) + B, gamma >= 0.

    ``window`` is None (default policy), a (t_start, t_end) pair, or "all".
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape != v.shape or t.ndim != 1:
        raise InsufficientData("times and values must be 1-d arrays of equal length")
    ok = np.isfinite(v)
    t, v = t[ok], v[ok]
    if t.size < min_samples:
        raise InsufficientData(f"need >= {min_samples} finite samples, got {t.size}")
    if window is None:
        i0, i1 = default_window(t, v)
        sel = slice(i0, i1)
        tw, vw = t[sel], v[sel]
    elif window == "all":
        tw, vw = t, v
    else:
        lo, hi = window
        m = (t >= lo) & (t <= hi)
        tw, vw = t[m], v[m]
    if tw.size < min_samples:
        raise InsufficientData(f"window holds {tw.size} samples, need >= {min_samples}")
    b0 = v[-1]
    a0 = v[0] - b0
    pos = vw - b0 > 1e-12 * max(abs(a0), 1e-300)
    if np.count_nonzero(pos) >= 2:
        slope = np.polyfit(tw[pos], np.log(vw[pos] - b0), 1)[0]
        g0 = max(-slope, 1e-12)
    else:
        g0 = 1.0 / max(tw[-1] - tw[0], 1e-12)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            popt, _ = curve_fit(
                _model,
                tw,
                vw,
                p0=[a0, g0, b0],
                bounds=([-np.inf, 0.0, -np.inf], [np.inf, np.inf, np.inf]),
                ftol=1e-15,
                xtol=1e-15,
                gtol=1e-15,
                max_nfev=10000,
            )
    except (RuntimeError, ValueError) as exc:
        raise FitDiverged(f"exponential fit failed: {exc}") from exc
    if not np.all(np.isfinite(popt)):
        raise FitDiverged("exponential fit produced non-finite parameters")
    a, g, b = (float(x) for x in popt)
    rms = float(np.sqrt(np.mean((_model(tw, a, g, b) - vw) ** 2)))
    return ExpFit(a, g, b, rms, (float(tw[0]), float(tw[-1])), int(tw.size))


# ------------------------------------------------------------------ multipartite decay


def named_multiqubit(kind: str, n: int) -> PureState:
    if kind == "ghz":
        return ghz(n)
    if kind == "w":
        return w_state(n)
    raise ValidationError(f"unknown multiqubit family {kind!r}")


def decay_trajectory(
    kind: str,
    n: int,
    channel: ChannelKind,
    times,
    allow_large: bool = False,
) -> Trajectory:
    """Concurrence trajectory of GHZ_n or W_n; c_N quasi-pure for n >= 3, Wootters for n = 2."""
    if n > 5:
        if not allow_large:
            raise DimensionTooLarge(f"N={n} needs allow_large=True (4^N x 4^N Liouvillian)")
        warnings.warn(f"N={n}: dense Liouvillian of size {4**n}, expect long runtimes", stacklevel=2)
    psi = named_multiqubit(kind, n)
    mix = None if n == 2 else default_mix(n)
    model = LindbladModel(n, channel)
    return evolve(psi, model, times, observables=("concurrence",), mix=mix, max_dim=2**n)


def decay_rate(kind: str, n: int, channel: ChannelKind, times, allow_large: bool = False) -> ExpFit:
    traj = decay_trajectory(kind, n, channel, times, allow_large)
    return fit_exponential(traj.times, traj.observables["concurrence"])


def ghz_w_ratio(n: int) -> float:
    """c_N(GHZ_N) / c_N(W_N)."""
    return math.sqrt((1 - 2.0 ** (1 - n)) * n / (n - 1))


__all__ = [
    "ZeroTemperature",
    "Thermal",
    "InfiniteTemperature",
    "Dephasing",
    "ChannelKind",
    "parse_channel",
    "LindbladModel",
    "build_liouvillian",
    "evolve",
    "Trajectory",
    "DecayValue",
    "bell_decay_closed_form",
    "asymptotic_singular_gap",
    "random_open_evolution",
    "embedded_maximally_entangled",
    "ExpFit",
    "fit_exponential",
    "default_window",
    "decay_trajectory",
    "decay_rate",
    "ghz_w_ratio",
    "bell",
    "maximally_entangled",
]
