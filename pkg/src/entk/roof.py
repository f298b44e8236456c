"""Mixed-state concurrence: correlation tensor, T-matrices, bounds and the roof optimizer.

Index convention for the correlation tensor: ``entries[j, k, l, m]`` is
<phi_l phi_m| A |phi_j phi_k>, so (j, k) are ket indices and (l, m) bra
indices. Viewed as a matrix, rows are (j, k) and columns (l, m).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import hadamard
from scipy.optimize import minimize

from .errors import (
    NotConjugation,
    NotLeftUnitary,
    NotSymmetric,
    NumericalError,
    SeparableDominantEigenvector,
    ValidationError,
)
from .pure import ProjectorMix, default_mix
from .states import (
    Ensemble,
    PureState,
    as_density,
    bipartite_matrix,
    eigen_ensemble,
    random_unitary,
)

log = logging.getLogger(__name__)

SYM_TOL = 1e-10


# ------------------------------------------------------------------ symmetric roof


def takagi(tau, tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Unitary U and nonnegative s with U tau U^T = diag(s), s decreasing.

    Uses the real symmetric embedding [[Re, Im], [Im, -Re]], whose positive
    eigenpairs (s, [x; y]) give Takagi vectors z = x + iy with
    tau conj(z) = s z. Null directions are completed orthonormally.
    """
    tau = np.asarray(tau, dtype=complex)
    n = tau.shape[0]
    a, b = tau.real, tau.imag
    m = np.block([[a, b], [b, -a]])
    m = (m + m.T) / 2
    w, v = np.linalg.eigh(m)
    scale = max(float(w[-1]), 0.0)
    pos = w > tol * max(scale, 1e-300)
    w, v = w[pos][::-1], v[:, pos][:, ::-1]
    z = v[:n] + 1j * v[n:]
    z /= np.linalg.norm(z, axis=0)
    k = z.shape[1]
    if k < n:
        # orthonormal complement of span(z)
        q, _ = np.linalg.qr(np.hstack([z, np.eye(n, dtype=complex)]))
        z = np.hstack([z, q[:, k:n]])
    s = np.concatenate([w, np.zeros(n - k)])
    return s, z.conj().T


def roof_gap(tau) -> float:
    """sigma_1 - sum_{i>1} sigma_i for the singular values of ``tau`` (unclamped)."""
    s = np.linalg.svd(np.asarray(tau), compute_uv=False)
    if s.size == 0:
        return 0.0
    return float(s[0] - s[1:].sum())


def _closing_phases(s: np.ndarray) -> np.ndarray:
    """Phases phi_j (j >= 1) with sum_{j>=1} s_j e^{i phi_j} = s_0, assuming s_0 <= sum s_j.

    Greedy two-group partition (largest first into the lighter group) keeps
    the group sums a, b within s_1 <= s_0 of each other, so the triangle
    (s_0, a, b) always closes.
    """
    phi = np.zeros(s.size)
    s0 = s[0]
    if s0 <= 0:
        return phi
    groups = ([], [])
    sums = [0.0, 0.0]
    for j in np.argsort(-s[1:]) + 1:
        g = 0 if sums[0] <= sums[1] else 1
        groups[g].append(j)
        sums[g] += s[j]
    a, b = sums
    if b == 0.0:
        return phi
    # atan2 with Kahan's stable Heron area; acos loses digits near flat triangles
    x, y, z = sorted((s0, a, b), reverse=True)
    area4 = math.sqrt(max(0.0, (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))))
    phi[groups[0]] = math.atan2(area4, s0**2 + a**2 - b**2)
    phi[groups[1]] = -math.atan2(area4, s0**2 + b**2 - a**2)
    return phi


def symmetric_roof_infimum(tau) -> tuple[float, np.ndarray]:
    """inf_V sum_i |[V tau V^T]_ii| over left-unitary V, and a V attaining it.

    The returned V has 2^k >= n rows: a Hadamard matrix with phase factors on
    all but the first column, composed with the Takagi unitary of ``tau``.
    """
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
        raise NotSymmetric(f"square matrix required, got shape {tau.shape}")
    dev = float(np.max(np.abs(tau - tau.T))) if tau.size else 0.0
    if dev > SYM_TOL * max(1.0, float(np.max(np.abs(tau)))):
        raise NotSymmetric(f"||tau - tau^T||_max = {dev:.3e}", dev)
    n = tau.shape[0]
    s, u = takagi((tau + tau.T) / 2)
    gap = float(s[0] - s[1:].sum())
    if gap > 0:
        value, phi = gap, np.zeros(n)
    else:
        value, phi = 0.0, _closing_phases(s)
    size = 1 << max(0, (n - 1).bit_length())
    h = hadamard(size).astype(complex)[:, :n] / math.sqrt(size)
    c = 1j * np.exp(0.5j * phi)
    c[0] = 1.0
    return value, (h * c) @ u


def decomposition_value(tau, V) -> float:
    """sum_i |[V tau V^T]_ii|."""
    V = np.asarray(V)
    return float(np.abs(np.einsum("ij,jk,ik->i", V, tau, V)).sum())


# ------------------------------------------------------------------ exact cases

SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def wootters_tau(rho) -> np.ndarray:
    rho = as_density(rho)
    if rho.dims != (2, 2):
        raise ValidationError(f"two-qubit state required, got dims {rho.dims}")
    psi = eigen_ensemble(rho).members
    return psi @ SIGMA_YY @ psi.T


def wootters_concurrence_2x2(rho) -> float:
    return max(roof_gap(wootters_tau(rho)), 0.0)


def theta_concurrence(rho, S) -> float:
    """Convex-roof Theta-concurrence for the conjugation psi -> S psi*."""
    rho = as_density(rho)
    S = np.asarray(S, dtype=complex)
    d = rho.dim
    if S.shape != (d, d):
        raise NotConjugation(f"S must be {d}x{d}, got {S.shape}")
    unit = float(np.max(np.abs(S @ S.conj().T - np.eye(d))))
    sym = float(np.max(np.abs(S - S.T)))
    if unit > 1e-10 or sym > 1e-10:
        raise NotConjugation(f"S not symmetric unitary (unitarity {unit:.2e}, symmetry {sym:.2e})")
    psi = eigen_ensemble(rho).members
    tau = psi.conj() @ S @ psi.conj().T
    return max(roof_gap(tau), 0.0)


# ------------------------------------------------------------------ correlation tensor


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    entries: np.ndarray  # [j, k, l, m]
    ensemble: Ensemble
    mix: ProjectorMix

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def matrix(self) -> np.ndarray:
        n = self.n
        return self.entries.reshape(n * n, n * n)


def _as_ensemble(state) -> Ensemble:
    if isinstance(state, Ensemble):
        return state
    if isinstance(state, PureState):
        return Ensemble(state.vector[None, :], state.dims)
    return eigen_ensemble(as_density(state))


def _reduced_blocks(members, dims, subset, bra):
    """R[j, l] = Tr_{complement}|phi_j><bra_l| as (n, n_bra, dT, dT)."""
    n = len(dims)
    rest = [i for i in range(n) if i not in subset]
    dt = math.prod(dims[i] for i in subset) if subset else 1
    perm = [0] + [1 + i for i in subset] + [1 + i for i in rest]
    kets = members.reshape((-1,) + dims).transpose(perm).reshape(members.shape[0], dt, -1)
    bras = bra.reshape((-1,) + dims).transpose(perm).reshape(bra.shape[0], dt, -1)
    return np.einsum("jac,lbc->jlab", kets, bras.conj())


def _swap_terms(members, dims, subset, bra_l, bra_m):
    """<bra_l bra_m| S_T |phi_j phi_k> as array [j, k, l, m]."""
    r_jl = _reduced_blocks(members, dims, subset, bra_l)
    r_km = r_jl if bra_m is bra_l else _reduced_blocks(members, dims, subset, bra_m)
    return np.einsum("jlab,kmba->jklm", r_jl, r_km)


def _tensor_entries(members, dims, mix, bra_l=None, bra_m=None):
    bra_l = members if bra_l is None else bra_l
    bra_m = members if bra_m is None else bra_m
    n = len(dims)
    coeffs = mix.subset_coefficients()
    full = tuple(range(n))
    out = np.zeros((members.shape[0],) * 2 + (bra_l.shape[0], bra_m.shape[0]), dtype=complex)
    done = set()
    for t, c in coeffs.items():
        if t in done:
            continue
        comp = tuple(i for i in full if i not in t)
        c_comp = coeffs.get(comp, 0.0)
        size_t = math.prod(dims[i] for i in t) if t else 1
        size_c = math.prod(dims[i] for i in comp) if comp else 1
        # S_comp = S_t S_full: the complement term is the t term with kets swapped
        small, c_small, c_big = (t, c, c_comp) if size_t <= size_c else (comp, c_comp, c)
        term = _swap_terms(members, dims, list(small), bra_l, bra_m)
        out += c_small * term
        if c_big and comp != t:
            out += c_big * term.transpose(1, 0, 2, 3)
        done.update({t, comp})
    return out


def build_correlation_tensor(state, mix: ProjectorMix | None = None) -> CorrelationTensor:
    """Correlation tensor over the eigen-ensemble (decreasing eigenvalues) or a given ensemble."""
    ens = _as_ensemble(state)
    mix = default_mix(len(ens.dims)) if mix is None else mix
    if mix.n_factors != len(ens.dims):
        raise ValidationError(f"mix acts on {mix.n_factors} factors, state has {len(ens.dims)}")
    entries = _tensor_entries(np.asarray(ens.members), ens.dims, mix)
    return CorrelationTensor(entries, ens, mix)


def dominant_column(state, mix: ProjectorMix | None = None) -> np.ndarray:
    """The n x n slice entries[:, :, 0, 0], without building the full tensor."""
    ens = _as_ensemble(state)
    mix = default_mix(len(ens.dims)) if mix is None else mix
    members = np.asarray(ens.members)
    first = members[:1]
    return _tensor_entries(members, ens.dims, mix, first, first)[:, :, 0, 0]


# ------------------------------------------------------------------ T-matrices


@dataclass(frozen=True, eq=False)
class TMatrixFamily:
    matrices: np.ndarray  # (m, n, n)
    provenance: str
    degenerate: bool = False
    eigenvalues: np.ndarray | None = None

    def __len__(self):
        return self.matrices.shape[0]

    def reconstruct(self) -> np.ndarray:
        """sum_alpha conj(T_lm) T_jk as entries [j, k, l, m]."""
        t = self.matrices
        return np.einsum("ajk,alm->jklm", t, t.conj())

    def combine(self, z) -> np.ndarray:
        return np.tensordot(np.asarray(z), self.matrices, axes=1)


def antisymmetric_basis_T(state, split=1) -> TMatrixFamily:
    """T^alpha_jk = <chi_alpha|phi_j phi_k> for chi = (|ij>-|ji>) x (|kl>-|lk>), ordered (i<j, k<l)."""
    ens = _as_ensemble(state)
    mats = np.array([bipartite_matrix(v, ens.dims, split) for v in ens.members])
    n1, n2 = mats.shape[1:]
    out = []
    for i in range(n1):
        for j in range(i + 1, n1):
            for k in range(n2):
                for l in range(k + 1, n2):
                    a_ik, a_il = mats[:, i, k], mats[:, i, l]
                    a_jk, a_jl = mats[:, j, k], mats[:, j, l]
                    t = (
                        np.outer(a_ik, a_jl)
                        - np.outer(a_il, a_jk)
                        - np.outer(a_jk, a_il)
                        + np.outer(a_jl, a_ik)
                    )
                    out.append(t)
    n = len(ens)
    mats_t = np.array(out) if out else np.zeros((0, n, n), dtype=complex)
    return TMatrixFamily(mats_t, "antisymmetric-basis")


def spectral_T(tensor: CorrelationTensor, cutoff: float = 1e-12) -> TMatrixFamily:
    """T-matrices from the eigen-decomposition of the tensor viewed as an n^2 x n^2 matrix."""
    n = tensor.n
    mat = tensor.matrix()
    mat = (mat + mat.conj().T) / 2
    mu, vec = np.linalg.eigh(mat)
    order = np.argsort(mu)[::-1]
    mu, vec = mu[order], vec[:, order]
    keep = mu > cutoff * max(1.0, mu[0] if mu.size else 0.0)
    mu, vec = mu[keep], vec[:, keep]
    mats = (vec * np.sqrt(mu)).T.reshape(-1, n, n)
    asym = float(np.max(np.abs(mats - mats.transpose(0, 2, 1)))) if mats.size else 0.0
    if asym > 1e-9:
        raise NumericalError(f"spectral T-matrix not symmetric (defect {asym:.2e})")
    mats = (mats + mats.transpose(0, 2, 1)) / 2
    degenerate = bool(mu.size > 1 and np.any(np.diff(mu) > -1e-9 * max(mu[0], 1e-300)))
    return TMatrixFamily(mats, "spectral", degenerate, mu)


def algebraic_lower_bounds(family: TMatrixFamily) -> list[float]:
    """One bound sigma_1 - sum_{i>1} sigma_i per matrix; negative values are kept."""
    return [roof_gap(t) for t in family.matrices]


# ------------------------------------------------------------------ optimized bound


@dataclass
class OptimizedBound:
    value: float
    z: np.ndarray
    n_starts: int = 0
    n_converged: int = 0
    iterations: list = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.n_converged > 0


def _z_from_params(x, m):
    z = x[:m] + 1j * x[m:]
    nrm = np.linalg.norm(z)
    return z / nrm if nrm > 0 else z


def _start_rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def optimized_lower_bound(
    family: TMatrixFamily,
    restarts: int = 20,
    max_iters: int = 500,
    seed: int = 0,
    tol: float = 1e-9,
    extra_starts=(),
    polish_rounds: int = 10,
) -> OptimizedBound:
    """Maximize the roof gap of sum_alpha z_alpha T^alpha over the unit sphere in C^m.

    Nelder-Mead on 2m unconstrained reals mapped to the sphere by
    normalization. Starts: every algebraic point e_alpha, any ``extra_starts``,
    then ``restarts`` random points, each seeded by (seed, restart index).
    """
    mats = family.matrices
    m = mats.shape[0]
    if m == 0:
        raise ValidationError("empty T-matrix family")

    n = mats.shape[1]
    flat = mats.reshape(m, n * n)

    def gap(x):
        # the gap is positively homogeneous, so normalize after the SVD
        z = x[:m] + 1j * x[m:]
        nrm = math.sqrt(float(x @ x))
        if nrm == 0:
            return 0.0
        s = np.linalg.svd((z @ flat).reshape(n, n), compute_uv=False)
        return float(s[0] - s[1:].sum()) / nrm

    best_val, best_z = -np.inf, None
    for a, t in enumerate(mats):
        g = roof_gap(t)
        if g > best_val:
            best_val, best_z = g, np.eye(m, dtype=complex)[a]
    if m == 1:
        return OptimizedBound(best_val, best_z, 1, 1, [0])

    starts = []
    for a in range(m):
        x = np.zeros(2 * m)
        x[a] = 1.0
        starts.append(x)
    for z in extra_starts:
        z = np.asarray(z, dtype=complex)
        starts.append(np.concatenate([z.real, z.imag]))
    for r in range(restarts):
        rng = _start_rng(seed, r)
        starts.append(rng.standard_normal(2 * m))

    def run(x0, step):
        simplex = np.vstack([x0, x0 + step * np.eye(2 * m)])
        return minimize(
            lambda x: -gap(x),
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxiter": max_iters,
                "maxfev": 4 * max_iters,
                "fatol": tol,
                "xatol": np.inf,
                "adaptive": m > 2,
            },
        )

    n_conv, iters = 0, []
    best_x = None
    for x0 in starts:
        x0 = x0 / np.linalg.norm(x0)
        res = run(x0, 0.25)
        iters.append(int(res.nit))
        if res.success:
            n_conv += 1
        else:
            log.debug("simplex start did not converge: %s", res.message)
        val = -float(res.fun)
        if val > best_val:
            best_val, best_z, best_x = val, _z_from_params(res.x, m), res.x
    # polish: restart the simplex around the incumbent until it converges in place
    step = 0.05
    for _ in range(polish_rounds if best_x is not None else 0):
        x0 = best_x / np.linalg.norm(best_x)
        res = run(x0, step)
        iters.append(int(res.nit))
        val = -float(res.fun)
        gain = val - best_val
        if val > best_val:
            best_val, best_z, best_x = val, _z_from_params(res.x, m), res.x
        if res.success and gain <= tol:
            n_conv += 1
            break
        step = max(step * 0.5, 1e-4)
    return OptimizedBound(best_val, best_z, len(starts), n_conv, iters)


# ------------------------------------------------------------------ quasi-pure


def quasi_pure_matrix(column, eps: float = 1e-14) -> np.ndarray:
    a11 = float(np.real(column[0, 0]))
    if a11 <= eps:
        raise SeparableDominantEigenvector(
            f"dominant eigenvector is (numerically) separable: A_11^11 = {a11:.3e}"
        )
    return column / math.sqrt(a11)


def quasi_pure_approximation(tensor: CorrelationTensor) -> float:
    """max{gap, 0} of the rank-one surrogate T_jk = A_jk^11 / sqrt(A_11^11)."""
    return max(roof_gap(quasi_pure_matrix(tensor.entries[:, :, 0, 0])), 0.0)


def quasi_pure(state, mix: ProjectorMix | None = None) -> float:
    """Quasi-pure approximation computed from the dominant slice only."""
    return max(roof_gap(quasi_pure_matrix(dominant_column(state, mix))), 0.0)


def quasi_pure_z(family: TMatrixFamily) -> np.ndarray:
    """Unit coefficients expressing the quasi-pure surrogate in the family."""
    z = family.matrices[:, 0, 0].conj()
    nrm = np.linalg.norm(z)
    if nrm == 0:
        raise SeparableDominantEigenvector("all T^alpha_11 vanish")
    return z / nrm


# ------------------------------------------------------------------ concurrence vector


def concurrence_vector(V, family: TMatrixFamily) -> list[float]:
    """C_alpha = sum_j |[V T^alpha V^T]_jj| for a left-unitary V."""
    V = np.asarray(V, dtype=complex)
    n = family.matrices.shape[1]
    if V.ndim != 2 or V.shape[1] != n:
        raise NotLeftUnitary(f"V has shape {V.shape}, ensemble cardinality is {n}")
    dev = float(np.max(np.abs(V.conj().T @ V - np.eye(n))))
    if dev > 1e-10:
        raise NotLeftUnitary(f"||V^dag V - 1||_max = {dev:.3e}", dev)
    diag = np.einsum("ij,ajk,ik->ai", V, family.matrices, V)
    return [float(x) for x in np.abs(diag).sum(axis=1)]


# ------------------------------------------------------------------ upper bound


@dataclass
class UpperBound:
    value: float
    ensemble: Ensemble
    V: np.ndarray
    iterations: int
    stalled: bool
    converged: bool


class RoofObjective:
    """C(U) = sum_i sqrt(sum_alpha |[U T^alpha U^T]_ii|^2) and its gradient.

    ``gradient`` returns the Hermitian G with
    C(exp(i eps K) U) = C(U) + eps Tr[K G] + O(eps^2).
    """

    def __init__(self, mats, cardinality, floor: float = 1e-14):
        m, n, _ = mats.shape
        self.n = n
        self.k = cardinality
        t = np.zeros((m, cardinality, cardinality), dtype=complex)
        t[:, :n, :n] = mats
        self.mats = t
        self.floor = floor

    def _transformed(self, U):
        return np.einsum("ij,ajk,lk->ail", U, self.mats, U, optimize=True)

    def value(self, U) -> float:
        diag = np.einsum("ij,ajk,ik->ai", U, self.mats, U, optimize=True)
        return float(np.sqrt((np.abs(diag) ** 2).sum(axis=0)).sum())

    def value_and_gradient(self, U):
        tp = self._transformed(U)
        idx = np.arange(self.k)
        diag = tp[:, idx, idx]
        d = (np.abs(diag) ** 2).sum(axis=0)
        s = np.sqrt(d)
        x = np.einsum("aji,ai->ji", tp, diag.conj())
        inv = np.where(d > self.floor, 1.0 / np.where(s > 0, s, 1.0), 0.0)
        w = x * inv[None, :]
        g = 1j * (w - w.conj().T)
        return float(s.sum()), g, d


def _hermitian_exp(h, eps):
    """exp(-i eps H) for Hermitian H, with the eigendecomposition reused per direction."""
    lam, q = h
    return (q * np.exp(-1j * eps * lam)) @ q.conj().T


def default_cardinality(rank: int) -> int:
    return max(rank, min(rank * rank, rank + 4, 16))


def concurrence_upper_bound(
    state,
    mix: ProjectorMix | None = None,
    cardinality: int | None = None,
    max_iters: int = 2000,
    seed: int = 0,
    eps0: float = 1e-2,
    shrink: float = 0.5,
    gtol: float = 1e-12,
    ftol: float = 1e-14,
    family: TMatrixFamily | None = None,
) -> UpperBound:
    """Minimize C(U) over unitaries on a fixed-cardinality ensemble.

    Riemannian conjugate gradient (Polak-Ribiere+) with updates
    U <- exp(-i eps H) U and Armijo backtracking. The returned value is
    realized by the returned ensemble, so it is always a valid upper bound.
    """
    ens = _as_ensemble(state)
    mix = default_mix(len(ens.dims)) if mix is None else mix
    r = len(ens)
    if family is None:
        family = spectral_T(build_correlation_tensor(ens, mix))
    if r == 1:
        val = math.sqrt(max(0.0, float(np.real(family.reconstruct()[0, 0, 0, 0])))) if len(family) else 0.0
        V = np.ones((1, 1), dtype=complex)
        return UpperBound(val, ens, V, 0, False, True)
    k = default_cardinality(r) if cardinality is None else int(cardinality)
    if k < r:
        raise ValidationError(f"cardinality {k} below rank {r}")
    if len(family) == 0:
        V = np.eye(k, r, dtype=complex)
        return UpperBound(0.0, Ensemble(V @ ens.members, ens.dims), V, 0, False, True)

    obj = RoofObjective(family.matrices, k)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 0x5EED]))
    U = random_unitary(k, rng)
    c, g, _ = obj.value_and_gradient(U)
    best_c, best_U = c, U
    direction = g
    eps = eps0
    stalled = converged = False
    it = 0
    small_steps = 0
    for it in range(1, max_iters + 1):
        gnorm2 = float(np.real(np.vdot(g, g)))
        if gnorm2 < gtol**2:
            stalled = True
            break
        slope = float(np.real(np.vdot(direction, g)))
        if slope <= 0:
            direction, slope = g, gnorm2
        eig = np.linalg.eigh(direction)
        step = min(eps * 4, 1.0)
        while True:
            U_new = _hermitian_exp(eig, step) @ U
            c_new = obj.value(U_new)
            if c_new <= c - 1e-4 * step * slope:
                break
            step *= shrink
            if step < 1e-16:
                break
        if step < 1e-16:
            if direction is not g:
                direction = g
                continue
            converged = True
            break
        eps = step
        half = _hermitian_exp(eig, step / 2)
        U = U_new
        c_old = c
        c, g_new, _ = obj.value_and_gradient(U)
        if c < best_c:
            best_c, best_U = c, U
        g_t = half @ g @ half.conj().T
        d_t = half @ direction @ half.conj().T
        beta = float(np.real(np.vdot(g_new - g_t, g_new))) / gnorm2
        beta = max(beta, 0.0)
        if it % (k * k) == 0:
            beta = 0.0
        direction = g_new + beta * d_t
        g = g_new
        if c_old - c <= ftol * max(c_old, 1e-300):
            small_steps += 1
            if small_steps >= 20:
                converged = True
                break
        else:
            small_steps = 0
    V = best_U[:, :r]
    return UpperBound(best_c, Ensemble(V @ ens.members, ens.dims), V, it, stalled, converged)


# ------------------------------------------------------------------ report


@dataclass
class BoundReport:
    lower_algebraic: list
    lower_optimized: float
    lower_optimized_raw: float
    quasi_pure: float | None
    upper: float | None
    diagnostics: dict

    def as_dict(self) -> dict:
        return {
            "lower_algebraic": [float(x) for x in self.lower_algebraic],
            "best_algebraic": float(max(self.lower_algebraic)) if self.lower_algebraic else None,
            "lower_optimized": float(self.lower_optimized),
            "lower_optimized_raw": float(self.lower_optimized_raw),
            "quasi_pure": None if self.quasi_pure is None else float(self.quasi_pure),
            "upper": None if self.upper is None else float(self.upper),
            "diagnostics": self.diagnostics,
        }


def compute_bounds(
    state,
    mix: ProjectorMix | None = None,
    restarts: int = 20,
    max_iters: int = 500,
    seed: int = 0,
    upper: bool = True,
    upper_iters: int = 2000,
    cardinality: int | None = None,
) -> BoundReport:
    """The full estimate hierarchy for one state."""
    ens = _as_ensemble(state)
    mix = default_mix(len(ens.dims)) if mix is None else mix
    tensor = build_correlation_tensor(ens, mix)
    family = spectral_T(tensor)
    diag = {"rank": len(ens), "n_T": len(family), "degenerate_spectrum": family.degenerate}
    if len(family) == 0:
        # A vanishes on the whole ensemble span: every estimate is zero
        ub = 0.0 if upper else None
        return BoundReport([0.0], 0.0, 0.0, 0.0, ub, diag)
    alg = algebraic_lower_bounds(family)
    try:
        qp = quasi_pure_approximation(tensor)
        extra = [quasi_pure_z(family)]
    except SeparableDominantEigenvector:
        qp, extra = None, []
    opt = optimized_lower_bound(family, restarts, max_iters, seed, extra_starts=extra)
    diag.update(
        simplex_starts=opt.n_starts,
        simplex_converged=opt.n_converged,
        simplex_iterations=int(sum(opt.iterations)),
    )
    ub = None
    if upper:
        up = concurrence_upper_bound(
            ens, mix, cardinality, upper_iters, seed, family=family
        )
        ub = up.value
        diag.update(
            upper_iterations=up.iterations,
            upper_converged=up.converged,
            upper_stalled=up.stalled,
            cardinality=up.V.shape[0],
        )
    return BoundReport(alg, max(opt.value, 0.0), opt.value, qp, ub, diag)
