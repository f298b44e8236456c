"""Quantum-state data model: validated states, reductions, spectra, ensembles.

Factor indices are 0-based throughout. Matrices use the row-major
(C-order) tensor-product convention: the basis index of ``|i_0 i_1 ...>`` is
``np.ravel_multi_index((i_0, i_1, ...), dims)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadBipartition,
    BadDimension,
    BadSubset,
    DimensionMismatch,
    NonHermitian,
    NotLeftUnitary,
    NotNormalized,
    NotPositive,
    TraceNotOne,
    ValidationError,
)

TOL = 1e-10
RANK_CUTOFF = 1e-12


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def check_dims(dims, total=None) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise BadDimension(f"every factor dimension must be >= 2, got {dims}")
    if total is not None and math.prod(dims) != total:
        raise DimensionMismatch(
            f"product of dims {dims} is {math.prod(dims)}, matrix dimension is {total}"
        )
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    vector: np.ndarray
    dims: tuple[int, ...]

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    def density(self) -> "DensityMatrix":
        v = self.vector
        return DensityMatrix(_frozen(np.outer(v, v.conj())), self.dims)

    def tensor(self, other: "PureState") -> "PureState":
        return PureState(_frozen(np.kron(self.vector, other.vector)), self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    dims: tuple[int, ...]

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigvalsh(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(_frozen(np.kron(self.matrix, other.matrix)), self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Subnormalized pure states stored as rows of ``members``."""

    members: np.ndarray
    dims: tuple[int, ...]

    def __len__(self):
        return self.members.shape[0]

    def density(self) -> np.ndarray:
        m = self.members
        return m.T @ m.conj()

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.members, axis=1)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left_basis: np.ndarray  # columns
    right_basis: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        s = np.sqrt(self.coefficients)
        return np.einsum("i,ai,bi->ab", s, self.left_basis, self.right_basis).ravel()


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.density()
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def validate_density(matrix, dims, tol: float = TOL) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity; return a DensityMatrix.

    All failing invariants are collected. The exception raised has the type
    of the first failure and lists the others in ``violations``.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    dims = check_dims(dims, m.shape[0])
    violations = []
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > tol:
        violations.append(NonHermitian(f"||M - M^dag||_max = {herm:.3e}", herm))
    tr = np.trace(m)
    dev = abs(tr - 1.0)
    if dev > tol:
        violations.append(TraceNotOne(f"|Tr M - 1| = {dev:.3e}", dev))
    lam_min = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    if lam_min < -tol:
        violations.append(NotPositive(f"minimum eigenvalue {lam_min:.3e}", -lam_min))
    if violations:
        first = violations[0]
        msg = "; ".join(str(v) for v in violations)
        raise type(first)(msg, first.deviation, violations)
    return DensityMatrix(_frozen(m), dims)


def pure_state(vector, dims, tol: float = TOL, normalize: bool = False) -> PureState:
    v = np.asarray(vector, dtype=complex).ravel()
    dims = check_dims(dims, v.size)
    n = np.linalg.norm(v)
    if normalize:
        v = v / n
    elif abs(n**2 - 1) > tol:
        raise NotNormalized(f"squared norm {n**2:.12g} differs from 1", abs(n**2 - 1))
    return PureState(_frozen(v), dims)


def _check_subset(subset, n) -> tuple[int, ...]:
    s = tuple(sorted(set(int(i) for i in subset)))
    if not s:
        raise BadSubset("subset is empty")
    if s[0] < 0 or s[-1] >= n:
        raise BadSubset(f"factor index out of range in {s} for {n} factors")
    if len(s) == n:
        raise BadSubset("subset contains every factor")
    return s


def reduce_matrix(matrix, dims, keep) -> np.ndarray:
    """Partial trace of a raw operator, keeping factors ``keep`` (sorted)."""
    n = len(dims)
    keep = sorted(keep)
    drop = [i for i in range(n) if i not in keep]
    dk = math.prod(dims[i] for i in keep) if keep else 1
    dd = math.prod(dims[i] for i in drop) if drop else 1
    t = np.asarray(matrix).reshape(dims + dims)
    perm = keep + drop + [n + i for i in keep] + [n + i for i in drop]
    t = t.transpose(perm).reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def partial_trace(rho, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the factors listed in ``keep``."""
    rho = as_density(rho)
    keep = _check_subset(keep, rho.n_factors)
    red = reduce_matrix(rho.matrix, rho.dims, list(keep))
    return DensityMatrix(_frozen(red), tuple(rho.dims[i] for i in keep))


def partial_transpose(rho, subsystem: int = 0) -> np.ndarray:
    rho = as_density(rho)
    n = rho.n_factors
    if not 0 <= subsystem < n:
        raise BadSubset(f"factor index {subsystem} out of range for {n} factors")
    t = rho.matrix.reshape(rho.dims + rho.dims)
    t = np.swapaxes(t, subsystem, n + subsystem)
    return t.reshape(rho.dim, rho.dim)


def is_ppt(rho, subsystem: int = 0, tol: float = TOL) -> tuple[bool, float]:
    """Whether the partial transpose is positive; also its smallest eigenvalue."""
    pt = partial_transpose(rho, subsystem)
    lam = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])
    return lam >= -tol, lam


def purity(rho) -> float:
    m = as_density(rho).matrix
    return float(np.real(np.einsum("ij,ji->", m, m)))


def von_neumann_entropy(rho) -> float:
    """Entropy in nats, with 0 ln 0 = 0."""
    lam = as_density(rho).eigvalsh()
    lam = lam[lam > 1e-15]
    return float(max(0.0, -np.sum(lam * np.log(lam))))


def _split_groups(split, n) -> tuple[list[int], list[int]]:
    if isinstance(split, (int, np.integer)):
        first = list(range(int(split)))
    else:
        first = sorted(set(int(i) for i in split))
    second = [i for i in range(n) if i not in first]
    if not first or not second or any(i < 0 or i >= n for i in first):
        raise BadBipartition(f"invalid bipartition {split!r} of {n} factors")
    return first, second


def bipartite_matrix(vector, dims, split=1) -> np.ndarray:
    """Reshape a state vector into the (left group) x (right group) coefficient matrix."""
    first, second = _split_groups(split, len(dims))
    t = np.asarray(vector).reshape(dims).transpose(first + second)
    return t.reshape(math.prod(dims[i] for i in first), -1)


def schmidt_decompose(psi: PureState, split=1) -> SchmidtDecomposition:
    """Schmidt coefficients (squared singular values) of a pure state.

    ``split`` is either the number of leading factors forming the left
    group, or an explicit list of left-group factor indices.
    """
    b = bipartite_matrix(psi.vector, psi.dims, split)
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    lam = s**2
    return SchmidtDecomposition(lam, u, vh.T)


def majorizes(a, b, tol: float = 1e-9) -> bool:
    """True iff probability vector ``a`` majorizes ``b``."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    for v in (a, b):
        if abs(v.sum() - 1) > tol:
            raise NotNormalized(f"vector sums to {v.sum():.12g}", abs(v.sum() - 1))
    n = max(a.size, b.size)
    a = np.sort(np.pad(a, (0, n - a.size)))[::-1]
    b = np.sort(np.pad(b, (0, n - b.size)))[::-1]
    return bool(np.all(np.cumsum(a) >= np.cumsum(b) - 1e-12))


def eigen_ensemble(rho, cutoff: float = RANK_CUTOFF) -> Ensemble:
    """Eigenvectors scaled by sqrt(eigenvalue), by decreasing eigenvalue."""
    rho = as_density(rho)
    lam, vec = np.linalg.eigh(rho.matrix)
    order = np.argsort(lam)[::-1]
    lam, vec = lam[order], vec[:, order]
    keep = lam > cutoff * lam[0]
    members = (vec[:, keep] * np.sqrt(lam[keep])).T
    return Ensemble(_frozen(members), rho.dims)


def transform_ensemble(ens: Ensemble, V, tol: float = TOL) -> Ensemble:
    """New members phi_i = sum_j V_ij psi_j for a left-unitary V."""
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[1] != len(ens):
        raise NotLeftUnitary(f"V has shape {V.shape}, ensemble has {len(ens)} members")
    dev = float(np.max(np.abs(V.conj().T @ V - np.eye(V.shape[1]))))
    if dev > tol:
        raise NotLeftUnitary(f"||V^dag V - 1||_max = {dev:.3e}", dev)
    return Ensemble(_frozen(V @ ens.members), ens.dims)


# ---------------------------------------------------------------- named states


def basis_state(indices, dims) -> PureState:
    dims = check_dims(dims)
    v = np.zeros(math.prod(dims), dtype=complex)
    v[np.ravel_multi_index(tuple(indices), dims)] = 1
    return PureState(_frozen(v), dims)


def maximally_entangled(d: int) -> PureState:
    if d < 2:
        raise BadDimension(f"d must be >= 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = 1 / math.sqrt(d)
    return PureState(_frozen(v), (d, d))


_BELL = {
    "phi+": (0, 3, 1),
    "phi-": (0, 3, -1),
    "psi+": (1, 2, 1),
    "psi-": (1, 2, -1),
}


def bell(kind: str) -> PureState:
    """Bell state; ``kind`` is one of phi+, phi-, psi+, psi-."""
    key = kind.lower().replace("φ", "phi").replace("ψ", "psi").replace("⁺", "+").replace("⁻", "-")
    if key not in _BELL:
        raise BadDimension(f"unknown Bell state {kind!r}")
    i, j, s = _BELL[key]
    v = np.zeros(4, dtype=complex)
    v[i], v[j] = 1 / math.sqrt(2), s / math.sqrt(2)
    return PureState(_frozen(v), (2, 2))


def ghz(n: int) -> PureState:
    if n < 2:
        raise BadDimension(f"N must be >= 2, got {n}")
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / math.sqrt(2)
    return PureState(_frozen(v), (2,) * n)


def w_state(n: int) -> PureState:
    if n < 2:
        raise BadDimension(f"N must be >= 2, got {n}")
    v = np.zeros(2**n, dtype=complex)
    v[[1 << k for k in range(n)]] = 1 / math.sqrt(n)
    return PureState(_frozen(v), (2,) * n)


# ---------------------------------------------------------------- randomness


def random_hermitian(dim: int, seed) -> np.ndarray:
    """Hermitian matrix whose real degrees of freedom are sin(r), r uniform in [0, 10**15).

    The integers come from numpy's PCG64 generator seeded with ``seed``; the
    upper triangle (diagonal included) is drawn row by row, real part before
    imaginary part, and mirrored by conjugation.
    """
    if dim < 1:
        raise BadDimension(f"dim must be >= 1, got {dim}")
    rng = np.random.Generator(np.random.PCG64(seed))
    iu = np.triu_indices(dim)
    r = rng.integers(0, 10**15, size=(len(iu[0]), 2), dtype=np.int64)
    vals = np.sin(r.astype(np.float64))
    h = np.zeros((dim, dim), dtype=complex)
    h[iu] = vals[:, 0] + 1j * vals[:, 1]
    h[np.diag_indices(dim)] = vals[iu[0] == iu[1], 0]
    return np.triu(h) + np.triu(h, 1).conj().T


def random_unitary(n: int, rng) -> np.ndarray:
    """Haar-random unitary (QR of a complex Ginibre matrix with phase fix)."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_state(dims, seed) -> PureState:
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    d = math.prod(dims)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(_frozen(v / np.linalg.norm(v)), dims)


def random_density(dims, rank=None, seed=None) -> DensityMatrix:
    """Random mixed state rho = G G^dag / Tr with G a d x rank Ginibre matrix."""
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    d = math.prod(dims)
    k = d if rank is None else int(rank)
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(_frozen(m / np.trace(m).real), dims)


def local_unitary(rho, unitaries):
    """Apply one unitary per factor; pure states stay pure."""
    u = unitaries[0]
    for x in unitaries[1:]:
        u = np.kron(u, x)
    if isinstance(rho, PureState):
        return PureState(_frozen(u @ rho.vector), rho.dims)
    rho = as_density(rho)
    m = u @ rho.matrix @ u.conj().T
    return DensityMatrix(_frozen(m), rho.dims)


def mixture(states, weights) -> DensityMatrix:
    states = [as_density(s) for s in states]
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise ValidationError("all mixture components need the same dims")
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(_frozen(m / np.sum(weights)), dims)
