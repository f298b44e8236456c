"""Pure-state concurrences.

The multipartite family is defined by a weighted sum of tensor products of
projectors onto the symmetric (+) and antisymmetric (-) subspaces of two
copies of each factor. Expectation values on two copies of a state are never
built from the d^4 operator: each projector is (1 +/- SWAP)/2, so the
operator expands into subset swaps S_T with

    <psi psi| S_T |psi psi> = Tr rho_T^2.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import BadBipartition, OutOfRange, ValidationError
from .states import PureState, bipartite_matrix

Pattern = tuple[int, ...]


def parse_pattern(p) -> Pattern:
    if isinstance(p, str):
        if set(p) - {"+", "-"}:
            raise ValidationError(f"bad sign pattern {p!r}")
        return tuple(1 if c == "+" else -1 for c in p)
    out = tuple(int(s) for s in p)
    if any(s not in (1, -1) for s in out):
        raise ValidationError(f"bad sign pattern {p!r}")
    return out


def pattern_str(p: Pattern) -> str:
    return "".join("+" if s > 0 else "-" for s in p)


@dataclass(frozen=True)
class ProjectorMix:
    """Nonnegative weights over sign patterns, one sign per factor.

    Patterns with an odd number of minus signs have identically vanishing
    expectation values; they are dropped with a warning. The all-plus
    pattern is rejected since it does not vanish on product states.
    """

    n_factors: int
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, w in self.weights.items():
            p = parse_pattern(p)
            if len(p) != self.n_factors:
                raise ValidationError(f"pattern {pattern_str(p)} has wrong length")
            if w < 0:
                raise ValidationError(f"negative weight {w} for {pattern_str(p)}")
            minus = p.count(-1)
            if minus == 0:
                raise ValidationError("the all-plus pattern is not an entanglement functional")
            if minus % 2:
                warnings.warn(
                    f"pattern {pattern_str(p)} has an odd number of minus signs; it contributes 0",
                    stacklevel=3,
                )
                continue
            if w > 0:
                clean[p] = clean.get(p, 0.0) + float(w)
        object.__setattr__(self, "weights", clean)

    @classmethod
    def bipartite(cls, weight: float = 4.0) -> "ProjectorMix":
        return cls(2, {(-1, -1): weight})

    @classmethod
    def all_partitions(cls, n: int, weight: float = 4.0) -> "ProjectorMix":
        """Equal weights on every even-minus pattern except all-plus (the c_N functional)."""
        w = {}
        for p in itertools.product((1, -1), repeat=n):
            if p.count(-1) and p.count(-1) % 2 == 0:
                w[p] = weight
        return cls(n, w)

    @classmethod
    def single(cls, pattern, weight: float = 4.0) -> "ProjectorMix":
        p = parse_pattern(pattern)
        return cls(len(p), {p: weight})

    def subset_coefficients(self) -> dict[tuple[int, ...], float]:
        """Coefficients c_T with A = sum_T c_T S_T, keyed by sorted subset T."""
        n = self.n_factors
        out = {}
        for mask in range(2**n):
            subset = tuple(i for i in range(n) if mask >> i & 1)
            c = 0.0
            for p, w in self.weights.items():
                c += w * math.prod(p[i] for i in subset)
            c /= 2**n
            if c != 0.0:
                out[subset] = c
        return out


def default_mix(n_factors: int) -> ProjectorMix:
    return ProjectorMix.all_partitions(n_factors)


def subset_purities(psi: PureState) -> dict[tuple[int, ...], float]:
    """Tr rho_T^2 for every subset T, including the empty and full ones (both <psi|psi>^2)."""
    v = np.asarray(psi.vector)
    dims = psi.dims
    n = len(dims)
    norm2 = float(np.vdot(v, v).real)
    out = {(): norm2**2, tuple(range(n)): norm2**2}
    for mask in range(1, 2**n - 1):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        rest = tuple(i for i in range(n) if not mask >> i & 1)
        # use the smaller side; both reductions share their nonzero spectrum
        side = subset if math.prod(dims[i] for i in subset) <= math.prod(dims[i] for i in rest) else rest
        b = bipartite_matrix(v, dims, list(side))
        r = b @ b.conj().T
        out[subset] = float(np.real(np.einsum("ij,ji->", r, r)))
    return out


def _expectation(psi: PureState, mix: ProjectorMix) -> float:
    if mix.n_factors != psi.n_factors:
        raise ValidationError(
            f"mix acts on {mix.n_factors} factors, state has {psi.n_factors}"
        )
    pur = subset_purities(psi)
    return sum(c * pur[t] for t, c in mix.subset_coefficients().items())


def concurrence_2x2_pure(psi: PureState) -> float:
    """|<psi*| sigma_y x sigma_y |psi>| for a two-qubit state."""
    if psi.dims != (2, 2):
        raise BadBipartition(f"two-qubit state required, got dims {psi.dims}")
    v = psi.vector
    return float(abs(2 * (v[0] * v[3] - v[1] * v[2])))


def i_concurrence(psi: PureState, split=1) -> float:
    """sqrt(2 (<psi|psi>^2 - Tr rho_r^2)) for the given bipartition."""
    b = bipartite_matrix(psi.vector, psi.dims, split)
    r = b @ b.conj().T if b.shape[0] <= b.shape[1] else b.conj().T @ b
    norm2 = float(np.real(np.trace(r)))
    p = float(np.real(np.einsum("ij,ji->", r, r)))
    return math.sqrt(max(0.0, 2 * (norm2**2 - p)))


def i_concurrence_symmetric(psi: PureState, split=1) -> float:
    """sqrt(2 - Tr rho_1^2 - Tr rho_2^2), the two-sided form (normalized states)."""
    b = bipartite_matrix(psi.vector, psi.dims, split)
    r1, r2 = b @ b.conj().T, b.T @ b.conj()
    p1 = np.real(np.einsum("ij,ji->", r1, r1))
    p2 = np.real(np.einsum("ij,ji->", r2, r2))
    return math.sqrt(max(0.0, 2 - p1 - p2))


def max_i_concurrence(d: int) -> float:
    return math.sqrt(2 * (1 - 1 / d))


def multipartite_concurrence(psi: PureState) -> float:
    """c_N from the purities of all 2^N - 2 nontrivial reductions."""
    n = psi.n_factors
    if n < 2:
        raise ValidationError("at least two factors required")
    pur = subset_purities(psi)
    norm4 = pur[()]
    s = sum(p for t, p in pur.items() if 0 < len(t) < n)
    val = (2**n - 2) * norm4 - s
    return 2 ** (1 - n / 2) * math.sqrt(max(0.0, val))


def selective_concurrence(psi: PureState, mix: ProjectorMix) -> float:
    """sqrt(<psi psi| A |psi psi>) for A built from ``mix``."""
    return math.sqrt(max(0.0, _expectation(psi, mix)))


def eof_from_concurrence(c: float) -> float:
    """Two-qubit entanglement of formation (bits) as a function of concurrence."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise OutOfRange(f"concurrence {c} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    x = (1 + math.sqrt(1 - c * c)) / 2
    if x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1 - x) * math.log2(1 - x))
