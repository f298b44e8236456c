import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entk.errors import NotConjugation, NotLeftUnitary, NotSymmetric, SeparableDominantEigenvector
from entk.pure import ProjectorMix, i_concurrence, multipartite_concurrence
from entk.roof import (
    SIGMA_YY,
    algebraic_lower_bounds,
    antisymmetric_basis_T,
    build_correlation_tensor,
    compute_bounds,
    concurrence_upper_bound,
    concurrence_vector,
    decomposition_value,
    dominant_column,
    optimized_lower_bound,
    quasi_pure,
    quasi_pure_approximation,
    roof_gap,
    spectral_T,
    symmetric_roof_infimum,
    takagi,
    theta_concurrence,
    wootters_concurrence_2x2,
    wootters_tau,
)
from entk.states import (
    DensityMatrix,
    basis_state,
    bell,
    local_unitary,
    mixture,
    pure_state,
    random_density,
    random_pure_state,
    random_unitary,
)
from oracles import a_operator, c_n_weights, isotropic_2x2, isotropic_concurrence, tensor_from_operator

seeds = st.integers(0, 2**32 - 1)


def random_symmetric(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.T) / 2


class TestTakagi:
    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(1, 9))
    def test_residual(self, seed, n):
        t = random_symmetric(n, np.random.default_rng(seed))
        s, u = takagi(t)
        assert np.abs(u @ t @ u.T - np.diag(s)).max() < 1e-10
        assert np.abs(u @ u.conj().T - np.eye(n)).max() < 1e-12
        assert np.all(s >= 0) and np.all(np.diff(s) <= 1e-12)

    @pytest.mark.parametrize("sv", [[1, 1, 1], [2, 1, 1, 0], [0.5, 0.5, 0, 0], [0, 0]])
    def test_degenerate(self, sv):
        rng = np.random.default_rng(3)
        u0 = random_unitary(len(sv), rng)
        t = u0.T @ np.diag(sv) @ u0
        s, u = takagi(t)
        assert np.allclose(s, sv, atol=1e-12)
        assert np.abs(u @ t @ u.T - np.diag(s)).max() < 1e-10


class TestRoofInfimum:
    def test_examples(self):
        v, V = symmetric_roof_infimum(np.diag([1.0]))
        assert v == 1 and V.shape == (1, 1)
        v, V = symmetric_roof_infimum(np.diag([0.5, 0.3, 0.2]))
        assert v == 0 and decomposition_value(np.diag([0.5, 0.3, 0.2]), V) < 1e-12
        v, V = symmetric_roof_infimum(np.diag([0.7, 0.2, 0.1]))
        assert v == pytest.approx(0.4) and decomposition_value(np.diag([0.7, 0.2, 0.1]), V) == pytest.approx(0.4)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            symmetric_roof_infimum(np.array([[1, 1], [0, 1]]))

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(1, 6))
    def test_unitary_congruence_invariance(self, seed, n):
        rng = np.random.default_rng(seed)
        t = random_symmetric(n, rng)
        u = random_unitary(n, rng)
        assert symmetric_roof_infimum(u @ t @ u.T)[0] == pytest.approx(symmetric_roof_infimum(t)[0], abs=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(2, 7))
    def test_no_decomposition_beats_the_infimum(self, seed, n):
        rng = np.random.default_rng(seed)
        t = random_symmetric(n, rng)
        v, _ = symmetric_roof_infimum(t)
        for _ in range(5):
            V = random_unitary(n + 2, rng)[:, :n]
            assert decomposition_value(t, V) >= v - 1e-12


class TestExactTwoQubit:
    def test_examples(self):
        assert wootters_concurrence_2x2(bell("phi+").density()) == pytest.approx(1)
        assert wootters_concurrence_2x2(DensityMatrix(np.eye(4) / 4, (2, 2))) == 0

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.3, 0.5, 0.6, 2 / 3, 0.7, 0.9, 1.0])
    def test_isotropic(self, p):
        rho = DensityMatrix(isotropic_2x2(p), (2, 2))
        c = wootters_concurrence_2x2(rho)
        assert c == pytest.approx(isotropic_concurrence(p), abs=1e-12)
        if p >= 2 / 3:
            assert c == 0.0

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(1, 4))
    def test_singular_values_vs_eigenvalues(self, seed, rank):
        rho = random_density([2, 2], rank, seed)
        tau = wootters_tau(rho)
        s = np.linalg.svd(tau, compute_uv=False)
        ev = np.sqrt(np.clip(np.linalg.eigvalsh(tau @ tau.conj().T), 0, None))[::-1]
        assert np.allclose(s, ev, atol=1e-7)

    def test_theta(self):
        rho = random_density([2, 2], 3, 9)
        assert theta_concurrence(rho, SIGMA_YY) == pytest.approx(wootters_concurrence_2x2(rho), abs=1e-12)
        prod = pure_state(np.kron([0.6, 0.8], [1, 0]), [2, 2])
        assert theta_concurrence(prod, np.eye(4)) == pytest.approx(1)
        for s in range(5):
            assert theta_concurrence(random_density([2, 3], 4, s), np.eye(6)) >= 0
        with pytest.raises(NotConjugation):
            theta_concurrence(rho, np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]))


DIM_SETS = [(2, 2), (2, 3), (3, 3), (2, 2, 2)]


class TestCorrelationTensor:
    def test_pure(self):
        psi = random_pure_state([2, 3], 4)
        t = build_correlation_tensor(psi.density())
        assert t.n == 1
        assert t.entries[0, 0, 0, 0].real == pytest.approx(i_concurrence(psi) ** 2, abs=1e-12)

    def test_separable_dominant(self):
        a = basis_state([0, 0], [2, 2]).density()
        b = basis_state([1, 1], [2, 2]).density()
        t = build_correlation_tensor(mixture([a, b], [0.7, 0.3]))
        assert abs(t.entries[0, 0, 0, 0]) < 1e-14
        with pytest.raises(SeparableDominantEigenvector):
            quasi_pure_approximation(t)

    @settings(max_examples=12, deadline=None)
    @given(seeds, st.sampled_from(DIM_SETS), st.integers(2, 4))
    def test_invariants_and_oracle(self, seed, dims, rank):
        rho = random_density(dims, rank, seed)
        t = build_correlation_tensor(rho)
        e = t.entries
        m = t.matrix()
        assert np.abs(m - m.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(m).min() > -1e-12
        assert np.abs(e - e.transpose(1, 0, 2, 3)).max() < 1e-10
        assert np.abs(e - e.transpose(0, 1, 3, 2)).max() < 1e-10
        A = a_operator(dims, c_n_weights(len(dims)))
        ref = tensor_from_operator(list(t.ensemble.members), A)
        assert np.abs(e - ref).max() < 1e-12

    @pytest.mark.parametrize("pattern", ["--+", "+--", "----"])
    def test_selective_mix_against_oracle(self, pattern):
        dims = (2,) * len(pattern)
        mix = ProjectorMix.single(pattern, 3.0)
        rho = random_density(dims, 3, 1)
        t = build_correlation_tensor(rho, mix)
        ref = tensor_from_operator(list(t.ensemble.members), a_operator(dims, mix.weights))
        assert np.abs(t.entries - ref).max() < 1e-12

    def test_dominant_column(self):
        rho = random_density([2, 2, 2], 4, 2)
        t = build_correlation_tensor(rho)
        assert np.allclose(dominant_column(rho), t.entries[:, :, 0, 0], atol=1e-14)


class TestTFamilies:
    @pytest.mark.parametrize("dims,m", [((2, 2), 1), ((3, 3), 9), ((2, 4), 6), ((4, 2), 6), ((2, 3), 3)])
    def test_antisymmetric_count(self, dims, m):
        fam = antisymmetric_basis_T(random_density(dims, 3, 0))
        assert len(fam) == m

    @settings(max_examples=15, deadline=None)
    @given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3), (2, 4)]), st.integers(1, 4))
    def test_reconstruction(self, seed, dims, rank):
        rho = random_density(dims, rank, seed)
        t = build_correlation_tensor(rho, ProjectorMix.bipartite())
        for fam in (antisymmetric_basis_T(rho), spectral_T(t)):
            mats = fam.matrices
            assert np.abs(mats - mats.transpose(0, 2, 1)).max() < 1e-10
            assert np.abs(fam.reconstruct() - t.entries).max() < 1e-9

    def test_two_qubit_matches_tau(self):
        rho = random_density([2, 2], 3, 5)
        t1 = antisymmetric_basis_T(rho).matrices[0]
        tau = wootters_tau(rho)
        assert np.allclose(t1, -tau, atol=1e-12)
        assert algebraic_lower_bounds(antisymmetric_basis_T(rho))[0] == pytest.approx(roof_gap(tau), abs=1e-12)

    def test_spectral_pure(self):
        psi = random_pure_state([3, 3], 2)
        fam = spectral_T(build_correlation_tensor(psi.density()))
        assert len(fam) == 1 and abs(fam.matrices[0, 0, 0]) == pytest.approx(i_concurrence(psi), abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(seeds, st.sampled_from(DIM_SETS))
    def test_spectral_trace_identity(self, seed, dims):
        t = build_correlation_tensor(random_density(dims, 3, seed))
        fam = spectral_T(t)
        assert (np.abs(fam.matrices) ** 2).sum() == pytest.approx(np.trace(t.matrix()).real, abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_two_qubit_bound_is_wootters(self, seed):
        rho = random_density([2, 2], 3, seed)
        fam = spectral_T(build_correlation_tensor(rho))
        assert len(fam) == 1
        w = wootters_concurrence_2x2(rho)
        assert max(algebraic_lower_bounds(fam)[0], 0) == pytest.approx(w, abs=1e-12)


class TestOptimizedAndQuasiPure:
    def test_single_matrix_family(self):
        rho = random_density([2, 2], 2, 1)
        fam = spectral_T(build_correlation_tensor(rho))
        assert optimized_lower_bound(fam).value == pytest.approx(algebraic_lower_bounds(fam)[0])

    def test_dominates_algebraic_and_is_deterministic(self):
        rho = random_density([3, 3], 3, 4)
        fam = spectral_T(build_correlation_tensor(rho))
        a = optimized_lower_bound(fam, restarts=4, seed=3)
        b = optimized_lower_bound(fam, restarts=4, seed=3)
        assert a.value == b.value and np.array_equal(a.z, b.z)
        assert a.value >= max(algebraic_lower_bounds(fam)) - 1e-9
        assert np.linalg.norm(a.z) == pytest.approx(1)
        assert roof_gap(fam.combine(a.z)) == pytest.approx(a.value, abs=1e-12)

    def test_quasi_pure_pure_state(self):
        psi = random_pure_state([2, 2, 2], 6)
        assert quasi_pure(psi.density()) == pytest.approx(multipartite_concurrence(psi), abs=1e-12)

    def test_quasi_pure_two_qubits_is_wootters(self):
        for s in range(100):
            rho = random_density([2, 2], None if s % 2 else 2, s)
            assert quasi_pure(rho) == pytest.approx(wootters_concurrence_2x2(rho), abs=1e-10)


class TestConcurrenceVector:
    def test_examples(self):
        prod = basis_state([0, 1], [2, 2]).density()
        fam = antisymmetric_basis_T(prod)
        assert concurrence_vector(np.eye(1), fam) == [0.0]
        fam = antisymmetric_basis_T(bell("phi+").density())
        assert concurrence_vector(np.eye(1), fam) == [pytest.approx(1)]

    def test_phase_invariance(self):
        rng = np.random.default_rng(1)
        rho = random_density([3, 3], 3, 2)
        fam = spectral_T(build_correlation_tensor(rho))
        V = random_unitary(5, rng)[:, :3]
        ph = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 5)))
        assert np.allclose(concurrence_vector(V, fam), concurrence_vector(ph @ V, fam), atol=1e-12)

    def test_not_left_unitary(self):
        fam = spectral_T(build_correlation_tensor(random_density([2, 2], 2, 2)))
        with pytest.raises(NotLeftUnitary):
            concurrence_vector(np.ones((3, 2)), fam)


class TestUpperBound:
    def test_pure(self):
        psi = random_pure_state([3, 3], 5)
        ub = concurrence_upper_bound(psi.density())
        assert ub.iterations == 0 and ub.value == pytest.approx(i_concurrence(psi), abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_two_qubit_rank_two(self, seed):
        rho = random_density([2, 2], 2, 100 + seed)
        ub = concurrence_upper_bound(rho, seed=seed)
        assert ub.value == pytest.approx(wootters_concurrence_2x2(rho), abs=1e-6)
        assert np.abs(ub.ensemble.density() - rho.matrix).max() < 1e-10

    def test_realizes_reported_value(self):
        rho = random_density([2, 3], 3, 8)
        ub = concurrence_upper_bound(rho, max_iters=300)
        from entk.pure import default_mix, selective_concurrence
        vals = []
        for v in ub.ensemble.members:
            p = np.vdot(v, v).real
            if p > 1e-15:
                vals.append(p * selective_concurrence(pure_state(v / math.sqrt(p), (2, 3)), default_mix(2)))
        assert sum(vals) == pytest.approx(ub.value, abs=1e-10)


@settings(max_examples=8, deadline=None)
@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_bounds_local_unitary_invariance(seed, dims):
    rng = np.random.default_rng(seed)
    rho = random_density(dims, 3, seed)
    moved = local_unitary(rho, [random_unitary(d, rng) for d in dims])
    f1 = spectral_T(build_correlation_tensor(rho))
    f2 = spectral_T(build_correlation_tensor(moved))
    assert np.allclose(sorted(algebraic_lower_bounds(f1)), sorted(algebraic_lower_bounds(f2)), atol=1e-8)
    assert quasi_pure(rho) == pytest.approx(quasi_pure(moved), abs=1e-8)


def test_report_structure():
    rep = compute_bounds(random_density([2, 3], 3, 1), restarts=3, upper_iters=300)
    d = rep.as_dict()
    assert set(d) >= {"lower_algebraic", "lower_optimized", "quasi_pure", "upper", "diagnostics"}
    assert d["diagnostics"]["simplex_starts"] >= 3
    assert max(rep.lower_algebraic) <= rep.lower_optimized + 1e-9 <= rep.upper + 2e-9
