import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assocmem.patterns import (
    ComplexState,
    DegeneracyError,
    RealPatternSet,
    corrupt_flip,
    corrupt_phase,
    generate_bipolar,
    orthogonalize,
    overlap,
    random_complex_states,
    random_phase_states,
)


class TestGenerateBipolar:
    def test_entries_and_norms(self):
        s = generate_bipolar(4, 2, 7)
        assert s.patterns.shape == (2, 4)
        assert np.all(np.abs(s.patterns) == 0.5)
        assert np.allclose(np.linalg.norm(s.patterns, axis=1), 1.0)

    def test_deterministic(self):
        a = generate_bipolar(4, 2, 7)
        b = generate_bipolar(4, 2, 7)
        assert np.array_equal(a.patterns, b.patterns)

    def test_seed_changes_output(self):
        a = generate_bipolar(32, 2, 7)
        b = generate_bipolar(32, 2, 8)
        assert not np.array_equal(a.patterns, b.patterns)

    @pytest.mark.parametrize("n,p", [(0, 2), (2, 0), (-1, 1)])
    def test_invalid_sizes(self, n, p):
        with pytest.raises(ValueError):
            generate_bipolar(n, p, 0)

    def test_random_vectors_nearly_orthogonal(self):
        s = generate_bipolar(1000, 10, 1)
        pairs = [
            abs(float(s.vector(i) @ s.vector(j)))
            for i in range(s.p)
            for j in range(i + 1, s.p)
        ]
        assert np.mean(pairs) < 0.1

    def test_to_signs(self):
        s = generate_bipolar(6, 2, 3)
        signs = s.to_signs()
        assert set(np.unique(signs)) <= {-1, 1}
        assert np.array_equal(signs, np.sign(s.patterns))


class TestRealPatternSet:
    def test_rejects_non_unit_when_normalized(self):
        with pytest.raises(ValueError, match="non-unit"):
            RealPatternSet(np.array([[1.0, 1.0]]))

    def test_unnormalized_opt_in(self):
        s = RealPatternSet(np.array([[1.0, 1.0]]), normalized=False)
        assert s.n == 2 and s.p == 1

    def test_immutable(self):
        s = generate_bipolar(4, 1, 0)
        with pytest.raises(ValueError):
            s.patterns[0, 0] = 2.0


class TestComplexState:
    def test_polar_reproduces_values(self):
        rng = np.random.default_rng(5)
        v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        s = ComplexState.from_values(v)
        assert np.max(np.abs(s.values - v)) < 1e-12

    def test_phases_wrapped(self):
        s = ComplexState(np.ones(3), [-0.5, 7.0, 2 * np.pi])
        assert np.all((s.phases >= 0.0) & (s.phases < 2 * np.pi))
        assert np.max(np.abs(s.values - np.exp(1j * np.array([-0.5, 7.0, 0.0])))) < 1e-12

    def test_negative_amplitude_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            ComplexState(np.array([-1.0]), np.array([0.0]))

    def test_grid_weight_positive(self):
        with pytest.raises(ValueError, match="grid_weight"):
            ComplexState(np.ones(2), np.zeros(2), grid_weight=0.0)

    def test_norm_uses_grid_weight(self):
        s = ComplexState(np.ones(4), np.zeros(4), grid_weight=0.25)
        assert s.norm() == pytest.approx(1.0)

    def test_random_generators_unit_norm(self):
        for s in random_complex_states(10, 3, 0, grid_weight=0.1):
            assert s.norm() == pytest.approx(1.0, abs=1e-12)
        for s in random_phase_states(10, 3, 0, grid_weight=0.1):
            assert s.norm() == pytest.approx(1.0, abs=1e-12)


class TestOrthogonalize:
    def test_orthonormal_basis_is_fixed_point(self):
        basis = RealPatternSet(np.eye(3)[:2])
        out = orthogonalize(basis)
        assert np.array_equal(out.patterns, basis.patterns)

    def test_hand_worked_two_vectors(self):
        s = RealPatternSet(np.array([[1.0, 0.0], [1.0, 1.0] / np.sqrt(2)]))
        out = orthogonalize(s)
        assert np.allclose(out.patterns, np.eye(2), atol=1e-12)

    def test_gram_matrix_identity(self):
        # Oracle: brute-force pairwise inner products of the output.
        rng = np.random.default_rng(11)
        raw = rng.standard_normal((3, 3))
        raw /= np.linalg.norm(raw, axis=1, keepdims=True)
        out = orthogonalize(RealPatternSet(raw))
        for i in range(3):
            for j in range(3):
                want = 1.0 if i == j else 0.0
                got = sum(out.patterns[i, k] * out.patterns[j, k] for k in range(3))
                assert abs(got - want) < 1e-10

    def test_span_preserved(self):
        rng = np.random.default_rng(4)
        raw = rng.standard_normal((3, 6))
        raw /= np.linalg.norm(raw, axis=1, keepdims=True)
        out = orthogonalize(RealPatternSet(raw))
        # each original vector projects fully onto the new basis
        for v in raw:
            recon = out.patterns.T @ (out.patterns @ v)
            assert np.linalg.norm(recon - v) < 1e-10

    def test_degenerate_input_names_index(self):
        s = RealPatternSet(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]))
        with pytest.raises(DegeneracyError) as exc:
            orthogonalize(s)
        assert exc.value.index == 2

    def test_too_many_vectors(self):
        s = generate_bipolar(3, 4, 0)
        with pytest.raises(ValueError, match="orthogonalize"):
            orthogonalize(s)

    def test_complex_states_grid_weighted(self):
        w = 0.25
        states = random_complex_states(12, 5, 3, grid_weight=w)
        out = orthogonalize(states)
        vals = np.array([s.values for s in out])
        gram = w * (vals.conj() @ vals.T)
        assert np.max(np.abs(gram - np.eye(5))) < 1e-10
        assert all(s.grid_weight == w for s in out)

    def test_large_set_pairwise_products(self):
        out = orthogonalize(random_complex_states(256, 16, 42))
        vals = np.array([s.values for s in out])
        gram = vals.conj() @ vals.T
        assert np.max(np.abs(gram - np.eye(16))) < 1e-10


class TestCorruptFlip:
    def test_zero_fraction_identity(self):
        v = generate_bipolar(10, 1, 2).vector(0)
        assert np.array_equal(corrupt_flip(v, 0.0, 1), v)

    def test_full_fraction_negates(self):
        v = generate_bipolar(10, 1, 2).vector(0)
        assert np.array_equal(corrupt_flip(v, 1.0, 1), -v)

    def test_overlap_is_one_minus_two_fractions(self):
        v = generate_bipolar(100, 1, 9).vector(0)
        c = corrupt_flip(v, 0.1, 3)
        d = overlap(v, c)
        assert d.overlap == pytest.approx(0.8, abs=1e-12)
        assert d.hamming_fraction == 0.1

    @given(
        frac=st.sampled_from([0.0, 0.05, 0.25, 0.5, 0.75, 1.0]),
        n=st.integers(min_value=4, max_value=80),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=40, deadline=None)
    def test_overlap_property(self, frac, n, seed):
        v = generate_bipolar(n, 1, seed).vector(0)
        c = corrupt_flip(v, frac, seed + 1)
        k = int(round(frac * n))
        d = overlap(v, c)
        assert d.overlap == pytest.approx(1.0 - 2.0 * k / n, abs=1e-12)
        assert d.hamming_fraction * n == pytest.approx(k)

    def test_deterministic(self):
        v = generate_bipolar(50, 1, 0).vector(0)
        assert np.array_equal(corrupt_flip(v, 0.3, 5), corrupt_flip(v, 0.3, 5))

    def test_fraction_out_of_range(self):
        v = generate_bipolar(10, 1, 0).vector(0)
        with pytest.raises(ValueError, match="fraction"):
            corrupt_flip(v, 1.5, 0)

    def test_requires_bipolar(self):
        with pytest.raises(ValueError, match="bipolar"):
            corrupt_flip(np.array([0.9, 0.1]), 0.5, 0)


class TestCorruptPhase:
    def test_zero_sigma_identity(self):
        s = random_phase_states(20, 1, 1)[0]
        out = corrupt_phase(s, 0.0, 7)
        assert np.array_equal(out.phases, s.phases)
        assert np.array_equal(out.amplitudes, s.amplitudes)

    def test_amplitudes_exactly_preserved(self):
        s = random_complex_states(30, 1, 2)[0]
        out = corrupt_phase(s, 2.5, 7)
        assert np.array_equal(out.amplitudes, s.amplitudes)

    def test_large_sigma_destroys_overlap(self):
        s = random_phase_states(1000, 1, 5)[0]
        noisy = corrupt_phase(s, np.pi, 6)
        assert abs(overlap(s, noisy).overlap) < 0.2

    def test_negative_sigma(self):
        s = random_phase_states(4, 1, 0)[0]
        with pytest.raises(ValueError, match="sigma"):
            corrupt_phase(s, -0.1, 0)


class TestOverlap:
    def test_unit_self_overlap(self):
        v = generate_bipolar(15, 1, 3).vector(0)
        assert overlap(v, v).overlap == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_pair(self):
        a = np.array([1.0, 1.0]) / np.sqrt(2)
        b = np.array([1.0, -1.0]) / np.sqrt(2)
        assert overlap(a, b).overlap == pytest.approx(0.0, abs=1e-15)

    def test_conjugates_first_argument(self):
        v = random_complex_states(8, 1, 2)[0]
        rotated = ComplexState(v.amplitudes, v.phases + np.pi / 2, 1.0)
        assert overlap(rotated, v).overlap == pytest.approx(-1j, abs=1e-12)

    def test_grid_weight_scales_product(self):
        a = ComplexState(np.ones(4) * 0.5, np.zeros(4), grid_weight=0.25)
        assert overlap(a, a).overlap == pytest.approx(0.25, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            overlap(np.ones(3), np.ones(4))

    def test_grid_weight_mismatch(self):
        a = ComplexState(np.ones(2), np.zeros(2), grid_weight=1.0)
        b = ComplexState(np.ones(2), np.zeros(2), grid_weight=0.5)
        with pytest.raises(ValueError, match="grid_weight"):
            overlap(a, b)

    def test_mixed_types_rejected(self):
        a = ComplexState(np.ones(2), np.zeros(2))
        with pytest.raises(ValueError, match="mix"):
            overlap(a, np.ones(2))

    def test_hamming_only_for_bipolar(self):
        assert overlap(np.array([0.5, 0.1]), np.array([0.5, 0.1])).hamming_fraction is None

    @given(seed=st.integers(min_value=0, max_value=2**31))
    @settings(max_examples=30, deadline=None)
    def test_conjugate_symmetry(self, seed):
        a, b = random_complex_states(12, 2, seed)
        assert overlap(a, b).overlap == pytest.approx(
            np.conj(overlap(b, a).overlap), abs=1e-12
        )
