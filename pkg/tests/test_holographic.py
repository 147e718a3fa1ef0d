import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assocmem.holographic import (
    HoloMatrix,
    decode_phase,
    encode_phase,
    holo_learn,
    holo_recall,
    self_associate,
    split_association,
)
from assocmem.hopfield import hebb_learn
from assocmem.patterns import (
    ComplexState,
    corrupt_phase,
    generate_bipolar,
    orthogonalize,
    random_complex_states,
    random_phase_states,
)


def interference_oracle(stimuli, responses):
    """Brute-force amplitude/phase accumulation of the interference sum."""
    n_in, n_out = stimuli[0].n, responses[0].n
    J = np.zeros((n_out, n_in), dtype=complex)
    for s, o in zip(stimuli, responses):
        for j in range(n_out):
            for h in range(n_in):
                J[j, h] += (
                    s.amplitudes[h]
                    * o.amplitudes[j]
                    * np.exp(1j * (o.phases[j] - s.phases[h]))
                )
    return J


class TestEncodePhase:
    def test_phases_and_default_magnitudes(self):
        s = encode_phase(np.array([0.0, 0.5]))
        assert np.allclose(s.phases, [0.0, np.pi])
        assert np.allclose(s.amplitudes, 1 / np.sqrt(2))

    def test_zero_vector_is_real_positive(self):
        s = encode_phase(np.zeros(4))
        assert np.all(s.values.imag == 0.0)
        assert np.all(s.values.real > 0.0)

    def test_round_trip(self):
        x = np.array([0.0, 0.125, 0.5, 0.875, 0.999])
        assert np.max(np.abs(decode_phase(encode_phase(x)) - x)) < 1e-12

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="0, 1"):
            encode_phase(np.array([0.2, 1.2]))

    def test_given_magnitudes_renormalized(self):
        s = encode_phase(np.array([0.1, 0.2]), magnitudes=np.array([3.0, 4.0]))
        assert np.allclose(s.amplitudes, [0.6, 0.8])

    def test_nonpositive_magnitudes(self):
        with pytest.raises(ValueError, match="positive"):
            encode_phase(np.array([0.1, 0.2]), magnitudes=np.array([1.0, 0.0]))


class TestHoloLearn:
    def test_single_scalar_pair(self):
        s = ComplexState(np.array([1.0]), np.array([np.pi / 2]))
        o = ComplexState(np.array([1.0]), np.array([np.pi]))
        J = holo_learn([(s, o)])
        assert J.weights[0, 0] == pytest.approx(np.exp(1j * np.pi / 2), abs=1e-12)

    def test_real_pair_gives_real_rank_one(self):
        v = generate_bipolar(6, 1, 3).vector(0)
        J = holo_learn([(v.astype(complex), v.astype(complex))])
        assert np.all(J.weights.imag == 0.0)
        assert np.linalg.matrix_rank(J.weights.real) == 1

    def test_complete_self_association_gives_identity(self):
        states = orthogonalize(random_complex_states(6, 6, 4))
        J = holo_learn([(s, s) for s in states])
        assert np.max(np.abs(J.weights - np.eye(6))) < 1e-10

    def test_against_interference_oracle(self):
        stimuli = random_phase_states(4, 3, 7)
        responses = random_complex_states(5, 3, 8)
        J = holo_learn(list(zip(stimuli, responses)))
        assert np.max(np.abs(J.weights - interference_oracle(stimuli, responses))) < 1e-12
        assert (J.n_out, J.n_in) == (5, 4)

    def test_triangle_inequality_bound(self):
        stimuli = random_phase_states(4, 3, 17)
        responses = random_complex_states(5, 3, 18)
        J = holo_learn(list(zip(stimuli, responses)))
        bound = np.zeros((5, 4))
        for s, o in zip(stimuli, responses):
            bound += np.outer(o.amplitudes, s.amplitudes)
        assert np.all(np.abs(J.weights) <= bound + 1e-12)

    def test_rejects_non_unit_stimulus(self):
        s = ComplexState(np.array([2.0]), np.array([0.0]))
        with pytest.raises(ValueError, match="unit-norm"):
            holo_learn([(s, s)])

    def test_rejects_dimension_mismatch(self):
        a = random_phase_states(4, 1, 0)[0]
        b = random_phase_states(5, 1, 1)[0]
        with pytest.raises(ValueError, match="dimension"):
            holo_learn([(a, a), (b, b)])

    def test_rejects_weighted_states(self):
        s = ComplexState(np.ones(4) * 0.5, np.zeros(4), grid_weight=2.0)
        with pytest.raises(ValueError, match="grid_weight"):
            holo_learn([(s, s)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="pairs"):
            holo_learn([])


class TestHoloRecall:
    def test_exact_key_single_pair(self):
        s = random_phase_states(8, 1, 1)[0]
        o = random_complex_states(8, 1, 2)[0]
        J = holo_learn([(s, o)])
        response, spectrum = holo_recall(J, s)
        assert np.max(np.abs(response.values - o.values)) < 1e-12
        assert spectrum.coefficients[0] == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_key_returns_zero(self):
        states = orthogonalize(random_complex_states(8, 2, 3))
        J = holo_learn([(states[0], states[0])])
        response, spectrum = holo_recall(J, states[1])
        assert np.max(np.abs(response.values)) < 1e-10
        assert abs(spectrum.coefficients[0]) < 1e-10

    def test_noisy_key_recalls_response(self):
        stimuli = random_phase_states(64, 4, 0)
        J = self_associate(stimuli)
        key = corrupt_phase(stimuli[0], 0.1, 500)
        response, spectrum = holo_recall(J, key)
        normalized = response.values / np.linalg.norm(response.values)
        assert abs(np.vdot(stimuli[0].values, normalized)) > 0.9
        assert int(np.argmax(np.abs(spectrum.coefficients))) == 0

    def test_dimension_mismatch(self):
        J = self_associate(random_phase_states(6, 2, 1))
        with pytest.raises(ValueError, match="key length"):
            holo_recall(J, random_phase_states(7, 1, 2)[0])


class TestInvariants:
    def test_self_association_matches_hebb_exactly(self):
        pats = generate_bipolar(16, 4, 11)
        holo = self_associate(pats)
        hebb = hebb_learn(pats)
        assert np.array_equal(holo.weights.real, hebb.weights)
        assert np.all(holo.weights.imag == 0.0)

    @given(alpha=st.floats(min_value=0.0, max_value=2 * np.pi))
    @settings(max_examples=25, deadline=None)
    def test_global_phase_covariance(self, alpha):
        s = random_phase_states(10, 1, 4)[0]
        o = random_complex_states(10, 1, 5)[0]
        J = holo_learn([(s, o)])
        s_rot = ComplexState(s.amplitudes, s.phases + alpha)
        J_rot = holo_learn([(s_rot, o)])
        out, _ = holo_recall(J, s)
        out_rot, _ = holo_recall(J_rot, s_rot)
        assert np.max(np.abs(out.values - out_rot.values)) < 1e-10

    def test_recall_is_linear_in_key(self):
        J = self_associate(random_phase_states(12, 3, 6))
        k1 = random_complex_states(12, 1, 7)[0].values
        k2 = random_complex_states(12, 1, 8)[0].values
        a, b = 0.7 - 0.2j, -1.3 + 0.4j
        combined, _ = holo_recall(J, a * k1 + b * k2)
        r1, _ = holo_recall(J, k1)
        r2, _ = holo_recall(J, k2)
        assert np.max(np.abs(combined.values - (a * r1.values + b * r2.values))) < 1e-10

    def test_exact_regime_recall_for_every_stored_pair(self):
        stimuli = orthogonalize(random_complex_states(16, 5, 9))
        responses = random_complex_states(16, 5, 10)
        J = holo_learn(list(zip(stimuli, responses)))
        for j in range(5):
            out, _ = holo_recall(J, stimuli[j])
            assert np.max(np.abs(out.values - responses[j].values)) < 1e-10


class TestSplitAssociation:
    def test_matches_raw_head_tail_interference(self):
        rng = np.random.default_rng(13)
        vecs = rng.standard_normal((3, 9)) + 1j * rng.standard_normal((3, 9))
        J = split_association(list(vecs), boundary=4)
        want = np.zeros((5, 4), dtype=complex)
        for v in vecs:
            want += np.outer(v[4:], np.conj(v[:4]))
        assert np.max(np.abs(J.weights - want)) < 1e-12

    def test_real_pattern_set_input(self):
        pats = generate_bipolar(8, 2, 14)
        J = split_association(pats, boundary=3)
        assert (J.n_in, J.n_out) == (3, 5)

    def test_boundary_validation(self):
        vecs = [np.ones(4, dtype=complex) / 2.0]
        with pytest.raises(ValueError, match="boundary"):
            split_association(vecs, boundary=4)
        with pytest.raises(ValueError, match="boundary"):
            split_association(vecs, boundary=0)


class TestHoloMatrix:
    def test_stimuli_shape_checked(self):
        with pytest.raises(ValueError, match="stimuli"):
            HoloMatrix(np.zeros((2, 3), dtype=complex), np.zeros((1, 4), dtype=complex))
