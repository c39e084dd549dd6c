"""
Tests for walks on a line.
"""

import math
import unittest
from unittest.mock import patch

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.coin_core import SQRT2, QubitState, make_hadamard, make_one_state, make_transition_matrix, make_zero_state
from src.line_walk import (
    ComplexStartError,
    LatticeMismatchError,
    LiftedState,
    ScalingOverflowError,
    WaveState,
    classical_distribution,
    evolve,
    initial_lifted_state,
    lift_equivalence_residual,
    lifted_state,
    make_markov_step,
    make_shift_matrices,
    make_unitary_step,
    phases,
    project_state,
    quantum_probabilities,
    run_lifted_walk,
    site_distribution,
    sqrt2_power,
    unfold,
    wave_state,
)
from src.oracle import ScaleLimitError, binomial_walk, dense_assemble, is_unimodal, moments
from src.schemas import (
    DATASET_COLUMNS,
    BoundaryKind,
    BoundarySpec,
    InitialSpec,
    Lattice,
    LiftMode,
    RunRequest,
    Scaling,
    System,
)

ALL_BOUNDARIES = [
    BoundarySpec(),
    BoundarySpec(kind=BoundaryKind.CYCLIC),
    BoundarySpec(kind=BoundaryKind.REFLECT1),
    BoundarySpec(kind=BoundaryKind.REFLECT2, cyclic=True),
    BoundarySpec(kind=BoundaryKind.TRAP),
]


def point_walk(steps, q=QubitState(1, 0), scaling=Scaling.SQRT2_STEP):
    """Evolve a point start at the origin of the centred lattice."""
    lattice = Lattice.centered(steps)
    state = lifted_state(lattice, [lattice.index_of(0)], q, LiftMode.SIGN_SPLIT, scaling)
    return evolve(state, make_markov_step(lattice), steps)


class TestShiftMatrices(unittest.TestCase):
    """
    Test cases for the Right and Left shifts.
    """

    def test_superdiagonal_action(self):
        """
        Test that Right moves site 1 to site 0 on an open line.
        """
        right, left = make_shift_matrices(3)
        np.testing.assert_array_equal(right.apply(np.array([0, 1, 0])), [1, 0, 0])
        np.testing.assert_array_equal(left.apply(np.array([0, 1, 0])), [0, 0, 1])
        np.testing.assert_array_equal(right.to_dense(), np.eye(3, k=1))
        np.testing.assert_array_equal(left.to_dense(), np.eye(3, k=-1))

    def test_cyclic_wraparound(self):
        """
        Test the wraparound entries of the cyclic closure.
        """
        right, left = make_shift_matrices(3, cyclic=True)
        np.testing.assert_array_equal(right.apply(np.array([1, 0, 0])), [0, 0, 1])
        np.testing.assert_array_equal(left.apply(np.array([0, 0, 1])), [1, 0, 0])

    def test_open_line_loses_edges(self):
        """
        Test that Right Left + Left Right misses the identity at the edges.
        """
        right, left = make_shift_matrices(4)
        R, L = right.to_dense(), left.to_dense()
        sums = (R @ L + L @ R).sum(axis=0)
        np.testing.assert_array_equal(sums, [1, 2, 2, 1])

    def test_minimum_sites(self):
        """
        Test rejecting a one-site line.
        """
        with self.assertRaises(ValueError):
            make_shift_matrices(1)

    def test_axis(self):
        """
        Test shifting along the site axis of a stacked array.
        """
        right, _ = make_shift_matrices(3)
        x = np.arange(24).reshape(2, 3, 4)
        shifted = right.apply(x, axis=-2)
        np.testing.assert_array_equal(shifted[:, 0], x[:, 1])
        np.testing.assert_array_equal(shifted[:, 2], np.zeros((2, 4)))


class TestStepOperators(unittest.TestCase):
    """
    Test cases for the lifted and unitary step operators.
    """

    def test_markov_single_step(self):
        """
        Test one lifted step from coin |0> at a single site.
        """
        lattice = Lattice(m=5)
        state = lifted_state(lattice, [2], QubitState(1, 0), scaling=Scaling.UNSCALED)
        stepped = evolve(state, make_markov_step(lattice), 1).sites()
        expected = np.zeros((5, 4))
        expected[1, 0] = 0.5
        expected[3, 1] = 0.5
        np.testing.assert_array_equal(stepped, expected)

    def test_unitary_single_step(self):
        """
        Test one unitary step from coin |0> at a single site.
        """
        lattice = Lattice(m=5)
        stepped = evolve(wave_state(lattice, [2], QubitState(1, 0)), make_unitary_step(lattice), 1).sites()
        expected = np.zeros((5, 2))
        expected[1, 0] = 1 / SQRT2
        expected[3, 1] = 1 / SQRT2
        np.testing.assert_allclose(stepped, expected, atol=1e-15)

    def test_markov_dense_form(self):
        """
        Test U = Right (x) ZeroState A + Left (x) OneState A at m=4.
        """
        A = make_transition_matrix()
        expected = np.kron(np.eye(4, k=1), make_zero_state() @ A) + np.kron(np.eye(4, k=-1), make_one_state() @ A)
        np.testing.assert_array_equal(make_markov_step(Lattice(m=4)).to_dense(), expected)

    def test_unitary_dense_form(self):
        """
        Test u = Right (x) Zero H + Left (x) One H at m=4.
        """
        H = make_hadamard()
        zero, one = np.diag([1, 0]), np.diag([0, 1])
        expected = np.kron(np.eye(4, k=1), zero @ H) + np.kron(np.eye(4, k=-1), one @ H)
        np.testing.assert_allclose(make_unitary_step(Lattice(m=4)).to_dense(), expected, atol=1e-15)

    def test_open_line_column_sums(self):
        """
        Test column sums of the free open-line operator: 1 inside, 0.5 at the edge sites.
        """
        sums = make_markov_step(Lattice(m=6)).to_dense().real.sum(axis=0).reshape(6, 4)
        np.testing.assert_array_equal(sums[1:-1], np.ones((4, 4)))
        np.testing.assert_array_equal(sums[0], np.full(4, 0.5))
        np.testing.assert_array_equal(sums[-1], np.full(4, 0.5))

    def test_cyclic_unitary(self):
        """
        Test that the cyclic unitary step is unitary.
        """
        u = make_unitary_step(Lattice(m=8), BoundarySpec(kind=BoundaryKind.CYCLIC)).to_dense()
        np.testing.assert_allclose(u.conj().T @ u, np.eye(16), atol=1e-12, rtol=0)

    def test_structural_matches_dense_on_basis(self):
        """
        Test the structural operators against the Kronecker assembly on every basis vector.
        """
        for m in (3, 4, 16):
            for boundary in ALL_BOUNDARIES:
                for system in (System.LIFTED, System.UNITARY):
                    with self.subTest(m=m, boundary=boundary, system=system):
                        lattice = Lattice(m=m)
                        step = make_markov_step if system == System.LIFTED else make_unitary_step
                        structural = step(lattice, boundary).to_dense()
                        dense = dense_assemble(lattice, boundary, system).matrix
                        np.testing.assert_allclose(structural, dense, atol=1e-15, rtol=0)

    def test_structural_matches_dense_on_random_vectors(self):
        """
        Test the structural step against the dense one on random complex vectors at m=64.
        """
        rng = np.random.default_rng(11)
        lattice = Lattice(m=64)
        for boundary in ALL_BOUNDARIES:
            op = make_markov_step(lattice, boundary)
            U = dense_assemble(lattice, boundary, System.LIFTED).matrix
            for _ in range(100):
                x = rng.standard_normal(256) + 1j * rng.standard_normal(256)
                structural = op.apply(x.reshape(64, 4)).reshape(-1)
                np.testing.assert_allclose(structural, U @ x, atol=1e-13, rtol=0)

    def test_invalid_boundary(self):
        """
        Test rejecting an edge boundary on two sites.
        """
        with self.assertRaises(ValueError):
            make_markov_step(Lattice(m=2), BoundarySpec(kind=BoundaryKind.REFLECT1))


class TestEvolve(unittest.TestCase):
    """
    Test cases for evolution.
    """

    def setUp(self):
        """
        Set up test fixtures.
        """
        self.lattice = Lattice(m=8)
        self.state = lifted_state(self.lattice, [4], QubitState(1, 0), scaling=Scaling.UNSCALED)

    def test_zero_steps(self):
        """
        Test that zero steps return the state unchanged.
        """
        self.assertIs(evolve(self.state, make_markov_step(self.lattice), 0), self.state)

    def test_mismatches(self):
        """
        Test rejecting another lattice, another system and negative steps.
        """
        with self.assertRaises(LatticeMismatchError):
            evolve(self.state, make_markov_step(Lattice(m=9)), 1)
        with self.assertRaises(LatticeMismatchError):
            evolve(self.state, make_unitary_step(self.lattice), 1)
        with self.assertRaises(ValueError):
            evolve(self.state, make_markov_step(self.lattice), -1)

    def test_matches_dense_power(self):
        """
        Test lifted evolution against the dense matrix power at m=8, n=6.
        """
        U = dense_assemble(self.lattice, BoundarySpec(), System.LIFTED).matrix
        evolved = evolve(self.state, make_markov_step(self.lattice), 6)
        np.testing.assert_allclose(evolved.v, np.linalg.matrix_power(U, 6) @ self.state.v, atol=1e-12, rtol=0)
        self.assertEqual(evolved.step, 6)

    def test_population_conservation(self):
        """
        Test that the free walk conserves the population sum over 100 steps.
        """
        state = point_walk(100, scaling=Scaling.UNSCALED)
        self.assertLess(abs(state.v.sum() - 1.0), 1e-7)
        self.assertTrue(np.all(state.v.real >= 0))
        self.assertTrue(np.all(state.v.imag == 0))

    def test_scaled_equals_unscaled(self):
        """
        Test that sqrt2-step evolution is the unscaled state times (sqrt 2)^n.
        """
        scaled = point_walk(50)
        unscaled = point_walk(50, scaling=Scaling.UNSCALED)
        np.testing.assert_allclose(scaled.v, unscaled.v * SQRT2 ** 50, rtol=1e-12, atol=0)

    def test_reversal_odd_channel(self):
        """
        Test that the odd channel stays the reversal-odd part of the evolved vector.
        """
        state = point_walk(10, QubitState(0.6, -0.8))
        sites = state.sites()
        np.testing.assert_allclose(
            state.odd.reshape(-1, 4), (sites - sites[:, ::-1]) / 2, atol=1e-12, rtol=0
        )

    def test_long_scaled_walk_stays_finite(self):
        """
        Test that 2100 sqrt2-step steps keep every reading finite and exact.
        """
        state = point_walk(2100)
        self.assertTrue(np.all(np.isfinite(state.populations)))
        self.assertTrue(np.all(np.isfinite(state.odd)))

        total = quantum_probabilities(state).prob_total.sum()
        self.assertLess(abs(total - 1.0), 1e-6)

        classical = classical_distribution(state)
        labels, expected = binomial_walk(2100)
        np.testing.assert_allclose(classical[1:-1], expected, atol=1e-9, rtol=0)
        self.assertAlmostEqual(classical.sum(), 1.0, places=9)

        angles = phases(state)
        self.assertTrue(np.all(np.isfinite(angles.phase0)))
        self.assertTrue(np.all(np.isfinite(angles.phase1)))

        with self.assertRaises(ScalingOverflowError):
            unfold(state)

    def test_input_state_untouched(self):
        """
        Test that evolution leaves the arrays of the input state unchanged.
        """
        lattice = Lattice(m=6)
        wave = wave_state(lattice, [3], QubitState(1, 0))
        before = wave.w.copy()
        evolve(wave, make_unitary_step(lattice), 4)
        np.testing.assert_array_equal(wave.w, before)

        lifted = lifted_state(lattice, [3], QubitState(0.6, -0.8))
        populations, odd = lifted.populations.copy(), lifted.odd.copy()
        evolve(lifted, make_markov_step(lattice), 4)
        np.testing.assert_array_equal(lifted.populations, populations)
        np.testing.assert_array_equal(lifted.odd, odd)

    def test_sqrt2_power(self):
        """
        Test exact even powers, odd powers and the overflow guard.
        """
        self.assertEqual(sqrt2_power(0), 1.0)
        self.assertEqual(sqrt2_power(50), 2.0 ** 25)
        self.assertAlmostEqual(sqrt2_power(3), 2 * SQRT2, places=15)
        self.assertEqual(sqrt2_power(2046), 2.0 ** 1023)
        for n in (2047, 2048, 5000):
            with self.subTest(n=n):
                with self.assertRaises(ScalingOverflowError):
                    sqrt2_power(n)


class TestExtraction(unittest.TestCase):
    """
    Test cases for reading distributions from lifted states.
    """

    def test_unfold_layout(self):
        """
        Test that index 3 is the -|0> population of site 0.
        """
        v = np.zeros(12)
        v[3] = 1
        coins = unfold(LiftedState.from_vector(Lattice(m=3), v))
        np.testing.assert_array_equal(coins.m0, [1, 0, 0])
        np.testing.assert_array_equal(coins.p0 + coins.p1 + coins.m1, np.zeros(3))

    def test_unfold_partition(self):
        """
        Test that the four coin arrays partition the entries of v.
        """
        state = point_walk(20, QubitState(0.6, 0.8j))
        coins = unfold(state)
        total = coins.p0.sum() + coins.p1.sum() + coins.m1.sum() + coins.m0.sum()
        self.assertAlmostEqual(total, state.v.sum(), places=10)
        interleaved = np.stack([coins.p0, coins.p1, coins.m1, coins.m0], axis=1).reshape(-1)
        np.testing.assert_array_equal(interleaved, state.v)

    def test_coin_distributions_unimodal(self):
        """
        Test that each coin distribution has a single peak after 100 steps.
        """
        state = point_walk(100, scaling=Scaling.UNSCALED)
        coins = unfold(state)
        occupied = classical_distribution(state) > 0
        for name in ("p0", "p1", "m1", "m0"):
            with self.subTest(coin=name):
                self.assertTrue(is_unimodal(getattr(coins, name).real[occupied]))

    def test_quantum_probabilities_start(self):
        """
        Test the quantum probabilities of an unevolved basis state.
        """
        lattice = Lattice(m=5)
        probabilities = quantum_probabilities(lifted_state(lattice, [2], QubitState(1, 0)))
        np.testing.assert_array_equal(probabilities.prob0, [0, 0, 1, 0, 0])
        np.testing.assert_array_equal(probabilities.prob1, np.zeros(5))

    def test_norm_preservation(self):
        """
        Test that 100 steps keep the total quantum probability at 1.
        """
        for scaling in (Scaling.SQRT2_STEP, Scaling.UNSCALED):
            with self.subTest(scaling=scaling):
                total = quantum_probabilities(point_walk(100, scaling=scaling)).prob_total.sum()
                self.assertLess(abs(total - 1.0), 1e-6)

    def test_unscaled_overflow_guard(self):
        """
        Test rejecting unscaled extraction beyond 512 steps.
        """
        lattice = Lattice(m=3)
        state = LiftedState.from_vector(lattice, np.ones(12), Scaling.UNSCALED, step=513)
        with self.assertRaises(ScalingOverflowError):
            quantum_probabilities(state)
        scaled = LiftedState.from_vector(lattice, np.ones(12), Scaling.SQRT2_STEP, step=513)
        quantum_probabilities(scaled)

    def test_classical_start(self):
        """
        Test the classical reading of an unevolved point start.
        """
        lattice = Lattice(m=5)
        np.testing.assert_array_equal(
            classical_distribution(lifted_state(lattice, [1], QubitState(1, 0))), [0, 1, 0, 0, 0]
        )

    def test_classical_matches_binomial(self):
        """
        Test the classical reading after 100 steps against the binomial walk.
        """
        classical = classical_distribution(point_walk(100))
        labels, expected = binomial_walk(100)
        np.testing.assert_allclose(classical[1:-1], expected, atol=1e-9, rtol=0)
        self.assertEqual(classical[0], 0.0)
        self.assertAlmostEqual(classical.sum(), 1.0, places=9)

    def test_origin_contrast(self):
        """
        Test the classical peak against the low quantum value at the origin after 100 steps.
        """
        state = point_walk(100)
        origin = state.lattice.index_of(0)
        self.assertAlmostEqual(classical_distribution(state)[origin], math.comb(100, 50) / 2 ** 100, places=9)
        self.assertAlmostEqual(classical_distribution(state)[origin], 0.0796, places=4)

        wave = evolve(wave_state(state.lattice, [origin], QubitState(1, 0)), make_unitary_step(state.lattice), 100)
        unitary_origin = np.sum(np.abs(wave.sites()[origin]) ** 2)
        self.assertLess(unitary_origin, 0.02)
        self.assertAlmostEqual(quantum_probabilities(state).prob_total[origin], unitary_origin, places=12)

    def test_classical_complex_start(self):
        """
        Test that a complex state is flagged by the classical reading.
        """
        state = point_walk(4, QubitState(1 / SQRT2, 1j / SQRT2))
        with self.assertRaises(ComplexStartError):
            classical_distribution(state, strict=True)
        with self.assertLogs("src.line_walk", level="WARNING"):
            classical_distribution(state)

    def test_classical_two_walkers(self):
        """
        Test reading the real and imaginary walkers of a complex start separately.
        """
        state = point_walk(20, QubitState(1 / SQRT2, 1j / SQRT2))
        labels, expected = binomial_walk(20)
        with patch("src.line_walk.logger") as mock_logger:
            real = classical_distribution(state, strict=True, part="real")
            imag = classical_distribution(state, strict=True, part="imag")
        mock_logger.warning.assert_not_called()
        np.testing.assert_allclose(real[1:-1], expected / SQRT2, atol=1e-12, rtol=0)
        np.testing.assert_allclose(imag[1:-1], expected / SQRT2, atol=1e-12, rtol=0)
        np.testing.assert_array_equal(classical_distribution(point_walk(20), part="imag"), np.zeros(43))

    def test_phases_real(self):
        """
        Test that a real nonnegative walk has no phase differences.
        """
        angles = phases(point_walk(30))
        np.testing.assert_array_equal(angles.phase0, np.zeros(63))
        np.testing.assert_array_equal(angles.phase1, np.zeros(63))

    def test_phase_quarter_turn(self):
        """
        Test phase0 = pi/2 for p0 = i and m0 = 1.
        """
        v = np.zeros(8, dtype=complex)
        v[0], v[3] = 1j, 1
        angles = phases(LiftedState.from_vector(Lattice(m=2), v))
        self.assertAlmostEqual(angles.phase0[0], math.pi / 2)
        self.assertEqual(angles.phase0[1], 0.0)

    def test_phases_peak_at_front(self):
        """
        Test that the phase differences of the (|0> + i|1>)/sqrt 2 walk peak near the front.
        """
        state = point_walk(50, QubitState(1 / SQRT2, 1j / SQRT2))
        labels = state.lattice.labels()
        angles = phases(state)
        occupied = classical_distribution(state) > 0
        magnitude = np.maximum(np.abs(angles.phase0), np.abs(angles.phase1))

        outer = occupied & (np.abs(labels) >= 25)
        inner = occupied & (np.abs(labels) < 25)
        self.assertGreater(magnitude[outer].max(), magnitude[inner].max())

    def test_symmetric_start(self):
        """
        Test that (|0> + i|1>)/sqrt 2 spreads symmetrically.
        """
        total = quantum_probabilities(point_walk(50, QubitState(1 / SQRT2, 1j / SQRT2))).prob_total
        np.testing.assert_allclose(total, total[::-1], atol=1e-12, rtol=0)

    def test_spreading(self):
        """
        Test diffusive classical spreading against ballistic quantum spreading.
        """
        def spread(steps):
            state = point_walk(steps)
            labels = state.lattice.labels()
            return (
                moments(classical_distribution(state), labels).std,
                moments(quantum_probabilities(state).prob_total, labels).std,
            )

        classical_50, quantum_50 = spread(50)
        classical_100, quantum_100 = spread(100)
        classical_400, _ = spread(400)
        _, quantum_200 = spread(200)

        self.assertAlmostEqual(classical_100, 10.0, places=9)
        self.assertAlmostEqual(classical_400 / classical_100, 2.0, delta=0.1)
        self.assertAlmostEqual(quantum_100 / quantum_50, 2.0, delta=0.2)
        for quantum, steps in ((quantum_50, 50), (quantum_200, 200)):
            self.assertAlmostEqual((quantum / steps) / (quantum_100 / 100), 1.0, delta=0.1)

    def test_site_distribution_columns(self):
        """
        Test that a full distribution flattens into the dataset columns.
        """
        columns = site_distribution(point_walk(10)).columns()
        self.assertEqual(list(columns), DATASET_COLUMNS)
        self.assertEqual(len(columns["site"]), 23)

    def test_partial_distribution_columns(self):
        """
        Test that a partial distribution cannot be flattened.
        """
        with self.assertRaises(ValueError):
            unfold(point_walk(2)).columns()


class TestLiftEquivalence(unittest.TestCase):
    """
    Test cases for the lift equivalence of both systems.
    """

    def test_examples(self):
        """
        Test the free and reflecting residuals and the zero-step case.
        """
        lattice = Lattice(m=16)
        start = lifted_state(lattice, [8], QubitState(1, 0))
        self.assertLess(lift_equivalence_residual(16, 10, start), 1e-9)
        self.assertEqual(lift_equivalence_residual(16, 0, start), 0.0)

        a = 1 / np.sqrt(46)
        finite = lifted_state(Lattice(m=25), range(1, 24), QubitState(a, -a))
        self.assertLess(lift_equivalence_residual(25, 8, finite, BoundarySpec(kind=BoundaryKind.REFLECT1)), 1e-9)

    def test_random_starts(self):
        """
        Test 20 random complex starts for every size and step count.
        """
        rng = np.random.default_rng(0)
        for m in (4, 8, 16):
            for _ in range(20):
                start = rng.standard_normal(4 * m) + 1j * rng.standard_normal(4 * m)
                for n in range(1, 11):
                    self.assertLess(lift_equivalence_residual(m, n, start), 1e-9)

    def test_boundary_random_starts(self):
        """
        Test both reflectors on 25 sites up to 12 steps.
        """
        rng = np.random.default_rng(1)
        for kind in (BoundaryKind.REFLECT1, BoundaryKind.REFLECT2):
            start = rng.standard_normal(100) + 1j * rng.standard_normal(100)
            for n in range(13):
                with self.subTest(kind=kind, n=n):
                    self.assertLess(lift_equivalence_residual(25, n, start, BoundarySpec(kind=kind)), 1e-9)

    def test_scale_limits(self):
        """
        Test rejecting runs beyond the dense verification scale.
        """
        with self.assertRaises(ScaleLimitError):
            lift_equivalence_residual(16, 21, np.zeros(64))
        with self.assertRaises(ScaleLimitError):
            lift_equivalence_residual(65, 1, np.zeros(260))
        with self.assertRaises(LatticeMismatchError):
            lift_equivalence_residual(16, 1, np.zeros(60))

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([4, 8, 16]),
        st.integers(min_value=1, max_value=10),
        st.integers(min_value=0, max_value=2 ** 32 - 1),
        st.sampled_from(ALL_BOUNDARIES),
    )
    def test_projection_matches_unitary_walk(self, m, n, seed, boundary):
        """
        Test that projecting the structural lifted walk gives the structural unitary walk.
        """
        rng = np.random.default_rng(seed)
        lattice = Lattice(m=m)
        v = rng.standard_normal(4 * m) + 1j * rng.standard_normal(4 * m)
        lifted = evolve(LiftedState.from_vector(lattice, v), make_markov_step(lattice, boundary), n)

        sites = v.reshape(m, 4)
        w = np.stack([sites[:, 0] - sites[:, 3], sites[:, 1] - sites[:, 2]], axis=1).reshape(-1)
        wave = evolve(WaveState(lattice=lattice, w=w), make_unitary_step(lattice, boundary), n)

        np.testing.assert_allclose(project_state(lifted).w, wave.w, atol=1e-10, rtol=0)


class TestRunLiftedWalk(unittest.TestCase):
    """
    Test cases for running a walk from a request.
    """

    def test_run_request(self):
        """
        Test the 100-step walk from the origin.
        """
        request = RunRequest(steps=100, initial=InitialSpec.parse("point:0:(1,0),(0,0)"))
        state = run_lifted_walk(request)
        self.assertEqual(state.lattice.m, 203)
        self.assertEqual(state.step, 100)
        self.assertLess(abs(quantum_probabilities(state).prob_total.sum() - 1.0), 1e-6)

    def test_initial_state_uses_labels(self):
        """
        Test that explicit lattices are labelled from 1.
        """
        request = RunRequest(steps=0, sites=25, initial=InitialSpec.parse("uniform:2-24:(1,0),(0,0)"))
        coins = unfold(initial_lifted_state(request))
        self.assertEqual(coins.p0[0], 0)
        self.assertEqual(coins.p0[-1], 0)
        np.testing.assert_array_equal(coins.p0[1:-1], np.ones(23))


if __name__ == "__main__":
    unittest.main()
