"""
Coin-lift algebra for qwlift.

The Hadamard coin acting on a qubit (|0>, |1>) is represented by a
four-state Markov chain on the lifted coin basis, ordered everywhere in this
package as::

    (|0>, |1>, -|1>, -|0>)

The interference matrix B collapses a lifted population vector back onto
signed amplitudes, and H = (1/sqrt 2) B A B^T links the two pictures.
"""

import logging
from typing import List, NamedTuple, Tuple

import numpy as np

from .config import LIMITS
from .schemas import LiftMode

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)


class QubitState(NamedTuple):
    """Amplitudes of |0> and |1> at a single site."""
    a0: complex
    a1: complex

    def norm_squared(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)


def make_transition_matrix() -> np.ndarray:
    """
    Build the doubly stochastic coin chain A.

    Four sites with reflecting ends and p = q = 1/2: |0> stays or moves to
    |1>, |1> moves to |0> or -|1>, and so on.

    Returns:
        np.ndarray: 4x4 float matrix
    """
    return 0.5 * np.array(
        [
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
        ],
        dtype=float,
    )


def make_interference_matrix() -> np.ndarray:
    """
    Build the interference matrix B.

    Returns:
        np.ndarray: 2x4 integer matrix
    """
    return np.array([[1, 0, 0, -1], [0, 1, -1, 0]], dtype=int)


def make_reversal_matrix(dim: int = 4) -> np.ndarray:
    return np.fliplr(np.eye(dim, dtype=int))


def make_zero_state() -> np.ndarray:
    """Lifted projector onto the coins that follow the |0> shift branch."""
    return np.diag([1, 0, 0, 1])


def make_one_state() -> np.ndarray:
    """Lifted projector onto the coins that follow the |1> shift branch."""
    return np.diag([0, 1, 1, 0])


def make_coin_projectors() -> Tuple[np.ndarray, np.ndarray]:
    """Qubit projectors Zero = |0><0| and One = |1><1|."""
    return np.diag([1, 0]), np.diag([0, 1])


def make_hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=float) / SQRT2


def max_norm(matrix: np.ndarray) -> float:
    """Largest absolute entry, 0 for an empty array."""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix))) if matrix.size else 0.0


def hadamard_via_lift() -> np.ndarray:
    """
    Rebuild the Hadamard coin from the lift as (1/sqrt 2) B A B^T.

    Returns:
        np.ndarray: 2x2 float matrix
    """
    B = make_interference_matrix()
    A = make_transition_matrix()
    return (B @ A @ B.T) / SQRT2


def power_relation_residual(n: int) -> float:
    """
    Residual of H^n B = (sqrt 2)^n B A^n.

    Args:
        n (int): Power, 0 <= n <= 64

    Returns:
        float: Max-norm of the difference
    """
    if not 0 <= n <= LIMITS["power_max"]:
        raise ValueError(f"Power must be in [0, {LIMITS['power_max']}], got {n}")

    B = make_interference_matrix()
    lhs = np.linalg.matrix_power(make_hadamard(), n) @ B
    rhs = SQRT2 ** n * (B @ np.linalg.matrix_power(make_transition_matrix(), n))
    return max_norm(lhs - rhs)


def idempotent_check() -> float:
    """
    Residual of (B^T B / 2)^2 = B^T B / 2.

    Returns:
        float: Max-norm of the difference
    """
    B = make_interference_matrix()
    half = (B.T @ B) / 2
    return max_norm(half @ half - half)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def commutation_residuals() -> List[Tuple[str, float]]:
    """
    Commutators of B^T B with every lifted coin-layer matrix.

    Returns:
        List[Tuple[str, float]]: (name, max-norm of [M, B^T B]) pairs
    """
    from .boundaries import make_reflectors

    B = make_interference_matrix()
    BtB = B.T @ B
    R1, R2, _, _ = make_reflectors()
    matrices = [
        ("A", make_transition_matrix()),
        ("ZeroState", make_zero_state()),
        ("OneState", make_one_state()),
        ("R1", R1),
        ("R2", R2),
    ]
    return [(name, max_norm(commutator(matrix, BtB))) for name, matrix in matrices]


def projector_residuals() -> List[Tuple[str, float]]:
    """
    Residuals of B ZeroState B^T = 2 Zero and B OneState B^T = 2 One.

    Returns:
        List[Tuple[str, float]]: (name, residual) pairs
    """
    B = make_interference_matrix()
    zero, one = make_coin_projectors()
    return [
        ("ZeroState", max_norm(B @ make_zero_state() @ B.T - 2 * zero)),
        ("OneState", max_norm(B @ make_one_state() @ B.T - 2 * one)),
    ]


def determinants() -> Tuple[float, float]:
    """(det A, det H): the chain is singular while the coin is not."""
    return float(np.linalg.det(make_transition_matrix())), float(np.linalg.det(make_hadamard()))


def _split(value: complex) -> Tuple[complex, complex]:
    # Nonnegative real/imaginary parts go to the positive slot, negated
    # negative parts to the mirrored slot.
    re, im = value.real, value.imag
    positive = complex(max(re, 0.0), max(im, 0.0))
    negative = complex(max(-re, 0.0), max(-im, 0.0))
    return positive, negative


def lift(q: QubitState, mode: LiftMode = LiftMode.SIGN_SPLIT) -> np.ndarray:
    """
    Lift a qubit state into four coin populations P with B P = q.

    Args:
        q (QubitState): Amplitudes (a0, a1)
        mode (LiftMode): ``raw`` gives (a0, a1, 0, 0); ``sign-split`` routes
            negative parts to the -|1>, -|0> slots so real states lift to
            nonnegative populations

    Returns:
        np.ndarray: Complex vector of length 4
    """
    a0, a1 = complex(q.a0), complex(q.a1)
    if mode == LiftMode.RAW:
        return np.array([a0, a1, 0, 0], dtype=complex)

    p0, m0 = _split(a0)
    p1, m1 = _split(a1)
    return np.array([p0, p1, m1, m0], dtype=complex)


def project(p: np.ndarray, n: int = 0) -> QubitState:
    """
    Project coin populations back to amplitudes, (sqrt 2)^n B p.

    Args:
        p (np.ndarray): Populations of length 4
        n (int): Number of unscaled steps behind p

    Returns:
        QubitState: Projected amplitudes
    """
    if n < 0:
        raise ValueError(f"Step count must be nonnegative, got {n}")
    amplitudes = SQRT2 ** n * (make_interference_matrix() @ np.asarray(p, dtype=complex))
    return QubitState(complex(amplitudes[0]), complex(amplitudes[1]))


def conservation_residual(p: np.ndarray, n: int) -> float:
    """|[1,1,1,1] A^n p - [1,1,1,1] p| for a population vector p."""
    p = np.asarray(p, dtype=complex)
    evolved = np.linalg.matrix_power(make_transition_matrix(), n) @ p
    return float(abs(evolved.sum() - p.sum()))


def norm_residual(p: np.ndarray, n: int) -> float:
    """
    Relative residual of 2^n ||B A^n p||^2 = ||B p||^2.

    Args:
        p (np.ndarray): Population vector with B p != 0
        n (int): Number of steps

    Returns:
        float: Relative difference of the two squared norms
    """
    p = np.asarray(p, dtype=complex)
    B = make_interference_matrix()
    initial = np.linalg.norm(B @ p) ** 2
    if initial == 0:
        raise ValueError("Population vector lies in the kernel of B")
    # B = B (B^T B / 2), so only the reversal-odd part of p is evolved
    odd = (B.T @ B @ p) / 2
    evolved = SQRT2 ** n * (B @ np.linalg.matrix_power(make_transition_matrix(), n) @ odd)
    return float(abs(np.linalg.norm(evolved) ** 2 - initial) / initial)
