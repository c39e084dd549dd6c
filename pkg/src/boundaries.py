"""
Boundary coin operators for qwlift.

A finite line is built by replacing the coin at the first and last lattice
sites: reflecting coins R1/R2 (lifted) and r1/r2 (unitary), or the trap.
The mask Z selects those two sites, so the coin layer reads

    Y_rp = (I - Z) (x) A + Z (x) R1,    y_rp = (I - Z) (x) H + Z (x) r1.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from .coin_core import (
    QubitState,
    make_hadamard,
    make_transition_matrix,
    max_norm,
)
from .config import TOLERANCES
from .schemas import BoundaryKind, BoundarySpec, Lattice, LiftMode, Scaling, System

logger = logging.getLogger(__name__)


class BoundaryStartError(ValueError):
    """Raised when a walk that must start in the interior starts on an edge site."""


def make_reflectors() -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Build the reflecting coins.

    R1 swaps |0> <-> |1> and -|1> <-> -|0>; R2 swaps |0> <-> -|1> and
    |1> <-> -|0>. Both carry a 1/sqrt 2 factor, so on the lifted side a
    reflecting site is a partial trap. r1 is the qubit exchange and r2 its
    negation.

    Returns:
        Tuple[np.ndarray, ...]: (R1, R2, r1, r2)
    """
    exchange = np.array([[0, 1], [1, 0]], dtype=float)
    R1 = np.array(
        [
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ],
        dtype=float,
    ) / np.sqrt(2.0)
    R2 = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ],
        dtype=float,
    ) / np.sqrt(2.0)
    return R1, R2, exchange, -exchange


def make_trap() -> np.ndarray:
    return np.zeros((4, 4))


def boundary_coins(kind: BoundaryKind) -> Tuple[np.ndarray, np.ndarray]:
    """
    Get the edge coin pair for a boundary kind.

    Args:
        kind (BoundaryKind): reflect1, reflect2 or trap

    Returns:
        Tuple[np.ndarray, np.ndarray]: (lifted 4x4, unitary 2x2)
    """
    R1, R2, r1, r2 = make_reflectors()
    coins = {
        BoundaryKind.REFLECT1: (R1, r1),
        BoundaryKind.REFLECT2: (R2, r2),
        BoundaryKind.TRAP: (make_trap(), np.zeros((2, 2))),
    }
    if kind not in coins:
        raise ValueError(f"Boundary kind '{kind.value}' has no edge coin")
    return coins[kind]


class CoinLayer(BaseModel):
    """
    Coin layer of one step: a bulk coin on every site, optionally replaced
    by an edge coin on the first and last sites.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    bulk: np.ndarray
    edge: Optional[np.ndarray] = None

    def block(self, k: int) -> np.ndarray:
        if self.edge is not None and k in (0, self.m - 1):
            return self.edge
        return self.bulk

    def apply(self, x: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Apply the layer to an array whose last two axes are (site, coin).

        Args:
            x (np.ndarray): Array of shape (..., m, c)
            out (Optional[np.ndarray]): Buffer for the result, not overlapping x

        Returns:
            np.ndarray: Array of the same shape
        """
        out = np.matmul(x, self.bulk.T, out=out)
        if self.edge is not None:
            out[..., 0, :] = x[..., 0, :] @ self.edge.T
            out[..., -1, :] = x[..., -1, :] @ self.edge.T
        return out

    def mask(self) -> np.ndarray:
        """The Z matrix: ones at the two edge sites when edge coins exist."""
        Z = np.zeros((self.m, self.m))
        if self.edge is not None:
            Z[0, 0] = Z[-1, -1] = 1
        return Z

    def to_dense(self) -> np.ndarray:
        """(I - Z) (x) bulk + Z (x) edge, as a dense matrix."""
        Z = self.mask()
        dense = np.kron(np.eye(self.m) - Z, self.bulk)
        if self.edge is not None:
            dense = dense + np.kron(Z, self.edge)
        return dense


def make_coin_layer(lattice: Lattice, boundary: BoundarySpec, system: System) -> CoinLayer:
    """
    Build the coin layer of either system for any boundary kind.

    Args:
        lattice (Lattice): Line the layer acts on
        boundary (BoundarySpec): Boundary condition
        system (System): Lifted (A, R, Trap) or unitary (H, r, 0)

    Returns:
        CoinLayer: The layer
    """
    boundary.check_lattice(lattice)
    bulk = make_transition_matrix() if system == System.LIFTED else make_hadamard()
    edge = None
    if boundary.has_edges:
        lifted_edge, unitary_edge = boundary_coins(boundary.kind)
        edge = lifted_edge if system == System.LIFTED else unitary_edge
    return CoinLayer(m=lattice.m, bulk=bulk, edge=edge)


def make_masked_coin_layer(lattice: Lattice, boundary: BoundarySpec) -> Tuple[CoinLayer, CoinLayer]:
    """
    Build the masked coin layers Y_rp (lifted) and y_rp (unitary).

    Args:
        lattice (Lattice): Line with at least 3 sites
        boundary (BoundarySpec): reflect1, reflect2 or trap

    Returns:
        Tuple[CoinLayer, CoinLayer]: (lifted layer, unitary layer)
    """
    if not boundary.has_edges:
        raise ValueError(
            f"Masked coin layers need a reflect or trap boundary, got '{boundary.kind.value}'"
        )
    return (
        make_coin_layer(lattice, boundary, System.LIFTED),
        make_coin_layer(lattice, boundary, System.UNITARY),
    )


def no_leak_check(
    m: int,
    n: int,
    start: int,
    kind: BoundaryKind = BoundaryKind.REFLECT1,
    q: QubitState = QubitState(1, 0),
) -> float:
    """
    Compare cyclic and open shift closure between two reflecting sites.

    Population reaching an edge is turned back by the reflecting coin before
    the next shift, so nothing crosses the wraparound link and both closures
    evolve identically, unless the walk starts on an edge site.

    Args:
        m (int): Number of sites
        n (int): Number of steps
        start (int): Start index, strictly inside the lattice
        kind (BoundaryKind): reflect1 or reflect2
        q (QubitState): Coin state at the start site

    Returns:
        float: Max-norm difference of the lifted and wave states
    """
    from .line_walk import evolve, lifted_state, make_markov_step, make_unitary_step, wave_state

    if kind not in (BoundaryKind.REFLECT1, BoundaryKind.REFLECT2):
        raise ValueError(f"No-leak check needs a reflecting boundary, got '{kind.value}'")
    lattice = Lattice(m=m)
    if start in (0, m - 1):
        raise BoundaryStartError(f"Start index {start} is a boundary site of a {m}-site line")
    if not 0 < start < m - 1:
        raise ValueError(f"Start index {start} is outside the {m}-site line")

    states = {}
    for cyclic in (False, True):
        boundary = BoundarySpec(kind=kind, cyclic=cyclic)
        lifted = lifted_state(lattice, [start], q, LiftMode.SIGN_SPLIT, Scaling.UNSCALED)
        wave = wave_state(lattice, [start], q)
        states[cyclic] = (
            evolve(lifted, make_markov_step(lattice, boundary), n),
            evolve(wave, make_unitary_step(lattice, boundary), n),
        )

    (open_lifted, open_wave), (closed_lifted, closed_wave) = states[False], states[True]
    deviation = max(
        max_norm(open_lifted.v - closed_lifted.v),
        max_norm(open_wave.w - closed_wave.w),
    )
    logger.debug(f"No-leak deviation after {n} steps from site {start}: {deviation:.3e}")
    return deviation


def reflecting_norm_check(
    n: int,
    m: int = 25,
    first: int = 1,
    last: int = 23,
    kind: BoundaryKind = BoundaryKind.REFLECT1,
) -> float:
    """
    Norm preservation between two reflecting sites.

    Every site from ``first`` to ``last`` (indices) starts in
    (|0> - |1>)/sqrt(2 * count), so the initial norm is 1.

    Args:
        n (int): Number of steps
        m (int): Number of sites
        first (int): First start index
        last (int): Last start index

    Returns:
        float: |total quantum probability - 1|
    """
    from .line_walk import evolve, lifted_state, make_markov_step, quantum_probabilities

    lattice = Lattice(m=m)
    boundary = BoundarySpec(kind=kind)
    amplitude = 1.0 / np.sqrt(2.0 * (last - first + 1))
    q = QubitState(amplitude, -amplitude)

    state = lifted_state(lattice, range(first, last + 1), q, LiftMode.SIGN_SPLIT, Scaling.SQRT2_STEP)
    state = evolve(state, make_markov_step(lattice, boundary), n)
    total = float(quantum_probabilities(state).prob_total.sum())
    residual = abs(total - 1.0)
    if residual > TOLERANCES["reflecting_norm"]:
        logger.warning(f"Reflecting walk lost unitarity after {n} steps: |sum - 1| = {residual:.3e}")
    return residual
