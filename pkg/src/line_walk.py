"""
Walks on an m-site line for qwlift.

Both systems share one structural step: a coin layer applied site by site,
then a shift of the down-branch coins by Right and the up-branch coins by
Left. Vectors are stored site-major, so coin c of site k sits at index
4k + c (lifted) or 2k + c (unitary).

    U = Right (x) ZeroState A + Left (x) OneState A
    u = Right (x) Zero H      + Left (x) One H

Right moves weight from site j+1 to site j; Left moves it from j to j+1.
In the lifted system the |0> and -|0> coins follow Right, |1> and -|1>
follow Left.
"""

import logging
import math
from typing import Dict, Iterable, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from .boundaries import CoinLayer, make_coin_layer
from .coin_core import SQRT2, QubitState, lift, max_norm
from .config import LIMITS
from .oracle import ScaleLimitError, dense_assemble, dense_evolve, interference_operator
from .schemas import (
    DATASET_COLUMNS,
    BoundarySpec,
    Lattice,
    LiftMode,
    RunRequest,
    Scaling,
    System,
)

logger = logging.getLogger(__name__)


class LatticeMismatchError(ValueError):
    """Raised when an operator and a state do not live on the same lattice or system."""


class ComplexStartError(ValueError):
    """Raised when a complex state is read as a single classical walker."""


class ScalingOverflowError(ValueError):
    """Raised when a reading needs a power of sqrt 2 outside double range."""


class ShiftMatrix(BaseModel):
    """
    Structural Right or Left shift on m sites.

    Right has ones on the superdiagonal, Left on the subdiagonal. The cyclic
    closure adds Right(m-1, 0) and Left(0, m-1).
    """
    model_config = ConfigDict(frozen=True)

    m: int
    direction: Literal["right", "left"]
    cyclic: bool = False

    def shift_into(self, src: np.ndarray, dst: np.ndarray) -> None:
        """
        Write the shift of src into dst along the last axis. dst must not
        overlap src.
        """
        if self.direction == "right":
            dst[..., :-1] = src[..., 1:]
            dst[..., -1] = src[..., 0] if self.cyclic else 0
        else:
            dst[..., 1:] = src[..., :-1]
            dst[..., 0] = src[..., -1] if self.cyclic else 0

    def apply(self, x: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        Apply the shift along one axis of x.

        Args:
            x (np.ndarray): Array with a site axis of length m
            axis (int): Site axis

        Returns:
            np.ndarray: Shifted copy of x
        """
        moved = np.moveaxis(np.asarray(x), axis, -1)
        if moved.shape[-1] != self.m:
            raise LatticeMismatchError(
                f"Shift on {self.m} sites applied to an axis of length {moved.shape[-1]}"
            )

        out = np.empty_like(moved)
        self.shift_into(moved, out)
        return np.moveaxis(out, -1, axis)

    def to_dense(self) -> np.ndarray:
        return self.apply(np.eye(self.m), axis=0)


def make_shift_matrices(m: int, cyclic: bool = False) -> Tuple[ShiftMatrix, ShiftMatrix]:
    """
    Build the Right and Left shifts.

    Args:
        m (int): Number of sites, at least 2
        cyclic (bool): Add the wraparound entries

    Returns:
        Tuple[ShiftMatrix, ShiftMatrix]: (Right, Left)
    """
    if m < 2:
        raise ValueError(f"A line needs at least 2 sites, got {m}")
    return (
        ShiftMatrix(m=m, direction="right", cyclic=cyclic),
        ShiftMatrix(m=m, direction="left", cyclic=cyclic),
    )


class StepOperator(BaseModel):
    """
    One step of either system, kept in block form.

    The coin layer acts per site; the masks split the coins between the two
    shifts. No d x d matrix is formed unless ``to_dense`` is called.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lattice: Lattice
    boundary: BoundarySpec
    system: System
    layer: CoinLayer
    right: ShiftMatrix
    left: ShiftMatrix
    down_mask: np.ndarray
    up_mask: np.ndarray

    @property
    def coins(self) -> int:
        return len(self.down_mask)

    def apply(
        self,
        x: np.ndarray,
        out: Optional[np.ndarray] = None,
        work: Optional[np.ndarray] = None,
    ) -> np.ndarray:
        """
        Apply one step to an array of shape (..., m, coins).

        ``out`` may be ``x`` itself: the coin layer is written to ``work``
        first, and the shifts read only from there.

        Args:
            x (np.ndarray): Site-major state block(s)
            out (Optional[np.ndarray]): Buffer for the result
            work (Optional[np.ndarray]): Scratch buffer of the same shape as x

        Returns:
            np.ndarray: Stepped array of the same shape
        """
        w = self.layer.apply(x, out=work)
        if out is None:
            out = np.empty_like(w)
        for c in np.flatnonzero(self.down_mask):
            self.right.shift_into(w[..., c], out[..., c])
        for c in np.flatnonzero(self.up_mask):
            self.left.shift_into(w[..., c], out[..., c])
        return out

    def to_dense(self) -> np.ndarray:
        """Dense matrix of the step, column by column. Verification only."""
        d = self.lattice.dimension(self.system)
        basis = np.eye(d, dtype=complex).reshape(d, self.lattice.m, self.coins)
        return self.apply(basis).reshape(d, d).T


def _make_step(lattice: Lattice, boundary: BoundarySpec, system: System) -> StepOperator:
    layer = make_coin_layer(lattice, boundary, system)
    right, left = make_shift_matrices(lattice.m, boundary.wraps)
    if system == System.LIFTED:
        down, up = np.array([1.0, 0, 0, 1]), np.array([0, 1.0, 1, 0])
    else:
        down, up = np.array([1.0, 0]), np.array([0, 1.0])
    return StepOperator(
        lattice=lattice,
        boundary=boundary,
        system=system,
        layer=layer,
        right=right,
        left=left,
        down_mask=down,
        up_mask=up,
    )


def make_markov_step(lattice: Lattice, boundary: BoundarySpec = BoundarySpec()) -> StepOperator:
    """
    Build the lifted step U = X Y.

    Args:
        lattice (Lattice): Line to walk on
        boundary (BoundarySpec): Boundary condition

    Returns:
        StepOperator: Lifted step
    """
    return _make_step(lattice, boundary, System.LIFTED)


def make_unitary_step(lattice: Lattice, boundary: BoundarySpec = BoundarySpec()) -> StepOperator:
    """
    Build the unitary step u = x y.

    Args:
        lattice (Lattice): Line to walk on
        boundary (BoundarySpec): Boundary condition

    Returns:
        StepOperator: Unitary step
    """
    return _make_step(lattice, boundary, System.UNITARY)


def sqrt2_power(n: int) -> float:
    """
    (sqrt 2)^n, exact for even n.

    Raises:
        ScalingOverflowError: If the power is not representable as a double
    """
    try:
        power = math.ldexp(1.0, n // 2)
    except OverflowError:
        power = math.inf
    if n % 2:
        power *= SQRT2
    if math.isinf(power):
        raise ScalingOverflowError(f"(sqrt 2)^{n} is not representable as a double")
    return power


class LiftedState(BaseModel):
    """
    Coin populations over the lattice after ``step`` steps.

    ``populations`` is the unscaled chain U^n P(0), which stays O(1) in both
    scaling modes. The literal vector ``v`` is derived from it: in
    sqrt2-step mode it carries the factor (sqrt 2)^n.

    ``odd`` is the reversal-odd part (I (x) B^T B / 2) v, evolved alongside
    with the scaling of the mode; quantum amplitudes are read from ``odd``
    because p0 - m0 computed from ``v`` loses every significant digit after
    a few dozen steps.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lattice: Lattice
    populations: np.ndarray
    odd: np.ndarray
    step: int = 0
    scaling: Scaling = Scaling.SQRT2_STEP

    @classmethod
    def from_vector(
        cls,
        lattice: Lattice,
        v: np.ndarray,
        scaling: Scaling = Scaling.SQRT2_STEP,
        step: int = 0,
    ) -> "LiftedState":
        """
        Wrap a length-4m vector, deriving its reversal-odd part.

        Args:
            lattice (Lattice): Lattice of the vector
            v (np.ndarray): Populations, site-major, in the given scaling
            scaling (Scaling): Scaling mode the vector follows
            step (int): Steps already taken

        Returns:
            LiftedState: The state
        """
        v = np.asarray(v, dtype=complex)
        if v.shape != (lattice.dimension(System.LIFTED),):
            raise LatticeMismatchError(
                f"Lifted vector of shape {v.shape} does not fit {lattice.m} sites"
            )
        sites = v.reshape(lattice.m, 4)
        odd = (sites - sites[:, ::-1]) / 2
        populations = v / sqrt2_power(step) if scaling == Scaling.SQRT2_STEP else v
        return cls(lattice=lattice, populations=populations, odd=odd.reshape(-1), step=step, scaling=scaling)

    @property
    def population_scale(self) -> float:
        """Factor turning ``populations`` into ``v``."""
        return sqrt2_power(self.step) if self.scaling == Scaling.SQRT2_STEP else 1.0

    @property
    def v(self) -> np.ndarray:
        """
        The literal population vector in the state's scaling mode.

        Raises:
            ScalingOverflowError: If a scaled entry is not representable
        """
        if self.scaling == Scaling.UNSCALED:
            return self.populations
        with np.errstate(over="ignore"):
            v = self.populations * self.population_scale
        if not np.all(np.isfinite(v)):
            raise ScalingOverflowError(
                f"Scaled populations overflow at step {self.step}; read quantum and classical "
                f"distributions instead, or use fewer steps"
            )
        return v

    def sites(self) -> np.ndarray:
        return self.v.reshape(self.lattice.m, 4)

    def population_sites(self) -> np.ndarray:
        return self.populations.reshape(self.lattice.m, 4)

    @property
    def amplitude_scale(self) -> float:
        """Factor turning B v into quantum amplitudes."""
        if self.scaling == Scaling.SQRT2_STEP:
            return 1.0
        if self.step > LIMITS["unscaled_max_steps"]:
            raise ScalingOverflowError(
                f"Unscaled extraction is limited to {LIMITS['unscaled_max_steps']} steps, "
                f"state is at step {self.step}"
            )
        return sqrt2_power(self.step)

    def interfered(self) -> np.ndarray:
        """Per-site B v, shape (m, 2), read from the reversal-odd part."""
        odd = self.odd.reshape(self.lattice.m, 4)
        return np.stack([odd[:, 0] - odd[:, 3], odd[:, 1] - odd[:, 2]], axis=1)


class WaveState(BaseModel):
    """Quantum amplitudes over the lattice after ``step`` steps."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lattice: Lattice
    w: np.ndarray
    step: int = 0

    def sites(self) -> np.ndarray:
        return self.w.reshape(self.lattice.m, 2)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.w) ** 2))


State = Union[LiftedState, WaveState]


def lifted_state(
    lattice: Lattice,
    indices: Iterable[int],
    q: QubitState,
    mode: LiftMode = LiftMode.SIGN_SPLIT,
    scaling: Scaling = Scaling.SQRT2_STEP,
) -> LiftedState:
    """
    Place lift(q) on every listed site index.

    Args:
        lattice (Lattice): Lattice of the walk
        indices (Iterable[int]): Site indices 0..m-1
        q (QubitState): Coin state repeated on every site
        mode (LiftMode): Lift mode
        scaling (Scaling): Scaling mode of the evolution

    Returns:
        LiftedState: State at step 0
    """
    sites = np.zeros((lattice.m, 4), dtype=complex)
    sites[list(indices)] = lift(q, mode)
    return LiftedState.from_vector(lattice, sites.reshape(-1), scaling)


def wave_state(lattice: Lattice, indices: Iterable[int], q: QubitState) -> WaveState:
    """Place the amplitudes q on every listed site index."""
    sites = np.zeros((lattice.m, 2), dtype=complex)
    sites[list(indices)] = q.as_array()
    return WaveState(lattice=lattice, w=sites.reshape(-1))


def _start_indices(request: RunRequest, lattice: Lattice):
    return [lattice.index_of(label) for label in request.initial.site_labels()]


def initial_lifted_state(request: RunRequest) -> LiftedState:
    lattice = request.lattice()
    q = QubitState(*request.initial.amplitudes())
    return lifted_state(lattice, _start_indices(request, lattice), q, request.lift_mode, request.scaling)


def initial_wave_state(request: RunRequest) -> WaveState:
    lattice = request.lattice()
    q = QubitState(*request.initial.amplitudes())
    return wave_state(lattice, _start_indices(request, lattice), q)


def evolve(state: State, op: StepOperator, n: int) -> State:
    """
    Apply a step operator n times.

    Args:
        state (State): Lifted or wave state
        op (StepOperator): Operator of the matching system
        n (int): Number of steps

    Returns:
        State: New state of the same kind at step state.step + n
    """
    if n < 0:
        raise ValueError(f"Step count must be nonnegative, got {n}")

    expected = System.LIFTED if isinstance(state, LiftedState) else System.UNITARY
    if op.system != expected:
        raise LatticeMismatchError(
            f"A {expected.value} state cannot be evolved by a {op.system.value} operator"
        )
    if op.lattice.m != state.lattice.m:
        raise LatticeMismatchError(
            f"Operator on {op.lattice.m} sites applied to a state on {state.lattice.m} sites"
        )
    if n == 0:
        return state

    m = state.lattice.m
    logger.debug(f"Evolving {n} {expected.value} steps on {m} sites")

    if isinstance(state, WaveState):
        x = state.sites().astype(complex)
        work = np.empty_like(x)
        for _ in range(n):
            op.apply(x, out=x, work=work)
        return WaveState(lattice=state.lattice, w=x.reshape(-1), step=state.step + n)

    # Both channels in one array: (2, m, 4). Only the odd channel follows
    # the sqrt2-step scaling; the populations stay unscaled.
    x = np.stack([state.populations, state.odd]).reshape(2, m, 4)
    work = np.empty_like(x)
    scaled = state.scaling == Scaling.SQRT2_STEP
    for _ in range(n):
        op.apply(x, out=x, work=work)
        if scaled:
            x[1] *= SQRT2
    return LiftedState(
        lattice=state.lattice,
        populations=x[0].reshape(-1),
        odd=x[1].reshape(-1),
        step=state.step + n,
        scaling=state.scaling,
    )


class SiteDistribution(BaseModel):
    """
    Per-site readings of a lifted state. Fields not requested by the
    extraction that built it stay None.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    labels: np.ndarray
    p0: Optional[np.ndarray] = None
    p1: Optional[np.ndarray] = None
    m1: Optional[np.ndarray] = None
    m0: Optional[np.ndarray] = None
    prob0: Optional[np.ndarray] = None
    prob1: Optional[np.ndarray] = None
    prob_total: Optional[np.ndarray] = None
    classical: Optional[np.ndarray] = None
    phase0: Optional[np.ndarray] = None
    phase1: Optional[np.ndarray] = None

    def columns(self) -> Dict[str, np.ndarray]:
        """
        Flatten into the dataset columns, complex populations split into
        real and imaginary parts.

        Returns:
            Dict[str, np.ndarray]: Column name to array, in dataset order
        """
        missing = [
            name for name in ("p0", "p1", "m1", "m0", "prob0", "prob1", "prob_total",
                              "classical", "phase0", "phase1")
            if getattr(self, name) is None
        ]
        if missing:
            raise ValueError(f"Distribution is missing fields: {', '.join(missing)}")

        columns = {"site": self.labels}
        for name in ("p0", "p1", "m1", "m0"):
            values = getattr(self, name)
            columns[f"{name}_re"] = values.real
            columns[f"{name}_im"] = values.imag
        for name in DATASET_COLUMNS[9:]:
            columns[name] = getattr(self, name)
        return columns


def unfold(state: LiftedState) -> SiteDistribution:
    """
    Split the lifted vector into its four coin distributions.

    Args:
        state (LiftedState): State to read

    Returns:
        SiteDistribution: p0, p1, m1 and m0 populated
    """
    sites = state.sites()
    return SiteDistribution(
        labels=state.lattice.labels(),
        p0=sites[:, 0].copy(),
        p1=sites[:, 1].copy(),
        m1=sites[:, 2].copy(),
        m0=sites[:, 3].copy(),
    )


def quantum_probabilities(state: LiftedState) -> SiteDistribution:
    """
    Quantum probabilities |(sqrt 2)^n (p0 - m0)|^2 and |(sqrt 2)^n (p1 - m1)|^2.

    Args:
        state (LiftedState): State to read

    Returns:
        SiteDistribution: prob0, prob1 and prob_total populated
    """
    amplitudes = state.amplitude_scale * state.interfered()
    prob0 = np.abs(amplitudes[:, 0]) ** 2
    prob1 = np.abs(amplitudes[:, 1]) ** 2
    return SiteDistribution(
        labels=state.lattice.labels(),
        prob0=prob0,
        prob1=prob1,
        prob_total=prob0 + prob1,
    )


def classical_distribution(
    state: LiftedState,
    strict: bool = False,
    part: Optional[Literal["real", "imag"]] = None,
) -> np.ndarray:
    """
    Classical occupation p0 + p1 + m1 + m0 per site.

    A complex start is two independent real walkers, one on the real parts
    of the populations and one on the imaginary parts. ``part`` picks one;
    without it the real walker is read and a complex state is flagged.

    Args:
        state (LiftedState): State to read
        strict (bool): Raise instead of warning on a complex state read without ``part``
        part (Optional[Literal["real", "imag"]]): Walker to read

    Returns:
        np.ndarray: Real occupation per site
    """
    sites = state.population_sites()
    if part == "imag":
        return sites.imag.sum(axis=1)
    if part is None and np.any(sites.imag != 0):
        message = "State is complex; the classical reading covers the real walker only"
        if strict:
            raise ComplexStartError(message)
        logger.warning(message)
    return sites.real.sum(axis=1)


def _angle(z: np.ndarray) -> np.ndarray:
    return np.where(z == 0, 0.0, np.angle(z))


def phases(state: LiftedState) -> SiteDistribution:
    """
    Phase differences theta(p0) - theta(m0) and theta(p1) - theta(m1).

    Args:
        state (LiftedState): State to read

    Returns:
        SiteDistribution: phase0 and phase1 populated
    """
    # A positive scale factor leaves every angle unchanged
    sites = state.population_sites()
    return SiteDistribution(
        labels=state.lattice.labels(),
        phase0=_angle(sites[:, 0]) - _angle(sites[:, 3]),
        phase1=_angle(sites[:, 1]) - _angle(sites[:, 2]),
    )


def site_distribution(state: LiftedState) -> SiteDistribution:
    """
    Every per-site reading of a lifted state.

    Args:
        state (LiftedState): State to read

    Returns:
        SiteDistribution: All fields populated
    """
    coins = unfold(state)
    quantum = quantum_probabilities(state)
    angles = phases(state)
    return SiteDistribution(
        labels=coins.labels,
        p0=coins.p0,
        p1=coins.p1,
        m1=coins.m1,
        m0=coins.m0,
        prob0=quantum.prob0,
        prob1=quantum.prob1,
        prob_total=quantum.prob_total,
        classical=classical_distribution(state),
        phase0=angles.phase0,
        phase1=angles.phase1,
    )


def project_state(state: LiftedState) -> WaveState:
    """
    Interfere a lifted state into quantum amplitudes, (sqrt 2)^n (I (x) B) v.

    Args:
        state (LiftedState): State to project

    Returns:
        WaveState: Amplitudes at the same step
    """
    w = state.amplitude_scale * state.interfered()
    return WaveState(lattice=state.lattice, w=w.reshape(-1), step=state.step)


def lift_equivalence_residual(
    m: int,
    n: int,
    p0: Union[LiftedState, np.ndarray],
    boundary: BoundarySpec = BoundarySpec(),
) -> float:
    """
    Dense check of u^n (I (x) B) P(0) = (sqrt 2)^n (I (x) B) U^n P(0).

    Args:
        m (int): Number of sites, at most 64
        n (int): Number of steps, at most 20
        p0 (Union[LiftedState, np.ndarray]): Initial lifted vector
        boundary (BoundarySpec): Boundary condition of both systems

    Returns:
        float: Max-norm difference of the two sides
    """
    if n > LIMITS["lift_max_steps"]:
        raise ScaleLimitError(f"Lift equivalence is limited to {LIMITS['lift_max_steps']} steps, got {n}")
    if n < 0:
        raise ValueError(f"Step count must be nonnegative, got {n}")

    lattice = Lattice(m=m)
    v = p0.v if isinstance(p0, LiftedState) else np.asarray(p0, dtype=complex)
    if v.shape != (4 * m,):
        raise LatticeMismatchError(f"Lifted vector of shape {v.shape} does not fit {m} sites")

    U = dense_assemble(lattice, boundary, System.LIFTED)
    u = dense_assemble(lattice, boundary, System.UNITARY)
    IB = interference_operator(m)

    lhs = dense_evolve(u, IB @ v, n)
    rhs = SQRT2 ** n * (IB @ dense_evolve(U, v, n))
    residual = max_norm(lhs - rhs)
    logger.debug(f"Lift equivalence on {m} sites after {n} steps: {residual:.3e}")
    return residual


def run_lifted_walk(request: RunRequest) -> LiftedState:
    """
    Build and evolve the lifted walk described by a run request.

    Args:
        request (RunRequest): Validated request

    Returns:
        LiftedState: State after request.steps steps
    """
    state = initial_lifted_state(request)
    op = make_markov_step(state.lattice, request.boundary)
    logger.info(
        f"Evolving {request.steps} steps on {state.lattice.m} sites "
        f"(boundary {request.boundary.kind.value}, scaling {request.scaling.value})"
    )
    return evolve(state, op, request.steps)
