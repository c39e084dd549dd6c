"""
Reference implementations for qwlift.

Everything here is the slow literal path: operators are materialized from
their Kronecker formulas, evolution is repeated matrix-vector products, and
the classical walk is an exact convolution. The structural engine in
line_walk is checked against these functions.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from .boundaries import boundary_coins, make_reflectors, make_trap
from .coin_core import (
    SQRT2,
    conservation_residual,
    hadamard_via_lift,
    make_coin_projectors,
    make_hadamard,
    make_interference_matrix,
    make_one_state,
    make_transition_matrix,
    make_zero_state,
    max_norm,
    norm_residual,
    power_relation_residual,
)
from .config import LIMITS, TOLERANCES
from .schemas import (
    BoundaryKind,
    BoundarySpec,
    Lattice,
    MomentReport,
    ResidualRow,
    SuiteReport,
    System,
)

logger = logging.getLogger(__name__)


class ScaleLimitError(ValueError):
    """Raised when a dense or exact computation is asked to run beyond its limits."""


class DenseOperator(BaseModel):
    """A materialized d x d step operator, d = 4m (lifted) or 2m (unitary)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lattice: Lattice
    system: System
    matrix: np.ndarray

    @model_validator(mode="after")
    def _check_matrix(self) -> "DenseOperator":
        d = self.lattice.dimension(self.system)
        if self.matrix.shape != (d, d):
            raise ValueError(f"Dense {self.system.value} operator on {self.lattice.m} sites must be {d}x{d}")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("Dense operator has non-finite entries")
        return self


def dense_shift_pair(m: int, cyclic: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Right (superdiagonal) and Left (subdiagonal) as dense matrices.

    Args:
        m (int): Number of sites
        cyclic (bool): Add Right(m-1, 0) and Left(0, m-1)

    Returns:
        Tuple[np.ndarray, np.ndarray]: (Right, Left)
    """
    right = np.eye(m, k=1)
    left = np.eye(m, k=-1)
    if cyclic:
        right[m - 1, 0] = 1
        left[0, m - 1] = 1
    return right, left


def dense_assemble(lattice: Lattice, boundary: BoundarySpec, system: System) -> DenseOperator:
    """
    Materialize U = X Y or u = x y from Kronecker products.

    Args:
        lattice (Lattice): Line with at most 64 sites
        boundary (BoundarySpec): Boundary condition
        system (System): Lifted or unitary

    Returns:
        DenseOperator: The full operator
    """
    m = lattice.m
    if m > LIMITS["dense_max_sites"]:
        raise ScaleLimitError(f"Dense assembly is limited to {LIMITS['dense_max_sites']} sites, got {m}")
    boundary.check_lattice(lattice)

    if system == System.LIFTED:
        bulk, down, up = make_transition_matrix(), make_zero_state(), make_one_state()
    else:
        bulk = make_hadamard()
        down, up = make_coin_projectors()

    Z = np.zeros((m, m))
    edge = np.zeros_like(bulk)
    if boundary.has_edges:
        Z[0, 0] = Z[m - 1, m - 1] = 1
        lifted_edge, unitary_edge = boundary_coins(boundary.kind)
        edge = lifted_edge if system == System.LIFTED else unitary_edge

    I = np.eye(m)
    Y = np.kron(I - Z, bulk) + np.kron(Z, edge)
    right, left = dense_shift_pair(m, boundary.wraps)
    X = np.kron(right, down) + np.kron(left, up)
    return DenseOperator(lattice=lattice, system=system, matrix=(X @ Y).astype(complex))


def interference_operator(m: int) -> np.ndarray:
    """I_m (x) B, shape (2m, 4m)."""
    return np.kron(np.eye(m), make_interference_matrix())


def dense_evolve(op: Union[DenseOperator, np.ndarray], v: np.ndarray, n: int) -> np.ndarray:
    """
    Apply a dense operator n times by repeated matrix-vector products.

    Args:
        op (Union[DenseOperator, np.ndarray]): Operator or bare square matrix
        v (np.ndarray): Vector of matching dimension
        n (int): Number of steps, at most 200

    Returns:
        np.ndarray: Evolved vector
    """
    matrix = op.matrix if isinstance(op, DenseOperator) else np.asarray(op)
    v = np.asarray(v, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[1] != v.shape[0]:
        raise ValueError(f"Operator of shape {matrix.shape} cannot act on a vector of shape {v.shape}")
    if n > LIMITS["dense_max_steps"]:
        raise ScaleLimitError(f"Dense evolution is limited to {LIMITS['dense_max_steps']} steps, got {n}")
    if n < 0:
        raise ValueError(f"Step count must be nonnegative, got {n}")

    for _ in range(n):
        v = matrix @ v
    return v


def binomial_walk(n: int, start: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact distribution of the symmetric +-1 walk after n steps.

    Args:
        n (int): Number of steps, at most 10 000
        start (int): Start site

    Returns:
        Tuple[np.ndarray, np.ndarray]: (site labels start-n..start+n, probabilities)
    """
    if not 0 <= n <= LIMITS["binomial_max_steps"]:
        raise ScaleLimitError(f"Binomial walk needs 0 <= n <= {LIMITS['binomial_max_steps']}, got {n}")

    # One convolution per step moves half the weight one site each way
    kernel = np.array([0.5, 0.0, 0.5])
    values = np.ones(1)
    for _ in range(n):
        values = np.convolve(values, kernel)
    labels = np.arange(start - n, start + n + 1)
    return labels, values


def moments(dist: np.ndarray, labels: Optional[np.ndarray] = None) -> MomentReport:
    """
    Mass-weighted mean and standard deviation of a site distribution.

    Args:
        dist (np.ndarray): Nonnegative weights per site
        labels (Optional[np.ndarray]): Site positions, defaults to 0..len-1

    Returns:
        MomentReport: Mean, standard deviation and total mass
    """
    dist = np.asarray(dist, dtype=float)
    if np.any(dist < 0):
        raise ValueError("Distribution has negative entries")
    total = float(dist.sum())
    if total == 0:
        raise ValueError("Distribution is all zero")

    positions = np.arange(dist.size, dtype=float) if labels is None else np.asarray(labels, dtype=float)
    if positions.shape != dist.shape:
        raise ValueError(f"Got {positions.size} labels for {dist.size} sites")

    mean = float(np.dot(positions, dist) / total)
    variance = float(np.dot((positions - mean) ** 2, dist) / total)
    return MomentReport(mean=mean, std=float(np.sqrt(max(variance, 0.0))), total=total)


def is_unimodal(values: np.ndarray, tol: float = 1e-12) -> bool:
    """
    True when the sequence rises (weakly) then falls (weakly), with
    differences within tol treated as plateaus.

    Args:
        values (np.ndarray): Sequence to test
        tol (float): Plateau tolerance

    Returns:
        bool: Whether there is a single local maximum
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("Cannot test an empty sequence")
    steps = np.diff(values)
    signs = np.sign(np.where(np.abs(steps) <= tol, 0.0, steps))
    signs = signs[signs != 0]
    return not bool(np.any((signs[:-1] < 0) & (signs[1:] > 0)))


def lifted_commutation_residual(lattice: Lattice, boundary: BoundarySpec = BoundarySpec()) -> float:
    """Max-norm of U (I (x) B^T B) - (I (x) B^T B) U."""
    U = dense_assemble(lattice, boundary, System.LIFTED).matrix
    B = make_interference_matrix()
    K = np.kron(np.eye(lattice.m), B.T @ B)
    return max_norm(U @ K - K @ U)


def unitary_from_lift_residual(lattice: Lattice, boundary: BoundarySpec = BoundarySpec()) -> float:
    """Max-norm of u - (1/sqrt 2)(I (x) B) U (I (x) B^T)."""
    U = dense_assemble(lattice, boundary, System.LIFTED).matrix
    u = dense_assemble(lattice, boundary, System.UNITARY).matrix
    IB = interference_operator(lattice.m)
    return max_norm(u - (IB @ U @ IB.T) / SQRT2)


def _row(name: str, identity: str, residual: float, family: str) -> ResidualRow:
    tolerance = TOLERANCES[family]
    passed = bool(residual < tolerance)
    if not passed:
        logger.warning(f"Identity '{name}' ({identity}) failed: residual {residual:.3e} >= {tolerance:.0e}")
    return ResidualRow(name=name, identity=identity, residual=residual, tolerance=tolerance, passed=passed)


def _random_complex(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def equivalence_suite(seed: int = 0) -> SuiteReport:
    """
    Run every lift identity at small scale and report the residuals.

    Random starts come from numpy's default generator (PCG64) seeded with
    ``seed``, drawn in a fixed order, so a seed always gives the same report.

    Args:
        seed (int): Generator seed

    Returns:
        SuiteReport: One row per identity; failures are recorded, not raised
    """
    from .line_walk import lift_equivalence_residual

    rng = np.random.default_rng(seed)
    B = make_interference_matrix()
    rows = []

    residual = max_norm(hadamard_via_lift() - make_hadamard())
    rows.append(_row("Eq14", "hadamard_from_lift", residual, "single_product"))

    rows.append(_row("Eq21", "power_relation", max(power_relation_residual(n) for n in range(33)), "power"))

    populations = rng.random(4)
    rows.append(_row(
        "Eq27",
        "population_conservation",
        max(conservation_residual(populations, n) for n in (1, 10, 100, 1000)),
        "conservation",
    ))

    populations = _random_complex(rng, 4)
    rows.append(_row("Eq28", "norm_preservation", max(norm_residual(populations, n) for n in range(41)), "norm"))

    residual = 0.0
    for m in (4, 8, 16):
        for _ in range(3):
            start = _random_complex(rng, 4 * m)
            for n in range(1, 11):
                residual = max(residual, lift_equivalence_residual(m, n, start))
    rows.append(_row("Eq52", "lift_equivalence", residual, "lift"))

    R1, R2, r1, r2 = make_reflectors()
    pairs = [(R1, r1), (R2, r2), (make_trap(), np.zeros((2, 2)))]
    residual = max(max_norm((B @ R @ B.T) / SQRT2 - r) for R, r in pairs)
    rows.append(_row("Eq76", "reflector_conjugation", residual, "single_product"))

    residual = 0.0
    for kind in (BoundaryKind.REFLECT1, BoundaryKind.REFLECT2):
        start = _random_complex(rng, 4 * 25)
        for n in range(1, 13):
            residual = max(residual, lift_equivalence_residual(25, n, start, BoundarySpec(kind=kind)))
    rows.append(_row("Eq83", "boundary_lift_equivalence", residual, "lift"))

    report = SuiteReport(seed=seed, rows=rows)
    logger.info(f"Equivalence suite (seed {seed}): {sum(r.passed for r in rows)}/{len(rows)} passed")
    return report
