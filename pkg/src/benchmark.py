"""
Timing harness for qwlift.

Times the structural engine against dense matrix evolution on the same
lifted walk. Dense rows are only produced inside the dense limits.
"""

import logging
import time
from functools import partial
from typing import Dict, Iterable, List, Literal, Tuple

from .coin_core import QubitState, max_norm
from .config import LIMITS
from .line_walk import evolve, lifted_state, make_markov_step
from .oracle import dense_assemble, dense_evolve
from .schemas import BenchRow, BoundarySpec, Lattice, LiftMode, Scaling, System

logger = logging.getLogger(__name__)

Engine = Literal["structural", "dense"]


def _point_start(m: int):
    lattice = Lattice(m=m)
    state = lifted_state(lattice, [m // 2], QubitState(1, 0), LiftMode.SIGN_SPLIT, Scaling.UNSCALED)
    return lattice, state


def time_engine(engine: Engine, m: int, n: int, repeats: int = 1) -> BenchRow:
    """
    Time n lifted steps on m sites from a point start at the centre.

    Operator construction is excluded from the timing. With several repeats
    the fastest run is kept.

    Args:
        engine (Engine): structural or dense
        m (int): Number of sites
        n (int): Number of steps
        repeats (int): Number of timed runs

    Returns:
        BenchRow: Timing row
    """
    if repeats < 1:
        raise ValueError(f"Need at least one timed run, got {repeats}")

    lattice, state = _point_start(m)
    if engine == "structural":
        op = make_markov_step(lattice, BoundarySpec())
        run = partial(evolve, state, op, n)
    else:
        dense = dense_assemble(lattice, BoundarySpec(), System.LIFTED)
        run = partial(dense_evolve, dense, state.v, n)

    seconds = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        run()
        seconds = min(seconds, time.perf_counter() - start)

    steps_per_sec = n / seconds if seconds > 0 else float("inf")
    logger.debug(f"{engine} m={m} n={n}: {seconds:.4f}s (best of {repeats})")
    return BenchRow(engine=engine, m=m, n=n, seconds=seconds, steps_per_sec=steps_per_sec)


def cross_check(m: int = 64, n: int = 100) -> float:
    """
    Max-norm difference between structural and dense evolution of the same start.

    Args:
        m (int): Number of sites, within the dense limit
        n (int): Number of steps, within the dense limit

    Returns:
        float: Deviation of the lifted vectors
    """
    lattice, state = _point_start(m)
    structural = evolve(state, make_markov_step(lattice, BoundarySpec()), n)
    dense = dense_evolve(dense_assemble(lattice, BoundarySpec(), System.LIFTED), state.v, n)
    return max_norm(structural.v - dense)


def run_benchmark(sites: Iterable[int], steps: Iterable[int], repeats: int = 1) -> List[BenchRow]:
    """
    Time both engines over a grid of sizes.

    Args:
        sites (Iterable[int]): Lattice sizes
        steps (Iterable[int]): Step counts
        repeats (int): Timed runs per row, the fastest is kept

    Returns:
        List[BenchRow]: Structural rows for every pair, dense rows within limits
    """
    rows = []
    steps = list(steps)
    for m in sites:
        for n in steps:
            rows.append(time_engine("structural", m, n, repeats))
            if m > LIMITS["dense_max_sites"] or n > LIMITS["dense_max_steps"]:
                logger.warning(f"Skipping dense timing for m={m}, n={n}: outside the dense limits")
                continue
            rows.append(time_engine("dense", m, n, repeats))
    return rows


def speedups(rows: List[BenchRow]) -> Dict[Tuple[int, int], float]:
    """Dense time over structural time for every (m, n) timed by both engines."""
    by_key = {(row.engine, row.m, row.n): row.seconds for row in rows}
    result = {}
    for (engine, m, n), seconds in by_key.items():
        if engine == "structural" and ("dense", m, n) in by_key and seconds > 0:
            result[(m, n)] = by_key[("dense", m, n)] / seconds
    return result


def scaling_ratios(rows: List[BenchRow]) -> Dict[Tuple[int, int], float]:
    """
    Structural time at 2m over time at m, for every m whose double was timed.

    Args:
        rows (List[BenchRow]): Benchmark rows

    Returns:
        Dict[Tuple[int, int], float]: (m, n) to time ratio
    """
    times = {(row.m, row.n): row.seconds for row in rows if row.engine == "structural"}
    return {
        (m, n): times[(2 * m, n)] / seconds
        for (m, n), seconds in times.items()
        if (2 * m, n) in times and seconds > 0
    }
