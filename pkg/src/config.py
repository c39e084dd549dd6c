"""
Configuration module for qwlift.

This module holds the numerical tolerances and scale limits used across the
package, and validates run requests before any evolution starts. Nothing is
read from the environment; every user-facing setting is a command-line option.
"""

from typing import Any, Dict

from .schemas import RunRequest, Scaling

# Tolerances for the identity checks, in max-norm
TOLERANCES = {
    "single_product": 1e-12,
    "power": 1e-9,
    "conservation": 1e-7,
    "norm": 1e-6,
    "lift": 1e-9,
    "no_leak": 1e-12,
    "bench_agreement": 1e-10,
    "reflecting_norm": 1e-6,
}

# Scale limits of the dense and exponent-bearing code paths
LIMITS = {
    "dense_max_sites": 64,
    "dense_max_steps": 200,
    "lift_max_steps": 20,
    "power_max": 64,
    "unscaled_max_steps": 512,
    "scaled_dataset_max_steps": 2000,
    "binomial_max_steps": 10_000,
}


def get_tolerances() -> Dict[str, float]:
    """
    Get the tolerance table.

    Returns:
        Dict[str, float]: Tolerance by check family
    """
    return dict(TOLERANCES)


def get_limits() -> Dict[str, int]:
    """
    Get the scale limits.

    Returns:
        Dict[str, int]: Limit by name
    """
    return dict(LIMITS)


def validate_run_request(request: RunRequest, dense: bool = False) -> Dict[str, Any]:
    """
    Validate a run request against the lattice it will run on.

    Args:
        request (RunRequest): Request to validate
        dense (bool): Also enforce the dense verification limits

    Returns:
        Dict[str, Any]: Dictionary of errors keyed by request field, if any
    """
    errors = {}
    lattice = request.lattice()

    try:
        request.boundary.check_lattice(lattice)
    except ValueError as e:
        errors["boundary"] = str(e)

    for label in (request.initial.first, request.initial.last):
        try:
            lattice.index_of(label)
        except ValueError as e:
            errors["initial"] = str(e)
            break

    if request.scaling == Scaling.UNSCALED and request.steps > LIMITS["unscaled_max_steps"]:
        errors["scaling"] = (
            f"Unscaled mode is limited to {LIMITS['unscaled_max_steps']} steps, "
            f"got {request.steps}; use sqrt2-step"
        )

    if request.scaling == Scaling.SQRT2_STEP and request.steps > LIMITS["scaled_dataset_max_steps"]:
        errors["steps"] = (
            f"sqrt2-step datasets are limited to {LIMITS['scaled_dataset_max_steps']} steps, "
            f"got {request.steps}; the raw population columns would overflow"
        )

    if dense:
        if lattice.m > LIMITS["dense_max_sites"]:
            errors["sites"] = f"Dense comparison is limited to {LIMITS['dense_max_sites']} sites"
        if request.steps > LIMITS["lift_max_steps"]:
            errors["steps"] = f"Dense comparison is limited to {LIMITS['lift_max_steps']} steps"

    return errors
